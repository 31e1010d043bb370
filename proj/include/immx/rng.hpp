#pragma once

#include <cstdint>

namespace immx {

// Counter-derived random stream. Every Monte-Carlo sample owns its own
// stream keyed by (run seed, global sample index), so results do not
// depend on how samples are distributed over threads.
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    // splitmix64 step
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, bound), bound > 0
    std::uint64_t next_below(std::uint64_t bound) {
        // multiply-shift; bias is < 2^-64 per draw, irrelevant at our scale
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream for the `index`-th sample of a run.
inline Rng stream_for(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace immx
