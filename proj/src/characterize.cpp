#include "immx/characterize.hpp"

#include <cmath>
#include <stdexcept>

namespace immx {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Huffman: return "huffman";
        case Mode::Bitmap: return "bitmap";
        case Mode::Raw: return "raw";
    }
    return "?";
}

Mode mode_from_name(const std::string& name) {
    if (name == "huffman") return Mode::Huffman;
    if (name == "bitmap") return Mode::Bitmap;
    if (name == "raw") return Mode::Raw;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

double skewness(std::span<const std::uint32_t> sizes) {
    const std::size_t theta = sizes.size();
    if (theta < 2) throw std::invalid_argument("skewness requires at least 2 samples");

    double sum = 0.0;
    for (std::uint32_t x : sizes) sum += static_cast<double>(x);
    const double mean = sum / static_cast<double>(theta);

    double m2 = 0.0, m3 = 0.0;
    for (std::uint32_t x : sizes) {
        const double d = static_cast<double>(x) - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(theta);
    m3 /= static_cast<double>(theta);
    if (m2 == 0.0) return 0.0;
    return m3 / std::pow(std::sqrt(m2), 3);
}

double density(std::span<const std::uint32_t> sizes, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("density requires n >= 1");
    std::uint64_t total = 0;
    for (std::uint32_t x : sizes) total += x;
    return static_cast<double>(total) /
           (static_cast<double>(sizes.size()) * static_cast<double>(n));
}

Mode choose_encoding(double s, double d) {
    if (s >= 0.0) return Mode::Huffman;
    if (d > 1.0 / 32.0) return Mode::Bitmap;
    return Mode::Raw;
}

Characterization characterize(const RrrBlock& warmup, std::uint64_t n) {
    std::vector<std::uint32_t> sizes;
    sizes.reserve(warmup.sets.size());
    for (const RrrSet& r : warmup.sets) sizes.push_back(r.size());

    Characterization c;
    c.skewness = skewness(sizes);
    c.density = density(sizes, n);
    c.mode = choose_encoding(c.skewness, c.density);
    return c;
}

}  // namespace immx
