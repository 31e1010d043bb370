#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "immx/sampler.hpp"

namespace immx {

enum class Mode { Huffman, Bitmap, Raw };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);  // throws on unknown names

struct Characterization {
    double skewness = 0.0;
    double density = 0.0;
    Mode mode = Mode::Raw;
};

// Third standardized moment with population moments (1/theta normalization);
// 0 when the standard deviation is 0. Requires >= 2 sizes.
double skewness(std::span<const std::uint32_t> sizes);

// Fraction of set bits in the n x theta membership matrix: sum(sizes)/(theta*n).
double density(std::span<const std::uint32_t> sizes, std::uint64_t n);

// S >= 0 -> Huffman. S < 0 -> Bitmap when D > 1/32, else Raw (neither
// encoding pays off below the 32-bit-id threshold).
Mode choose_encoding(double s, double d);

Characterization characterize(const RrrBlock& warmup, std::uint64_t n);

}  // namespace immx
