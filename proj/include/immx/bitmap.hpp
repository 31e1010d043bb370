#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "immx/sampler.hpp"

namespace immx {

// Dense membership matrix for one block: bit (r, c) set iff vertex r is in
// the c-th set of the block. Columns are padded to a multiple of 32; padding
// bits are always zero.
struct BitmapBlock {
    std::uint64_t n_rows = 0;
    std::uint64_t n_cols = 0;
    std::uint64_t padded_cols = 0;
    std::vector<std::uint32_t> words;  // row-major, padded_cols/32 words per row

    std::uint64_t words_per_row() const { return padded_cols / 32; }
    std::uint32_t* row(Vertex v) { return words.data() + v * words_per_row(); }
    const std::uint32_t* row(Vertex v) const { return words.data() + v * words_per_row(); }
    bool bit(Vertex r, std::uint64_t c) const {
        return (row(r)[c / 32] >> (c % 32)) & 1u;
    }
    std::uint64_t byte_size() const { return n_rows * padded_cols / 8; }
};

BitmapBlock encode_block(const RrrBlock& block, std::uint64_t n);

// A vertex's logical row is the concatenation of its per-block rows.
struct BitmapCollection {
    std::uint64_t n_rows = 0;
    std::vector<BitmapBlock> blocks;

    std::uint64_t total_words_per_row() const {
        std::uint64_t w = 0;
        for (const BitmapBlock& b : blocks) w += b.words_per_row();
        return w;
    }
    std::uint64_t total_cols() const {
        std::uint64_t c = 0;
        for (const BitmapBlock& b : blocks) c += b.n_cols;
        return c;
    }
    std::uint64_t byte_size() const {
        std::uint64_t s = 0;
        for (const BitmapBlock& b : blocks) s += b.byte_size();
        return s;
    }
};

std::uint64_t popcount_row(const BitmapCollection& bm, Vertex v);
std::uint64_t popcount_row(const BitmapBlock& bm, Vertex v);

// Copy of v's logical row across blocks, for use as a subtraction snapshot.
std::vector<std::uint32_t> snapshot_row(const BitmapCollection& bm, Vertex v);

// row(v) &= ~top_row, word by word; clears exactly the columns where the
// snapshot has a 1. Returns the updated popcount of row v.
std::uint64_t subtract_row(BitmapCollection& bm, Vertex v,
                           std::span<const std::uint32_t> top_row);
// Convenience form taking the row of top as it currently is.
std::uint64_t subtract_row(BitmapCollection& bm, Vertex v, Vertex top);

}  // namespace immx
