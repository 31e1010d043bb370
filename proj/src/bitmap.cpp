#include "immx/bitmap.hpp"

#include <bit>
#include <stdexcept>

namespace immx {

BitmapBlock encode_block(const RrrBlock& block, std::uint64_t n) {
    BitmapBlock bm;
    bm.n_rows = n;
    bm.n_cols = block.sets.size();
    bm.padded_cols = (bm.n_cols + 31) / 32 * 32;
    bm.words.assign(n * bm.words_per_row(), 0);

    const std::uint64_t wpr = bm.words_per_row();
    for (std::uint64_t c = 0; c < block.sets.size(); ++c) {
        const std::uint64_t word = c / 32;
        const std::uint32_t mask = 1u << (c % 32);
        for (Vertex v : block.sets[c].members) {
            if (v >= n) throw std::out_of_range("member id out of range for bitmap");
            bm.words[v * wpr + word] |= mask;
        }
    }
    return bm;
}

std::uint64_t popcount_row(const BitmapBlock& bm, Vertex v) {
    const std::uint32_t* row = bm.row(v);
    std::uint64_t count = 0;
    for (std::uint64_t w = 0; w < bm.words_per_row(); ++w) count += std::popcount(row[w]);
    return count;
}

std::uint64_t popcount_row(const BitmapCollection& bm, Vertex v) {
    std::uint64_t count = 0;
    for (const BitmapBlock& b : bm.blocks) count += popcount_row(b, v);
    return count;
}

std::vector<std::uint32_t> snapshot_row(const BitmapCollection& bm, Vertex v) {
    std::vector<std::uint32_t> snap;
    snap.reserve(bm.total_words_per_row());
    for (const BitmapBlock& b : bm.blocks) {
        const std::uint32_t* row = b.row(v);
        snap.insert(snap.end(), row, row + b.words_per_row());
    }
    return snap;
}

std::uint64_t subtract_row(BitmapCollection& bm, Vertex v,
                           std::span<const std::uint32_t> top_row) {
    std::uint64_t count = 0;
    std::uint64_t base = 0;
    for (BitmapBlock& b : bm.blocks) {
        std::uint32_t* row = b.row(v);
        for (std::uint64_t w = 0; w < b.words_per_row(); ++w) {
            // v AND (v XOR u*), i.e. clear the columns u* covers
            row[w] &= row[w] ^ top_row[base + w];
            count += std::popcount(row[w]);
        }
        base += b.words_per_row();
    }
    return count;
}

std::uint64_t subtract_row(BitmapCollection& bm, Vertex v, Vertex top) {
    const std::vector<std::uint32_t> snap = snapshot_row(bm, top);
    return subtract_row(bm, v, snap);
}

}  // namespace immx
