#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "immx/sampler.hpp"

namespace immx {

// Prefix-free codes over the vertices seen in the warm-up block. Built once;
// vertices that only appear in later blocks stay uncoded and travel in the
// per-set copy buffer instead.
struct HuffmanCodebook {
    struct Code {
        std::uint64_t bits = 0;  // MSB of the codeword at bit (len-1)
        std::uint8_t len = 0;    // 0 = vertex has no code
    };
    struct Node {
        std::int32_t child[2] = {-1, -1};
        Vertex symbol = 0;  // valid when leaf (both children -1)
    };

    std::vector<Code> code_of;  // indexed by vertex id, length n
    std::vector<Node> nodes;    // nodes[0] is the decode root
    std::uint64_t coded_vertices = 0;

    bool has_code(Vertex v) const { return code_of[v].len != 0; }
};

// Standard Huffman construction over vertex frequencies in the block.
// Priority-queue ties break on the smallest vertex id in the subtree, and the
// first-popped node takes branch 0, so the tree and codes are reproducible.
// A single-symbol alphabet gets a 1-bit code. Throws on an empty block.
HuffmanCodebook build_codebook(const RrrBlock& warmup, std::uint64_t n);
HuffmanCodebook build_codebook_from_counts(const std::vector<std::uint64_t>& freq);

struct EncodedRrr {
    std::vector<std::uint8_t> bits;  // MSB-first packed, final byte zero-padded
    std::uint64_t bit_length = 0;
    std::vector<Vertex> copied;  // members absent from the codebook, original order

    std::uint64_t payload_bytes() const { return bits.size() + 4 * copied.size(); }
};

// Codable members in original order, except that `top` (when codable and
// present) is emitted first so selection can stop after one codeword.
// Uncodable members go to `copied` in original order.
EncodedRrr encode_rrr(const HuffmanCodebook& cb, const RrrSet& rrr, std::optional<Vertex> top);

struct DecodeResult {
    bool found = false;
    std::vector<Vertex> decoded;  // codable part only; copied rides alongside
};

// Decodes codewords sequentially, returning as soon as `top` is decoded
// (partial decode). Otherwise decodes the whole payload and scans `copied`.
// Throws if the payload does not end on a codeword boundary.
DecodeResult decode_find(const HuffmanCodebook& cb, const EncodedRrr& enc, Vertex top);

// "vertex len bits" lines, for debugging.
void dump_codebook(const HuffmanCodebook& cb, std::ostream& out);

}  // namespace immx
