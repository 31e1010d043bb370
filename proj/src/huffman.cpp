#include "immx/huffman.hpp"

#include <ostream>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace immx {

namespace {

void assign_codes(HuffmanCodebook& cb, std::int32_t node, std::uint64_t prefix,
                  std::uint8_t depth) {
    const auto& nd = cb.nodes[node];
    if (nd.child[0] < 0 && nd.child[1] < 0) {
        cb.code_of[nd.symbol] = {prefix, depth};
        return;
    }
    if (depth >= 64) throw std::runtime_error("huffman code longer than 64 bits");
    if (nd.child[0] >= 0) assign_codes(cb, nd.child[0], prefix << 1, depth + 1);
    if (nd.child[1] >= 0) assign_codes(cb, nd.child[1], (prefix << 1) | 1u, depth + 1);
}

}  // namespace

HuffmanCodebook build_codebook_from_counts(const std::vector<std::uint64_t>& freq) {
    HuffmanCodebook cb;
    cb.code_of.assign(freq.size(), {});

    // entries: (frequency, smallest vertex id in subtree, node index)
    using Entry = std::tuple<std::uint64_t, Vertex, std::int32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    for (std::size_t v = 0; v < freq.size(); ++v) {
        if (freq[v] == 0) continue;
        HuffmanCodebook::Node leaf;
        leaf.symbol = static_cast<Vertex>(v);
        cb.nodes.push_back(leaf);
        queue.emplace(freq[v], static_cast<Vertex>(v),
                      static_cast<std::int32_t>(cb.nodes.size() - 1));
        cb.coded_vertices++;
    }
    if (queue.empty()) throw std::runtime_error("cannot build a codebook from an empty block");

    if (queue.size() == 1) {
        // degenerate alphabet: give the only symbol a 1-bit code
        auto [f, tie, leaf] = queue.top();
        HuffmanCodebook::Node root;
        root.child[0] = leaf;
        cb.nodes.push_back(root);
        std::swap(cb.nodes.front(), cb.nodes.back());
        cb.nodes.front().child[0] = static_cast<std::int32_t>(cb.nodes.size() - 1);
        assign_codes(cb, 0, 0, 0);
        return cb;
    }

    while (queue.size() > 1) {
        auto [fa, ta, a] = queue.top();
        queue.pop();
        auto [fb, tb, b] = queue.top();
        queue.pop();
        HuffmanCodebook::Node inner;
        inner.child[0] = a;  // first popped takes branch 0
        inner.child[1] = b;
        cb.nodes.push_back(inner);
        queue.emplace(fa + fb, std::min(ta, tb), static_cast<std::int32_t>(cb.nodes.size() - 1));
    }

    // move the root to slot 0 so decoding always starts at nodes[0]
    const std::int32_t root = std::get<2>(queue.top());
    if (root != 0) {
        std::swap(cb.nodes[0], cb.nodes[root]);
        for (auto& nd : cb.nodes) {
            for (int c = 0; c < 2; ++c) {
                if (nd.child[c] == 0)
                    nd.child[c] = root;
                else if (nd.child[c] == root)
                    nd.child[c] = 0;
            }
        }
    }
    assign_codes(cb, 0, 0, 0);
    return cb;
}

HuffmanCodebook build_codebook(const RrrBlock& warmup, std::uint64_t n) {
    if (warmup.sets.empty()) throw std::runtime_error("cannot build a codebook from an empty block");
    std::vector<std::uint64_t> freq(n, 0);
    for (const RrrSet& r : warmup.sets)
        for (Vertex v : r.members) freq[v]++;
    return build_codebook_from_counts(freq);
}

namespace {

inline void append_code(EncodedRrr& out, HuffmanCodebook::Code code) {
    for (int i = code.len - 1; i >= 0; --i) {
        if (out.bit_length % 8 == 0) out.bits.push_back(0);
        const std::uint32_t bit = (code.bits >> i) & 1u;
        out.bits.back() |= static_cast<std::uint8_t>(bit << (7 - out.bit_length % 8));
        out.bit_length++;
    }
}

}  // namespace

EncodedRrr encode_rrr(const HuffmanCodebook& cb, const RrrSet& rrr, std::optional<Vertex> top) {
    EncodedRrr out;
    bool swap_top = false;
    if (top && cb.has_code(*top)) {
        for (Vertex v : rrr.members) {
            if (v == *top) {
                swap_top = true;
                break;
            }
        }
    }
    if (swap_top) append_code(out, cb.code_of[*top]);
    for (Vertex v : rrr.members) {
        if (swap_top && v == *top) continue;
        if (cb.has_code(v))
            append_code(out, cb.code_of[v]);
        else
            out.copied.push_back(v);
    }
    return out;
}

DecodeResult decode_find(const HuffmanCodebook& cb, const EncodedRrr& enc, Vertex top) {
    if (enc.bit_length > enc.bits.size() * 8)
        throw std::runtime_error("encoded payload shorter than its bit length");

    DecodeResult res;
    std::int32_t node = 0;
    for (std::uint64_t pos = 0; pos < enc.bit_length; ++pos) {
        const std::uint32_t bit = (enc.bits[pos / 8] >> (7 - pos % 8)) & 1u;
        node = cb.nodes[node].child[bit];
        if (node < 0) throw std::runtime_error("corrupt payload: invalid codeword");
        const auto& nd = cb.nodes[node];
        if (nd.child[0] < 0 && nd.child[1] < 0) {
            res.decoded.push_back(nd.symbol);
            if (nd.symbol == top) {
                res.found = true;
                return res;  // early stop, partial decode
            }
            node = 0;
        }
    }
    if (node != 0) throw std::runtime_error("corrupt payload: ends mid-codeword");

    for (Vertex v : enc.copied) {
        if (v == top) {
            res.found = true;
            break;
        }
    }
    return res;
}

void dump_codebook(const HuffmanCodebook& cb, std::ostream& out) {
    for (std::size_t v = 0; v < cb.code_of.size(); ++v) {
        const auto code = cb.code_of[v];
        if (code.len == 0) continue;
        out << v << ' ' << static_cast<int>(code.len) << ' ';
        for (int i = code.len - 1; i >= 0; --i) out << ((code.bits >> i) & 1u);
        out << '\n';
    }
}

}  // namespace immx
