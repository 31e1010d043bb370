#pragma once

#include <cstdint>
#include <vector>

#include "immx/bitmap.hpp"
#include "immx/huffman.hpp"
#include "immx/memory.hpp"
#include "immx/sampler.hpp"

namespace immx {

// counts[v] = number of live (uncovered) sets containing v
using FrequencyTable = std::vector<std::uint64_t>;

struct SeedSet {
    std::vector<Vertex> seeds;
    std::vector<std::uint64_t> marginal;  // sets newly covered by each pick
    std::vector<double> coverage;         // cumulative covered fraction after each pick
    std::uint32_t padded = 0;             // picks made after every set was covered
};

// argmax over a full table, ties to the lowest vertex id
Vertex table_argmax(const FrequencyTable& counts);

// The reduced-candidate argmax: take each worker's local winner, sum those
// winners' frequencies across all workers, return the best (ties to lowest
// id). Reduces k*p entries instead of k*n.
Vertex merged_argmax(const std::vector<FrequencyTable>& locals);

struct SelectOptions {
    std::uint32_t k = 1;
    int workers = 1;
    // When true and workers > 1, each pick uses merged_argmax over per-worker
    // tables; otherwise the tables are summed and the argmax is exact
    // (worker-count invariant).
    bool merged_argmax = false;
    MemoryLedger* ledger = nullptr;  // optional accounting sink
};

// Greedy max-coverage over raw sets; frequencies recounted over live sets
// each iteration. Once every set is covered, remaining picks take the
// lowest-id vertices not yet chosen and are counted in `padded`.
SeedSet select_raw(const std::vector<RrrBlock>& blocks, std::uint64_t n,
                   const SelectOptions& opt);

// Greedy selection over Huffman-encoded sets: per pick, each live set is
// partially decoded just far enough to tell whether it contains the current
// top vertex; hits are dropped, misses contribute their full decode plus the
// copy buffer to the next frequency table. `hist` is the table accumulated
// during encoding. Matches select_raw pick for pick.
SeedSet select_huffman(const HuffmanCodebook& cb, std::vector<EncodedRrr>& encoded,
                       FrequencyTable hist, const SelectOptions& opt);

// Greedy selection by bit operations: snapshot the top row, subtract it from
// every live row, rebuild the table from row popcounts. Matches select_raw.
SeedSet select_bitmap(BitmapCollection& bm, FrequencyTable hist, const SelectOptions& opt);

// Initial table for bitmap mode, computed from row popcounts.
FrequencyTable popcount_hist(const BitmapCollection& bm, int workers);

}  // namespace immx
