#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "immx/characterize.hpp"
#include "immx/memory.hpp"
#include "immx/graph.hpp"
#include "immx/sampler.hpp"
#include "immx/select.hpp"

namespace immx {

struct RunConfig {
    std::uint32_t k = 50;
    double epsilon = 0.5;
    std::uint32_t blocks = 8;
    std::optional<Mode> mode_override;
    WeightModel weight_model = WeightModel::WeightedCascade;
    double uniform_p = 0.1;
    std::uint64_t rng_seed = 42;
    int workers = 1;
    bool merged_argmax = false;
    // consumed by the CLI driver, carried here so one record describes a run
    std::string stats_path;
    std::string seeds_path;
};

struct BlockStats {
    std::uint64_t sets = 0;
    std::uint64_t raw_bytes = 0;
    std::uint64_t encoded_bytes = 0;
};

struct PhaseTimes {
    double estimate_s = 0.0;
    double sample_encode_s = 0.0;
    double select_s = 0.0;
    double total_s = 0.0;
};

struct RunStats {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    SamplingPlan plan;
    Characterization characterization;
    Mode mode = Mode::Raw;
    bool mode_overridden = false;
    std::vector<BlockStats> block_stats;
    std::uint64_t raw_bytes = 0;      // total over blocks
    std::uint64_t encoded_bytes = 0;  // total over blocks
    double compression_ratio = 1.0;   // raw / encoded
    MemoryLedger memory;
    PhaseTimes times;
    double uncoded_vertex_fraction = 0.0;  // huffman only
    SeedSet seeds;
    std::vector<std::uint64_t> original_ids;  // seed ids map through this
};

// Full workflow: theta estimation, block-by-block sampling and encoding with
// per-block release of the raw sets, then mode-appropriate selection.
// The graph must already carry edge probabilities.
std::pair<SeedSet, RunStats> run(const Graph& g, const RunConfig& cfg);

// Stats serialization (schema documented in the README).
std::string stats_to_json(const RunStats& stats, const RunConfig& cfg);
void write_stats(const RunStats& stats, const RunConfig& cfg, const std::string& path);
void write_seeds(const RunStats& stats, const std::string& path);

}  // namespace immx
