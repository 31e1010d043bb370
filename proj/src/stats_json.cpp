#include <fstream>
#include <stdexcept>

#include "immx/pipeline.hpp"
#include "json.hpp"

#include <sys/resource.h>

namespace immx {

namespace {

std::uint64_t peak_rss_bytes() {
    struct rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
    return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;  // linux reports KiB
}

}  // namespace

std::string stats_to_json(const RunStats& stats, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["n"] = stats.n;
    j["m"] = stats.m;
    j["theta"] = stats.plan.theta;
    j["skewness"] = stats.characterization.skewness;
    j["density"] = stats.characterization.density;
    j["mode"] = mode_name(stats.mode);
    j["mode_override"] = stats.mode_overridden;
    j["phase_seconds"] = {
        {"estimate", stats.times.estimate_s},
        {"sample_encode", stats.times.sample_encode_s},
        {"select", stats.times.select_s},
        {"total", stats.times.total_s},
    };
    j["raw_bytes"] = stats.raw_bytes;
    j["encoded_bytes"] = stats.encoded_bytes;
    j["compression_ratio"] = stats.compression_ratio;
    j["peak_bytes"] = stats.memory.peak_bytes;
    j["padded_seeds"] = stats.seeds.padded;
    j["uncoded_vertex_fraction"] = stats.uncoded_vertex_fraction;

    j["blocks"] = nlohmann::ordered_json::array();
    for (const BlockStats& bs : stats.block_stats)
        j["blocks"].push_back({{"sets", bs.sets},
                               {"raw_bytes", bs.raw_bytes},
                               {"encoded_bytes", bs.encoded_bytes}});

    const double theta = static_cast<double>(stats.plan.theta);
    j["seeds"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < stats.seeds.seeds.size(); ++i) {
        const Vertex internal = stats.seeds.seeds[i];
        j["seeds"].push_back({
            {"id", stats.original_ids[internal]},
            {"marginal", static_cast<double>(stats.seeds.marginal[i]) / theta},
            {"cumulative", stats.seeds.coverage[i]},
        });
    }

    j["plan"] = {
        {"k", stats.plan.k},
        {"epsilon", stats.plan.epsilon},
        {"blocks", stats.plan.blocks},
        {"rng_seed", stats.plan.rng_seed},
        {"workers", cfg.workers},
        {"exit_iteration", stats.plan.exit_iteration},
        {"estimation_samples", stats.plan.estimation_samples},
        {"covered_fraction", stats.plan.covered_fraction},
    };
    j["original_ids"] = stats.original_ids;
    j["rss_bytes"] = peak_rss_bytes();  // informational, not deterministic
    return j.dump(2);
}

void write_stats(const RunStats& stats, const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write stats to '" + path + "'");
    out << stats_to_json(stats, cfg) << '\n';
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

void write_seeds(const RunStats& stats, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write seeds to '" + path + "'");
    for (Vertex s : stats.seeds.seeds) out << stats.original_ids[s] << '\n';
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

}  // namespace immx
