#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "immx/pipeline.hpp"
#include "test_util.hpp"

using namespace immx;

namespace {

RunConfig base_config(std::uint32_t k, std::uint64_t seed) {
    RunConfig cfg;
    cfg.k = k;
    cfg.epsilon = 0.5;
    cfg.blocks = 4;
    cfg.rng_seed = seed;
    cfg.workers = 1;
    return cfg;
}

}  // namespace

TEST_CASE("complete graph at p=1: one seed covers everything") {
    Graph g = testutil::complete_graph(4, 1.0);
    for (Mode mode : {Mode::Raw, Mode::Huffman, Mode::Bitmap}) {
        RunConfig cfg = base_config(1, 7);
        cfg.mode_override = mode;
        auto [seeds, stats] = run(g, cfg);
        REQUIRE(seeds.seeds.size() == 1);
        CHECK(seeds.coverage.back() == 1.0);
        CHECK(stats.mode == mode);
    }
}

TEST_CASE("theta samples are split exactly over the blocks") {
    std::mt19937_64 rng(4);
    Graph g = testutil::random_graph(rng, 50, 250);
    assign_weights(g, WeightModel::WeightedCascade);
    RunConfig cfg = base_config(3, 11);
    auto [seeds, stats] = run(g, cfg);
    std::uint64_t total = 0;
    for (const BlockStats& b : stats.block_stats) {
        CHECK(b.sets >= 1);
        total += b.sets;
    }
    CHECK(total == stats.plan.theta);
    CHECK(stats.block_stats.size() == stats.plan.blocks);
}

TEST_CASE("forced modes agree on the seed sequence") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = testutil::random_graph(rng, 40 + 20 * trial, 300 + 100 * trial);
        assign_weights(g, WeightModel::WeightedCascade);
        std::vector<std::vector<Vertex>> results;
        for (Mode mode : {Mode::Raw, Mode::Huffman, Mode::Bitmap}) {
            RunConfig cfg = base_config(5, 100 + trial);
            cfg.mode_override = mode;
            auto [seeds, stats] = run(g, cfg);
            results.push_back(seeds.seeds);
        }
        CHECK(results[0] == results[1]);
        CHECK(results[0] == results[2]);
    }
}

TEST_CASE("block count does not change the seeds") {
    std::mt19937_64 rng(5);
    Graph g = testutil::random_graph(rng, 60, 400);
    assign_weights(g, WeightModel::WeightedCascade);
    std::vector<Vertex> reference;
    for (std::uint32_t blocks : {2u, 8u}) {
        RunConfig cfg = base_config(4, 21);
        cfg.blocks = blocks;
        cfg.mode_override = Mode::Huffman;
        auto [seeds, stats] = run(g, cfg);
        if (reference.empty())
            reference = seeds.seeds;
        else
            CHECK(reference == seeds.seeds);
    }
}

TEST_CASE("worker count does not change the result") {
    std::mt19937_64 rng(6);
    Graph g = testutil::random_graph(rng, 80, 600);
    assign_weights(g, WeightModel::WeightedCascade);
    std::vector<Vertex> reference;
    std::string reference_stats;
    for (int workers : {1, 2, 8}) {
        RunConfig cfg = base_config(4, 33);
        cfg.workers = workers;
        auto [seeds, stats] = run(g, cfg);
        if (reference.empty())
            reference = seeds.seeds;
        else
            CHECK(reference == seeds.seeds);
    }
}

TEST_CASE("raw mode keeps its blocks and reports ratio 1") {
    std::mt19937_64 rng(9);
    Graph g = testutil::random_graph(rng, 40, 200);
    assign_weights(g, WeightModel::WeightedCascade);
    RunConfig cfg = base_config(2, 5);
    cfg.mode_override = Mode::Raw;
    auto [seeds, stats] = run(g, cfg);
    CHECK(stats.compression_ratio == 1.0);
    CHECK(stats.encoded_bytes == stats.raw_bytes);
    CHECK(stats.memory.raw_block_bytes == stats.raw_bytes);  // never released
    std::uint64_t sum = 0;
    for (const BlockStats& b : stats.block_stats) {
        CHECK(b.raw_bytes == b.encoded_bytes);
        sum += b.raw_bytes;
    }
    CHECK(sum == stats.raw_bytes);
}

TEST_CASE("encoded modes release the raw blocks") {
    std::mt19937_64 rng(10);
    Graph g = testutil::random_graph(rng, 40, 400);
    assign_weights(g, WeightModel::WeightedCascade);
    for (Mode mode : {Mode::Huffman, Mode::Bitmap}) {
        RunConfig cfg = base_config(2, 5);
        cfg.mode_override = mode;
        auto [seeds, stats] = run(g, cfg);
        CHECK(stats.memory.raw_block_bytes == 0);
        CHECK(stats.memory.encoded_bytes == stats.encoded_bytes);
        // peak saw at least one raw block plus whatever was already encoded
        CHECK(stats.memory.peak_bytes >= stats.block_stats[0].raw_bytes);
    }
}

TEST_CASE("bitmap byte accounting matches the formula") {
    std::mt19937_64 rng(14);
    Graph g = testutil::random_graph(rng, 30, 400);
    assign_weights(g, WeightModel::Uniform, 0.4);
    RunConfig cfg = base_config(2, 3);
    cfg.mode_override = Mode::Bitmap;
    auto [seeds, stats] = run(g, cfg);
    for (const BlockStats& b : stats.block_stats) {
        const std::uint64_t padded = (b.sets + 31) / 32 * 32;
        CHECK(b.encoded_bytes == stats.n * padded / 8);
        CHECK(b.raw_bytes % 4 == 0);
    }
}

TEST_CASE("override flag is reported") {
    Graph g = testutil::complete_graph(6, 1.0);  // dense: characterizes away from raw
    RunConfig cfg = base_config(1, 2);
    cfg.mode_override = Mode::Raw;
    auto [seeds, stats] = run(g, cfg);
    CHECK(stats.mode == Mode::Raw);
    CHECK(stats.mode_overridden == (stats.characterization.mode != Mode::Raw));

    RunConfig same = base_config(1, 2);
    same.mode_override = stats.characterization.mode;
    auto [seeds2, stats2] = run(g, same);
    CHECK(!stats2.mode_overridden);
}

TEST_CASE("auto mode follows the characterization") {
    Graph g = testutil::complete_graph(8, 1.0);
    RunConfig cfg = base_config(2, 19);
    auto [seeds, stats] = run(g, cfg);
    CHECK(stats.mode == stats.characterization.mode);
    CHECK(!stats.mode_overridden);
}

TEST_CASE("config validation") {
    Graph g = testutil::complete_graph(4, 0.5);
    RunConfig cfg = base_config(1, 1);
    cfg.k = 0;
    CHECK_THROWS_AS(run(g, cfg), std::invalid_argument);
    cfg = base_config(4, 1);  // k == n
    CHECK_THROWS_AS(run(g, cfg), std::invalid_argument);
    cfg = base_config(1, 1);
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(run(g, cfg), std::invalid_argument);
    cfg = base_config(1, 1);
    cfg.blocks = 1;
    CHECK_THROWS_AS(run(g, cfg), std::invalid_argument);
}

TEST_CASE("stats JSON carries the run record") {
    std::mt19937_64 rng(8);
    Graph g = testutil::random_graph(rng, 30, 150);
    assign_weights(g, WeightModel::WeightedCascade);
    RunConfig cfg = base_config(3, 77);
    auto [seeds, stats] = run(g, cfg);
    const std::string json = stats_to_json(stats, cfg);
    for (const char* field :
         {"\"n\"", "\"m\"", "\"theta\"", "\"skewness\"", "\"density\"", "\"mode\"",
          "\"phase_seconds\"", "\"raw_bytes\"", "\"encoded_bytes\"", "\"compression_ratio\"",
          "\"peak_bytes\"", "\"seeds\"", "\"marginal\"", "\"cumulative\"", "\"original_ids\""})
        CHECK(json.find(field) != std::string::npos);
}
