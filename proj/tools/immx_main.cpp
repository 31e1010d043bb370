// immx: influence maximization with compressed reverse-reachability storage.
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "immx/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"IMM influence maximization over Huffman- or bitmap-encoded RRR sets"};

    std::string input, format = "edgelist", weight_model = "wc", mode = "auto";
    std::string stats_path, seeds_path, save_binary;
    bool directed = false;
    double uniform_p = 0.1, epsilon = 0.5;
    std::uint32_t k = 0, blocks = 8;
    std::uint64_t seed = 42;
    int workers = 1;
    if (const char* env = std::getenv("IMMX_WORKERS")) workers = std::atoi(env);

    app.add_option("--input", input, "input graph path")->required();
    app.add_option("--format", format, "input format")
        ->check(CLI::IsMember({"edgelist", "binary"}))
        ->capture_default_str();
    app.add_flag("--directed", directed, "treat edge list lines as directed edges");
    app.add_option("--weight-model", weight_model, "edge probability model")
        ->check(CLI::IsMember({"wc", "uniform"}))
        ->capture_default_str();
    app.add_option("--p", uniform_p, "probability for --weight-model uniform")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--k", k, "number of seeds")->required();
    app.add_option("--epsilon", epsilon, "approximation factor")->capture_default_str();
    app.add_option("--blocks", blocks, "sampling blocks (block 1 is the warm-up)")
        ->check(CLI::Range(2u, 1000000u))
        ->capture_default_str();
    app.add_option("--mode", mode, "encoding mode")
        ->check(CLI::IsMember({"auto", "huffman", "bitmap", "raw"}))
        ->capture_default_str();
    app.add_option("--workers", workers, "worker count (env IMMX_WORKERS sets the default)");
    app.add_option("--seed", seed, "rng seed; all randomness flows from it")
        ->capture_default_str();
    app.add_option("--stats-json", stats_path, "write run stats as JSON here");
    app.add_option("--seeds-out", seeds_path, "write seed ids here, one per line");
    app.add_option("--save-binary", save_binary, "write the parsed graph as an IMMXG1 cache");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        immx::Graph g = (format == "binary") ? immx::load_graph_cache(input)
                                             : immx::load_edge_list_file(input, directed);
        if (!save_binary.empty()) immx::save_graph_cache(g, save_binary);

        immx::RunConfig cfg;
        cfg.k = k;
        cfg.epsilon = epsilon;
        cfg.blocks = blocks;
        cfg.rng_seed = seed;
        cfg.workers = workers;
        cfg.stats_path = stats_path;
        cfg.seeds_path = seeds_path;
        if (mode != "auto") cfg.mode_override = immx::mode_from_name(mode);
        cfg.weight_model = (weight_model == "uniform") ? immx::WeightModel::Uniform
                                                       : immx::WeightModel::WeightedCascade;
        cfg.uniform_p = uniform_p;
        immx::assign_weights(g, cfg.weight_model, cfg.uniform_p);

        auto [seeds, stats] = immx::run(g, cfg);

        if (!seeds_path.empty()) immx::write_seeds(stats, seeds_path);
        if (!stats_path.empty()) immx::write_stats(stats, cfg, stats_path);

        std::cout << "n=" << stats.n << " m=" << stats.m << " theta=" << stats.plan.theta
                  << " mode=" << immx::mode_name(stats.mode)
                  << (stats.mode_overridden ? " (override)" : "")
                  << " S=" << stats.characterization.skewness
                  << " D=" << stats.characterization.density
                  << " compression=" << stats.compression_ratio
                  << " peak_bytes=" << stats.memory.peak_bytes << '\n';
        std::cout << "seeds:";
        for (immx::Vertex s : seeds.seeds) std::cout << ' ' << stats.original_ids[s];
        std::cout << '\n';
        std::cout << "coverage=" << (seeds.coverage.empty() ? 0.0 : seeds.coverage.back())
                  << " time=" << stats.times.total_s << "s\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
