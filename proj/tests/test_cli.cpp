#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

std::string cli_path() {
    const char* env = std::getenv("IMMX_CLI");
    REQUIRE_MESSAGE(env != nullptr, "IMMX_CLI must point at the immx binary");
    return env;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " > immx_cli_stdout.txt 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_demo_graph(const std::string& path) {
    std::ofstream out(path);
    // small two-community graph with a hub in each
    out << "# demo\n";
    for (int i = 1; i <= 6; ++i) out << 0 << ' ' << i << '\n';
    for (int i = 8; i <= 13; ++i) out << 7 << ' ' << i << '\n';
    out << "3 7\n10 0\n";
}

}  // namespace

TEST_CASE("missing required flag exits 2") {
    write_demo_graph("immx_cli_demo.txt");
    CHECK(run_cli("--input immx_cli_demo.txt") == 2);
    CHECK(run_cli("--k 2") == 2);
    CHECK(run_cli("--input immx_cli_demo.txt --k 2 --mode zstd") == 2);
}

TEST_CASE("runtime failures exit 1") {
    CHECK(run_cli("--input no_such_file.txt --k 2") == 1);
    std::ofstream bad("immx_cli_bad.txt");
    bad << "0 1\nbroken line here\n";
    bad.close();
    CHECK(run_cli("--input immx_cli_bad.txt --k 2") == 1);
    std::remove("immx_cli_bad.txt");
}

TEST_CASE("end-to-end run writes seeds and stats") {
    write_demo_graph("immx_cli_demo.txt");
    const int rc = run_cli(
        "--input immx_cli_demo.txt --k 2 --epsilon 0.5 --seed 42 "
        "--seeds-out immx_cli_seeds.txt --stats-json immx_cli_stats.json");
    CHECK(rc == 0);

    std::istringstream seeds(slurp("immx_cli_seeds.txt"));
    std::string line;
    int lines = 0;
    while (std::getline(seeds, line)) lines++;
    CHECK(lines == 2);

    auto stats = nlohmann::json::parse(slurp("immx_cli_stats.json"));
    CHECK(stats["n"] == 14);
    CHECK(stats["seeds"].size() == 2);
    CHECK(stats["compression_ratio"].is_number());
    CHECK(stats["plan"]["rng_seed"] == 42);
}

TEST_CASE("seeds are reported as original ids") {
    {
        std::ofstream out("immx_cli_sparse.txt");
        out << "1000 2000\n1000 3000\n1000 4000\n";
    }
    CHECK(run_cli("--input immx_cli_sparse.txt --k 1 --seed 1 "
                  "--seeds-out immx_cli_seeds.txt --stats-json immx_cli_stats.json") == 0);
    CHECK(slurp("immx_cli_seeds.txt") == "1000\n");
    auto stats = nlohmann::json::parse(slurp("immx_cli_stats.json"));
    CHECK(stats["seeds"][0]["id"] == 1000);
    CHECK(stats["original_ids"][0] == 1000);
    std::remove("immx_cli_sparse.txt");
}

TEST_CASE("a forced mode is honored and flagged") {
    write_demo_graph("immx_cli_demo.txt");
    CHECK(run_cli("--input immx_cli_demo.txt --k 2 --mode bitmap --seed 9 "
                  "--stats-json immx_cli_stats.json") == 0);
    auto stats = nlohmann::json::parse(slurp("immx_cli_stats.json"));
    CHECK(stats["mode"] == "bitmap");
}

TEST_CASE("identical runs give identical outputs across worker counts") {
    write_demo_graph("immx_cli_demo.txt");
    std::string first;
    for (int workers : {1, 2, 4}) {
        const std::string args = "--input immx_cli_demo.txt --k 3 --seed 5 --workers " +
                                 std::to_string(workers) + " --seeds-out immx_cli_seeds.txt";
        REQUIRE(run_cli(args) == 0);
        const std::string seeds = slurp("immx_cli_seeds.txt");
        if (first.empty())
            first = seeds;
        else
            CHECK(seeds == first);
    }
}

TEST_CASE("binary cache round trips through the CLI") {
    write_demo_graph("immx_cli_demo.txt");
    REQUIRE(run_cli("--input immx_cli_demo.txt --k 2 --seed 3 "
                    "--save-binary immx_cli_cache.bin --seeds-out immx_cli_a.txt") == 0);
    REQUIRE(run_cli("--input immx_cli_cache.bin --format binary --k 2 --seed 3 "
                    "--seeds-out immx_cli_b.txt") == 0);
    CHECK(slurp("immx_cli_a.txt") == slurp("immx_cli_b.txt"));
    std::remove("immx_cli_cache.bin");
    std::remove("immx_cli_a.txt");
    std::remove("immx_cli_b.txt");
}

TEST_CASE("uniform weight model flag") {
    write_demo_graph("immx_cli_demo.txt");
    CHECK(run_cli("--input immx_cli_demo.txt --k 1 --weight-model uniform --p 1.0 "
                  "--stats-json immx_cli_stats.json") == 0);
    auto stats = nlohmann::json::parse(slurp("immx_cli_stats.json"));
    CHECK(stats["seeds"][0]["cumulative"].get<double>() > 0.0);
}
