#include "immx/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "immx/bitmap.hpp"
#include "immx/huffman.hpp"

namespace immx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::pair<std::uint64_t, std::uint64_t> chunk_range(std::uint64_t total, int parts,
                                                           int c) {
    return {total * c / parts, total * (c + 1) / parts};
}

// per-worker local tables, merged into `hist` once per block
void update_hist(const RrrBlock& block, FrequencyTable& hist, int workers) {
    const std::uint64_t n = hist.size();
    const std::uint64_t count = block.sets.size();
    if (workers <= 1) {
        for (const RrrSet& r : block.sets)
            for (Vertex v : r.members) hist[v]++;
        return;
    }
    std::vector<FrequencyTable> locals(workers, FrequencyTable(n, 0));
#pragma omp parallel for schedule(static) num_threads(workers)
    for (int c = 0; c < workers; ++c) {
        const auto [lo, hi] = chunk_range(count, workers, c);
        for (std::uint64_t j = lo; j < hi; ++j)
            for (Vertex v : block.sets[j].members) locals[c][v]++;
    }
    for (const FrequencyTable& t : locals)
        for (std::uint64_t v = 0; v < n; ++v) hist[v] += t[v];
}

}  // namespace

std::pair<SeedSet, RunStats> run(const Graph& g, const RunConfig& cfg) {
    const std::uint64_t n = g.num_vertices;
    if (cfg.k < 1 || cfg.k >= n) throw std::invalid_argument("k must satisfy 1 <= k < n");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (cfg.blocks < 2) throw std::invalid_argument("block count must be >= 2");

    const auto t_start = Clock::now();
    RunStats stats;
    stats.n = n;
    stats.m = g.num_edges;
    stats.original_ids = g.original_ids;

    const Graph gt = transpose(g);

    auto t0 = Clock::now();
    SamplingPlan plan = estimate_theta(gt, cfg.k, cfg.epsilon, cfg.rng_seed, cfg.workers);
    stats.times.estimate_s = seconds_since(t0);

    const std::uint64_t theta = plan.theta;
    // every block non-empty even at tiny theta
    const std::uint32_t b = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(cfg.blocks, std::max<std::uint64_t>(theta, 1)));
    const std::uint64_t per_block = (theta + b - 1) / b;
    plan.blocks = b;
    stats.plan = plan;

    MemoryLedger& mem = stats.memory;
    mem.freq_table_bytes = 8 * n;

    Mode mode = Mode::Raw;
    HuffmanCodebook codebook;
    std::vector<EncodedRrr> encoded;
    BitmapCollection bitmaps;
    bitmaps.n_rows = n;
    std::vector<RrrBlock> raw_blocks;
    FrequencyTable hist(n, 0);

    t0 = Clock::now();
    std::uint64_t done = 0;
    for (std::uint32_t i = 1; i <= b; ++i) {
        const std::uint64_t count = std::min(per_block, theta - done);
        RrrBlock block = sample_block(gt, count, done, i, cfg.rng_seed, cfg.workers);
        done += count;

        const std::uint64_t raw_bytes = 4 * block.member_total();
        mem.raw_block_bytes += raw_bytes;
        mem.checkpoint();

        if (i == 1) {
            stats.characterization = characterize(block, n);
            mode = cfg.mode_override.value_or(stats.characterization.mode);
            stats.mode_overridden =
                cfg.mode_override.has_value() && *cfg.mode_override != stats.characterization.mode;
            stats.mode = mode;
            if (mode == Mode::Huffman) {
                codebook = build_codebook(block, n);
                encoded.resize(theta);
            }
        }

        std::uint64_t encoded_bytes = 0;
        if (mode == Mode::Huffman) {
            update_hist(block, hist, cfg.workers);
            const Vertex top = table_argmax(hist);
            const std::uint64_t base = done - count;
            const int workers = std::max(cfg.workers, 1);
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
            for (std::int64_t j = 0; j < static_cast<std::int64_t>(count); ++j)
                encoded[base + j] = encode_rrr(codebook, block.sets[j], top);
            for (std::uint64_t j = 0; j < count; ++j)
                encoded_bytes += encoded[base + j].payload_bytes();
            mem.encoded_bytes += encoded_bytes;
        } else if (mode == Mode::Bitmap) {
            BitmapBlock bmb = encode_block(block, n);
            encoded_bytes = bmb.byte_size();
            bitmaps.blocks.push_back(std::move(bmb));
            mem.encoded_bytes += encoded_bytes;
        } else {
            encoded_bytes = raw_bytes;  // stored as-is
            raw_blocks.push_back(std::move(block));
        }
        mem.checkpoint();

        if (mode != Mode::Raw) {
            block = RrrBlock{};  // release the raw sets before the next block
            mem.raw_block_bytes -= raw_bytes;
        }
        mem.checkpoint();
        stats.block_stats.push_back({count, raw_bytes, encoded_bytes});
    }
    stats.times.sample_encode_s = seconds_since(t0);

    for (const BlockStats& bs : stats.block_stats) {
        stats.raw_bytes += bs.raw_bytes;
        stats.encoded_bytes += bs.encoded_bytes;
    }
    stats.compression_ratio = stats.encoded_bytes == 0
                                  ? 1.0
                                  : static_cast<double>(stats.raw_bytes) /
                                        static_cast<double>(stats.encoded_bytes);

    if (mode == Mode::Huffman) {
        std::uint64_t uncoded = 0;
        for (std::uint64_t v = 0; v < n; ++v)
            if (hist[v] > 0 && !codebook.has_code(static_cast<Vertex>(v))) uncoded++;
        stats.uncoded_vertex_fraction = static_cast<double>(uncoded) / static_cast<double>(n);
    }

    t0 = Clock::now();
    SelectOptions opt;
    opt.k = cfg.k;
    opt.workers = cfg.workers;
    opt.merged_argmax = cfg.merged_argmax;
    opt.ledger = &mem;

    SeedSet seeds;
    switch (mode) {
        case Mode::Raw:
            seeds = select_raw(raw_blocks, n, opt);
            break;
        case Mode::Huffman:
            seeds = select_huffman(codebook, encoded, hist, opt);
            break;
        case Mode::Bitmap:
            seeds = select_bitmap(bitmaps, popcount_hist(bitmaps, cfg.workers), opt);
            break;
    }
    stats.times.select_s = seconds_since(t0);
    stats.times.total_s = seconds_since(t_start);
    stats.seeds = seeds;
    return {std::move(seeds), std::move(stats)};
}

}  // namespace immx
