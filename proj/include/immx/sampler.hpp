#pragma once

#include <cstdint>
#include <vector>

#include "immx/graph.hpp"
#include "immx/rng.hpp"

namespace immx {

// One reverse-reachability Monte-Carlo sample. members holds distinct
// vertices in visit order; members[0] is the BFS root.
struct RrrSet {
    std::vector<Vertex> members;

    Vertex root() const { return members.front(); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(members.size()); }
};

struct RrrBlock {
    std::vector<RrrSet> sets;
    std::uint32_t block_index = 0;  // 1-based, block 1 is the warm-up

    std::uint64_t member_total() const {
        std::uint64_t s = 0;
        for (const RrrSet& r : sets) s += r.members.size();
        return s;
    }
};

struct SamplingPlan {
    std::uint64_t theta = 0;
    std::uint32_t k = 0;
    double epsilon = 0.0;
    std::uint32_t blocks = 0;
    std::uint64_t rng_seed = 0;
    // diagnostics from the doubling loop
    std::uint32_t exit_iteration = 0;   // 0 = stopped at the iteration cap
    double covered_fraction = 0.0;      // F at the final iteration
    std::uint64_t estimation_samples = 0;
};

// Per-worker scratch for the randomized reverse BFS; reusable across samples.
struct SamplerScratch {
    std::vector<std::uint32_t> mark;
    std::uint32_t epoch = 0;
};

// Randomized BFS from `root` over the transposed graph: each out-edge of the
// frontier is traversed independently with its probability, each vertex is
// visited at most once.
RrrSet sample_rrr(const Graph& g_t, Vertex root, Rng& rng, SamplerScratch& scratch);
RrrSet sample_rrr(const Graph& g_t, Vertex root, Rng& rng);

// Number of samples required at doubling iteration i >= 1 (natural logs,
// log-binomial via lgamma). theta_bound is the ceiling of the real-valued
// form; the latter doubles exactly in i.
double theta_bound_real(std::uint64_t n, std::uint64_t k, double epsilon, std::uint32_t i);
std::uint64_t theta_bound(std::uint64_t n, std::uint64_t k, double epsilon, std::uint32_t i);

// Martingale doubling loop: samples up to theta_i sets per iteration (streams
// keyed by (seed, sample index), so estimation samples coincide with the
// first production samples), runs greedy max-coverage for k seeds, and exits
// once n*F >= (1+eps')*n/2^i with eps' = sqrt(2)*eps. The returned theta is
// the bound evaluated at LB = n*F/(1+eps'), never less than the samples
// already drawn.
SamplingPlan estimate_theta(const Graph& g_t, std::uint32_t k, double epsilon,
                            std::uint64_t rng_seed, int workers);

// `count` samples with global indices [first_index, first_index+count);
// roots uniform over [0, n). Output is identical for any worker count.
RrrBlock sample_block(const Graph& g_t, std::uint64_t count, std::uint64_t first_index,
                      std::uint32_t block_index, std::uint64_t rng_seed, int workers);

}  // namespace immx
