#include "immx/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "immx/select.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace immx {

RrrSet sample_rrr(const Graph& g_t, Vertex root, Rng& rng, SamplerScratch& scratch) {
    const std::uint64_t n = g_t.num_vertices;
    if (scratch.mark.size() != n) {
        scratch.mark.assign(n, 0);
        scratch.epoch = 0;
    }
    if (++scratch.epoch == 0) {  // stamp counter wrapped
        scratch.mark.assign(n, 0);
        scratch.epoch = 1;
    }
    const std::uint32_t epoch = scratch.epoch;

    RrrSet out;
    out.members.push_back(root);
    scratch.mark[root] = epoch;

    // frontier is implicit: members[head..] are not yet expanded
    for (std::size_t head = 0; head < out.members.size(); ++head) {
        const Vertex u = out.members[head];
        const std::uint64_t begin = g_t.offsets[u], end = g_t.offsets[u + 1];
        for (std::uint64_t e = begin; e < end; ++e) {
            const Vertex v = g_t.targets[e];
            if (scratch.mark[v] == epoch) continue;
            const double p = g_t.probs[e];
            if (p <= 0.0) continue;
            if (p < 1.0 && rng.next_double() >= p) continue;
            scratch.mark[v] = epoch;
            out.members.push_back(v);
        }
    }
    return out;
}

RrrSet sample_rrr(const Graph& g_t, Vertex root, Rng& rng) {
    SamplerScratch scratch;
    return sample_rrr(g_t, root, rng, scratch);
}

namespace {

double log_binomial(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Eq-1 value divided by 2^i.
double theta_base(std::uint64_t n, std::uint64_t k, double epsilon) {
    const double nd = static_cast<double>(n);
    const double bracket = log_binomial(n, k) * std::log(nd) + std::log(std::log2(nd));
    return (2.0 + 2.0 * std::sqrt(2.0) / 3.0 * epsilon) * bracket / (2.0 * epsilon * epsilon);
}

void check_theta_args(std::uint64_t n, std::uint64_t k, double epsilon) {
    if (n < 2) throw std::invalid_argument("theta bound requires n >= 2");
    if (k < 1 || k >= n) throw std::invalid_argument("theta bound requires 1 <= k < n");
    if (!(epsilon > 0.0)) throw std::invalid_argument("theta bound requires epsilon > 0");
}

}  // namespace

double theta_bound_real(std::uint64_t n, std::uint64_t k, double epsilon, std::uint32_t i) {
    check_theta_args(n, k, epsilon);
    if (i < 1) throw std::invalid_argument("theta bound requires i >= 1");
    return theta_base(n, k, epsilon) * std::exp2(static_cast<double>(i));
}

std::uint64_t theta_bound(std::uint64_t n, std::uint64_t k, double epsilon, std::uint32_t i) {
    return static_cast<std::uint64_t>(std::ceil(theta_bound_real(n, k, epsilon, i)));
}

RrrBlock sample_block(const Graph& g_t, std::uint64_t count, std::uint64_t first_index,
                      std::uint32_t block_index, std::uint64_t rng_seed, int workers) {
    const std::uint64_t n = g_t.num_vertices;
    RrrBlock block;
    block.block_index = block_index;
    block.sets.resize(count);

    if (workers < 1) workers = 1;
#pragma omp parallel num_threads(workers) if (workers > 1)
    {
        SamplerScratch scratch;
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(count); ++j) {
            Rng rng = stream_for(rng_seed, first_index + static_cast<std::uint64_t>(j));
            const Vertex root = static_cast<Vertex>(rng.next_below(n));
            block.sets[j] = sample_rrr(g_t, root, rng, scratch);
        }
    }
    return block;
}

SamplingPlan estimate_theta(const Graph& g_t, std::uint32_t k, double epsilon,
                            std::uint64_t rng_seed, int workers) {
    const std::uint64_t n = g_t.num_vertices;
    check_theta_args(n, k, epsilon);

    const double eps_prime = std::sqrt(2.0) * epsilon;
    const double base = theta_base(n, k, epsilon);
    const std::uint32_t i_max = std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(n)))) - 1);

    SamplingPlan plan;
    plan.k = k;
    plan.epsilon = epsilon;
    plan.rng_seed = rng_seed;

    std::vector<RrrBlock> pool(1);
    pool[0].block_index = 1;
    std::uint64_t sampled = 0;
    double lower_bound = 0.0;

    for (std::uint32_t i = 1; i <= i_max; ++i) {
        const std::uint64_t theta_i = static_cast<std::uint64_t>(
            std::ceil(base * std::exp2(static_cast<double>(i))));
        if (theta_i > sampled) {
            RrrBlock more = sample_block(g_t, theta_i - sampled, sampled, 1, rng_seed, workers);
            auto& sets = pool[0].sets;
            sets.insert(sets.end(), std::make_move_iterator(more.sets.begin()),
                        std::make_move_iterator(more.sets.end()));
            sampled = theta_i;
        }

        SelectOptions opt;
        opt.k = k;
        opt.workers = workers;
        const SeedSet greedy = select_raw(pool, n, opt);
        const double covered = greedy.coverage.empty() ? 0.0 : greedy.coverage.back();
        plan.covered_fraction = covered;

        const double x_i = static_cast<double>(n) / std::exp2(static_cast<double>(i));
        if (static_cast<double>(n) * covered >= (1.0 + eps_prime) * x_i) {
            plan.exit_iteration = i;
            lower_bound = static_cast<double>(n) * covered / (1.0 + eps_prime);
            break;
        }
    }

    plan.estimation_samples = sampled;
    if (plan.exit_iteration != 0) {
        const std::uint64_t bound = static_cast<std::uint64_t>(
            std::ceil(base * static_cast<double>(n) / lower_bound));
        plan.theta = std::max(bound, sampled);
    } else {
        plan.theta = sampled;  // iteration cap hit
    }
    return plan;
}

}  // namespace immx
