#pragma once

// Shared helpers for the test binaries: graph builders and the independent
// oracles the implementation is checked against. Everything here is written
// against the raw definitions, not the library's code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "immx/graph.hpp"
#include "immx/sampler.hpp"

namespace testutil {

using immx::Graph;
using immx::Vertex;

// Graph from explicit directed (src, dst, prob) triples; n fixed by caller.
inline Graph make_graph(std::uint64_t n,
                        const std::vector<std::tuple<Vertex, Vertex, double>>& edges) {
    std::vector<std::vector<std::pair<Vertex, double>>> adj(n);
    for (auto [u, v, p] : edges) adj[u].push_back({v, p});
    Graph g;
    g.num_vertices = n;
    g.num_edges = edges.size();
    g.offsets.assign(n + 1, 0);
    for (std::uint64_t u = 0; u < n; ++u) g.offsets[u + 1] = g.offsets[u] + adj[u].size();
    for (std::uint64_t u = 0; u < n; ++u) {
        for (auto [v, p] : adj[u]) {
            g.targets.push_back(v);
            g.probs.push_back(p);
        }
    }
    g.original_ids.resize(n);
    for (std::uint64_t v = 0; v < n; ++v) g.original_ids[v] = v;
    return g;
}

inline Graph complete_graph(std::uint64_t n, double p) {
    std::vector<std::tuple<Vertex, Vertex, double>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) edges.push_back({u, v, p});
    return make_graph(n, edges);
}

// Random simple directed graph with <= m edges (duplicates collapse).
inline Graph random_graph(std::mt19937_64& rng, std::uint64_t n, std::uint64_t m) {
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<std::tuple<Vertex, Vertex, double>> edges;
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    for (std::uint64_t i = 0; i < m; ++i) {
        Vertex u = pick(rng), v = pick(rng);
        if (u == v) continue;
        if (!seen.insert({u, v}).second) continue;
        edges.push_back({u, v, 0.0});
    }
    if (edges.empty()) edges.push_back({0, 1, 0.0});
    return make_graph(n, edges);
}

// Plain reverse-reachability BFS (all edges live) over the transposed graph.
inline std::vector<Vertex> full_reverse_reachable(const Graph& g_t, Vertex root) {
    std::vector<bool> seen(g_t.num_vertices, false);
    std::vector<Vertex> order;
    std::queue<Vertex> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        order.push_back(u);
        for (std::uint64_t e = g_t.offsets[u]; e < g_t.offsets[u + 1]; ++e) {
            Vertex v = g_t.targets[e];
            if (!seen[v]) {
                seen[v] = true;
                q.push(v);
            }
        }
    }
    return order;
}

// Independent greedy max-coverage: k rounds of "count live sets per vertex,
// take the smallest id among the maxima, drop the sets it covers".
struct GreedyOracle {
    std::vector<Vertex> seeds;
    std::vector<std::uint64_t> marginal;
};

inline GreedyOracle brute_force_greedy(const std::vector<std::vector<Vertex>>& sets,
                                       std::uint64_t n, std::uint32_t k) {
    GreedyOracle out;
    std::vector<bool> dead(sets.size(), false);
    std::vector<bool> chosen(n, false);
    for (std::uint32_t round = 0; round < k; ++round) {
        std::vector<std::uint64_t> count(n, 0);
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (dead[j]) continue;
            for (Vertex v : sets[j]) count[v]++;
        }
        Vertex best = 0;
        for (Vertex v = 1; v < n; ++v)
            if (count[v] > count[best]) best = v;
        if (count[best] == 0) {
            Vertex pad = 0;
            while (chosen[pad]) ++pad;
            best = pad;
        }
        std::uint64_t gain = 0;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (dead[j]) continue;
            if (std::find(sets[j].begin(), sets[j].end(), best) != sets[j].end()) {
                dead[j] = true;
                gain++;
            }
        }
        chosen[best] = true;
        out.seeds.push_back(best);
        out.marginal.push_back(gain);
    }
    return out;
}

// Eq-1 evaluated from scratch: log-binomial as a sum of logs rather than
// lgamma, so the oracle path differs from the implementation's.
inline double theta_oracle(std::uint64_t n, std::uint64_t k, double eps, std::uint32_t i) {
    double log_binom = 0.0;
    for (std::uint64_t j = 1; j <= k; ++j)
        log_binom += std::log(static_cast<double>(n - k + j)) - std::log(static_cast<double>(j));
    const double nd = static_cast<double>(n);
    const double bracket = log_binom * std::log(nd) + std::log(std::log2(nd));
    return (2.0 + 2.0 * std::sqrt(2.0) / 3.0 * eps) * bracket * std::pow(2.0, i) /
           (2.0 * eps * eps);
}

inline std::vector<std::vector<Vertex>> to_lists(const immx::RrrBlock& block) {
    std::vector<std::vector<Vertex>> out;
    for (const auto& r : block.sets) out.push_back(r.members);
    return out;
}

// Random RRR-style collection: each set is a random-size draw of distinct
// vertices; first member acts as the root.
inline std::vector<std::vector<Vertex>> random_sets(std::mt19937_64& rng, std::uint64_t n,
                                                    std::size_t count, std::uint32_t max_size) {
    std::vector<std::vector<Vertex>> sets(count);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    std::uniform_int_distribution<std::uint32_t> size_of(1, max_size);
    for (auto& s : sets) {
        const std::uint32_t target = size_of(rng);
        std::set<Vertex> used;
        while (s.size() < target && s.size() < n) {
            Vertex v = pick(rng);
            if (used.insert(v).second) s.push_back(v);
        }
    }
    return sets;
}

}  // namespace testutil
