#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace immx {

using Vertex = std::uint32_t;

enum class WeightModel { WeightedCascade, Uniform };

// Immutable after construction; CSR over dense vertex ids [0, n).
struct Graph {
    std::uint64_t num_vertices = 0;
    std::uint64_t num_edges = 0;
    std::vector<std::uint64_t> offsets;  // length n+1, offsets[0]=0, offsets[n]=m
    std::vector<Vertex> targets;         // length m
    std::vector<double> probs;           // length m, aligned with targets
    // internal id -> id as it appeared in the input file
    std::vector<std::uint64_t> original_ids;

    std::uint64_t out_degree(Vertex v) const { return offsets[v + 1] - offsets[v]; }
};

// Parses whitespace-separated "src dst [weight]" lines; '#' starts a comment
// line. Self-loops are dropped, duplicate edges collapsed keeping the first
// weight, vertex ids densified in first-seen order. directed=false emits both
// directions per line. Throws std::runtime_error with the line number on a
// malformed line, and on an empty graph.
Graph load_edge_list(std::istream& in, bool directed);
Graph load_edge_list_file(const std::string& path, bool directed);

// Every edge (u,v,p) becomes (v,u,p).
Graph transpose(const Graph& g);

// Uniform: every prob := p (p must be in [0,1]).
// WeightedCascade: prob(u,v) := 1 / in_degree(v).
void assign_weights(Graph& g, WeightModel model, double p = 0.0);

// Binary cache: magic "IMMXG1", then little-endian u64 n, u64 m,
// u64 offsets[n+1], u32 targets[m], f64 probs[m].
void save_graph_cache(const Graph& g, const std::string& path);
Graph load_graph_cache(const std::string& path);

}  // namespace immx
