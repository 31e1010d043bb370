#include "immx/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

namespace immx {

namespace {

struct EdgeRec {
    Vertex src;
    Vertex dst;
    double weight;
};

Graph build_csr(std::vector<EdgeRec>& edges, std::vector<std::uint64_t>&& original_ids) {
    if (edges.empty()) throw std::runtime_error("edge list is empty after preprocessing");

    const std::uint64_t n = original_ids.size();

    std::stable_sort(edges.begin(), edges.end(), [](const EdgeRec& a, const EdgeRec& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    // collapse duplicates, first occurrence wins
    auto last = std::unique(edges.begin(), edges.end(), [](const EdgeRec& a, const EdgeRec& b) {
        return a.src == b.src && a.dst == b.dst;
    });
    edges.erase(last, edges.end());

    Graph g;
    g.num_vertices = n;
    g.num_edges = edges.size();
    g.original_ids = std::move(original_ids);
    g.offsets.assign(n + 1, 0);
    for (const EdgeRec& e : edges) g.offsets[e.src + 1]++;
    for (std::uint64_t v = 0; v < n; ++v) g.offsets[v + 1] += g.offsets[v];
    g.targets.resize(g.num_edges);
    g.probs.resize(g.num_edges);
    for (std::uint64_t i = 0; i < g.num_edges; ++i) {
        g.targets[i] = edges[i].dst;
        g.probs[i] = edges[i].weight;
    }
    return g;
}

}  // namespace

Graph load_edge_list(std::istream& in, bool directed) {
    std::vector<EdgeRec> edges;
    std::unordered_map<std::uint64_t, Vertex> dense;
    std::vector<std::uint64_t> original_ids;

    auto intern = [&](std::uint64_t raw) -> Vertex {
        auto [it, inserted] = dense.try_emplace(raw, static_cast<Vertex>(original_ids.size()));
        if (inserted) original_ids.push_back(raw);
        return it->second;
    };

    auto malformed = [](std::uint64_t lineno, const std::string& line) {
        return std::runtime_error("malformed edge list line " + std::to_string(lineno) + ": '" +
                                  line + "'");
    };
    auto is_uint = [](const std::string& tok) {
        return !tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos;
    };

    std::string line;
    std::vector<std::string> tok;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        tok.clear();
        for (std::size_t i = first; i < line.size();) {
            const auto end = line.find_first_of(" \t\r", i);
            const auto stop = (end == std::string::npos) ? line.size() : end;
            if (stop > i) tok.emplace_back(line, i, stop - i);
            i = (end == std::string::npos) ? line.size() : end + 1;
        }
        if ((tok.size() != 2 && tok.size() != 3) || !is_uint(tok[0]) || !is_uint(tok[1]))
            throw malformed(lineno, line);

        const std::uint64_t raw_src = std::stoull(tok[0]);
        const std::uint64_t raw_dst = std::stoull(tok[1]);
        double weight = 1.0;
        if (tok.size() == 3) {
            std::size_t consumed = 0;
            try {
                weight = std::stod(tok[2], &consumed);
            } catch (const std::exception&) {
                throw malformed(lineno, line);
            }
            if (consumed != tok[2].size() || weight < 0.0 || !std::isfinite(weight))
                throw malformed(lineno, line);
        }

        if (raw_src == raw_dst) {
            intern(raw_src);  // keep the vertex even if the loop is dropped
            continue;
        }
        Vertex u = intern(raw_src);
        Vertex v = intern(raw_dst);
        edges.push_back({u, v, weight});
        if (!directed) edges.push_back({v, u, weight});
    }
    return build_csr(edges, std::move(original_ids));
}

Graph load_edge_list_file(const std::string& path, bool directed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_edge_list(in, directed);
}

Graph transpose(const Graph& g) {
    Graph t;
    t.num_vertices = g.num_vertices;
    t.num_edges = g.num_edges;
    t.original_ids = g.original_ids;
    t.offsets.assign(g.num_vertices + 1, 0);
    for (Vertex v : g.targets) t.offsets[v + 1]++;
    for (std::uint64_t v = 0; v < g.num_vertices; ++v) t.offsets[v + 1] += t.offsets[v];
    t.targets.resize(g.num_edges);
    t.probs.resize(g.num_edges);
    std::vector<std::uint64_t> cursor(t.offsets.begin(), t.offsets.end() - 1);
    for (std::uint64_t u = 0; u < g.num_vertices; ++u) {
        for (std::uint64_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
            const std::uint64_t slot = cursor[g.targets[e]]++;
            t.targets[slot] = static_cast<Vertex>(u);
            t.probs[slot] = g.probs[e];
        }
    }
    return t;
}

void assign_weights(Graph& g, WeightModel model, double p) {
    if (model == WeightModel::Uniform) {
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("uniform edge probability must be in [0,1]");
        std::fill(g.probs.begin(), g.probs.end(), p);
        return;
    }
    std::vector<std::uint64_t> in_degree(g.num_vertices, 0);
    for (Vertex v : g.targets) in_degree[v]++;
    for (std::uint64_t i = 0; i < g.num_edges; ++i)
        g.probs[i] = 1.0 / static_cast<double>(in_degree[g.targets[i]]);
}

namespace {
constexpr char kMagic[6] = {'I', 'M', 'M', 'X', 'G', '1'};

template <typename T>
void write_pod(std::ostream& out, const T* data, std::size_t count) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(sizeof(T) * count));
}

template <typename T>
void read_pod(std::istream& in, T* data, std::size_t count) {
    in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(sizeof(T) * count));
    if (!in) throw std::runtime_error("graph cache truncated");
}
}  // namespace

void save_graph_cache(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(kMagic, sizeof(kMagic));
    write_pod(out, &g.num_vertices, 1);
    write_pod(out, &g.num_edges, 1);
    write_pod(out, g.offsets.data(), g.offsets.size());
    write_pod(out, g.targets.data(), g.targets.size());
    write_pod(out, g.probs.data(), g.probs.size());
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

Graph load_graph_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    char magic[6];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("'" + path + "' is not an IMMXG1 graph cache");
    Graph g;
    read_pod(in, &g.num_vertices, 1);
    read_pod(in, &g.num_edges, 1);
    g.offsets.resize(g.num_vertices + 1);
    g.targets.resize(g.num_edges);
    g.probs.resize(g.num_edges);
    read_pod(in, g.offsets.data(), g.offsets.size());
    read_pod(in, g.targets.data(), g.targets.size());
    read_pod(in, g.probs.data(), g.probs.size());
    // the cache stores the densified graph; ids are their own originals
    g.original_ids.resize(g.num_vertices);
    for (std::uint64_t v = 0; v < g.num_vertices; ++v) g.original_ids[v] = v;
    return g;
}

}  // namespace immx
