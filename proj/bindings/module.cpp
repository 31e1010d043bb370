#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "immx/bitmap.hpp"
#include "immx/characterize.hpp"
#include "immx/graph.hpp"
#include "immx/huffman.hpp"
#include "immx/pipeline.hpp"
#include "immx/sampler.hpp"
#include "immx/select.hpp"

namespace py = pybind11;
using namespace immx;

namespace {

RrrBlock block_from_lists(const std::vector<std::vector<Vertex>>& sets,
                          std::uint32_t block_index) {
    RrrBlock block;
    block.block_index = block_index;
    block.sets.reserve(sets.size());
    for (const auto& members : sets) {
        if (members.empty()) throw std::invalid_argument("a set must contain its root");
        block.sets.push_back({members});
    }
    return block;
}

std::vector<std::vector<Vertex>> lists_from_block(const RrrBlock& block) {
    std::vector<std::vector<Vertex>> out;
    out.reserve(block.sets.size());
    for (const RrrSet& r : block.sets) out.push_back(r.members);
    return out;
}

WeightModel weight_model_from_name(const std::string& name) {
    if (name == "wc" || name == "weighted-cascade") return WeightModel::WeightedCascade;
    if (name == "uniform") return WeightModel::Uniform;
    throw std::invalid_argument("unknown weight model '" + name + "'");
}

py::dict seedset_to_dict(const SeedSet& s) {
    py::dict d;
    d["seeds"] = s.seeds;
    d["marginal"] = s.marginal;
    d["coverage"] = s.coverage;
    d["padded"] = s.padded;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Influence maximization engine with Huffman/bitmap encoded RRR sets";

    py::class_<Graph>(m, "Graph")
        .def_readonly("n", &Graph::num_vertices)
        .def_readonly("m", &Graph::num_edges)
        .def_readonly("offsets", &Graph::offsets)
        .def_readonly("targets", &Graph::targets)
        .def_readonly("probs", &Graph::probs)
        .def_readonly("original_ids", &Graph::original_ids)
        .def("out_degree", &Graph::out_degree)
        .def("__repr__", [](const Graph& g) {
            std::ostringstream os;
            os << "Graph(n=" << g.num_vertices << ", m=" << g.num_edges << ")";
            return os.str();
        });

    m.def("load_edge_list", &load_edge_list_file, py::arg("path"), py::arg("directed") = false);
    m.def(
        "load_edge_list_text",
        [](const std::string& text, bool directed) {
            std::istringstream in(text);
            return load_edge_list(in, directed);
        },
        py::arg("text"), py::arg("directed") = false);
    m.def("transpose", &transpose);
    m.def(
        "assign_weights",
        [](Graph& g, const std::string& model, double p) {
            assign_weights(g, weight_model_from_name(model), p);
        },
        py::arg("graph"), py::arg("model") = "wc", py::arg("p") = 0.1);
    m.def("save_graph_cache", &save_graph_cache);
    m.def("load_graph_cache", &load_graph_cache);

    m.def("theta_bound", &theta_bound, py::arg("n"), py::arg("k"), py::arg("epsilon"),
          py::arg("i"));
    m.def("theta_bound_real", &theta_bound_real, py::arg("n"), py::arg("k"), py::arg("epsilon"),
          py::arg("i"));

    m.def(
        "skewness",
        [](const std::vector<std::uint32_t>& sizes) { return skewness(sizes); },
        py::arg("sizes"));
    m.def(
        "density",
        [](const std::vector<std::uint32_t>& sizes, std::uint64_t n) {
            return density(sizes, n);
        },
        py::arg("sizes"), py::arg("n"));
    m.def(
        "choose_encoding",
        [](double s, double d) { return std::string(mode_name(choose_encoding(s, d))); },
        py::arg("skewness"), py::arg("density"));

    m.def(
        "sample_rrr",
        [](const Graph& g_t, Vertex root, std::uint64_t seed) {
            Rng rng(seed);
            return sample_rrr(g_t, root, rng).members;
        },
        py::arg("g_t"), py::arg("root"), py::arg("seed"));
    m.def(
        "sample_block",
        [](const Graph& g_t, std::uint64_t count, std::uint64_t first_index,
           std::uint32_t block_index, std::uint64_t seed, int workers) {
            return lists_from_block(
                sample_block(g_t, count, first_index, block_index, seed, workers));
        },
        py::arg("g_t"), py::arg("count"), py::arg("first_index") = 0,
        py::arg("block_index") = 1, py::arg("seed") = 42, py::arg("workers") = 1);
    m.def(
        "estimate_theta",
        [](const Graph& g_t, std::uint32_t k, double epsilon, std::uint64_t seed, int workers) {
            const SamplingPlan p = estimate_theta(g_t, k, epsilon, seed, workers);
            py::dict d;
            d["theta"] = p.theta;
            d["exit_iteration"] = p.exit_iteration;
            d["covered_fraction"] = p.covered_fraction;
            d["estimation_samples"] = p.estimation_samples;
            return d;
        },
        py::arg("g_t"), py::arg("k"), py::arg("epsilon"), py::arg("seed") = 42,
        py::arg("workers") = 1);

    py::class_<HuffmanCodebook>(m, "HuffmanCodebook")
        .def("has_code", &HuffmanCodebook::has_code)
        .def_readonly("coded_vertices", &HuffmanCodebook::coded_vertices)
        .def("code_length",
             [](const HuffmanCodebook& cb, Vertex v) { return cb.code_of[v].len; })
        .def("dump", [](const HuffmanCodebook& cb) {
            std::ostringstream os;
            dump_codebook(cb, os);
            return os.str();
        });

    py::class_<EncodedRrr>(m, "EncodedRrr")
        .def_property_readonly(
            "bits",
            [](const EncodedRrr& e) {
                return py::bytes(reinterpret_cast<const char*>(e.bits.data()), e.bits.size());
            })
        .def_readonly("bit_length", &EncodedRrr::bit_length)
        .def_readonly("copied", &EncodedRrr::copied)
        .def("payload_bytes", &EncodedRrr::payload_bytes);

    m.def(
        "build_codebook",
        [](const std::vector<std::vector<Vertex>>& sets, std::uint64_t n) {
            return build_codebook(block_from_lists(sets, 1), n);
        },
        py::arg("sets"), py::arg("n"));
    m.def(
        "encode_rrr",
        [](const HuffmanCodebook& cb, const std::vector<Vertex>& members,
           std::optional<Vertex> top) {
            return encode_rrr(cb, RrrSet{members}, top);
        },
        py::arg("codebook"), py::arg("members"), py::arg("top") = std::nullopt);
    m.def(
        "decode_find",
        [](const HuffmanCodebook& cb, const EncodedRrr& enc, Vertex top) {
            const DecodeResult r = decode_find(cb, enc, top);
            return py::make_tuple(r.found, r.decoded);
        },
        py::arg("codebook"), py::arg("encoded"), py::arg("top"));

    py::class_<BitmapCollection>(m, "BitmapCollection")
        .def_readonly("n_rows", &BitmapCollection::n_rows)
        .def_property_readonly("n_cols", &BitmapCollection::total_cols)
        .def("byte_size", &BitmapCollection::byte_size)
        .def("popcount_row",
             [](const BitmapCollection& bm, Vertex v) { return popcount_row(bm, v); })
        .def("subtract_row",
             [](BitmapCollection& bm, Vertex v, Vertex top) { return subtract_row(bm, v, top); })
        .def("snapshot_row",
             [](const BitmapCollection& bm, Vertex v) { return snapshot_row(bm, v); })
        .def("row_bits", [](const BitmapCollection& bm, Vertex v) {
            // logical row as a 0/1 list over real (unpadded) columns
            std::vector<int> bits;
            for (const BitmapBlock& b : bm.blocks)
                for (std::uint64_t c = 0; c < b.n_cols; ++c) bits.push_back(b.bit(v, c));
            return bits;
        });

    m.def(
        "encode_bitmap",
        [](const std::vector<std::vector<Vertex>>& sets, std::uint64_t n) {
            BitmapCollection bm;
            bm.n_rows = n;
            bm.blocks.push_back(encode_block(block_from_lists(sets, 1), n));
            return bm;
        },
        py::arg("sets"), py::arg("n"));

    m.def(
        "select_raw",
        [](const std::vector<std::vector<Vertex>>& sets, std::uint64_t n, std::uint32_t k,
           int workers, bool merged) {
            std::vector<RrrBlock> blocks{block_from_lists(sets, 1)};
            SelectOptions opt;
            opt.k = k;
            opt.workers = workers;
            opt.merged_argmax = merged;
            return seedset_to_dict(select_raw(blocks, n, opt));
        },
        py::arg("sets"), py::arg("n"), py::arg("k"), py::arg("workers") = 1,
        py::arg("merged_argmax") = false);
    m.def("merged_argmax", &merged_argmax, py::arg("locals"));
    m.def("table_argmax", &table_argmax, py::arg("counts"));

    m.def(
        "run",
        [](const Graph& g, std::uint32_t k, double epsilon, std::uint32_t blocks,
           const std::string& mode, std::uint64_t seed, int workers, bool merged) {
            RunConfig cfg;
            cfg.k = k;
            cfg.epsilon = epsilon;
            cfg.blocks = blocks;
            cfg.rng_seed = seed;
            cfg.workers = workers;
            cfg.merged_argmax = merged;
            if (mode != "auto") cfg.mode_override = mode_from_name(mode);
            auto [seeds, stats] = run(g, cfg);
            py::dict d = seedset_to_dict(seeds);
            std::vector<std::uint64_t> original;
            original.reserve(seeds.seeds.size());
            for (Vertex s : seeds.seeds) original.push_back(stats.original_ids[s]);
            d["seed_ids"] = original;
            d["stats_json"] = stats_to_json(stats, cfg);
            return d;
        },
        py::arg("graph"), py::arg("k"), py::arg("epsilon") = 0.5, py::arg("blocks") = 8,
        py::arg("mode") = "auto", py::arg("seed") = 42, py::arg("workers") = 1,
        py::arg("merged_argmax") = false);
}
