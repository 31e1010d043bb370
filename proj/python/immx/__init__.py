"""Influence maximization with Huffman- or bitmap-encoded RRR sets.

The heavy lifting lives in the C++ extension ``immx._core``; this package
re-exports it and adds a small convenience wrapper around ``run``.
"""

import json as _json

from ._core import (
    BitmapCollection,
    EncodedRrr,
    Graph,
    HuffmanCodebook,
    assign_weights,
    build_codebook,
    choose_encoding,
    decode_find,
    density,
    encode_bitmap,
    encode_rrr,
    estimate_theta,
    load_edge_list,
    load_edge_list_text,
    load_graph_cache,
    merged_argmax,
    sample_block,
    sample_rrr,
    save_graph_cache,
    select_raw,
    skewness,
    table_argmax,
    theta_bound,
    theta_bound_real,
    transpose,
)
from ._core import run as _run

__all__ = [
    "BitmapCollection",
    "EncodedRrr",
    "Graph",
    "HuffmanCodebook",
    "assign_weights",
    "build_codebook",
    "choose_encoding",
    "decode_find",
    "density",
    "encode_bitmap",
    "encode_rrr",
    "estimate_theta",
    "load_edge_list",
    "load_edge_list_text",
    "load_graph_cache",
    "merged_argmax",
    "run",
    "sample_block",
    "sample_rrr",
    "save_graph_cache",
    "select_raw",
    "skewness",
    "table_argmax",
    "theta_bound",
    "theta_bound_real",
    "transpose",
]

__version__ = "0.1.0"


def run(graph, k, *, epsilon=0.5, blocks=8, mode="auto", seed=42, workers=1,
        merged_argmax=False):
    """Run the full pipeline and return a dict with seeds and parsed stats."""
    out = _run(graph, k, epsilon, blocks, mode, seed, workers, merged_argmax)
    out["stats"] = _json.loads(out.pop("stats_json"))
    return out
