"""Sparse cuts, small-set expansion and threshold rank on random hypercube subgraphs."""

from .construction import ConstructionError, ConstructionParams, ConstructionTrace, build_gnk
from .cuts import (BoostError, CutResult, SeparatorResult, balance_cap, boost_separator, coordinate_cut,
                   cut_of, is_valid_separator, min_edge_expansion, spectral_sweep_cut)
from .decomposition import girth_bound, girth_bound_simplified, trevisan_decompose, trevisan_experiment
from .experiments import run_experiment, verify_bundle
from .graph import ACYCLIC, Graph, average_degree, components, girth, induced_subgraph, load, save
from .hypercube import CubeVertex, full_cube, hamming_distance
from .oracles import exact_edge_separator, exact_min_expansion_set, exact_vertex_separator
from .spectral import cheeger_check, rank_experiment, regularize, spectrum, threshold_rank
from .sse import SseError, SseParams, extract_disjoint_family, shrink_to_small_set

__version__ = "0.1.0"

__all__ = [
    "ACYCLIC", "BoostError", "ConstructionError", "ConstructionParams", "ConstructionTrace",
    "CubeVertex", "CutResult", "Graph", "SeparatorResult", "SseError", "SseParams",
    "average_degree", "balance_cap", "boost_separator", "build_gnk", "cheeger_check", "components",
    "coordinate_cut", "cut_of", "exact_edge_separator", "exact_min_expansion_set",
    "exact_vertex_separator", "extract_disjoint_family", "full_cube", "girth", "girth_bound",
    "girth_bound_simplified", "hamming_distance", "induced_subgraph", "is_valid_separator", "load",
    "min_edge_expansion", "rank_experiment", "regularize", "run_experiment", "save",
    "shrink_to_small_set", "spectral_sweep_cut", "spectrum", "threshold_rank",
    "trevisan_decompose", "trevisan_experiment", "verify_bundle",
]
