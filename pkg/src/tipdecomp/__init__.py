"""Seed sets that tip an entire network under the deterministic threshold model."""

from .cascade import CascadeTrace, Verification, activate_once, brute_force_min_seed, gamma, verify_seed
from .community import Partition, louvain, modularity
from .decomp import SeedSet, seed_fraction, tip_decomp
from .graph import DirectedGraph, EdgeListError, GraphError, generate, load_edge_list, symmetrize
from .metrics import average_clustering, bound_ratio, clustering_coefficient, reichman_bound
from .thresholds import FractionOfInDegree, IntegerCap, PerNode, parse_threshold, resolve

__version__ = "0.1.0"

__all__ = [
    "CascadeTrace", "DirectedGraph", "EdgeListError", "FractionOfInDegree", "GraphError",
    "IntegerCap", "Partition", "PerNode", "SeedSet", "Verification", "activate_once",
    "average_clustering", "bound_ratio", "brute_force_min_seed", "clustering_coefficient",
    "gamma", "generate", "load_edge_list", "louvain", "modularity", "parse_threshold",
    "reichman_bound", "resolve", "seed_fraction", "symmetrize", "tip_decomp", "verify_seed",
]
