"""Structural measures that explain seed-set size.

All measures treat the graph as undirected: ``u`` and ``v`` are neighbors if
either directed edge exists. On symmetric graphs this is the plain
adjacency.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decomp import SeedSet
from .graph import DirectedGraph, symmetrize
from .thresholds import IntegerCap


class UnsupportedConfigurationError(ValueError):
    """The requested measure is undefined for the given threshold rule."""


def undirected_neighbors(g: DirectedGraph) -> list[set[int]]:
    h = symmetrize(g)
    ptr, idx = h.out_indptr.tolist(), h.out_indices.tolist()
    return [set(idx[ptr[v] : ptr[v + 1]]) for v in range(h.n)]


def undirected_degree(g: DirectedGraph) -> np.ndarray:
    return symmetrize(g).out_degree


def _local_clustering(nbrs: list[set[int]], v: int) -> float:
    nv = nbrs[v]
    d = len(nv)
    if d < 2:
        return 0.0
    links = 0
    for u in nv:
        links += len(nbrs[u] & nv)
    r = links // 2
    return 2.0 * r / (d * (d - 1))


def clustering_coefficient(g: DirectedGraph, v: int) -> float:
    """Fraction of ``v``'s neighbor pairs that are adjacent; 0 for degree < 2."""
    if not 0 <= v < g.n:
        raise ValueError(f"node id {v} out of range")
    return _local_clustering(undirected_neighbors(g), v)


def average_clustering(g: DirectedGraph, sample: int | None = None, rng_seed: int = 0) -> float:
    """Mean local clustering over all nodes (degree < 2 counts as 0).

    ``sample`` averages over that many uniformly drawn nodes instead, for
    graphs where the exact O(sum d^2) pass is too slow.
    """
    nbrs = undirected_neighbors(g)
    if sample is not None and sample < g.n:
        nodes = np.random.default_rng(rng_seed).choice(g.n, size=sample, replace=False).tolist()
    else:
        nodes = range(g.n)
    vals = [_local_clustering(nbrs, v) for v in nodes]
    return math.fsum(vals) / len(vals) if vals else 0.0


def reichman_bound(g: DirectedGraph, k: int | IntegerCap) -> float:
    """Upper bound ``sum_i min(1, k / (d_i + 1))`` on the minimum seed-set size.

    Only meaningful for one integer threshold shared by every node.
    """
    if isinstance(k, IntegerCap):
        k = k.k
    elif isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise UnsupportedConfigurationError(
            "the bound applies only to a homogeneous integer threshold"
        )
    if k < 1:
        raise UnsupportedConfigurationError("threshold must be >= 1")
    d = undirected_degree(g)
    return math.fsum(min(1.0, k / (di + 1)) for di in d.tolist())


def bound_ratio(seed: SeedSet | int, bound: float) -> float:
    if bound <= 0:
        raise ValueError("bound must be positive")
    size = seed.size if isinstance(seed, SeedSet) else int(seed)
    return size / bound


def category(mean_seed_fraction: float) -> str:
    """Susceptibility class by average seed fraction: A < 2% <= B <= 10% < C."""
    if mean_seed_fraction < 0.02:
        return "A"
    if mean_seed_fraction <= 0.10:
        return "B"
    return "C"


@dataclass
class NetworkReport:
    n: int
    m_undirected: int
    avg_clustering: float
    louvain_modularity: float
    mean_seed_fraction: float | None = None
    category: str | None = None


def network_report(g: DirectedGraph, rng_seed: int = 0, clustering_sample: int | None = None) -> NetworkReport:
    from .community import louvain

    h = symmetrize(g)
    q = louvain(h, rng_seed=rng_seed)[1] if h.m else 0.0
    return NetworkReport(
        n=h.n,
        m_undirected=h.m // 2,
        avg_clustering=average_clustering(h, sample=clustering_sample, rng_seed=rng_seed),
        louvain_modularity=q,
    )
