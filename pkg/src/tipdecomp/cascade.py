"""Deterministic tipping dynamics.

``activate_once`` is a single synchronous step. ``gamma`` runs to the fixed
point with per-node counters of active in-neighbors, touching each edge at
most once, and tags every activation with the synchronous round in which it
happens.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .decomp import SeedSet
from .graph import DirectedGraph

MAX_BRUTE_FORCE_N = 20


@dataclass(frozen=True)
class CascadeTrace:
    rounds: tuple[frozenset[int], ...]

    @property
    def total_activated(self) -> int:
        return sum(len(r) for r in self.rounds)

    @property
    def converged_at(self) -> int:
        """Index of the last round that activated anything (0 if only the seed)."""
        return len(self.rounds) - 1

    def active(self) -> frozenset[int]:
        return frozenset().union(*self.rounds)

    def to_csv(self, g: DirectedGraph | None = None) -> str:
        name = g.label if g is not None else str
        lines = ["round,node"]
        for t, r in enumerate(self.rounds):
            lines.extend(f"{t},{name(v)}" for v in sorted(r))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Verification:
    complete: bool
    activated: int
    rounds: int


def _check_nodes(g: DirectedGraph, nodes: Iterable[int]) -> frozenset[int]:
    s = frozenset(int(v) for v in nodes)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"node id {v} out of range [0, {g.n})")
    return s


def activate_once(g: DirectedGraph, k: Sequence[int] | np.ndarray, active: Iterable[int]) -> frozenset[int]:
    """``active`` plus every node with at least ``k[i]`` active in-neighbors."""
    active = _check_nodes(g, active)
    mask = np.zeros(g.n, dtype=bool)
    mask[list(active)] = True
    src = np.repeat(np.arange(g.n), g.out_degree)
    hits = np.bincount(g.out_indices[mask[src]], minlength=g.n)
    newly = np.flatnonzero(hits >= np.asarray(k))
    return active | frozenset(newly.tolist())


def gamma(g: DirectedGraph, k: Sequence[int] | np.ndarray, seed: Iterable[int]) -> CascadeTrace:
    """Run the cascade from ``seed`` to its fixed point."""
    seed = _check_nodes(g, seed)
    kk = np.asarray(k, dtype=np.int64).tolist()
    n = g.n
    indptr = g.out_indptr.tolist()
    indices = g.out_indices.tolist()
    active = [False] * n
    for v in seed:
        active[v] = True
    count = [0] * n

    rounds = [seed]
    # k = 0 nodes need no active neighbor: they join in round 1.
    frontier = [v for v in range(n) if kk[v] == 0 and not active[v]]
    for v in frontier:
        active[v] = True
    current = sorted(seed)
    while True:
        nxt = frontier
        for u in current:
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if active[w]:
                    continue
                c = count[w] + 1
                count[w] = c
                if c >= kk[w]:
                    active[w] = True
                    nxt.append(w)
        if not nxt:
            break
        rounds.append(frozenset(nxt))
        current = nxt
        frontier = []
    return CascadeTrace(tuple(rounds))


def verify_seed(g: DirectedGraph, k: Sequence[int] | np.ndarray, seed: Iterable[int] | SeedSet) -> Verification:
    members = seed.members if isinstance(seed, SeedSet) else seed
    trace = gamma(g, k, members)
    return Verification(
        complete=trace.total_activated == g.n,
        activated=trace.total_activated,
        rounds=trace.converged_at,
    )


def brute_force_min_seed(
    g: DirectedGraph, k: Sequence[int] | np.ndarray, size_limit: int | None = None
) -> SeedSet:
    """Smallest complete seed set, by enumeration in increasing size.

    Exponential; refuses graphs with more than 20 nodes.
    """
    n = g.n
    if n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"brute force limited to n <= {MAX_BRUTE_FORCE_N}, got {n}")
    if size_limit is None:
        size_limit = n
    if not 0 <= size_limit <= n:
        raise ValueError(f"size_limit must lie in [0, {n}]")
    for size in range(size_limit + 1):
        for combo in combinations(range(n), size):
            if gamma(g, k, combo).total_activated == n:
                return SeedSet(frozenset(combo), n)
    raise LookupError(f"no complete seed set of size <= {size_limit}")
