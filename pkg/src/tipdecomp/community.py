"""Newman-Girvan modularity and Louvain maximization on undirected graphs.

Graphs are read as undirected (see :func:`tipdecomp.metrics.undirected_neighbors`).
Louvain works on weighted supergraphs where ``self_weight[c]`` is the
diagonal adjacency entry, i.e. twice the weight of edges internal to ``c``.
Input edges have unit weight, so every weight is an integer and move gains
are compared exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from .graph import DirectedGraph, symmetrize


@dataclass(frozen=True)
class Partition:
    assignment: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Iterable) -> "Partition":
        """Renumber arbitrary community labels densely, by first appearance."""
        ids: dict = {}
        return cls(tuple(ids.setdefault(c, len(ids)) for c in labels))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def community_count(self) -> int:
        return len(set(self.assignment))

    def communities(self) -> list[frozenset[int]]:
        groups: dict[int, set[int]] = {}
        for v, c in enumerate(self.assignment):
            groups.setdefault(c, set()).add(v)
        return [frozenset(groups[c]) for c in sorted(groups)]

    def write(self, sink: IO[str], g: DirectedGraph | None = None) -> None:
        name = g.label if g is not None else str
        for v, c in enumerate(self.assignment):
            sink.write(f"{name(v)} {c}\n")


def modularity(g: DirectedGraph, p: Partition | Sequence[int]) -> float:
    """``sum_c (e_c / m - (D_c / 2m)^2)`` over communities ``c``.

    ``e_c`` is the number of undirected edges inside ``c`` and ``D_c`` the
    degree sum of its members.
    """
    assignment = np.asarray(p.assignment if isinstance(p, Partition) else p, dtype=np.int64)
    if assignment.shape != (g.n,):
        raise ValueError(f"partition covers {assignment.size} nodes, graph has {g.n}")
    h = symmetrize(g)
    if h.m == 0:
        raise ValueError("modularity is undefined on a graph without edges")
    m = h.m // 2
    _, comm = np.unique(assignment, return_inverse=True)
    ncomm = int(comm.max()) + 1
    e = h.edges()
    cu, cv = comm[e[:, 0]], comm[e[:, 1]]
    inside = np.bincount(cu[cu == cv], minlength=ncomm)  # each edge counted twice
    degsum = np.bincount(comm, weights=h.out_degree, minlength=ncomm)
    return math.fsum((inside[c] / 2) / m - (degsum[c] / (2 * m)) ** 2 for c in range(ncomm))


@dataclass
class _Level:
    adj: list[dict[int, int]]
    self_weight: list[int]
    degree: list[int] = field(init=False)

    def __post_init__(self) -> None:
        self.degree = [sum(a.values()) + s for a, s in zip(self.adj, self.self_weight)]

    @property
    def n(self) -> int:
        return len(self.adj)

    def modularity(self, comm: Sequence[int]) -> float:
        m2 = sum(self.degree)
        inside: dict[int, int] = {}
        tot: dict[int, int] = {}
        for u in range(self.n):
            c = comm[u]
            tot[c] = tot.get(c, 0) + self.degree[u]
            w_in = self.self_weight[u] + sum(w for v, w in self.adj[u].items() if comm[v] == c)
            inside[c] = inside.get(c, 0) + w_in
        return math.fsum(inside[c] / m2 - (tot[c] / m2) ** 2 for c in tot)

    def aggregate(self, comm: Sequence[int]) -> "_Level":
        count = max(comm) + 1
        adj: list[dict[int, int]] = [{} for _ in range(count)]
        self_weight = [0] * count
        for u in range(self.n):
            cu = comm[u]
            self_weight[cu] += self.self_weight[u]
            row = adj[cu]
            for v, w in self.adj[u].items():
                cv = comm[v]
                if cv == cu:
                    self_weight[cu] += w
                else:
                    row[cv] = row.get(cv, 0) + w
        return _Level(adj, self_weight)


@dataclass
class LevelRecord:
    """Diagnostics for one Louvain level (filled only when requested)."""

    pass_modularity: list[float]
    supergraph_modularity: float
    flat_modularity: float


def _move_nodes(level: _Level, order: Sequence[int], passes: list[float] | None) -> tuple[list[int], bool]:
    n = level.n
    comm = list(range(n))
    deg = level.degree
    tot = list(deg)
    m2 = sum(deg)
    improved = False
    while True:
        moved = False
        for u in order:
            cu = comm[u]
            ku = deg[u]
            links: dict[int, int] = {}
            for v, w in level.adj[u].items():
                c = comm[v]
                links[c] = links.get(c, 0) + w
            tot[cu] -= ku
            # gain of joining c, scaled by m2: integer arithmetic throughout
            best = cu
            best_gain = links.get(cu, 0) * m2 - tot[cu] * ku
            for c, w in links.items():
                gain = w * m2 - tot[c] * ku
                if gain > best_gain:
                    best, best_gain = c, gain
            tot[best] += ku
            if best != cu:
                comm[u] = best
                moved = True
        if passes is not None:
            passes.append(level.modularity(comm))
        if not moved:
            break
        improved = True
    ids: dict[int, int] = {}
    return [ids.setdefault(c, len(ids)) for c in comm], improved


def louvain(
    g: DirectedGraph, rng_seed: int = 0, history: list[LevelRecord] | None = None
) -> tuple[Partition, float]:
    """Greedy two-phase modularity maximization.

    Each level moves single nodes to the neighboring community with the
    largest positive gain until no move helps, then collapses communities
    into weighted supernodes. Stops when a level moves nothing. The visit
    order at each level is a permutation drawn from ``rng_seed``.

    If ``history`` is a list, one :class:`LevelRecord` per level is appended.
    """
    h = symmetrize(g)
    if h.m == 0:
        raise ValueError("louvain needs at least one edge")
    rng = np.random.default_rng(rng_seed)
    ptr, idx = h.out_indptr.tolist(), h.out_indices.tolist()
    level = _Level([{v: 1 for v in idx[ptr[u] : ptr[u + 1]]} for u in range(h.n)], [0] * h.n)
    membership = list(range(h.n))

    while True:
        order = rng.permutation(level.n).tolist()
        passes: list[float] | None = [] if history is not None else None
        comm, improved = _move_nodes(level, order, passes)
        if not improved:
            break
        membership = [comm[c] for c in membership]
        if history is not None:
            history.append(
                LevelRecord(
                    pass_modularity=passes,
                    supergraph_modularity=level.modularity(comm),
                    flat_modularity=modularity(h, membership),
                )
            )
        level = level.aggregate(comm)

    q = level.modularity(list(range(level.n)))
    return Partition.from_labels(membership), q
