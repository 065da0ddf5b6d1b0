"""Seed-set search by threshold shell decomposition.

Every node starts with slack ``d_in - k``: how many in-neighbors it can lose
and still be activatable by the rest of the graph. The node with the least
finite slack is peeled off repeatedly. Peeling a node costs each remaining
out-neighbor one unit of slack; a neighbor already at zero slack can no
longer be activated by what is left, so its slack becomes infinite and it is
never peeled. Whatever survives is the seed set, and activating it cascades
to every peeled node in reverse peel order.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .graph import DirectedGraph, GraphError

INF = float("inf")


@dataclass(frozen=True)
class SeedSet:
    members: frozenset[int]
    n: int

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def fraction(self) -> float:
        return self.size / self.n if self.n else 0.0

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


def tip_decomp(g: DirectedGraph, k: Sequence[int] | np.ndarray) -> tuple[SeedSet, list[int]]:
    """Return the seed set and the node removal order.

    ``k`` must satisfy ``0 <= k[i] <= d_in[i]``. Ties on slack go to the
    smallest node id, so the output is deterministic. Runs in O(m log n)
    using a binary heap with lazy invalidation.
    """
    n = g.n
    k = np.asarray(k, dtype=np.int64)
    if k.shape != (n,):
        raise ValueError(f"threshold array has shape {k.shape}, expected ({n},)")
    d_in = g.in_degree
    if np.any(k < 0) or np.any(k > d_in):
        raise ValueError("thresholds must satisfy 0 <= k <= in-degree")

    dist: list[float] = (d_in - k).tolist()
    removed = [False] * n
    indptr = g.out_indptr.tolist()
    indices = g.out_indices.tolist()
    heap = [(dist[v], v) for v in range(n)]
    heapq.heapify(heap)
    order: list[int] = []
    push, pop = heapq.heappush, heapq.heappop

    while heap:
        dv, v = pop(heap)
        if removed[v] or dv != dist[v]:
            continue  # stale entry (dist moved on, or went infinite)
        removed[v] = True
        order.append(v)
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if removed[w]:
                continue
            dw = dist[w]
            if dw > 0:
                if dw != INF:
                    dist[w] = dw - 1
                    push(heap, (dw - 1, w))
            else:
                dist[w] = INF

    members = frozenset(v for v in range(n) if not removed[v])
    return SeedSet(members, n), order


def seed_fraction(s: SeedSet, g: DirectedGraph) -> float:
    return s.size / g.n


def removal_certificate(
    g: DirectedGraph, k: Sequence[int] | np.ndarray, seed: SeedSet, order: Sequence[int]
) -> list[int]:
    """Nodes in ``order`` that lack ``k`` in-neighbors among seed and later removals.

    Each removed node must see at least ``k[v]`` in-neighbors that were still
    present when it was peeled; these are exactly the ones that activate it.
    An empty result means the peel order proves the seed set complete.
    """
    k = np.asarray(k)
    present = [v in seed.members for v in range(g.n)]
    bad = []
    # Walk removals backwards, re-inserting nodes as they become "later".
    for v in reversed(order):
        support = sum(1 for u in g.in_adj(v).tolist() if present[u])
        if support < k[v]:
            bad.append(v)
        present[v] = True
    return bad


def write_seed_set(seed: SeedSet, sink: IO[str], g: DirectedGraph | None = None) -> None:
    name = g.label if g is not None else str
    for v in seed.sorted():
        sink.write(f"{name(v)}\n")


def write_removal_order(order: Sequence[int], sink: IO[str], g: DirectedGraph | None = None) -> None:
    """One ``node rank`` line per removed node, rank counting from 0."""
    name = g.label if g is not None else str
    for rank, v in enumerate(order):
        sink.write(f"{name(v)} {rank}\n")


def read_seed_set(source: IO[str] | Iterable[str], g: DirectedGraph) -> SeedSet:
    members = set()
    for lineno, line in enumerate(source, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        token = s.split()[0]
        try:
            members.add(g.node_id(token))
        except GraphError as exc:
            raise GraphError(f"seed file line {lineno}: {exc}") from None
    return SeedSet(frozenset(members), g.n)
