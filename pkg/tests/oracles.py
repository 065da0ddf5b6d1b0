"""Reference implementations written straight from the definitions.

Deliberately naive: plain sets, full rescans, no shared code with the
package beyond the graph's edge list.
"""
from itertools import combinations

import numpy as np

from tipdecomp.graph import DirectedGraph, erdos_renyi


def in_neighbors(g: DirectedGraph) -> list[set[int]]:
    ins = [set() for _ in range(g.n)]
    for u, v in g.edge_set():
        ins[v].add(u)
    return ins


def step(ins, k, active: set[int]) -> set[int]:
    return active | {v for v in range(len(ins)) if len(ins[v] & active) >= k[v]}


def rounds(g: DirectedGraph, k, seed) -> list[set[int]]:
    """Synchronous iteration; element t is the set of nodes first active after t steps."""
    ins = in_neighbors(g)
    active = set(seed)
    out = [set(active)]
    while True:
        nxt = step(ins, k, active)
        if nxt == active:
            return out
        out.append(nxt - active)
        active = nxt


def closure(g: DirectedGraph, k, seed) -> set[int]:
    return set().union(*rounds(g, k, seed))


def min_seed_size(g: DirectedGraph, k) -> int:
    ins = in_neighbors(g)
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            active = set(combo)
            while True:
                nxt = step(ins, k, active)
                if nxt == active:
                    break
                active = nxt
            if len(active) == g.n:
                return size
    raise AssertionError("the full node set always activates")


def random_digraph(rng: np.random.Generator, n: int, p: float) -> DirectedGraph:
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    return DirectedGraph.from_edges(np.argwhere(mask), n=n)


def random_symmetric(rng: np.random.Generator, n: int, p: float) -> DirectedGraph:
    return erdos_renyi(n, p, int(rng.integers(2**31)))


def random_thresholds(rng: np.random.Generator, g: DirectedGraph) -> np.ndarray:
    d = g.in_degree
    return np.array([rng.integers(0, x + 1) for x in d.tolist()], dtype=np.int64)
