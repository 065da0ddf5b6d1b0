"""Immutable directed graphs in compressed (CSR) layout.

Both directions are stored: ``out_indptr``/``out_indices`` hold the
successors of every node and ``in_indptr``/``in_indices`` the predecessors.
Node ids are dense integers in ``[0, n)``; when the input used arbitrary
labels the original label of node ``i`` is ``labels[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for invalid graph construction or generator parameters."""


class EdgeListError(GraphError):
    """Malformed edge-list input."""

    def __init__(self, message: str, lineno: int | None = None) -> None:
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _csr(n: int, rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((cols, rows))
    indices = cols[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    return indptr, indices


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    n: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    labels: tuple[str, ...] | None = None
    _label_index: dict = field(default=None, repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        n: int | None = None,
        labels: Sequence[str] | None = None,
    ) -> "DirectedGraph":
        """Build a graph from ``(u, v)`` pairs.

        Self-loops are dropped and parallel edges collapsed. ``n`` defaults
        to ``max id + 1`` (or ``len(labels)`` when labels are given).
        """
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GraphError("edges must be a sequence of (u, v) pairs")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if n is None:
                n = len(labels)
            elif n != len(labels):
                raise GraphError("labels length does not match n")
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphError(f"node id out of range [0, {n})")

        src, dst = arr[:, 0], arr[:, 1]
        keep = src != dst
        src, dst = src[keep], dst[keep]
        if src.size:
            key = np.unique(src * np.int64(n) + dst)
            src, dst = key // n, key % n
        out_indptr, out_indices = _csr(n, src, dst)
        in_indptr, in_indices = _csr(n, dst, src)
        return cls(
            n=int(n),
            out_indptr=_frozen(out_indptr),
            out_indices=_frozen(out_indices),
            in_indptr=_frozen(in_indptr),
            in_indices=_frozen(in_indices),
            labels=labels,
        )

    @property
    def m(self) -> int:
        return int(self.out_indices.size)

    @property
    def in_degree(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    @property
    def out_degree(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    def out_adj(self, v: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[v] : self.out_indptr[v + 1]]

    def in_adj(self, v: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[v] : self.in_indptr[v + 1]]

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array sorted by ``(u, v)``."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degree)
        return np.column_stack((src, self.out_indices))

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges()}

    def has_edge(self, u: int, v: int) -> bool:
        row = self.out_adj(u)
        i = np.searchsorted(row, v)
        return bool(i < row.size and row[i] == v)

    def is_symmetric(self) -> bool:
        # CSR by (u, v) vs CSR by (v, u): equal arrays iff every edge is mirrored.
        return bool(
            np.array_equal(self.out_indptr, self.in_indptr)
            and np.array_equal(self.out_indices, self.in_indices)
        )

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def node_id(self, label: str | int) -> int:
        """Dense id for an original label (or raw integer id)."""
        if self.labels is None:
            try:
                v = int(label)
            except ValueError:
                raise GraphError(f"unknown node {label!r}") from None
            if not 0 <= v < self.n:
                raise GraphError(f"unknown node {label!r}")
            return v
        if self._label_index is None:
            object.__setattr__(self, "_label_index", {s: i for i, s in enumerate(self.labels)})
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise GraphError(f"unknown node {label!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.labels == other.labels
            and np.array_equal(self.out_indptr, other.out_indptr)
            and np.array_equal(self.out_indices, other.out_indices)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    min_in_degree: int
    max_in_degree: int
    mean_in_degree: float
    isolated: int
    is_symmetric: bool


def stats(g: DirectedGraph) -> GraphStats:
    d = g.in_degree
    return GraphStats(
        n=g.n,
        m=g.m,
        min_in_degree=int(d.min()) if g.n else 0,
        max_in_degree=int(d.max()) if g.n else 0,
        mean_in_degree=float(d.mean()) if g.n else 0.0,
        isolated=int(np.count_nonzero(d == 0)),
        is_symmetric=g.is_symmetric(),
    )


def load_edge_list(
    source: IO[str] | Iterable[str],
    *,
    symmetrize: bool = False,
    relabel: bool = True,
) -> DirectedGraph:
    """Read a whitespace-separated ``u v`` edge list.

    Lines starting with ``#`` and blank lines are skipped. With ``relabel``
    (the default) tokens are arbitrary strings mapped to dense ids in order of
    first appearance; otherwise tokens must be non-negative integers used as
    ids directly, and ``n`` is the largest id plus one.

    A line ``u u`` still declares node ``u`` even though the loop is dropped.
    """
    index: dict[str, int] = {}
    src: list[int] = []
    dst: list[int] = []
    max_id = -1
    for lineno, line in enumerate(source, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected 2 tokens, got {len(parts)}", lineno)
        if relabel:
            ids = []
            for tok in parts:
                v = index.get(tok)
                if v is None:
                    v = index[tok] = len(index)
                ids.append(v)
            u, v = ids
        else:
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListError(f"non-integer node id in {s!r}", lineno) from None
            if u < 0 or v < 0:
                raise EdgeListError(f"negative node id in {s!r}", lineno)
            max_id = max(max_id, u, v)
        src.append(u)
        dst.append(v)

    n = len(index) if relabel else max_id + 1
    if n == 0:
        raise EdgeListError("empty graph")
    edges = np.column_stack((np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)))
    g = DirectedGraph.from_edges(edges, n=n, labels=list(index) if relabel else None)
    return _symmetrize(g) if symmetrize else g


def write_edge_list(
    g: DirectedGraph,
    sink: IO[str],
    *,
    header: bool = True,
    use_labels: bool = True,
) -> None:
    """Write one ``u v`` line per edge, sorted by dense ``(u, v)``."""
    if header:
        sink.write(f"# n={g.n} m={g.m}\n")
    name = g.label if use_labels else str
    for u, v in g.edges().tolist():
        sink.write(f"{name(u)} {name(v)}\n")


def symmetrize(g: DirectedGraph) -> DirectedGraph:
    """Add the reverse of every edge. Idempotent."""
    if g.is_symmetric():
        return g
    e = g.edges()
    both = np.concatenate((e, e[:, ::-1]))
    return DirectedGraph.from_edges(both, n=g.n, labels=g.labels)


_symmetrize = symmetrize  # load_edge_list's keyword shadows the name


def _pair_from_index(idx: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # Row i of the strict upper triangle starts at i*(2n-i-1)/2.
    def start(i: np.ndarray) -> np.ndarray:
        return i * (2 * n - i - 1) // 2

    b = 2 * n - 1
    i = np.floor((b - np.sqrt(np.maximum(b * b - 8.0 * idx, 0.0))) / 2).astype(np.int64)
    i = np.clip(i, 0, n - 2)
    for _ in range(3):
        i = np.where(start(i) > idx, i - 1, i)
        i = np.where(start(i + 1) <= idx, i + 1, i)
    j = idx - start(i) + i + 1
    return i, j


def erdos_renyi(n: int, p: float, rng_seed: int = 0) -> DirectedGraph:
    """Symmetric G(n, p): each unordered pair is linked independently with prob. ``p``."""
    if n < 1:
        raise GraphError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise GraphError("p must lie in [0, 1]")
    rng = np.random.default_rng(rng_seed)
    pairs = n * (n - 1) // 2
    count = int(rng.binomial(pairs, p)) if pairs else 0
    if count == 0:
        return DirectedGraph.from_edges(np.empty((0, 2), dtype=np.int64), n=n)
    idx = np.sort(rng.choice(pairs, size=count, replace=False)).astype(np.int64)
    u, v = _pair_from_index(idx, n)
    e = np.column_stack((u, v))
    return DirectedGraph.from_edges(np.concatenate((e, e[:, ::-1])), n=n)


def barabasi_albert(n: int, attach: int, rng_seed: int = 0) -> DirectedGraph:
    """Symmetric preferential-attachment graph.

    Nodes ``0..attach-1`` form the initial set; every later node links to
    ``attach`` distinct earlier nodes drawn proportionally to degree.
    """
    if attach < 1:
        raise GraphError("attach must be >= 1")
    if n <= attach:
        raise GraphError("n must exceed attach")
    rng = np.random.default_rng(rng_seed)
    edges: list[tuple[int, int]] = []
    repeated: list[int] = []
    targets = list(range(attach))
    for source in range(attach, n):
        edges.extend((source, t) for t in targets)
        repeated.extend(targets)
        repeated.extend([source] * attach)
        chosen: dict[int, None] = {}
        while len(chosen) < attach:
            chosen.setdefault(repeated[int(rng.integers(len(repeated)))], None)
        targets = list(chosen)
    e = np.asarray(edges, dtype=np.int64)
    return DirectedGraph.from_edges(np.concatenate((e, e[:, ::-1])), n=n)


def generate(model: str, *, n: int, p: float | None = None, attach: int | None = None,
             rng_seed: int = 0) -> DirectedGraph:
    """Dispatch to :func:`erdos_renyi` (``"er"``) or :func:`barabasi_albert` (``"ba"``)."""
    if model == "er":
        if p is None:
            raise GraphError("er model needs p")
        return erdos_renyi(n, p, rng_seed)
    if model == "ba":
        if attach is None:
            raise GraphError("ba model needs attach")
        return barabasi_albert(n, attach, rng_seed)
    raise GraphError(f"unknown model {model!r}")
