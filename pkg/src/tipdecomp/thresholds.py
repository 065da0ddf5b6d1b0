"""Threshold rules and their resolution to per-node activation counts.

A node ``i`` activates once at least ``k[i]`` of its in-neighbors are active.
Three rules produce ``k``:

* :class:`IntegerCap` -- ``k[i] = min(d_in[i], K)``
* :class:`FractionOfInDegree` -- ``k[i] = ceil(f * d_in[i])`` with ``f`` an exact
  rational, so multiples of 0.05 never suffer binary rounding
* :class:`PerNode` -- explicit counts

:func:`resolve` returns the counts as an ``int64`` array.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Mapping, Union

import numpy as np

from .graph import DirectedGraph, GraphError


class ThresholdError(ValueError):
    pass


@dataclass(frozen=True)
class IntegerCap:
    k: int

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)) or self.k < 1:
            raise ThresholdError(f"integer threshold must be a positive integer, got {self.k!r}")

    def __str__(self) -> str:
        return f"int:{self.k}"


@dataclass(frozen=True)
class FractionOfInDegree:
    ratio: Fraction

    def __post_init__(self) -> None:
        r = Fraction(self.ratio)
        if not 0 < r <= 1:
            raise ThresholdError(f"fraction must lie in (0, 1], got {r}")
        object.__setattr__(self, "ratio", r)

    def __str__(self) -> str:
        return f"frac:{self.ratio.numerator}/{self.ratio.denominator}"


@dataclass(frozen=True)
class PerNode:
    counts: Mapping[int, int] = field(hash=False)

    def __str__(self) -> str:
        return "per-node"


ThresholdSpec = Union[IntegerCap, FractionOfInDegree, PerNode]


def ceil_fraction(ratio: Fraction, d: np.ndarray | int) -> np.ndarray | int:
    """``ceil(ratio * d)`` in integer arithmetic: ``(num*d + den - 1) // den``."""
    num, den = ratio.numerator, ratio.denominator
    return (num * d + den - 1) // den


def resolve(g: DirectedGraph, spec: ThresholdSpec) -> np.ndarray:
    """Per-node activation counts for ``spec`` on ``g``; always ``0 <= k <= d_in``."""
    d = g.in_degree
    if isinstance(spec, IntegerCap):
        return np.minimum(d, int(spec.k)).astype(np.int64)
    if isinstance(spec, FractionOfInDegree):
        return np.asarray(ceil_fraction(spec.ratio, d), dtype=np.int64)
    if isinstance(spec, PerNode):
        k = np.empty(g.n, dtype=np.int64)
        for v in range(g.n):
            if v not in spec.counts:
                raise ThresholdError(f"per-node table has no entry for node {g.label(v)}")
            c = int(spec.counts[v])
            if not 0 <= c <= d[v]:
                raise ThresholdError(
                    f"count {c} for node {g.label(v)} outside [0, {int(d[v])}]"
                )
            k[v] = c
        return k
    raise TypeError(f"unsupported threshold spec {spec!r}")


def parse_threshold(text: str) -> IntegerCap | FractionOfInDegree:
    """Parse ``int:K``, ``frac:NUM/DEN`` or ``frac:0.05`` (exact decimal)."""
    kind, sep, value = text.partition(":")
    if not sep or not value:
        raise ThresholdError(f"bad threshold {text!r}; expected int:K or frac:F")
    kind = kind.strip().lower()
    value = value.strip()
    try:
        if kind == "int":
            return IntegerCap(int(value))
        if kind == "frac":
            return FractionOfInDegree(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise ThresholdError(f"bad threshold value in {text!r}") from None
    raise ThresholdError(f"unknown threshold kind {kind!r}")


def load_per_node(source: IO[str] | Iterable[str], g: DirectedGraph) -> PerNode:
    """Read ``node_id k`` lines; node ids are original labels when ``g`` was relabeled."""
    counts: dict[int, int] = {}
    for lineno, line in enumerate(source, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ThresholdError(f"line {lineno}: expected 'node_id k'")
        try:
            v = g.node_id(parts[0])
            counts[v] = int(parts[1])
        except (GraphError, ValueError) as exc:
            raise ThresholdError(f"line {lineno}: {exc}") from None
    return PerNode(counts)
