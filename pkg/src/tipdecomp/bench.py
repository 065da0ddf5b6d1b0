"""Runtime scaling of the decomposition on generated graphs.

Run as ``python -m tipdecomp.bench`` to print one CSV row per graph size and
the linear fit of wall time against ``m * ln(n)``.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .decomp import tip_decomp
from .fit import LineFit, line_fit
from .graph import erdos_renyi
from .thresholds import FractionOfInDegree, ThresholdSpec, resolve


@dataclass(frozen=True)
class Timing:
    n: int
    m: int
    m_log_n: float
    seconds: float


def time_decomposition(
    target_edges: Sequence[int],
    mean_degree: float = 10.0,
    spec: ThresholdSpec = FractionOfInDegree(Fraction(1, 2)),
    repeats: int = 3,
    rng_seed: int = 0,
) -> list[Timing]:
    """Best-of-``repeats`` decomposition time on symmetric ER graphs.

    ``target_edges`` counts directed edges; ``n`` is chosen so that the
    expected edge count ``n * mean_degree`` hits each target.
    """
    out = []
    for i, m_target in enumerate(target_edges):
        n = max(2, int(round(m_target / mean_degree)))
        g = erdos_renyi(n, min(1.0, mean_degree / (n - 1)), rng_seed + i)
        k = resolve(g, spec)
        best = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            tip_decomp(g, k)
            best = min(best, time.perf_counter() - t0)
        out.append(Timing(g.n, g.m, g.m * math.log(g.n), best))
    return out


def scaling_fit(timings: Sequence[Timing]) -> LineFit:
    return line_fit([t.m_log_n for t in timings], [t.seconds for t in timings])


def main(argv: Sequence[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="python -m tipdecomp.bench", description=__doc__)
    ap.add_argument("--min-edges", type=float, default=1e4)
    ap.add_argument("--max-edges", type=float, default=1e6)
    ap.add_argument("--points", type=int, default=8)
    ap.add_argument("--mean-degree", type=float, default=10.0)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--rng-seed", type=int, default=0)
    args = ap.parse_args(argv)

    targets = np.geomspace(args.min_edges, args.max_edges, args.points).round().astype(int).tolist()
    timings = time_decomposition(targets, args.mean_degree, repeats=args.repeats, rng_seed=args.rng_seed)
    print("n,m,m_ln_n,seconds")
    for t in timings:
        print(f"{t.n},{t.m},{t.m_log_n:.6f},{t.seconds:.6f}")
    fit = scaling_fit(timings)
    print(f"# slope={fit.slope:.6e} intercept={fit.intercept:.6f} r_squared={fit.r_squared:.6f}",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
