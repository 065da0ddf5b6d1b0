"""Command-line interface.

Exit codes: 0 success (or complete seed set), 1 usage error, 2 data error,
3 seed set does not activate the whole graph.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterator, Sequence

from . import __version__
from .cascade import gamma, verify_seed
from .decomp import read_seed_set, tip_decomp, write_removal_order, write_seed_set
from .fit import planar_fit
from .graph import DirectedGraph, GraphError, generate, load_edge_list, write_edge_list
from .metrics import UnsupportedConfigurationError, bound_ratio, network_report, reichman_bound
from .thresholds import (
    FractionOfInDegree,
    IntegerCap,
    ThresholdError,
    ThresholdSpec,
    load_per_node,
    parse_threshold,
    resolve,
)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INCOMPLETE = 0, 1, 2, 3

SWEEP_FIELDS = [
    "graph_name", "threshold_kind", "threshold_value", "seed_size", "seed_fraction",
    "reichman_bound", "bound_ratio", "runtime_ms",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which we reserve for data errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextlib.contextmanager
def _open_out(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _read_graph(args: argparse.Namespace) -> DirectedGraph:
    if args.graph == "-":
        return load_edge_list(sys.stdin, symmetrize=args.symmetrize, relabel=not args.raw_ids)
    with open(args.graph) as fh:
        return load_edge_list(fh, symmetrize=args.symmetrize, relabel=not args.raw_ids)


def _threshold(args: argparse.Namespace, g: DirectedGraph) -> ThresholdSpec:
    if args.per_node:
        if args.threshold:
            raise UsageError("give either --threshold or --per-node, not both")
        with open(args.per_node) as fh:
            return load_per_node(fh, g)
    if not args.threshold:
        raise UsageError("--threshold (int:K | frac:F) or --per-node is required")
    try:
        return parse_threshold(args.threshold)
    except ThresholdError as exc:
        raise UsageError(str(exc)) from None


def format_ratio(r: Fraction) -> str:
    """Decimal rendering of a ratio when it terminates (1/20 -> ``0.05``), else ``num/den``."""
    den = r.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return f"{r.numerator}/{r.denominator}"
    with localcontext() as ctx:
        ctx.prec = 50
        s = format(Decimal(r.numerator) / Decimal(r.denominator), "f")
    return s.rstrip("0").rstrip(".") if "." in s else s


def _f6(x: float) -> str:
    return f"{x:.6f}"


# -- decompose / verify ------------------------------------------------------

def cmd_decompose(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    spec = _threshold(args, g)
    t0 = time.perf_counter()
    k = resolve(g, spec)
    seed, order = tip_decomp(g, k)
    runtime_ms = (time.perf_counter() - t0) * 1e3
    summary = {
        "n": g.n, "m": g.m, "threshold": str(spec), "seed_size": seed.size,
        "seed_fraction": round(seed.fraction, 6), "runtime_ms": round(runtime_ms, 3),
    }
    if args.order:
        with open(args.order, "w") as fh:
            write_removal_order(order, fh, g)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            write_seed_set(seed, fh, g)
        print(json.dumps(summary))
    else:
        write_seed_set(seed, sys.stdout, g)
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    spec = _threshold(args, g)
    k = resolve(g, spec)
    if args.seeds == "-":
        seed = read_seed_set(sys.stdin, g)
    else:
        with open(args.seeds) as fh:
            seed = read_seed_set(fh, g)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(gamma(g, k, seed.members).to_csv(g))
    res = verify_seed(g, k, seed)
    print(json.dumps({
        "complete": res.complete, "activated": res.activated, "n": g.n,
        "seed_size": seed.size, "rounds": res.rounds,
    }))
    return EXIT_OK if res.complete else EXIT_INCOMPLETE


# -- sweep -------------------------------------------------------------------

def parse_int_range(text: str) -> list[int]:
    if text.lower() == "none":
        return []
    try:
        lo, _, hi = text.partition(":")
        lo_i, hi_i = int(lo), int(hi or lo)
    except ValueError:
        raise UsageError(f"bad integer range {text!r}; expected LO:HI") from None
    if lo_i < 1 or hi_i < lo_i:
        raise UsageError(f"bad integer range {text!r}")
    return list(range(lo_i, hi_i + 1))


def parse_frac_range(text: str) -> list[Fraction]:
    if text.lower() == "none":
        return []
    parts = text.split(":")
    try:
        if len(parts) == 1:
            vals = [Fraction(parts[0])]
        elif len(parts) == 3:
            lo, hi, step = (Fraction(p) for p in parts)
            if step <= 0 or hi < lo:
                raise ValueError
            vals = []
            x = lo
            while x <= hi:
                vals.append(x)
                x += step
        else:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad fraction range {text!r}; expected LO:HI:STEP") from None
    if any(not 0 < v <= 1 for v in vals):
        raise UsageError(f"fractions must lie in (0, 1]: {text!r}")
    return vals


_SWEEP_GRAPH: DirectedGraph | None = None


def _init_sweep_worker(g: DirectedGraph) -> None:
    global _SWEEP_GRAPH
    _SWEEP_GRAPH = g


def _sweep_trial(spec: ThresholdSpec, check: bool) -> dict:
    g = _SWEEP_GRAPH
    t0 = time.perf_counter()
    k = resolve(g, spec)
    seed, _ = tip_decomp(g, k)
    runtime_ms = (time.perf_counter() - t0) * 1e3
    row = {"seed_size": seed.size, "seed_fraction": seed.fraction, "runtime_ms": runtime_ms}
    if isinstance(spec, IntegerCap):
        b = reichman_bound(g, spec)
        row["reichman_bound"] = b
        row["bound_ratio"] = bound_ratio(seed, b)
    if check:
        row["complete"] = verify_seed(g, k, seed).complete
    return row


def run_sweep(
    g: DirectedGraph,
    ints: Sequence[int],
    fracs: Sequence[Fraction],
    workers: int = 1,
    check: bool = False,
) -> list[tuple[ThresholdSpec, dict]]:
    """Decompose ``g`` once per threshold; rows come back in threshold order."""
    specs: list[ThresholdSpec] = [IntegerCap(k) for k in ints] + [FractionOfInDegree(f) for f in fracs]
    if workers <= 1 or len(specs) <= 1:
        _init_sweep_worker(g)
        rows = [_sweep_trial(s, check) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_sweep_worker, initargs=(g,)) as ex:
            rows = list(ex.map(_sweep_trial, specs, [check] * len(specs)))
    return list(zip(specs, rows))


def format_sweep(name: str, results, timing: bool = True, check: bool = False) -> str:
    buf = io.StringIO()
    fields = SWEEP_FIELDS + (["complete"] if check else [])
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for spec, row in results:
        if isinstance(spec, IntegerCap):
            kind, value = "int", str(spec.k)
            bound, ratio = _f6(row["reichman_bound"]), _f6(row["bound_ratio"])
        else:
            kind, value = "frac", format_ratio(spec.ratio)
            bound = ratio = ""
        out = [name, kind, value, row["seed_size"], _f6(row["seed_fraction"]), bound, ratio,
               _f6(row["runtime_ms"]) if timing else ""]
        if check:
            out.append("true" if row["complete"] else "false")
        w.writerow(out)
    return buf.getvalue()


def cmd_sweep(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    ints = parse_int_range(args.int)
    fracs = parse_frac_range(args.frac)
    workers = args.workers or os.cpu_count() or 1
    results = run_sweep(g, ints, fracs, workers=workers, check=args.check)
    name = args.name or (Path(args.graph).stem if args.graph != "-" else "stdin")
    with _open_out(args.out) as fh:
        fh.write(format_sweep(name, results, timing=not args.no_timing, check=args.check))
    if args.check and not all(row["complete"] for _, row in results):
        return EXIT_INCOMPLETE
    return EXIT_OK


# -- metrics / bound / fit / gen --------------------------------------------

def cmd_metrics(args: argparse.Namespace) -> int:
    paths = args.graph
    names = args.name or []
    w = csv.writer(sys.stdout, lineterminator="\n")
    if not args.no_header:
        w.writerow(["name", "n", "m", "avg_clustering", "louvain_modularity"])
    for i, path in enumerate(paths):
        single = argparse.Namespace(**{**vars(args), "graph": path})
        g = _read_graph(single)
        rep = network_report(g, rng_seed=args.rng_seed, clustering_sample=args.clustering_sample)
        name = names[i] if i < len(names) else Path(path).stem
        w.writerow([name, rep.n, rep.m_undirected, _f6(rep.avg_clustering), _f6(rep.louvain_modularity)])
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    spec = _threshold(args, g)
    if not isinstance(spec, IntegerCap):
        raise UnsupportedConfigurationError(
            "the bound is defined only for a homogeneous integer threshold (int:K)"
        )
    b = reichman_bound(g, spec)
    seed, _ = tip_decomp(g, resolve(g, spec))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["k", "reichman_bound", "seed_size", "bound_ratio"])
    w.writerow([spec.k, _f6(b), seed.size, _f6(bound_ratio(seed, b))])
    return EXIT_OK


def read_fit_table(fh: IO[str]) -> tuple[list[float], list[float], list[float]]:
    reader = csv.DictReader(fh)
    missing = {"M", "C", "S"} - set(reader.fieldnames or [])
    if missing:
        raise ValueError(f"fit input lacks column(s) {sorted(missing)}; expected name,M,C,S")
    M, C, S = [], [], []
    for lineno, row in enumerate(reader, start=2):
        try:
            M.append(float(row["M"]))
            C.append(float(row["C"]))
            S.append(float(row["S"]))
        except (TypeError, ValueError):
            raise ValueError(f"line {lineno}: non-numeric M/C/S") from None
    return M, C, S


def cmd_fit(args: argparse.Namespace) -> int:
    if args.input == "-":
        M, C, S = read_fit_table(sys.stdin)
    else:
        with open(args.input, newline="") as fh:
            M, C, S = read_fit_table(fh)
    fit = planar_fit(M, C, S)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["coef_M", "coef_C", "intercept", "r_squared", "p_value"])
    w.writerow([_f6(fit.coef_M), _f6(fit.coef_C), _f6(fit.intercept), _f6(fit.r_squared),
                f"{fit.p_value:.6g}"])
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        g = generate(args.model, n=args.n, p=args.p, attach=args.attach, rng_seed=args.rng_seed)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    with _open_out(args.out) as fh:
        write_edge_list(g, fh)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tipdecomp", description="Seed sets for the deterministic tipping model.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_opts(p: argparse.ArgumentParser, multiple: bool = False) -> None:
        if multiple:
            p.add_argument("--graph", required=True, action="append", help="edge-list file (repeatable)")
        else:
            p.add_argument("--graph", required=True, help="edge-list file, '-' for stdin")
        p.add_argument("--symmetrize", action="store_true", help="add the reverse of every edge")
        p.add_argument("--raw-ids", action="store_true",
                       help="use integer node ids as-is instead of relabeling densely")

    def threshold_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--threshold", help="int:K, frac:NUM/DEN or frac:0.05")
        p.add_argument("--per-node", help="two-column 'node k' file of explicit thresholds")

    p = sub.add_parser("decompose", help="compute a seed set")
    graph_opts(p)
    threshold_opts(p)
    p.add_argument("--out", help="seed file (default: stdout, summary then goes to stderr)")
    p.add_argument("--order", help="write removal order as 'node rank' lines")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check that a seed set activates every node")
    graph_opts(p)
    threshold_opts(p)
    p.add_argument("--seeds", required=True, help="seed file, one node per line")
    p.add_argument("--trace", help="write the cascade as 'round,node' CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="seed sizes over integer and fractional thresholds")
    graph_opts(p)
    p.add_argument("--int", default="1:10", help="integer thresholds LO:HI, or 'none' (default 1:10)")
    p.add_argument("--frac", default="0.05:0.60:0.05",
                   help="fractions LO:HI:STEP, or 'none' (default 0.05:0.60:0.05)")
    p.add_argument("--workers", type=int, default=0, help="parallel trials (default: CPU count)")
    p.add_argument("--out", help="CSV output (default stdout)")
    p.add_argument("--name", help="graph_name column (default: file stem)")
    p.add_argument("--check", action="store_true", help="verify every seed set; adds a 'complete' column")
    p.add_argument("--no-timing", action="store_true", help="leave runtime_ms empty for byte-stable output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("metrics", help="average clustering and Louvain modularity")
    graph_opts(p, multiple=True)
    p.add_argument("--name", action="append", help="row name per --graph (default: file stem)")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--clustering-sample", type=int, help="estimate clustering from this many nodes")
    p.add_argument("--no-header", action="store_true")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bound", help="upper bound on the minimum seed set vs. the computed seed set")
    graph_opts(p)
    threshold_opts(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("fit", help="planar least-squares fit S ~ M + C")
    p.add_argument("--input", required=True, help="CSV with columns name,M,C,S")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("gen", help="generate a symmetric random graph")
    p.add_argument("--model", choices=["er", "ba"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, help="edge probability (er)")
    p.add_argument("--attach", type=int, help="edges per new node (ba)")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", help="edge-list output (default stdout)")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnsupportedConfigurationError) as exc:
        print(f"tipdecomp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ThresholdError, ValueError, OSError) as exc:
        print(f"tipdecomp: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
