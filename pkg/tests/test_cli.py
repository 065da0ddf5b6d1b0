import csv
import io
import itertools
import json
import subprocess
import sys

import pytest

from tipdecomp.cli import format_ratio, main, parse_frac_range
from tipdecomp.graph import load_edge_list

C4 = "0 1\n1 2\n2 3\n3 0\n"
K4 = "".join(f"{u} {v}\n" for u, v in itertools.combinations(range(4), 2))
TWO_K5 = "".join(
    f"{u + o} {v + o}\n" for o in (0, 5) for u, v in itertools.combinations(range(5), 2)
) + "4 5\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_decompose_c4(files, capsys, tmp_path):
    g = files("c4.txt", C4)
    seed = str(tmp_path / "seed.txt")
    code, out, _ = run(capsys, "decompose", "--graph", g, "--symmetrize", "--threshold", "int:1", "--out", seed)
    assert code == 0
    summary = json.loads(out)
    assert summary["seed_size"] == 1 and summary["seed_fraction"] == 0.25
    assert (summary["n"], summary["m"]) == (4, 8)
    assert len(open(seed).read().split()) == 1


def test_decompose_k4_fraction_to_stdout(files, capsys):
    g = files("k4.txt", K4)
    code, out, err = run(capsys, "decompose", "--graph", g, "--symmetrize", "--threshold", "frac:1/2")
    assert code == 0
    assert sorted(out.split()) == ["2", "3"]
    assert json.loads(err)["seed_size"] == 2


def test_decompose_writes_removal_order(files, capsys, tmp_path):
    g = files("c4.txt", C4)
    order = tmp_path / "order.txt"
    run(capsys, "decompose", "--graph", g, "--symmetrize", "--threshold", "int:1", "--out",
        str(tmp_path / "s"), "--order", str(order))
    assert order.read_text() == "0 0\n1 1\n2 2\n"


def test_decompose_empty_file(files, capsys):
    code, _, err = run(capsys, "decompose", "--graph", files("e.txt", ""), "--threshold", "int:1")
    assert code == 2 and "empty" in err


def test_decompose_malformed_file(files, capsys):
    code, _, err = run(capsys, "decompose", "--graph", files("bad.txt", "0 1\n2\n"), "--threshold", "int:1")
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize("argv", [
    ["decompose"],
    ["decompose", "--threshold", "pct:3"],
    ["decompose", "--threshold", "frac:2"],
    ["sweep", "--int", "5:1"],
    ["sweep", "--frac", "0.1:0.2"],
])
def test_usage_errors(files, capsys, argv):
    code, _, _ = run(capsys, argv[0], "--graph", files("c4.txt", C4), *argv[1:])
    assert code == 1


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 1


def test_decompose_then_verify(files, capsys, tmp_path):
    g = files("ba.txt", "")
    assert run(capsys, "gen", "--model", "ba", "--n", "200", "--attach", "3", "--rng-seed", "4", "--out", g)[0] == 0
    seed = str(tmp_path / "seed.txt")
    for spec in ["int:1", "int:4", "frac:0.35", "frac:1"]:
        assert run(capsys, "decompose", "--graph", g, "--threshold", spec, "--out", seed)[0] == 0
        code, out, _ = run(capsys, "verify", "--graph", g, "--threshold", spec, "--seeds", seed)
        assert code == 0 and json.loads(out)["complete"] is True


def test_verify_incomplete_and_rounds(files, capsys, tmp_path):
    g = files("c4.txt", C4)
    empty = files("empty_seed.txt", "")
    code, out, _ = run(capsys, "verify", "--graph", g, "--symmetrize", "--threshold", "int:1", "--seeds", empty)
    assert code == 3
    assert json.loads(out)["activated"] == 0 and not json.loads(out)["complete"]

    trace = tmp_path / "trace.csv"
    seeds = files("s13.txt", "1\n3\n")
    code, out, _ = run(capsys, "verify", "--graph", g, "--symmetrize", "--threshold", "int:2",
                       "--seeds", seeds, "--trace", str(trace))
    assert code == 0 and json.loads(out)["rounds"] == 1
    assert trace.read_text() == "round,node\n0,1\n0,3\n1,0\n1,2\n"


def test_verify_unknown_seed(files, capsys):
    g = files("c4.txt", C4)
    code, _, err = run(capsys, "verify", "--graph", g, "--threshold", "int:1", "--seeds", files("s.txt", "9\n"))
    assert code == 2 and "unknown node" in err


def test_per_node_thresholds(files, capsys):
    g = files("c4.txt", C4)
    t = files("k.txt", "0 2\n1 2\n2 2\n3 2\n")
    code, out, err = run(capsys, "decompose", "--graph", g, "--symmetrize", "--per-node", t)
    assert code == 0 and sorted(out.split()) == ["1", "3"]


def test_sweep_default_ranges(files, capsys):
    code, out, _ = run(capsys, "sweep", "--graph", files("c4.txt", C4), "--symmetrize", "--check")
    table = rows(out)
    assert code == 0 and len(table) == 22
    assert [r["threshold_kind"] for r in table] == ["int"] * 10 + ["frac"] * 12
    assert [r["threshold_value"] for r in table[10:]] == [
        "0.05", "0.1", "0.15", "0.2", "0.25", "0.3", "0.35", "0.4", "0.45", "0.5", "0.55", "0.6"]
    assert all(r["complete"] == "true" for r in table)
    for r in table:
        assert float(r["seed_fraction"]) == pytest.approx(int(r["seed_size"]) / 4)
        assert (r["reichman_bound"] == "") == (r["threshold_kind"] == "frac")
    assert int(table[0]["seed_size"]) >= 1


def test_sweep_k4_int2_row(files, capsys):
    _, out, _ = run(capsys, "sweep", "--graph", files("k4.txt", K4), "--symmetrize", "--int", "2:2", "--frac", "none")
    (row,) = rows(out)
    assert (row["seed_size"], row["reichman_bound"], row["bound_ratio"]) == ("2", "2.000000", "1.000000")
    assert row["graph_name"] == "k4"


def test_sweep_is_byte_identical(files, capsys, tmp_path):
    g = files("ba.txt", "")
    run(capsys, "gen", "--model", "ba", "--n", "300", "--attach", "2", "--out", g)
    outs = []
    for i, workers in enumerate(["1", "1", "2"]):
        path = tmp_path / f"sweep{i}.csv"
        assert run(capsys, "sweep", "--graph", g, "--no-timing", "--workers", workers, "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_metrics_two_cliques(files, capsys):
    code, out, _ = run(capsys, "metrics", "--graph", files("cliques.txt", TWO_K5), "--symmetrize")
    (row,) = rows(out)
    assert code == 0
    assert (row["name"], row["n"], row["m"]) == ("cliques", "10", "21")
    assert float(row["louvain_modularity"]) == pytest.approx(0.452381, abs=1e-6)


def test_metrics_several_graphs(files, capsys):
    a, b = files("a.txt", C4), files("b.txt", K4)
    _, out, _ = run(capsys, "metrics", "--graph", a, "--graph", b, "--name", "cyc", "--no-header")
    lines = out.strip().splitlines()
    assert [ln.split(",")[0] for ln in lines] == ["cyc", "b"]
    assert lines[1].split(",")[3] == "1.000000"


def test_bound(files, capsys):
    g = files("c4.txt", C4)
    code, out, _ = run(capsys, "bound", "--graph", g, "--symmetrize", "--threshold", "int:1")
    (row,) = rows(out)
    assert code == 0 and row["reichman_bound"] == "1.333333" and row["bound_ratio"] == "0.750000"
    code, _, err = run(capsys, "bound", "--graph", g, "--threshold", "frac:1/2")
    assert code == 1 and "int:K" in err


def test_fit(files, capsys):
    data = "name,M,C,S\n" + "".join(
        f"g{i},{m},{c},{2 * m + 3 * c + 1}\n"
        for i, (m, c) in enumerate([(0.1, 0.2), (0.5, 0.1), (0.9, 0.6), (0.3, 0.8), (0.7, 0.4)])
    )
    code, out, _ = run(capsys, "fit", "--input", files("fit.csv", data))
    (row,) = rows(out)
    assert code == 0
    assert (row["coef_M"], row["coef_C"], row["intercept"], row["r_squared"]) == (
        "2.000000", "3.000000", "1.000000", "1.000000")
    flat = "name,M,C,S\na,0.3,0.1,1\nb,0.3,0.2,2\nc,0.3,0.3,3\nd,0.3,0.4,4\n"
    assert run(capsys, "fit", "--input", files("flat.csv", flat))[0] == 2


def test_gen_complete_graph(capsys):
    code, out, _ = run(capsys, "gen", "--model", "er", "--n", "5", "--p", "1.0")
    g = load_edge_list(io.StringIO(out), relabel=False)
    assert code == 0 and out.startswith("# n=5 m=20")
    assert g.edge_set() == {(u, v) for u in range(5) for v in range(5) if u != v}
    assert run(capsys, "gen", "--model", "ba", "--n", "2", "--attach", "3")[0] == 1


def test_format_ratio_and_ranges():
    from fractions import Fraction

    assert format_ratio(Fraction(1, 20)) == "0.05"
    assert format_ratio(Fraction(3, 5)) == "0.6"
    assert format_ratio(Fraction(1)) == "1"
    assert format_ratio(Fraction(1, 3)) == "1/3"
    assert len(parse_frac_range("0.05:0.60:0.05")) == 12
    assert parse_frac_range("0.5") == [Fraction(1, 2)]


def test_module_entry_point(files):
    g = files("c4.txt", C4)
    proc = subprocess.run(
        [sys.executable, "-m", "tipdecomp", "bound", "--graph", g, "--symmetrize", "--threshold", "int:1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "1.333333" in proc.stdout
