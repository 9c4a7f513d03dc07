import csv
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from cdgp.cli import main
from cdgp.generate import GraphClass, classify
from cdgp.instance_io import read_instance
from cdgp.recognizers import is_tree

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c3_unif5.cdgp").write_text("p cdgp 3 3 eq uniform 5\ne 1 2 5\ne 2 3 5\ne 1 3 5\n")
    (tmp_path / "k4_geq1.cdgp").write_text(
        "p cdgp 4 6 geq uniform 1\n" + "".join(f"e {u} {v} 1\n" for u in range(1, 5) for v in range(u + 1, 5)))
    (tmp_path / "path3.cdgp").write_text("p cdgp 3 2 eq peredge\ne 1 2 2\ne 2 3 3\n")
    (tmp_path / "bad.cdgp").write_text("p cdgp 3 2 eq peredge\ne 1 2 2\n")
    return tmp_path


def test_solve_infeasible(files, capsys):
    code = main(["solve", "--strategy", "select", "--mode", "decision", str(files / "c3_unif5.cdgp")])
    assert code == 1 and "infeasible" in capsys.readouterr().out


def test_solve_span(files, capsys):
    code = main(["solve", "--strategy", "prev", "--mode", "optimize", str(files / "k4_geq1.cdgp")])
    assert code == 0 and "span 4" in capsys.readouterr().out


def test_solve_missing(files, capsys):
    assert main(["solve", str(files / "missing.cdgp")]) > 2
    assert "missing.cdgp" in capsys.readouterr().err


def test_solve_parse_error(files, capsys):
    assert main(["solve", str(files / "bad.cdgp")]) == 4
    assert "line" in capsys.readouterr().err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--strategy", "nope", "x.cdgp"])
    assert exc.value.code == 3


def test_solve_timeout_exit(tmp_path, capsys):
    from cdgp.generate import GenConfig, generate
    from cdgp.graph import ConstraintOp
    from cdgp.instance_io import write_instance
    p = tmp_path / "big.cdgp"
    write_instance(p, generate(GenConfig(n=14, m=60, rng_seed=5, op=ConstraintOp.GEQ)))
    code = main(["solve", "--strategy", "prev-full", "--mode", "optimize", "--node-limit", "100", str(p)])
    assert code == 2 and "timeout" in capsys.readouterr().out


def test_global_flags_before_and_after(files, capsys):
    main(["--format", "csv", "solve", "--mode", "optimize", str(files / "path3.cdgp")])
    before = capsys.readouterr().out
    main(["solve", "--mode", "optimize", "--format", "csv", str(files / "path3.cdgp")])
    after = capsys.readouterr().out
    assert before.splitlines()[0] == after.splitlines()[0] == \
        "instance,strategy,span,bounds,prunes,solutions,nodes,time_first_s,time_total_s"
    assert before.splitlines()[1].split(",")[:7] == after.splitlines()[1].split(",")[:7]


def test_env_time_limit(files, monkeypatch, capsys):
    monkeypatch.setenv("CDGP_TIME_LIMIT", "5")
    assert main(["solve", str(files / "path3.cdgp")]) == 0
    monkeypatch.setenv("CDGP_TIME_LIMIT", "soon")
    assert main(["solve", str(files / "path3.cdgp")]) == 4


def test_oracle_cmd(files, capsys):
    assert main(["oracle", str(files / "c3_unif5.cdgp")]) == 1
    assert main(["oracle", str(files / "path3.cdgp")]) == 0
    assert "span 4" in capsys.readouterr().out


def test_gen_tree(tmp_path):
    out = tmp_path / "t.cdgp"
    assert main(["gen", "--n", "8", "--type", "tree", "--seed", "7", "--output", str(out)]) == 0
    text = out.read_text()
    assert "# rng numpy.PCG64" in text and "# seed 7" in text
    assert is_tree(read_instance(out).graph)


def test_gen_many(tmp_path):
    d = tmp_path / "suite"
    assert main(["gen", "--n", "7", "--type", "evencycle", "--count", "3", "--seed", "2", "-o", str(d)]) == 0
    names = sorted(p.name for p in d.iterdir())
    assert names == ["evencycle7_1.cdgp", "evencycle7_2.cdgp", "evencycle7_3.cdgp"]
    for p in d.iterdir():
        assert classify(read_instance(p).graph) is GraphClass.EVEN_CYCLES_ONLY


def test_gen_deterministic(capsys):
    main(["gen", "--n", "9", "--seed", "11"])
    a = capsys.readouterr().out
    main(["--seed", "11", "gen", "--n", "9"])
    assert capsys.readouterr().out == a


def test_census_cmd(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["census", "--n", "50", "--count", "200", "--seed", "1", "-o", str(out)]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    r = rows[0]
    assert int(r["odd"]) + int(r["even"]) + int(r["trees"]) == int(r["graphs"]) == 200
    assert int(r["bipartite"]) == int(r["even"]) + int(r["trees"])


def test_classify_cmd(files, capsys):
    main(["classify", str(files / "c3_unif5.cdgp"), str(files / "path3.cdgp")])
    out = capsys.readouterr().out
    assert "oddcycle" in out and "tree" in out


def test_reduce_cmd(tmp_path, capsys):
    out = tmp_path / "m.cdgp"
    assert main(["reduce", "1 4 5 6 7 9", "-o", str(out)]) == 0
    inst = read_instance(out)
    assert inst.n == 6 and inst.graph.m == 6
    assert main(["reduce", "1 4 5 6 7 9", "--solve"]) == 0
    assert "sum 16" in capsys.readouterr().out
    assert main(["reduce", "1 9 11 11 12", "--solve"]) == 0
    assert "sum 22" in capsys.readouterr().out
    assert main(["reduce", "1 1"]) == 4


def test_bench_golden(files, tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", str(files / "path3.cdgp"), "--strategies", "prev", "--modes", "optimize",
                 "-o", str(out)]) == 0
    got = out.read_text().splitlines()
    want = (GOLDEN / "bench_path3.csv").read_text().splitlines()
    assert got[0] == want[0]
    g, w = got[1].split(","), want[1].split(",")
    assert len(g) == len(w)
    # time columns are not compared
    assert [a for a, b in zip(g, w) if b != "*"] == [b for b in w if b != "*"]


def test_bench_cardinality_and_sentinels(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--classes", "oddcycle", "evencycle", "tree", "--sizes", "5", "6",
                 "--per-class", "2", "--modes", "decision", "--jobs", "3", "--seed", "4", "-o", str(out)]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 12 * 3
    names = {r["instance"] for r in rows}
    assert "oddcycle5_1" in names and "tree6_2" in names
    assert all(r["mode"] == "decision" for r in rows)
    assert all(r["best_span"] == "" for r in rows if r["span"] == "infeasible")
    assert {r["span"] for r in rows if r["instance"].startswith("tree")} <= set(map(str, range(1, 400)))


def test_bench_timeout_row(tmp_path):
    from cdgp.generate import GenConfig, generate
    from cdgp.graph import ConstraintOp
    from cdgp.instance_io import write_instance
    p = tmp_path / "big.cdgp"
    write_instance(p, generate(GenConfig(n=14, m=60, rng_seed=5, op=ConstraintOp.GEQ)))
    out = tmp_path / "b.csv"
    main(["bench", str(p), "--strategies", "prev", "--node-limit", "3000", "-o", str(out)])
    row = list(csv.DictReader(out.read_text().splitlines()))[0]
    assert row["span"] == "timeout" and row["best_span"].isdigit()


def test_bench_partial_rows_on_interrupt(files, tmp_path, monkeypatch):
    from cdgp import bench
    calls = {"n": 0}
    real = bench._run_cell

    def flaky(cell, tl, nl):
        calls["n"] += 1
        if calls["n"] == 3:
            raise KeyboardInterrupt
        return real(cell, tl, nl)

    monkeypatch.setattr(bench, "_run_cell", flaky)
    out = tmp_path / "b.csv"
    code = main(["bench", str(files / "path3.cdgp"), str(files / "k4_geq1.cdgp"), "-o", str(out)])
    assert code == 130
    lines = out.read_text().splitlines()
    assert lines[0].startswith("instance,strategy") and len(lines) == 3


@pytest.mark.skipif(shutil.which("cdgp") is None, reason="console script not installed")
def test_console_script(files):
    r = subprocess.run(["cdgp", "solve", "--mode", "optimize", str(files / "path3.cdgp")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "span 4" in r.stdout


def test_module_entry(files):
    r = subprocess.run([sys.executable, "-m", "cdgp.cli", "solve", str(files / "c3_unif5.cdgp")],
                       capture_output=True, text=True)
    assert r.returncode == 1
