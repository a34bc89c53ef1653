import subprocess
import sys

import pytest

from grothperm.cli import main
from grothperm.emit import read_pgm


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_optimize_layered_row(capsys):
    status, out, _ = run(capsys, "optimize-layered", "--n", "30")
    assert status == 0
    header, row = out.splitlines()
    assert header == "n,composition,f"
    n, comp, f = row.split(",")
    assert (n, comp) == ("30", "1-3-5-8-13")
    assert abs(float(f) - 0.43780) <= 1.0001e-5


def test_exact_w0(capsys):
    assert run(capsys, "exact", "--w0", "1", "2", "--beta", "1")[1] == "3\n"
    assert run(capsys, "exact", "--w0", "2", "2", "--route", "schroeder")[1] == "7\n"
    assert run(capsys, "exact", "--perm", "1432", "--beta", "1")[1] == "11\n"
    assert run(capsys, "exact", "--perm", "1432", "--route", "bpd")[1] == "11\n"
    assert run(capsys, "exact", "--layered", "1-3")[1] == "11\n"
    assert run(capsys, "exact", "--w0", "1", "2", "--beta", "1/2")[1] == "5/2\n"


def test_sample_is_deterministic(capsys):
    argv = ["sample", "--n", "2", "--p", "0.5", "--samples", "4", "--seed", "7"]
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b and a[0] == 0
    lines = a[1].splitlines()
    assert lines[0] == "sample,permutation" and len(lines) == 5


def test_thread_budget_from_environment(capsys, monkeypatch):
    argv = ["heatmap", "--n", "40", "--samples", "40", "--grid", "10", "--seed", "3"]
    monkeypatch.setenv("GROTHPERM_THREADS", "1")
    a = run(capsys, *argv)
    monkeypatch.setenv("GROTHPERM_THREADS", "8")
    b = run(capsys, *argv)
    assert a == b


def test_heatmap_pgm(capsys):
    status, out, _ = run(capsys, "heatmap", "--n", "50", "--samples", "5", "--grid", "10")
    assert status == 0
    gray = read_pgm(out)
    assert gray.shape == (10, 10) and gray.max() == 255
    assert "max count" in out


def test_heatmap_csv_counts(capsys):
    _, out, _ = run(capsys, "heatmap", "--n", "20", "--samples", "3", "--grid", "5",
                    "--format", "csv")
    rows = out.splitlines()
    assert rows[0] == "value_bin,position_bin,count"
    assert sum(int(r.split(",")[2]) for r in rows[1:]) == 60


def test_tasep_worked_seed(capsys):
    _, out, _ = run(capsys, "tasep", "--k", "3", "--n", "6", "--seed", "380", "--what", "exits")
    assert out.splitlines() == ["i,T_exit", "1,2", "2,3", "3,5"]


def test_limit_shape(capsys):
    _, out, _ = run(capsys, "limit-shape", "--grid", "4")
    lines = out.splitlines()
    assert lines[0] == "x,y,h" and len(lines) == 26


def test_fluct_and_nonreduced(capsys):
    status, out, _ = run(capsys, "fluct", "--n", "100", "--samples", "5", "--summary")
    assert status == 0 and out.startswith("n,p,x,y,samples,mean,sd,tw_mean")
    status, out, _ = run(capsys, "nonreduced", "--n", "30", "--samples", "5")
    assert status == 0 and out.startswith("n,p,samples,inv_mean")


def test_bpd_verb(capsys):
    _, out, _ = run(capsys, "bpd", "--n", "3")
    assert out.splitlines() == ["n,bpds,asm_formula,two_asm_law_matches",
                                "1,1,1,1", "2,2,2,1", "3,7,7,1"]
    _, out, _ = run(capsys, "bpd", "--perm", "213")
    assert out.count("\n\n") == 0 and len(out.split()) == 3


def test_validate_subset(capsys):
    status, out, _ = run(capsys, "validate", "--only", "1,2")
    assert status == 0 and out.count("[PASS]") == 2


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "sample", "--n", "3", "--p", "2")[0] == 2
    assert run(capsys, "sample")[0] == 2
    assert run(capsys, "bpd", "--n", "6")[0] == 2
    assert run(capsys, "heatmap", "--n", "5", "--grid", "10")[0] == 2
    assert run(capsys, "fluct", "--n", "50", "--x", "0.1", "--y", "0.9")[0] == 2
    assert run(capsys, "exact", "--perm", "1432", "--route", "proctor")[0] == 2


def test_help_documents_schema(capsys):
    status, out, _ = run(capsys, "sample", "--help")
    assert status == 0 and "CSV columns" in out


def test_help_text_mentions_columns():
    from grothperm.cli import build_parser
    sub = build_parser()._subparsers._group_actions[0].choices
    for name, parser in sub.items():
        if name != "validate":
            assert parser.description and ("CSV" in parser.description or "Prints" in parser.description)


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.csv"
    assert main(["limit-shape", "--grid", "2", "--out", str(path)]) == 0
    assert path.read_text().startswith("x,y,h\n")
    assert capsys.readouterr().out == ""


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "grothperm.cli", "exact", "--w0", "1", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "3\n"
