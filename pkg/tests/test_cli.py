from __future__ import annotations

import subprocess
import sys

import pytest

from cosetcodes.cli import EXIT_FAIL, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, main
from cosetcodes.io import parse_report, read_code


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, parse_report(out), err


def test_bound_mrd(capsys):
    cases = [((2, 8, 4, 4), 4797), ((2, 9, 4, 6), 2**10 + 2**3 + 1), ((3, 9, 4, 6), 3**10 + 3**3 + 1), ((2, 10, 4, 6), 4173)]
    for (q, n, k, d), want in cases:
        code, rep, _ = run(capsys, "bound", "mrd", "--q", str(q), "--n", str(n), "--k", str(k), "--d", str(d))
        assert code == EXIT_OK and rep["value"] == str(want)


def test_bound_with_table_file(tmp_path, capsys):
    table = tmp_path / "aq.txt"
    table.write_text("# q n d k value source\n2 6 4 3 77 test\n")
    code, rep, _ = run(capsys, "bound", "mrd", "--q", "2", "--n", "10", "--k", "4", "--d", "6", "--aq-table", str(table))
    assert code == EXIT_OK and rep["value"] == str(2**12 + 77)


def test_infeasible_exit_code(capsys):
    code, _, err = run(capsys, "bound", "mrd", "--q", "2", "--n", "7", "--k", "4", "--d", "6")
    assert code == EXIT_INFEASIBLE and "infeasible" in err
    code, _, _ = run(capsys, "construct", "--family", "8-4-4", "--q", "3", "--out", "/nonexistent/x")
    assert code == EXIT_INFEASIBLE
    code, _, _ = run(capsys, "construct", "--family", "3k-3", "--k", "3", "--q", "2", "--out", "/nonexistent/x")
    assert code == EXIT_INFEASIBLE


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "7-7-7", "--q", "2"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE
    capsys.readouterr()
    assert run(capsys, "construct", "--family", "3k-3", "--q", "2")[0] == EXIT_USAGE
    assert run(capsys, "verify", str(tmp_path / "missing.code"), "--distance", "4")[0] == EXIT_USAGE
    bad = tmp_path / "bad.code"
    bad.write_text("subspace-code q=2 n=3\nk=1 1 2 0\n")
    code, _, err = run(capsys, "verify", str(bad), "--distance", "2")
    assert code == EXIT_USAGE and "bad.code:2" in err


def test_construct_certify_and_verify(tmp_path, capsys):
    out = tmp_path / "c.code"
    code, rep, _ = run(capsys, "construct", "--family", "9-6-4", "--q", "2", "--out", str(out), "--certify")
    assert code == EXIT_OK
    assert rep["size"] == "1033" and rep["certify.verdict"] == "PASS" and rep["certify.min_distance"] == "6"
    assert len(read_code(out)) == 1033
    assert parse_report((tmp_path / "c.code.provenance").read_text())["size"] == "1033"
    assert (tmp_path / "c.code.blueprint").read_text().startswith("coset-blueprint")

    code, rep, _ = run(capsys, "verify", str(out), "--distance", "6", "--cardinality", "1033")
    assert code == EXIT_OK and rep["verdict"] == "PASS"
    code, rep, _ = run(capsys, "verify", str(out), "--distance", "7")
    assert code == EXIT_FAIL and rep["verdict"] == "FAIL" and "witness_a" in rep
    code, rep, _ = run(capsys, "verify", str(out), "--distance", "6", "--sample", "500", "--seed", "3")
    assert code == EXIT_OK and rep["mode"] == "sampled" and rep["seed"] == "3"


def test_construct_sampled_certificate(tmp_path, capsys):
    out = tmp_path / "c.code"
    code, rep, _ = run(capsys, "construct", "--family", "3k-3", "--k", "4", "--q", "2", "--out", str(out),
                       "--certify", "--sample", "2000")
    assert code == EXIT_OK and rep["certify.mode"] == "structural+sampled" and rep["certify.verdict"] == "PASS"


def test_construct_default_output_name(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, rep, _ = run(capsys, "construct", "--family", "3k-3", "--k", "4", "--q", "2")
    assert code == EXIT_OK and rep["out"] == "3k-3-k4-q2.code"
    assert (tmp_path / "3k-3-k4-q2.code").exists()


def test_construct_10_6_4_without_extension(tmp_path, capsys):
    out = tmp_path / "c.code"
    code, rep, _ = run(capsys, "construct", "--family", "10-6-4", "--q", "2", "--no-extend", "--out", str(out))
    assert code == EXIT_OK and rep["size"] == "4161" and rep["b.source"] == "greedy"


def test_output_is_deterministic(tmp_path):
    def once(name):
        out = tmp_path / name
        r = subprocess.run(
            [sys.executable, "-m", "cosetcodes.cli", "construct", "--family", "8-4-4", "--q", "2", "--out", str(out)],
            capture_output=True, text=True, check=True,
        )
        return r.stdout.replace(name, "X"), out.read_bytes(), (tmp_path / f"{name}.blueprint").read_bytes()

    a, b = once("a.code"), once("b.code")
    assert a == b


def test_lambda_solve(capsys):
    code, rep, _ = run(capsys, "lambda", "solve", "--alpha", "35", "--beta", "5", "--abar", "7", "--bbar", "1", "--l", "5")
    assert code == EXIT_OK and rep["objective"] == "35"
    code, rep, _ = run(capsys, "lambda", "solve", "--alpha", "10", "--beta", "10", "--abar", "5", "--bbar", "5", "--l", "3")
    assert code == EXIT_OK
    a = list(map(int, rep["a"].split(",")))
    b = list(map(int, rep["b"].split(",")))
    assert sum(x * y for x, y in zip(a, b)) == int(rep["objective"])


def test_parallelism(tmp_path, capsys):
    out = tmp_path / "par.manifest"
    code, rep, _ = run(capsys, "parallelism", "--q", "2", "--out", str(out))
    assert code == EXIT_OK and rep["verdict"] == "PASS" and rep["parts"] == "7" and rep["covered"] == "35"
    assert rep["parallelism"] == "yes" and out.read_text().startswith("packing")
    assert run(capsys, "parallelism", "--q", "3")[0] == EXIT_INFEASIBLE


def test_decompose(tmp_path, capsys):
    from cosetcodes import Code, enumerate_grassmannian, gf
    from cosetcodes.io import write_code

    path = tmp_path / "g.code"
    write_code(Code(gf(2), 4, enumerate_grassmannian(4, 2, 2)), path)
    code, rep, _ = run(capsys, "decompose", str(path), "--d", "4", "--dprime", "2")
    assert code == EXIT_OK and rep["method"] == "greedy"
    out = tmp_path / "p.manifest"
    code, rep, _ = run(capsys, "decompose", str(path), "--d", "4", "--dprime", "2", "--exact", "--l", "7", "--out", str(out))
    assert code == EXIT_OK and rep["objective"] == "35" and rep["optimal"] == "yes"
    assert rep["part_sizes"] == "5,5,5,5,5,5,5"
    assert run(capsys, "verify", str(path), "--distance", "2")[0] == EXIT_OK
    code, rep, _ = run(capsys, "decompose", str(path), "--d", "4", "--dprime", "2", "--exact")
    assert code == EXIT_USAGE
    code, rep, _ = run(capsys, "decompose", str(path), "--d", "4", "--dprime", "2", "--exact", "--l", "7", "--node-budget", "1")
    assert code == EXIT_FAIL and rep["budget_exhausted"] == "yes"


def test_console_script_exit_status(tmp_path):
    r = subprocess.run([sys.executable, "-m", "cosetcodes.cli", "bound", "mrd", "--q", "2", "--n", "7", "--k", "4", "--d", "6"],
                       capture_output=True, text=True)
    assert r.returncode == EXIT_INFEASIBLE
