"""CLI contract: exit codes, schema, determinism, output routing."""

import json
import subprocess
import sys

import pytest

from perminv import cli


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_spectrum_n3(capsys):
    code, out = run_cli(["spectrum", "--n", "3"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == "1"
    assert payload["pass"] is True
    assert payload["config"]["n"] == 3
    blocks = payload["report"]["blocks"]
    by_e = {b["e_predicted"]: b for b in blocks}
    assert by_e["0/1"]["mult_observed"] == 1
    assert by_e["3/2"]["mult_observed"] == 4
    assert by_e["3/1"]["mult_observed"] == 1
    assert abs(by_e["3/2"]["e_observed"] - 1.5) <= 1e-6


def test_young_eigenvalues_n4(capsys):
    code, out = run_cli(["young", "eigenvalues", "--n", "4"], capsys)
    assert code == 0
    payload = json.loads(out)
    rows = {tuple(r["lambda"]): r["e"] for r in payload["report"]["eigenvalues"]}
    assert rows[(4,)] == "0/1"
    assert rows[(3, 1)] == "4/3"
    assert rows[(2, 2)] == "4/1"
    assert rows[(2, 1, 1)] == "8/3"
    assert rows[(1, 1, 1, 1)] == "4/1"


def test_young_identities(capsys):
    code, out = run_cli(["young", "identities", "--max-n", "12"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["pass"] is True


def test_hellman_csv(capsys):
    code, out = run_cli(
        ["hellman", "--log-n", "10", "--t", "16", "--t", "32", "--trials", "2", "--seed", "7"],
        capsys,
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,t,s_entries,s_bits,t_max,t_avg,success,st_product"
    assert len(lines) == 3
    for line in lines[1:]:
        assert line.split(",")[6] == "1.0"


def test_determinism_byte_identical(capsys):
    argv = ["game", "--n", "3", "--p", "1", "--t", "1", "--seed", "5"]
    _, first = run_cli(argv, capsys)
    _, second = run_cli(argv, capsys)
    assert first == second
    argv = ["avgbound", "--n", "4", "--k", "1", "--samples", "10", "--seed", "3"]
    _, first = run_cli(argv, capsys)
    _, second = run_cli(argv, capsys)
    assert first == second


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out = run_cli(["grover", "--n", "16", "--t", "2", "--out", str(path)], capsys)
    assert code == 0
    assert out == ""
    payload = json.loads(path.read_text())
    assert payload["pass"] is True
    assert abs(payload["report"]["p_simulated"] - payload["report"]["p_formula"]) <= 1e-9


def test_csv_unavailable_outside_hellman(capsys):
    code = cli.main(["spectrum", "--n", "3", "--format", "csv"])
    capsys.readouterr()
    assert code == 2


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_capacity_error_exit_2(capsys, monkeypatch):
    monkeypatch.delenv("PERMINV_MAX_N", raising=False)
    code = cli.main(["spectrum", "--n", "9"])
    capsys.readouterr()
    assert code == 2


def test_failing_report_exits_1(capsys):
    class FakeArgs:
        command = "spectrum"
        format = "json"
        out = None

    code = cli._emit(FakeArgs(), {"detail": "bad"}, passed=False)
    capsys.readouterr()
    assert code == 1


def test_text_format(capsys):
    code, out = run_cli(["young", "dims", "--n", "3", "--format", "text"], capsys)
    assert code == 0
    assert "schema_version: 1" in out
    assert "sum_of_squares: 6" in out


def test_altgame_cli(capsys):
    code, out = run_cli(
        ["altgame", "--n", "3", "--t", "1", "--g", "2", "--adversaries", "2", "--seed", "0"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    games = payload["report"]["games"]
    assert len(games) == 2
    assert all(g["pass"] for g in games)


def test_lemma_check_cli(capsys):
    code, out = run_cli(
        ["lemma-check", "--n", "4", "--p", "0", "--t", "1", "--programs", "3", "--seed", "1"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["max_support_residual"] <= 1e-8


def test_decomp_check_cli(capsys):
    code, out = run_cli(["decomp-check", "--n", "4", "--trials", "5"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["decomposition"]["pass"] is True
    assert payload["report"]["change_of_challenge"]["pass"] is True


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "perminv", "young", "dims", "--n", "4"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["report"]["sum_of_squares"] == 24
