"""End-to-end runs of the command-line interface."""

import json

import pytest

from bosonflow import cli

STIRLING_CSV = """\
n,0,1,2,3,4
0,1,,,,
1,0,1,,,
2,0,1,1,,
3,0,1,3,1,
4,0,1,7,6,1
"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stirling_csv(capsys):
    code, out, _ = run(capsys, "stirling", "--word", "a+ a", "--n", "4", "--format", "csv")
    assert code == 0
    assert out == STIRLING_CSV


def test_stirling_json_staircase(capsys):
    code, out, _ = run(capsys, "stirling", "--word", "(a+)^2 a^2", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["excess"] == 0
    assert data["coefficients"][2] == ["0", "0", "2", "4", "1"]


def test_normal_order_pretty(capsys):
    code, out, _ = run(capsys, "normal-order", "--word", "a a+")
    assert code == 0
    assert out.strip() == "1 + a+ a"


def test_normal_order_power_json(capsys):
    code, out, _ = run(
        capsys, "normal-order", "--word", "a+ a", "--power", "2", "--format", "json"
    )
    data = json.loads(out)
    assert data["terms"] == [
        {"annihilations": 1, "coeff": "1", "creations": 1},
        {"annihilations": 2, "coeff": "1", "creations": 2},
    ]


def test_riordan_build_recover_round_trip(tmp_path, capsys):
    out_file = tmp_path / "m.json"
    code, _, _ = run(
        capsys, "riordan-build", "--g", "1,1,1,1,1", "--phi", "0,1,0,0,0",
        "--convention", "EGF", "--n", "4", "--format", "json",
        "--output", str(out_file),
    )
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["class"] == "UT"
    code, out, _ = run(
        capsys, "riordan-recover", "--matrix", str(out_file), "--format", "json"
    )
    assert code == 0
    pair = json.loads(out)
    assert pair["g"] == ["1", "1", "1", "1", "1"]
    assert pair["phi"] == ["0", "1", "0", "0", "0"]


def test_sheffer_check_pass_and_fail(tmp_path, capsys):
    good = {
        "size": 3,
        "entries": [["1"], ["0", "1"], ["0", "1", "1"]],
        "class": "UT",
    }
    path = tmp_path / "good.json"
    path.write_text(json.dumps(good))
    code, out, _ = run(capsys, "sheffer-check", "--matrix", str(path))
    assert code == 0 and "PASS" in out

    bad = {
        "size": 4,
        "entries": [["1"], ["0", "1"], ["0", "1", "1"], ["0", "1", "5", "1"]],
        "class": "UT",
    }
    path2 = tmp_path / "bad.json"
    path2.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "sheffer-check", "--matrix", str(path2))
    assert code == 1 and "FAIL" in out


def test_flow_json_homography(capsys):
    code, out, _ = run(capsys, "flow", "--field", "x^2", "--orders", "5", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    # x/(1 - lam x): coefficient of x^{k+1} lam^k is 1
    for n, row in enumerate(data["coefficients"]):
        for k, c in enumerate(row):
            assert c == ("1" if n == k + 1 else "0")


def test_group_action_grid(capsys):
    code, out, _ = run(
        capsys, "group-action", "--op", "a+ a a+", "--monomial", "0",
        "--orders", "4", "4", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    for n, row in enumerate(data["coefficients"]):
        for k, c in enumerate(row):
            assert c == ("1" if n == k else "0")


def test_correspond_json(capsys):
    code, out, _ = run(capsys, "correspond", "--op", "a+ a a+", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["sheffer_ok"]
    assert data["pair"]["g"] == ["1", "1", "2", "6", "24", "120", "720"]
    assert data["pair"]["phi"] == ["0", "1", "2", "6", "24", "120", "720"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "stirling", "--word", "a+ b")
    assert code == 2
    assert "offset" in err


def test_mixed_weight_operator_exit_code(capsys):
    code, _, err = run(capsys, "correspond", "--op", "(a+)^2 a + a")
    assert code == 2
    assert "mixed weights" in err


def test_missing_matrix_file_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "riordan-recover", "--matrix", str(tmp_path / "nope.json"))
    assert code == 3


def test_usage_error_on_bad_n():
    with pytest.raises(SystemExit) as exc:
        cli.main(["stirling", "--word", "a", "--n", "0"])
    assert exc.value.code == 2


def test_output_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    code, _, _ = run(
        capsys, "stirling", "--word", "a+ a", "--n", "2", "--format", "csv",
        "--output", "tri.csv",
    )
    assert code == 0
    assert (tmp_path / "tri.csv").exists()


def test_determinism(capsys):
    argv = ["correspond", "--op", "(a+)^2 a", "--format", "json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
