import json

import pytest

from octavo import cli
from octavo.core import IndexSet
from octavo.polynomials import UniPoly, f_poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def strip_timing(text):
    data = json.loads(text)
    data.pop("timing", None)
    return data


def test_verify_rank_one(capsys):
    code, data = run_json(capsys, "verify", "--n", "1")
    assert code == 0
    assert data["schema"] == cli.SCHEMA
    assert [(r["I"], r["S"], r["f"]) for r in data["records"]] == [([], "1", "1"), ([0], "1 - X", "1 - X")]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_verify_sweep(capsys, n):
    code, data = run_json(capsys, "verify", "--n", str(n), "--jobs", "1")
    assert code == 0 and data["overall_pass"]
    assert len(data["records"]) == 2**n


def test_verify_single_set_and_oracle(capsys):
    code, data = run_json(capsys, "verify", "--n", "3", "--set", "0,2", "--oracle")
    assert code == 0 and [r["I"] for r in data["records"]] == [[0, 2]]


def test_verify_detects_corrupted_formula(capsys, monkeypatch):
    def corrupted(n, I):
        return f_poly(n, I) + UniPoly.monomial(2) if 0 in I else f_poly(n, I)

    report = cli.cmd_verify(3, f_func=corrupted)
    assert not report["overall_pass"]
    window = report["counterexamples"][0]["element"]["window"]
    assert len(window) == 3

    monkeypatch.setattr(cli, "f_poly", corrupted)
    code, out, _ = run(capsys, "verify", "--n", "2")
    assert code == 1
    assert "counterexample" in out and "FAIL" in out


def test_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "--n", "3", "--json")
    _, second, _ = run(capsys, "verify", "--n", "3", "--json", "--jobs", "2")
    assert strip_timing(first) == strip_timing(second)
    _, a, _ = run(capsys, "swaps", "--window", "-9,2,5,10,3,4,7,-6,1,-8", "--k", "4", "--json")
    _, b, _ = run(capsys, "swaps", "--window", "-9,2,5,10,3,4,7,-6,1,-8", "--k", "4", "--json")
    assert a == b


def test_stats_examples(capsys):
    code, data = run_json(capsys, "stats", "--window", "-9,2,5,10,3,4,7,-6,1,-8")
    assert code == 0
    assert data["descents"] == [0, 4, 7, 9] and data["chessboard"] is True
    code, data = run_json(capsys, "stats", "--window", "3,4,9,-8,-5,-2,1,6,7")
    assert (data["L"], data["sign"]) == (15, -1)
    assert data["abc"]["total"] == 15


def test_stats_human_output(capsys):
    code, out, _ = run(capsys, "stats", "--window", "-1,2")
    assert code == 0
    assert "D(w)       {0}" in out and "L          1" in out
    assert "  1  -1  .\n  2   .  1" in out


def test_gf_rank_one(capsys):
    code, data = run_json(capsys, "gf", "--n", "1", "--set", "")
    assert code == 0
    assert (data["S"], data["f"], data["difference"]) == ("1", "1", "0")


def test_gf_pinned(capsys):
    code, data = run_json(capsys, "gf", "--n", "4", "--set", "0,2")
    assert code == 0
    assert [p["k"] for p in data["pinned"]] == [0, 2, 4]
    assert data["pinned_total"] == data["S"]


def test_conjecture_rank_one(capsys):
    code, data = run_json(capsys, "conjecture", "--n", "1")
    assert code == 0
    assert [(r["I"], r["divisible"]) for r in data["records"]] == [([], False), ([0], True)]


def test_conjecture_rank_two_disagrees(capsys):
    # the t^l X^L sum over D(w) in {0} is 1 + Xt + X^2 t^2 + X^2 t^3, not divisible by Xt + 1
    code, data = run_json(capsys, "conjecture", "--n", "2")
    assert code == 1
    got = {tuple(r["I"]): r["divisible"] for r in data["records"]}
    assert got == {(): False, (0,): False, (1,): True, (0, 1): True}


def test_bijection_sweep(capsys):
    code, data = run_json(capsys, "bijection", "--n", "5", "--set", "1,3", "--j", "3", "--trace")
    assert code == 0 and data["bijective"]
    assert data["domain_size"] == data["codomain_size"] == len(data["traces"])


def test_bijection_trace(capsys):
    code, data = run_json(capsys, "bijection", "--window", "3,4,9,-8,-5,-2,1,6,7", "--j", "3")
    assert code == 0
    assert data["image"] == [3, 6, -5, -4, 1, 2, 7, 8]
    assert [s["L"] for s in data["stages"]] == [15, 13, 11, 10, 9]
    code, out, _ = run(capsys, "bijection", "--window", "3,4,9,-8,-5,-2,1,6,7", "--j", "3")
    assert "w4: L=9 sign=-1" in out and "round trip: ok" in out


def test_swaps_report(capsys):
    code, data = run_json(capsys, "swaps", "--window", "-9,2,5,10,3,4,7,-6,1,-8", "--k", "4")
    assert code == 0
    assert data["swaps"]["sign"] == [[2]]
    assert data["swaps"]["single-plus"] == [[1, 7], [3, 7]]
    assert data["least"]["general-left"] == {"kind": "sign", "columns": [2]}
    code, out, _ = run(capsys, "swaps", "--window", "5,10,-9,-6,3,4,1,2,7,8", "--j", "2")
    assert "'overall': True" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["stats", "--window", "1,1"],
        ["stats", "--window", "x"],
        ["verify", "--n", "0"],
        ["verify", "--n", "3", "--set", "5"],
        ["bijection", "--n", "4", "--set", "1", "--j", "2"],
        ["bijection", "--window", "1,2,3", "--j", "1"],
        ["bijection", "--j", "1"],
        ["swaps", "--window", "1,2", "--k", "3"],
    ],
)
def test_bad_input_exits_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_rank_cap(capsys, monkeypatch):
    monkeypatch.setenv("OCTAVO_MAX_RANK", "3")
    code, _, err = run(capsys, "verify", "--n", "4")
    assert code == 2 and "OCTAVO_MAX_RANK" in err


def test_index_set_type_accepted():
    assert cli.cmd_gf(2, IndexSet(2, (0,)))["S"] == "1 - X"
