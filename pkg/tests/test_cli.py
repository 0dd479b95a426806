from __future__ import annotations

import json

import pytest

from coxlab import identities
from coxlab.cli import main
from coxlab.identities import IdentityReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_chain_number_a3(capsys):
    code, out, _ = run(capsys, "verify", "chain-number", "A3")
    rep = json.loads(out)
    assert code == 0
    assert (rep["lhs"], rep["rhs"], rep["pass"], rep["type"]) == ("16", "16", True, "A3")
    assert rep["millis"] is None


def test_laplacian_charpoly_a3(capsys):
    code, out, _ = run(capsys, "laplacian", "charpoly", "A3")
    assert code == 0 and out.strip() == "t^3 + 12 t^2 + 48 t + 64"


def test_nc_zeta_a2(capsys):
    code, out, _ = run(capsys, "nc", "zeta", "A2", "--k", "2")
    assert code == 0 and out.strip() == "12"


def test_group_info_and_lattice_summary(capsys):
    code, out, _ = run(capsys, "group", "info", "H3")
    info = json.loads(out)
    assert code == 0 and info["degrees"] == [2, 6, 10] and info["order_enumerated"] == "120"
    code, out, _ = run(capsys, "lattice", "summary", "A3")
    summary = json.loads(out)
    assert summary["flats"] == 15 and summary["exponents"] == [1, 2, 3] and summary["chambers"] == "24"


def test_group_info_on_large_type_skips_enumeration(capsys):
    code, out, _ = run(capsys, "group", "info", "H4")
    info = json.loads(out)
    assert code == 0 and info["order_from_degrees"] == "14400" and info["order_enumerated"] is None


def test_verify_with_k_and_r(capsys):
    code, out, _ = run(capsys, "verify", "chapoton", "A2", "--k", "2")
    assert code == 0 and json.loads(out)["lhs"] == ["5", "12"]
    code, out, _ = run(capsys, "verify", "fr2", "A3", "--r", "3", "--k", "0")
    assert code == 0 and json.loads(out)["lhs"] == [["24"]]


def test_table_format(capsys):
    code, out, _ = run(capsys, "verify", "t1-slice", "A3", "--format", "table")
    assert code == 0
    assert out.splitlines()[1].split() == ["t1-slice", "A3", "pass", "48", "48"]


@pytest.mark.parametrize("argv", [
    ["verify", "chain-number", "Z9"],
    ["verify", "chapoton", "A2xA1"],
    ["verify", "chain-number", "A3", "--k", "2"],
    ["verify", "chapoton", "A2", "--r", "1"],
    ["nc", "zeta", "A2", "--k", "0"],
    ["verify", "degrees", "H4"],
    ["suite", "all", "--identities", "bogus"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("coxlab: error:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "not-an-identity", "A2"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_failed_identity_exits_one(capsys, monkeypatch):
    def broken(t, **kw):
        return IdentityReport("chain-number", t, 1, 2, False)

    monkeypatch.setitem(identities.CHECKS, "chain-number", broken)
    code, out, _ = run(capsys, "verify", "chain-number", "A2")
    assert code == 1 and json.loads(out)["pass"] is False


def test_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("COXLAB_CAP", "5")
    # a type no other test has enumerated, so nothing is cached
    code, _, err = run(capsys, "nc", "zeta", "A1xA1xA1", "--k", "1")
    assert code == 2 and "exceeds cap 5" in err
    monkeypatch.delenv("COXLAB_CAP")
    identities._CONTEXTS.pop(("A1xA1xA1", False), None)
    code, out, _ = run(capsys, "nc", "zeta", "A1xA1xA1", "--k", "1")
    assert code == 0 and out.strip() == "8"


def test_output_is_byte_identical(capsys):
    argv = ["suite", "all", "--types", "A2", "B2", "--format", "table"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
    assert first[1].splitlines()[-1].endswith("passed")


def test_suite_json_is_sorted(capsys):
    code, out, _ = run(capsys, "suite", "all", "--types", "B2", "A2", "--identities", "nu", "chain-number")
    reports = json.loads(out)
    keys = [(r["identity"], r["type"]) for r in reports]
    assert code == 0 and keys == sorted(keys) and len(keys) == 4


def test_hurwitz_export_writes_text_and_json(capsys, tmp_path):
    out = tmp_path / "a2.txt"
    code, stdout, _ = run(capsys, "hurwitz", "export", "A2", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert [line for line in lines if line.startswith("gen ")] == [
        "gen t0 = reflection 0", "gen t1 = reflection 1", "gen t2 = reflection 2",
    ]
    assert lines[-1] == "words: 3"
    payload = json.loads((tmp_path / "a2.json").read_text())
    assert payload["count"] == 3
    assert "words: 3" in stdout


def test_timings_flag(capsys):
    code, out, _ = run(capsys, "verify", "nu", "A2", "--timings")
    assert code == 0 and isinstance(json.loads(out)["millis"], float)
