import json
import subprocess
import sys

import pytest

from mtra import fixtures as fx
from mtra.cli import EXIT_CODES
from mtra.serialization import assignment_to_json, dumps, instance_to_json, parse_assignment


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else dumps(doc))
        return str(path)
    return write


def test_solve_mps_eg4(cli):
    r = cli("--format", "json", "--instance", "fixture:eg4", "solve", "--mechanism", "mps")
    assert r.status == 0
    assert parse_assignment(fx.TWO, json.dumps(r.json["assignment"])) == fx.EG4_MPS


def test_solve_lexips_eg3(cli):
    r = cli("--format", "json", "--instance", "fixture:eg3", "solve", "--mechanism", "lexips")
    assert r.status == 0
    assert parse_assignment(fx.THREE, json.dumps(r.json["assignment"])) == fx.EG3_LEXIPS


def test_solve_lexips_on_linear_profile_is_usage_error(cli):
    r = cli("--instance", "fixture:eg4", "solve", "--mechanism", "lexips")
    assert r.status == 2
    assert "lexicographic" in r.err


def test_flags_after_the_command(cli):
    r = cli("solve", "--mechanism", "mps", "--instance", "fixture:rm6", "--format", "json")
    assert r.status == 0
    assert parse_assignment(fx.TWO, json.dumps(r.json["assignment"])) == fx.RM6_MPS


def test_solve_eating_with_speeds(cli, files):
    speeds = files("speeds.json", {"speeds": [{"breakpoints": ["0", "1/2", "1"], "rates": ["2", "0"]},
                                              {"breakpoints": ["0", "1"], "rates": ["1"]}]})
    r = cli("--format", "json", "--instance", "fixture:eg4", "solve", "--mechanism", "eating",
            "--speeds", speeds)
    assert r.status == 0
    assert parse_assignment(fx.TWO, json.dumps(r.json["assignment"])) == fx.EG4_FRONT_LOADED


def test_solve_eating_needs_speeds(cli):
    assert cli("--instance", "fixture:eg4", "solve", "--mechanism", "eating").status == 2


def test_solve_from_instance_file_and_stdin(cli, files, monkeypatch):
    path = files("eg4.json", instance_to_json(fx.eg4_profile()))
    a = cli("--format", "json", "--instance", path, "solve", "--mechanism", "mps")
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(open(path).read()))
    b = cli("--format", "json", "--instance", "-", "solve", "--mechanism", "mps")
    assert a.status == b.status == 0
    assert a.out == b.out


def test_reports_are_byte_stable(cli):
    a = cli("--format", "json", "--instance", "fixture:eg3", "solve", "--mechanism", "mps")
    b = cli("--format", "json", "--instance", "fixture:eg3", "solve", "--mechanism", "mps")
    assert a.out == b.out
    assert a.out == dumps(json.loads(a.out)) + "\n"


def test_random_instance_from_seed(cli):
    a = cli("--seed", "5", "dump")
    b = cli("--seed", "5", "dump")
    assert a.status == 0 and a.out == b.out


def test_no_instance_is_usage_error(cli):
    r = cli("solve", "--mechanism", "mps")
    assert r.status == 2


@pytest.mark.parametrize("mutate,code", [
    (lambda d: "{not json", "malformed-json"),
    (lambda d: d["agents"][0]["preference"]["ranking"].__setitem__(0, ["1_F", "x"]) or d, "unknown-item"),
    (lambda d: d["types"][0]["items"].append("3_F") or d, "non-square"),
    (lambda d: d["agents"][0]["preference"]["ranking"].pop() and d, "incomplete-ranking"),
    (lambda d: d["types"][1].__setitem__("items", ["1_F", "2_B"]) or d, "duplicate-item"),
])
def test_instance_errors_have_distinct_exit_codes(cli, files, mutate, code):
    doc = mutate(instance_to_json(fx.eg4_profile()))
    path = files("bad.json", doc)
    r = cli("--format", "json", "--instance", path, "solve", "--mechanism", "mps")
    assert r.status == EXIT_CODES[code]
    assert r.json["error"]["code"] == code


def test_exit_codes_are_distinct_for_input_errors():
    codes = [EXIT_CODES[c] for c in ("malformed-json", "unknown-item", "non-square",
                                     "incomplete-ranking", "duplicate-item", "invalid-assignment")]
    assert len(set(codes)) == len(codes) and min(codes) >= 2


def test_missing_file(cli):
    assert cli("--instance", "/nonexistent.json", "dump").status == 2


def _check(cli, files, fixture, P, prop):
    path = files("P.json", assignment_to_json(P))
    return cli("--format", "json", "--instance", f"fixture:{fixture}", "check",
               "--property", prop, "--assignment", path)


def test_check_decomposable_eg1_false(cli, files):
    r = _check(cli, files, "eg1", fx.EG1_P, "decomposable")
    assert r.status == 1 and r.json["holds"] is False and r.json["witness"] is None


def test_check_decomposable_eg2_true(cli, files):
    r = _check(cli, files, "eg2", fx.EG2_Q, "decomposable")
    assert r.status == 0
    assert sum(__import__("fractions").Fraction(t["weight"]) for t in r.json["witness"]["decomposition"]) == 1


def test_check_cycle_gc(cli, files):
    r = _check(cli, files, "eg:gc", fx.GC_Q, "no-generalized-cycle")
    assert r.status == 1
    pairs = {(t["better"], t["worse"]) for t in r.json["witness"]["cycle"]}
    assert set(fx.GC_CYCLE) <= pairs
    assert r.json["witness"]["minimal_cycles"]


def test_check_cycle_text(cli, files):
    path = files("P.json", assignment_to_json(fx.GC_Q))
    r = cli("--instance", "fixture:eg4", "check", "--property", "no-generalized-cycle", "--assignment", path)
    assert r.status == 1
    assert r.out.startswith("no-generalized-cycle: false")
    assert "(1_F1_B, 2_F2_B)" in r.out


def test_check_iof_rm3(cli, files):
    assert _check(cli, files, "rm3", fx.RM3_MPS, "iof").status == 0


@pytest.mark.parametrize("prop,fixture,P,status", [
    ("sd-efficient", "eg4", fx.EG4_MPS, 0),
    ("sd-efficient", "eg2", fx.EG2_Q, 1),
    ("lexi-efficient", "rm2", fx.EG3_LEXIPS, 1),
    ("sd-envyfree", "rm6", fx.RM6_MPS, 0),
    ("sd-weak-efficient", "eg4", fx.EG4_MPS, 0),
    ("sd-weak-envyfree", "eg4", fx.EG4_MPS, 0),
    ("iof", "eg4", fx.GC_Q, 1),
])
def test_check_properties(cli, files, prop, fixture, P, status):
    r = _check(cli, files, fixture, P, prop)
    assert r.status == status
    assert r.json["holds"] is (status == 0)


def test_check_envy_witness(cli, files):
    P = fx.RM6_MPS.with_rows([fx.RM6_MPS.matrix[1], fx.RM6_MPS.matrix[0]])
    r = _check(cli, files, "rm6", P, "sd-envyfree")
    assert r.status == 1 and set(r.json["witness"]) == {"envious", "envied"}


def test_check_invalid_assignment_lists_violations(cli, files):
    path = files("P.json", {"matrix": [["1/2", "0", "0", "0"], ["0", "1/2", "1/2", "0"]]})
    r = cli("--format", "json", "--instance", "fixture:eg4", "check", "--property", "iof", "--assignment", path)
    assert r.status == 3
    kinds = {v["kind"] for v in r.json["error"]["violations"]}
    assert kinds == {"row", "item"}
    assert "row constraint violated at agent 1" in r.err


def test_check_malformed_assignment_exit_3(cli, files):
    path = files("P.json", '{"matrix": [[1]]}')
    assert cli("--instance", "fixture:eg4", "check", "--property", "iof", "--assignment", path).status == 3


def test_audit_rm6(cli):
    r = cli("--format", "json", "--instance", "fixture:rm6", "audit", "--mechanism", "mps",
            "--agent", "1", "--class", "all-linear")
    assert r.status == 1
    mats = [parse_assignment(fx.TWO, json.dumps(v["assignment"])) for v in r.json["violations"]]
    assert fx.RM6_MANIPULATED in mats


def test_audit_rm4(cli):
    r = cli("--format", "json", "--instance", "fixture:rm4", "audit", "--mechanism", "lexips",
            "--agent", "2", "--class", "lexicographic")
    assert r.status == 1
    mats = [parse_assignment(fx.RM4, json.dumps(v["assignment"])) for v in r.json["violations"]]
    assert fx.RM4_MANIPULATED in mats


def test_audit_eg3_fixed_importance_clean(cli):
    r = cli("--instance", "fixture:eg3", "audit", "--mechanism", "lexips",
            "--class", "lexicographic-fixed-importance")
    assert r.status == 0
    assert "0 violations" in r.out


def test_audit_errors(cli):
    assert cli("--instance", "fixture:eg4", "audit", "--mechanism", "mps", "--agent", "9").status == 2
    r = cli("--instance", "fixture:eg3", "audit", "--mechanism", "mps", "--class", "all-linear")
    assert r.status == EXIT_CODES["capacity"]
    r = cli("--cap", "100000", "--instance", "fixture:eg4", "audit", "--mechanism", "lexips",
            "--class", "all-linear")
    assert r.status == 2


def test_decompose(cli, files):
    path = files("P.json", assignment_to_json(fx.EG3_LEXIPS))
    lp = cli("--format", "json", "--instance", "fixture:eg3", "decompose", "--assignment", path)
    prod = cli("--format", "json", "--instance", "fixture:eg3", "decompose", "--assignment", path,
               "--method", "product")
    assert lp.status == prod.status == 0
    assert lp.json["decomposable"] and prod.json["decomposable"]
    assert len(prod.json["per_type"]) == 2
    bad = files("Q.json", assignment_to_json(fx.EG1_P))
    assert cli("--instance", "fixture:eg4", "decompose", "--assignment", bad).status == 1
    r = cli("--instance", "fixture:eg4", "decompose", "--assignment", bad, "--method", "product")
    assert r.status == 1 and "product" in r.out


def test_decompose_cap(cli, files):
    path = files("P.json", assignment_to_json(fx.EG3_LEXIPS))
    r = cli("--cap", "10", "--instance", "fixture:eg3", "decompose", "--assignment", path)
    assert r.status == EXIT_CODES["capacity"]


def test_leximin(cli, files):
    r = cli("--format", "json", "--instance", "fixture:eg4", "leximin")
    assert r.status == 0
    assert r.json["sorted"] == ["1/2"] * 3 + ["1/1"] * 5
    assert parse_assignment(fx.TWO, json.dumps(r.json["assignment"])) == fx.EG4_MPS
    path = files("Q.json", assignment_to_json(fx.GC_Q))
    r = cli("--format", "json", "--instance", "fixture:eg4", "leximin", "--assignment", path,
            "--against", "optimal")
    assert r.status == 0
    assert r.json["sorted"][:4] == ["2/5", "2/5", "2/5", "4/5"]
    assert r.json["against"]["compare"] == -1


def test_paper_fixture(cli):
    r = cli("--format", "json", "paper", "--fixture", "rm5")
    assert r.status == 0 and r.json["passed"]
    assert len(r.json["checks"]) == 5


def test_paper_unknown_fixture(cli):
    assert cli("paper", "--fixture", "eg9").status == 2


def test_unknown_fixture_instance(cli):
    assert cli("--instance", "fixture:eg9", "dump").status == 2


def test_argparse_usage_errors(cli):
    with pytest.raises(SystemExit) as e:
        cli("solve", "--mechanism", "serial")
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "mtra", "--instance", "fixture:eg4", "solve", "--mechanism", "mps"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "1_F1_B" in r.stdout


def test_paper_all(cli):
    r = cli("--format", "json", "paper", "--fixture", "all")
    assert r.status == 0
    assert set(r.json["fixtures"]) == set(fx.FIXTURES)
    assert all(c["passed"] for c in r.json["checks"])
