import json
import subprocess
import sys

import pytest

from mdv import checks
from mdv.cli import main
from mdv.reports import CheckReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gnw_verify_passes(capsys):
    code, out, _ = run(capsys, "gnw-verify", "--m", "4", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "pass"
    assert report["check"] == "gnw-verify"
    assert set(report) == {"check", "inputs", "status", "details"}


def test_gnw_verify_precondition_exit_2(capsys):
    code, _, err = run(capsys, "gnw-verify", "--m", "3")
    assert code == 2 and "m = 3" in err


def test_unknown_subcommand_exit_2(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_determinant_table_text_output(capsys):
    code, out, _ = run(capsys, "determinant-table", "--m-from", "4", "--m-to", "11")
    assert code == 0
    assert out.startswith("[PASS] determinant-table")
    assert "922610640000" in out


def test_determinant_table_json(capsys):
    code, out, _ = run(capsys, "determinant-table", "--m-from", "4", "--m-to", "40", "--json")
    rows = json.loads(out)["details"]["rows"]
    assert code == 0
    assert [r["m"] for r in rows] == [m for m in range(4, 41) if m % 3]
    assert all(r["equal"] for r in rows)


def test_rationals_serialized_as_strings(capsys):
    code, out, _ = run(capsys, "witness-search", "--m", "4", "--k-max", "1", "--json")
    assert code == 0
    assert json.loads(out)["details"]["self_intersection"] == "-77/725"


def test_witness_search_triple(capsys):
    code, out, _ = run(capsys, "witness-search", "--triple", "1,2,3", "--curve", "y - x^2",
                       "--class", "2,1", "--k-max", "6", "--json")
    assert code == 0
    assert json.loads(out)["details"]["witness_levels"] == [1, 2, 3, 4, 5, 6]


def test_witness_search_bad_input(capsys):
    code, _, _ = run(capsys, "witness-search", "--triple", "1,2,3", "--curve", "y - x^3", "--class", "2,1")
    assert code == 2
    code, _, _ = run(capsys, "witness-search", "--k-max", "2")
    assert code == 2


def test_symbolic_power_fail_carries_counterexample(capsys):
    code, out, _ = run(capsys, "symbolic-power", "--m", "4", "--poly", "g_c", "--l", "2", "--json")
    report = json.loads(out)
    assert code == 1
    assert report["status"] == "fail"
    assert len(report["details"]["counterexample"]["derivative"]) == 3


def test_symbolic_power_expression(capsys):
    code, _, _ = run(capsys, "symbolic-power", "--triple", "1,2,3", "--poly", "(y - x^2)^2", "--l", "2")
    assert code == 0


def test_lm_quotient(capsys):
    code, out, _ = run(capsys, "lm-quotient", "--sizes", "3,3,3", "--json")
    assert code == 0
    assert json.loads(out)["details"]["weights"] == [1, 1, 1]
    code, out, _ = run(capsys, "lm-quotient", "--sizes", "5,5,5", "--json")
    report = json.loads(out)
    assert code == 1 and report["status"] == "fail"
    assert "property" in report["details"]["counterexample"]
    code, _, _ = run(capsys, "lm-quotient", "--sizes", "2,3,3")
    assert code == 2


def test_lm_chain(capsys):
    code, out, _ = run(capsys, "lm-chain", "--n", "6", "--json")
    assert code == 0
    assert json.loads(out)["details"]["top_rays_match"] is True


def test_lm_chain_kernels_file(capsys, tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps([[1, 0, 1]]))
    code, _, _ = run(capsys, "lm-chain", "--n", "6", "--kernels", str(path))
    assert code == 0
    path.write_text("{not json")
    code, _, _ = run(capsys, "lm-chain", "--n", "6", "--kernels", str(path))
    assert code == 2


def test_lm_chain_budget_is_an_error_status(capsys):
    code, out, _ = run(capsys, "lm-chain", "--n", "7", "--budget", "40", "--json")
    assert code == 1
    assert json.loads(out)["status"] == "error"


def test_lm_chain_sizes_truncated(capsys):
    code, out, _ = run(capsys, "lm-chain", "--sizes", "3,3,3", "--budget", "200", "--json")
    report = json.loads(out)
    assert report["inputs"]["n"] == 11
    assert code == 1 and report["status"] == "error"


def test_fan_check_fixtures(capsys):
    code, out, _ = run(capsys, "fan-check", "p2", "--json")
    assert code == 0 and json.loads(out)["details"]["projective"] is True
    code, out, _ = run(capsys, "fan-check", "nonprojective", "--json")
    assert code == 0 and json.loads(out)["details"]["projective"] is False


def test_fan_check_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rank": 2, "rays": [[1, 0], [2, 0]], "max_cones": [[0, 1]]}))
    code, _, err = run(capsys, "fan-check", str(path))
    assert code == 2 and "malformed" in err
    code, _, _ = run(capsys, "fan-check", "no-such-fixture")
    assert code == 2


def test_fan_check_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("MDV_BUDGET", "0")
    code, out, _ = run(capsys, "fan-check", "p2", "--json")
    details = json.loads(out)["details"]
    assert code == 0
    assert details["validated"] is False and details["complete"] is None


def test_compatible_sections(capsys):
    code, out, _ = run(capsys, "compatible-sections", "--n", "8", "--simulate", "--json")
    assert code == 0
    assert json.loads(out)["details"]["simulation"]["removal_events"] > 0
    code, _, _ = run(capsys, "compatible-sections", "--n", "4")
    assert code == 2


def test_timing_goes_to_stderr(capsys):
    code, out, err = run(capsys, "gnw-verify", "--m", "5", "--json", "--timing")
    assert code == 0
    assert "wall_time" not in out
    assert "wall_time" in json.loads(err)


def test_output_is_byte_identical(capsys):
    outs = [run(capsys, "compatible-sections", "--n", "7", "--simulate", "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_suite_parallel_matches_serial():
    items = checks.SUITE[:6]
    serial = [r.dumps() for r in checks.run_suite(items)]
    parallel = [r.dumps() for r in checks.run_suite(items, jobs=3)]
    assert serial == parallel


def test_full_suite_passes(capsys):
    code, out, _ = run(capsys, "all", "--json")
    lines = out.strip().splitlines()
    assert code == 0
    assert len(lines) == len(checks.SUITE)
    assert all(json.loads(line)["status"] == "pass" for line in lines)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mdv", "gnw-verify", "--m", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("[PASS]")


def test_fail_report_requires_counterexample():
    with pytest.raises(ValueError):
        CheckReport("x", {}, "fail", {})
    with pytest.raises(ValueError):
        CheckReport("x", {}, "maybe", {})
