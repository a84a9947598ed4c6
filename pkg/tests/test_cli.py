"""End-to-end tests of the command-line interface: exit codes, report
determinism, and the JSON/CSV/figure output sinks."""

import csv
import json

import pytest

from oscbraid.cli import REQUIRED_CHECK_IDS, build_parser, main, run_suite
from oscbraid.reps import constrained_b_modulus


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_qybe_scope_passes(capsys):
    code, out, _ = run(["verify", "--scope", "qybe"], capsys)
    assert code == 0
    assert "qybe-exchange" in out
    assert "FAIL" not in out


def test_verify_rtt_scope_passes(capsys):
    code, out, _ = run(["verify", "--scope", "rtt"], capsys)
    assert code == 0
    assert "relations-derived-match" in out
    assert "covector-detects-mutation" in out


def test_verify_covariance_battery_passes(capsys):
    code, out, _ = run(["verify", "--scope", "covariance"], capsys)
    assert code == 0
    assert "covariance-A-generic-obstruction" in out


def test_verify_subgroup_a_generic_fails_with_witness(capsys):
    code, out, _ = run(
        ["verify", "--scope", "covariance", "--subgroup", "A",
         "--Q1", "generic"], capsys)
    assert code == 1
    assert "[FAIL]" in out
    # the witness names the obstruction terms that survive reduction
    assert "L2" in out and "K3" in out


def test_verify_subgroup_a_special_point_passes(capsys):
    code, out, _ = run(
        ["verify", "--scope", "covariance", "--subgroup", "A",
         "--Q1", "q^2"], capsys)
    assert code == 0


def test_verify_subgroup_requires_covariance_scope(capsys):
    code, _, err = run(["verify", "--scope", "qybe", "--subgroup", "A"],
                       capsys)
    assert code == 2
    assert "subgroup" in err


def test_verify_bad_point_value_is_a_usage_error(capsys):
    code, _, err = run(["verify", "--scope", "qybe", "--Q1", "bogus"], capsys)
    assert code == 2
    assert "Q1" in err


def test_verify_unknown_scope_rejected():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["verify", "--scope", "nonsense"])
    assert exc.value.code == 2


def test_scope_all_covers_required_checks_and_passes(capsys):
    code, out, _ = run(["verify", "--scope", "all"], capsys)
    assert code == 0
    for cid in REQUIRED_CHECK_IDS:
        assert cid in out
    assert "coverage-self-audit" in out


def test_report_is_deterministic_modulo_wall_time():
    a = run_suite("delta")
    b = run_suite("delta")
    assert a.checks == b.checks
    assert a.points == b.points


def test_verify_output_sinks(tmp_path, capsys):
    jpath = tmp_path / "report.json"
    cpath = tmp_path / "report.csv"
    figs = tmp_path / "figs"
    code, _, _ = run(["verify", "--scope", "qybe", "--json", str(jpath),
                      "--csv", str(cpath), "--figures", str(figs)], capsys)
    assert code == 0
    payload = json.loads(jpath.read_text())
    assert payload["suite"] == "qybe" and payload["passed"] is True
    ids = [row["id"] for row in payload["checks"]]
    assert "braiding-proportionality" in ids
    with open(cpath, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["check_id", "statement", "status", "detail"]
    assert len(rows) == 1 + len(payload["checks"])
    pngs = list(figs.glob("*.png"))
    assert len(pngs) == 1 and pngs[0].stat().st_size > 0


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def test_solve_rejects_degenerate_q(capsys):
    code, _, err = run(["solve", "--q", "1.0"], capsys)
    assert code == 2
    assert "q" in err
    code, _, _ = run(["solve", "--q", "-2"], capsys)
    assert code == 2


def test_solve_small_run_outputs(tmp_path, capsys):
    jpath = tmp_path / "solve.json"
    cpath = tmp_path / "solve.csv"
    figs = tmp_path / "figs"
    code, out, _ = run(["solve", "--q", "1.3", "--seed", "7", "--starts",
                        "30", "--json", str(jpath), "--csv", str(cpath),
                        "--figures", str(figs)], capsys)
    assert code == 0
    assert "residual" in out
    assert list(figs.glob("solve_q1.3.png"))
    payload = json.loads(jpath.read_text())
    assert payload["q0"] == 1.3 and payload["seed"] == 7
    assert len(payload["solutions"]) >= 2
    with open(cpath, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][:3] == ["label", "max_residual", "family_dim"]
    assert rows[0][3:] == [f"C{i}" for i in range(1, 15)]
    assert len(rows) == 1 + len(payload["solutions"])
    for row in rows[1:]:
        assert float(row[1]) <= 1e-10


def test_solve_same_seed_same_rows(capsys):
    code1, out1, _ = run(["solve", "--q", "1.5", "--seed", "3", "--starts",
                          "12"], capsys)
    code2, out2, _ = run(["solve", "--q", "1.5", "--seed", "3", "--starts",
                          "12"], capsys)
    assert code1 == code2 == 0
    # identical except the reported wall time on the header line
    tail1 = out1.splitlines()[1:]
    tail2 = out2.splitlines()[1:]
    assert tail1 == tail2


# ---------------------------------------------------------------------------
# rep
# ---------------------------------------------------------------------------

def write_params(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_rep_family_b_slice_passes(tmp_path, capsys):
    pf = write_params(tmp_path, "b.json", {
        "subgroup": "B", "q": 1.2, "Q1": 1, "A": 1, "B": 0.3, "dim": 24})
    jpath = tmp_path / "rep.json"
    code, out, _ = run(["rep", "--paramfile", pf, "--json", str(jpath)],
                       capsys)
    assert code == 0
    assert "central element" in out
    payload = json.loads(jpath.read_text())
    assert payload["report"]["max_residual"] <= 1e-10
    cas = payload["central_element"]
    assert cas["scalar_deviation"] <= 1e-10
    assert cas["measured_matches_ladder"] != cas["measured_matches_published"]


def test_rep_family_b_at_the_pole_uses_the_recursion(tmp_path, capsys):
    pf = write_params(tmp_path, "pole.json", {
        "subgroup": "B", "q": 1.2, "Q1": 1.44, "A": 1.0, "B": 0.6,
        "dim": 24})
    code, out, _ = run(["rep", "--paramfile", pf], capsys)
    assert code == 0
    assert "max residual" in out


def test_rep_family_a_happy_path_with_figure(tmp_path, capsys):
    pf = write_params(tmp_path, "a.json", {
        "subgroup": "A", "q": 1.2, "A": 1.0,
        "B": constrained_b_modulus(1.0, 1.2, 0.5), "C": 0.7, "D": 0.5,
        "dim": 20})
    figs = tmp_path / "figs"
    cpath = tmp_path / "rep.csv"
    code, _, _ = run(["rep", "--paramfile", pf, "--figures", str(figs),
                      "--csv", str(cpath)], capsys)
    assert code == 0
    assert list(figs.glob("rep_A_dim20.png"))
    with open(cpath, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["relation", "residual", "raw_residual", "row", "col"]
    assert len(rows) == 22  # header + 21 relations


def test_rep_constraint_violation_exits_one(tmp_path, capsys):
    pf = write_params(tmp_path, "bad.json", {
        "subgroup": "A", "q": 1.2, "A": 1.0, "B": 0.9, "C": 0.7, "D": 0.5,
        "dim": 20})
    code, _, err = run(["rep", "--paramfile", pf], capsys)
    assert code == 1
    assert "rejected" in err


def test_rep_inadmissible_two_sided_exits_one(tmp_path, capsys):
    pf = write_params(tmp_path, "inadm.json", {
        "subgroup": "B", "q": 1.2, "Q1": 1.2, "A": 1.0, "B": 0.3,
        "dim": 20})
    code, _, err = run(["rep", "--paramfile", pf, "--two-sided"], capsys)
    assert code == 1
    assert "rejected" in err


def test_rep_two_sided_is_family_b_only(tmp_path, capsys):
    pf = write_params(tmp_path, "a2.json", {
        "subgroup": "A", "q": 1.2, "A": 1.0,
        "B": constrained_b_modulus(1.0, 1.2, 0.5), "C": 0.7, "D": 0.5,
        "dim": 20})
    code, _, err = run(["rep", "--paramfile", pf, "--two-sided"], capsys)
    assert code == 2
    assert "two-sided" in err


def test_rep_config_errors_exit_two(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(["rep", "--paramfile", str(broken)], capsys)
    assert code == 2
    assert "cannot read" in err

    missing = write_params(tmp_path, "missing.json", {
        "subgroup": "B", "q": 1.2, "A": 1.0, "B": 0.3, "dim": 20})
    code, _, _ = run(["rep", "--paramfile", missing], capsys)
    assert code == 2

    code, _, _ = run(["rep", "--paramfile", str(tmp_path / "absent.json")],
                     capsys)
    assert code == 2
