"""Command line interface: surfaces, fixtures, verification wiring."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from shockcopula import cli
from shockcopula.cli import main, read_surface_csv
from shockcopula.imprecise import ShockModel, build_bounds
from shockcopula.verify import copula_grid

RMM_PRECISE = {
    "family": "rmm",
    "p": 1,
    "endogenous": [
        {"kind": "exponential", "rate": 1.0},
        {"kind": "exponential", "rate": 1.0},
    ],
    "exogenous": {"kind": "dirac", "location": 1.0},
}

RMM_BOXED = {
    "family": "rmm",
    "p": 1,
    "endogenous": [
        {"lower": {"kind": "exponential", "rate": 1.0},
         "upper": {"kind": "exponential", "rate": 2.0}},
        {"lower": {"kind": "exponential", "rate": 1.0},
         "upper": {"kind": "exponential", "rate": 2.0}},
    ],
    "exogenous": {"kind": "dirac", "location": 1.0},
}

MARSHALL = {
    "family": "marshall",
    "endogenous": [
        {"kind": "discrete", "points": [[1.0, 0.5], [3.0, 0.5]]},
        {"kind": "discrete", "points": [[1.0, 0.5], [3.0, 0.5]]},
    ],
    "exogenous": {"kind": "discrete", "points": [[2.0, 1.0]]},
}


@pytest.fixture()
def runner():
    return CliRunner()


def write_config(tmp_path, payload, name="model.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


# -- surface -----------------------------------------------------------------------


def test_surface_prints_csv_rows_in_row_major_order(runner, tmp_path):
    config = write_config(tmp_path, RMM_PRECISE)
    result = runner.invoke(main, ["surface", "--config", config, "--grid", "3",
                                  "--bound", "precise"])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0] == "u1,u2,value"
    assert len(lines) == 1 + 9
    rows = [[float(c) for c in line.split(",")] for line in lines[1:]]
    # row-major: the last coordinate varies fastest
    assert [r[:2] for r in rows[:4]] == [[0.0, 0.0], [0.0, 0.5], [0.0, 1.0], [0.5, 0.0]]
    assert rows[-1] == [1.0, 1.0, 1.0]
    by_point = {(r[0], r[1]): r[2] for r in rows}
    assert by_point[(1.0, 0.5)] == 0.5
    assert by_point[(0.5, 0.0)] == 0.0


def test_surface_file_round_trips_bit_exactly(runner, tmp_path):
    config = write_config(tmp_path, RMM_BOXED)
    out = tmp_path / "surface.csv"
    result = runner.invoke(main, ["surface", "--config", config, "--grid", "7",
                                  "--bound", "lower", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "wrote" in result.output
    header, rows = read_surface_csv(out)
    assert header == ["u1", "u2", "value"]
    assert len(rows) == 49
    bf = build_bounds(ShockModel.from_spec(RMM_BOXED))
    axis = np.linspace(0.0, 1.0, 7)
    values = copula_grid(bf.lower_gen, [axis, axis])
    for row in rows:
        i, j = int(round(row[0] * 6)), int(round(row[1] * 6))
        assert row[0] == float(axis[i]) and row[1] == float(axis[j])
        assert row[2] == float(values[i, j])


def test_surface_bound_choices_order_the_rmm_family_in_reverse(runner, tmp_path):
    config = write_config(tmp_path, RMM_BOXED)
    surfaces = {}
    for bound in ("lower", "upper", "envelope_inf", "envelope_sup"):
        out = tmp_path / f"{bound}.csv"
        result = runner.invoke(main, ["surface", "--config", config, "--grid", "11",
                                      "--bound", bound, "--out", str(out)])
        assert result.exit_code == 0, (bound, result.output)
        _, rows = read_surface_csv(out)
        surfaces[bound] = [r[2] for r in rows]
    strict = 0
    for lo, hi, einf, esup in zip(surfaces["lower"], surfaces["upper"],
                                  surfaces["envelope_inf"], surfaces["envelope_sup"]):
        # the lower generator pair produces the pointwise larger copula
        assert lo >= hi - 1e-15
        strict += lo > hi + 1e-6
        # for two coordinates the envelope collapses onto the bound pair
        assert abs(einf - hi) < 1e-12
        assert abs(esup - lo) < 1e-12
    assert strict > 0


def test_surface_rejects_bad_requests(runner, tmp_path):
    boxed = write_config(tmp_path, RMM_BOXED)
    marshall = write_config(tmp_path, MARSHALL, "marshall.json")
    broken = write_config(tmp_path, {"family": "rmm"}, "broken.json")

    result = runner.invoke(main, ["surface", "--config", str(tmp_path / "none.json")])
    assert result.exit_code == 2

    result = runner.invoke(main, ["surface", "--config", broken])
    assert result.exit_code == 2 and "bad model config" in result.output

    result = runner.invoke(main, ["surface", "--config", boxed, "--family", "marshall"])
    assert result.exit_code == 2 and "declares family" in result.output

    result = runner.invoke(main, ["surface", "--config", boxed, "--bound", "precise"])
    assert result.exit_code == 2 and "imprecise" in result.output

    result = runner.invoke(main, ["surface", "--config", marshall, "--bound", "envelope_inf"])
    assert result.exit_code == 2 and "rmm" in result.output

    result = runner.invoke(main, ["surface", "--config", boxed, "--grid", "2000"])
    assert result.exit_code == 2 and "rows" in result.output

    result = runner.invoke(main, ["surface", "--config", boxed, "--grid", "1"])
    assert result.exit_code == 2

    result = runner.invoke(main, ["surface", "--config", boxed, "--bound", "median"])
    assert result.exit_code == 2


# -- example -----------------------------------------------------------------------

FIXTURES = (
    "distributions.csv",
    "generators.csv",
    "copula_precise.csv",
    "bound_generators.csv",
    "figure1_lower.csv",
    "figure1_upper.csv",
)


def test_example_checks_identities_and_writes_fixtures(runner, tmp_path):
    out = tmp_path / "fixtures"
    result = runner.invoke(main, ["example", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "all identities hold" in result.output
    for name in FIXTURES:
        path = out / name
        assert path.exists(), name
        lines = path.read_text().strip().splitlines()
        assert len(lines) > 1, name

    header, rows = read_surface_csv(out / "generators.csv")
    assert header == ["u", "phi", "chi", "f", "g"]
    assert rows[0] == [0.0, 0.0, 0.0, 0.0, 0.0]
    last = rows[-1]
    assert last[0] == 1.0 and abs(last[1] - 1.0) < 1e-15 and abs(last[2] - 1.0) < 1e-15

    _, copula_rows = read_surface_csv(out / "copula_precise.csv")
    assert len(copula_rows) == 101 * 101

    _, lower = read_surface_csv(out / "figure1_lower.csv")
    _, upper = read_surface_csv(out / "figure1_upper.csv")
    assert all(lo[2] <= hi[2] + 1e-15 for lo, hi in zip(lower, upper))
    assert any(hi[2] - lo[2] > 1e-3 for lo, hi in zip(lower, upper))


# -- verify ------------------------------------------------------------------------


def canned_report(passed, suite="axioms"):
    check = {"check": "stub-check", "instances": 4, "passed": passed,
             "failures": [] if passed else [{"model": "m", "point": [0.5],
                                             "expected": 0.0, "actual": 1.0}],
             "diagnostics": {} if passed else {"failures_total": 1}}
    return {"suite": suite, "seed": 1, "passed": passed, "checks": [check]}


def test_verify_reports_pass_and_writes_json(runner, tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda name, seed: canned_report(True, name))
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["verify", "--suite", "axioms", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "suite axioms: PASS" in result.output
    assert "PASS stub-check (instances=4)" in result.output
    assert json.loads(out.read_text())["passed"] is True


def test_verify_exits_nonzero_on_failure(runner, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda name, seed: canned_report(False, name))
    result = runner.invoke(main, ["verify", "--suite", "oracles"])
    assert result.exit_code == 1
    assert "suite oracles: FAIL" in result.output
    assert "failures=1" in result.output


def test_verify_summarizes_merged_suites(runner, monkeypatch):
    merged = {"suite": "all", "seed": 1, "passed": False,
              "suites": [canned_report(True, "axioms"), canned_report(False, "theorems")]}
    monkeypatch.setattr(cli, "run_suite", lambda name, seed: merged)
    result = runner.invoke(main, ["verify"])
    assert result.exit_code == 1
    assert "suite axioms: PASS" in result.output
    assert "suite theorems: FAIL" in result.output


def test_verify_runs_a_real_suite_end_to_end(runner, tmp_path):
    out = tmp_path / "axioms.json"
    result = runner.invoke(main, ["verify", "--suite", "axioms", "--seed", "5",
                                  "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["suite"] == "axioms" and report["passed"]
    assert result.output.count("PASS") >= 3

    result = runner.invoke(main, ["verify", "--suite", "nonsense"])
    assert result.exit_code == 2
