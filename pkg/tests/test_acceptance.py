"""Acceptance gate: criteria 1-11 at their stated tolerances.

Each verify suite runs once per session (seed 0); each criterion test
asserts that every check tagged with it passed and records a
``criterion N: PASS/FAIL`` line.  Criterion 8 is the golden dimension
file.  Runtime limits are asserted for the suites that carry one.
"""

import time

import pytest

from fjkit.verify import SUITES, RunConfig, run_suite

from test_dims_golden import fj_mismatches, whittaker_mismatches

CFG = RunConfig(seed=0)

# suite -> wall-clock limit in seconds for the criterion it carries
TIME_LIMITS = {"weil": 10.0, "theta": 60.0, "specfun": 30.0}
TOTAL_LIMIT = 600.0


@pytest.fixture(scope="module")
def suite_runs():
    runs = {}
    for name in SUITES:
        t0 = time.perf_counter()
        checks = run_suite(name, CFG)
        runs[name] = (checks, time.perf_counter() - t0)
    return runs


def _criterion_checks(runs, n):
    return [c for checks, _ in runs.values() for c in checks if c.criterion == n]


def _gate(runs, n, record, extra_ok=True, extra_note=""):
    checks = _criterion_checks(runs, n)
    failed = [c for c in checks if not c.passed]
    ok = bool(checks) and not failed and extra_ok
    worst = max((c.residual / c.tol for c in checks if c.tol), default=0.0)
    note = f"{len(checks) - len(failed)}/{len(checks)} checks, worst residual/tol {worst:.2e}"
    record(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({note}{extra_note})")
    assert checks, f"no checks tagged with criterion {n}"
    assert not failed, "; ".join(f"{c.suite}/{c.name}: {c.residual:.3e} >= {c.tol:g} {c.detail}"
                                 for c in failed[:5])
    assert extra_ok, extra_note


def test_criterion_1_weil_unitarity_and_projectivity(suite_runs, acceptance_report):
    t = suite_runs["weil"][1]
    _gate(suite_runs, 1, acceptance_report, t < TIME_LIMITS["weil"], f", {t:.1f} s")


def test_criterion_2_theta_transformation(suite_runs, acceptance_report):
    t = suite_runs["theta"][1]
    _gate(suite_runs, 2, acceptance_report, t < TIME_LIMITS["theta"], f", {t:.1f} s")


def test_criterion_3_intertwining(suite_runs, acceptance_report):
    _gate(suite_runs, 3, acceptance_report)


def test_criterion_4_meijer_whittaker_identity(suite_runs, acceptance_report):
    t = suite_runs["specfun"][1]
    _gate(suite_runs, 4, acceptance_report, t < TIME_LIMITS["specfun"], f", {t:.1f} s")


def test_criterion_5_rapid_decay(suite_runs, acceptance_report):
    _gate(suite_runs, 5, acceptance_report)


def test_criterion_6_degenerate_residuals(suite_runs, acceptance_report):
    _gate(suite_runs, 6, acceptance_report)


def test_criterion_7_principal_series_symmetries(suite_runs, acceptance_report):
    _gate(suite_runs, 7, acceptance_report)


def test_criterion_8_dimension_tables(acceptance_report):
    bad = fj_mismatches() + whittaker_mismatches()
    acceptance_report(f"criterion 8: {'PASS' if not bad else 'FAIL'} ({len(bad)} golden mismatches)")
    assert not bad, bad[:3]


def test_criterion_9_theta_round_trip(suite_runs, acceptance_report):
    _gate(suite_runs, 9, acceptance_report)


def test_criterion_10_product_vs_expanded(suite_runs, acceptance_report):
    _gate(suite_runs, 10, acceptance_report)


def test_criterion_11_singular_support(suite_runs, acceptance_report):
    _gate(suite_runs, 11, acceptance_report)


def test_untagged_checks_pass(suite_runs):
    failed = [c for checks, _ in suite_runs.values() for c in checks if not c.passed]
    assert not failed, [(c.suite, c.name, c.residual) for c in failed]


def test_full_verify_runtime(suite_runs, acceptance_report):
    total = sum(t for _, t in suite_runs.values())
    acceptance_report(f"verify --suite all runtime: {'PASS' if total < TOTAL_LIMIT else 'FAIL'} ({total:.1f} s)")
    assert total < TOTAL_LIMIT
