"""Tests for the identity suites at small parameters."""

import pytest

from src.macdonald_interp.mi_exceptions import MIInvalidParameter
from src.macdonald_interp.mi_items import MIMode, MIStatus
from src.macdonald_interp.mi_partitions import EMPTY, MIPartition
from src.macdonald_interp.mi_suites import (
    SUITES,
    MISuiteConfig,
    MISuiteReport,
    run_suites,
    verify_binomial_suite,
    verify_biorthogonality,
    verify_cauchy_qt,
    verify_duality,
    verify_eigen,
    verify_finite_pieri,
    verify_hl,
    verify_jack_cauchy,
    verify_kernel,
    verify_one_row_gf,
    verify_oracle,
    verify_skew_pieri,
    verify_stability,
    verify_tq_determinant,
    verify_vanishing,
    verify_whittaker,
)

ONE = MIPartition((1,))


def test_cauchy_identities() -> None:
    """The (q,t) Cauchy identity and its one-row case."""
    assert verify_cauchy_qt(1, 1, 3, 3).passed
    assert verify_cauchy_qt(2, 1, 2, 2).passed
    assert verify_one_row_gf(2, 3).passed


def test_pieri_rules() -> None:
    """Skew and finite Pieri expansions."""
    for nu in (EMPTY, ONE):
        assert verify_skew_pieri(1, nu, 3).passed
    assert verify_finite_pieri(2, 1, ONE).passed
    with pytest.raises(MIInvalidParameter):
        verify_skew_pieri(1, MIPartition((1, 1)), 3)


def test_degenerate_families() -> None:
    """Jack, q-Whittaker and Hall-Littlewood Cauchy identities."""
    assert verify_jack_cauchy(1, 3).passed
    assert verify_whittaker(1, 1, 3).passed
    assert verify_hl(1, 1, 3).passed


def test_structure_suites() -> None:
    """Vanishing, stability, oracles, binomial formula and biorthogonality."""
    assert verify_vanishing(2, 3).passed
    assert verify_stability(2, 3).passed
    assert verify_oracle(2, 3).passed
    assert verify_binomial_suite(2, 2).passed
    assert verify_biorthogonality(2).passed


def test_dual_suites() -> None:
    """Duality, the t = q determinant and the kernel operators."""
    assert verify_duality(2, 2).passed
    assert verify_tq_determinant(2, 2).passed
    assert verify_kernel(1, 3).passed


def test_eigen_modes() -> None:
    """Symbolic and evaluated eigen-relations agree on the verdict."""
    assert verify_eigen(2, 2).passed
    assert verify_eigen(2, 2, MIMode.EVAL, points=2).passed


def test_report_json() -> None:
    """Timing is optional; a counterexample is reported when present."""
    report = verify_one_row_gf(1, 2)
    encoded = report.to_json(timing=False)
    assert encoded == {"suite": "one-row", "params": {"n": 1, "u_cutoff": 2}, "status": "pass"}
    assert "millis" in report.to_json()
    failed = MISuiteReport("cauchy", {"n": 1}, MIStatus.FAIL, {"case": "x"}, 5)
    assert not failed.passed
    assert failed.to_json()["counterexample"] == {"case": "x"}


def test_run_suites() -> None:
    """Reports come back in the requested order; unknown names are rejected."""
    config = MISuiteConfig(n=1, cutoff=2, threads=2)
    reports = run_suites(["one-row", "vanishing"], config)
    assert [report.suite for report in reports] == ["one-row", "vanishing"]
    assert all(report.passed for report in reports)
    again = run_suites(["one-row", "vanishing"], config)
    assert [r.to_json(timing=False) for r in reports] == [r.to_json(timing=False) for r in again]
    with pytest.raises(MIInvalidParameter):
        run_suites(["nope"], config)
    with pytest.raises(MIInvalidParameter):
        run_suites(["one-row"], config, "laptop")


def test_config_defaults() -> None:
    """k falls back to n and every suite has a runner."""
    assert MISuiteConfig(n=3).k_value == 3
    assert MISuiteConfig(n=3, k=1).k_value == 1
    assert "cauchy" in SUITES and "tq-determinant" in SUITES


@pytest.mark.slow
def test_desk_profile() -> None:
    """Every suite passes at desk-scale parameters."""
    reports = run_suites(["all"], MISuiteConfig(), "desk")
    failed = [report.to_json(timing=False) for report in reports if not report.passed]
    assert not failed
