"""Acceptance criteria, one test per suite, reported as single verdict lines.

The lab object is shared across the module so error curves computed for one
criterion are reused by the later ones; a full run costs about a minute.
"""

import pytest

from sigmadamp.acceptance import SUITES, AcceptanceLab


@pytest.fixture(scope="module")
def lab():
    return AcceptanceLab(quad_tol=1e-6)


def _run(lab, capsys, name):
    (res,) = lab.run([name])
    verdict = "PASS" if res.passed else "FAIL"
    with capsys.disabled():
        print(f"\nACCEPTANCE {name}: {verdict} :: {res.message}")
    assert res.passed, f"{name}: {res.message}"


def test_suite_registry_order(lab):
    assert SUITES == (
        "rates_fractional",
        "rates_frictional",
        "weight_shift",
        "lower_band",
        "closed_forms",
        "jet_oracle",
        "cutoff_scaling",
        "high_frequency",
        "ode_residual",
        "order_improvement",
    )
    with pytest.raises(ValueError):
        lab.run(["nonesuch"])


def test_acceptance_rates_fractional(lab, capsys):
    _run(lab, capsys, "rates_fractional")


def test_acceptance_rates_frictional(lab, capsys):
    _run(lab, capsys, "rates_frictional")


def test_acceptance_weight_shift(lab, capsys):
    _run(lab, capsys, "weight_shift")


def test_acceptance_lower_band(lab, capsys):
    _run(lab, capsys, "lower_band")


def test_acceptance_closed_forms(lab, capsys):
    _run(lab, capsys, "closed_forms")


def test_acceptance_jet_oracle(lab, capsys):
    _run(lab, capsys, "jet_oracle")


def test_acceptance_cutoff_scaling(lab, capsys):
    _run(lab, capsys, "cutoff_scaling")


def test_acceptance_high_frequency(lab, capsys):
    _run(lab, capsys, "high_frequency")


def test_acceptance_ode_residual(lab, capsys):
    _run(lab, capsys, "ode_residual")


def test_acceptance_order_improvement(lab, capsys):
    _run(lab, capsys, "order_improvement")
