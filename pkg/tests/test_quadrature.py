"""Radial quadrature: frozen norms, cutoff algebra, scaling exponents."""

import math

import numpy as np
import pytest

from sigmadamp.quadrature import (
    CutoffSpec,
    NonConvergence,
    RadialIntegrand,
    SingularityTooStrong,
    l2_radial,
    scaling_check,
    smooth_step,
    surface_area,
)

# closed forms, 30-digit arithmetic, rounded to double
GAUSS_N1 = 1.1195151349202476  # (pi/2)^{1/4}
BALL_N3 = 2.046653415892977  # sqrt(4 pi / 3)
GAUSS2_N3 = 0.83429071647955156  # pi^{3/4} / (2 sqrt 2)
SQRT_2PI = 2.5066282746310002


@pytest.mark.parametrize(
    "n,expected",
    [
        (1, 2.0),
        (2, 6.2831853071795865),
        (3, 12.566370614359173),
        (4, 19.739208802178717),
    ],
)
def test_surface_area_small_dimensions(n, expected):
    assert surface_area(n) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("bad", [0, -2, 2.5, "3"])
def test_surface_area_rejects_bad_dimension(bad):
    with pytest.raises(ValueError):
        surface_area(bad)


def test_gaussian_norm_line():
    got = l2_radial(lambda r: np.exp(-(r**2)), n=1, r_max=8.0, tol=1e-10)
    assert got == pytest.approx(GAUSS_N1, rel=1e-9)


def test_indicator_ball_norm():
    got = l2_radial(lambda r: np.ones_like(r), n=3, r_max=1.0, tol=1e-10)
    assert got == pytest.approx(BALL_N3, rel=1e-9)


def test_sharp_gaussian_norm_space():
    got = l2_radial(lambda r: np.exp(-2.0 * r**2), n=3, r_max=8.0, tol=1e-10)
    assert got == pytest.approx(GAUSS2_N3, rel=1e-9)


def test_zero_integrand():
    assert l2_radial(lambda r: np.zeros_like(r), n=3, r_max=5.0) == 0.0


def test_integrable_singularity_resolved():
    # f = r^{-1/2} in R^3: squared integrand r, exact norm r_max sqrt(2 pi)
    f = RadialIntegrand(lambda r: r**-0.5, singularity_exponent=-0.5)
    got = l2_radial(f, n=3, r_max=1.0, tol=1e-10)
    assert got == pytest.approx(SQRT_2PI, rel=1e-8)


@pytest.mark.parametrize("exponent,n", [(-1.5, 3), (-2.0, 3), (-0.5, 1)])
def test_non_integrable_singularity_rejected(exponent, n):
    f = RadialIntegrand(lambda r: r**exponent, singularity_exponent=exponent)
    with pytest.raises(SingularityTooStrong):
        l2_radial(f, n=n, r_max=1.0)


def test_refinement_depth_cap():
    # undefined values can never meet the agreement test, so the refinement
    # must stop at the depth cap instead of recursing forever
    f = lambda r: np.where(r < 0.25, np.nan, np.exp(-r))  # noqa: E731
    with pytest.raises(NonConvergence):
        l2_radial(f, n=1, r_max=1.0, tol=1e-10)


@pytest.mark.parametrize(
    "r_max,tol",
    [(0.0, 1e-8), (1e-13, 1e-8), (1.0, 0.0), (1.0, -1e-9)],
)
def test_l2_radial_argument_validation(r_max, tol):
    with pytest.raises(ValueError):
        l2_radial(lambda r: np.ones_like(r), n=1, r_max=r_max, tol=tol)


def test_domination_monotonicity():
    tol = 1e-9
    small = l2_radial(lambda r: np.exp(-2.0 * r**2), n=2, r_max=8.0, tol=tol)
    large = l2_radial(lambda r: np.exp(-(r**2)), n=2, r_max=8.0, tol=tol)
    assert small <= large * (1.0 + 2.0 * tol)


def test_l2_radial_bitwise_deterministic():
    f = lambda r: np.exp(-(r**2)) * (1.0 + r) ** -0.5  # noqa: E731
    a = l2_radial(f, n=3, r_max=10.0, tol=1e-9)
    b = l2_radial(f, n=3, r_max=10.0, tol=1e-9)
    assert a == b


def test_smooth_step_clamps_and_midpoint():
    assert smooth_step(-1.0) == 0.0
    assert smooth_step(0.0) == 0.0
    assert smooth_step(1.0) == 1.0
    assert smooth_step(2.0) == 1.0
    # B(1/2) appears in both numerator and denominator
    assert smooth_step(0.5) == pytest.approx(0.5, abs=1e-15)


def test_smooth_step_monotone_interior():
    x = np.linspace(0.0, 1.0, 401)
    y = smooth_step(x)
    assert np.all(np.diff(y) >= 0.0)
    assert np.all((y >= 0.0) & (y <= 1.0))


def test_smooth_step_scalar_round_trip():
    out = smooth_step(0.25)
    assert isinstance(out, float)
    arr = smooth_step(np.array([0.25, 0.75]))
    assert arr.shape == (2,)


def test_cutoff_partition_of_unity():
    cut = CutoffSpec(eps=0.5)
    r = np.geomspace(1e-6, 10.0, 500)
    assert np.all(cut.chi_low(r) + cut.chi_high(r) == 1.0)


def test_cutoff_plateaus_and_transition():
    cut = CutoffSpec(eps=0.5)
    inner = np.linspace(0.0, 0.25, 50)
    outer = np.linspace(0.5, 3.0, 50)
    assert np.all(cut.chi_low(inner) == 1.0)
    assert np.all(cut.chi_low(outer) == 0.0)
    ramp = cut.chi_low(np.linspace(0.25, 0.5, 200))
    assert np.all(np.diff(ramp) <= 0.0)


def test_cutoff_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        CutoffSpec(eps=0.0)
    with pytest.raises(ValueError):
        CutoffSpec(eps=-1.0)


@pytest.mark.parametrize(
    "alpha,beta,c,n,target",
    [
        (0.0, 2.0, 1.0, 1, -0.25),
        (1.0, 2.0, 1.0, 3, -1.25),
        (-0.4, 1.0, 2.0, 1, -0.1),
    ],
)
def test_scaling_check_matches_power_law(alpha, beta, c, n, target):
    fit = scaling_check(alpha, beta, c, n)
    assert fit.target == pytest.approx(target, rel=1e-15)
    assert abs(fit.slope - target) <= 0.02


def test_scaling_check_rejects_non_normalizable():
    with pytest.raises(SingularityTooStrong):
        scaling_check(-0.5, 2.0, 1.0, 1)
    with pytest.raises(ValueError):
        scaling_check(0.0, 0.0, 1.0, 1)
