"""Weighted radial L2 norms of spherically symmetric functions.

The n-dimensional L2 norm of a radial function reduces to a 1-d integral,

  ||f||^2 = surface_area(n) * int_0^{r_max} f(r)^2 r^{n-1} dr,

evaluated here with 15-node Gauss-Legendre panels on a geometric ladder of
segments [r_max/2^{i+1}, r_max/2^i] reaching down to r = 1e-12.  The ladder
resolves integrable power-law singularities at the origin without any change
of variables; each segment is refined by bisection until the two-panel
refinement agrees with the parent panel inside its share of the error
budget.  Integrands must accept numpy arrays of radii.

Also provides the smooth radial cutoffs used to split low and high
frequencies, and `scaling_check`, which verifies the norm decay exponent of
model integrands r^alpha e^{-c r^beta t} against the predicted power law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fitting import FitResult, fit_loglog

GAUSS_NODES, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(15)
R_FLOOR = 1e-12
MAX_DEPTH = 60
# refinement agreement below this relative level is treated as roundoff noise
REL_FLOOR = 5e-16


class QuadratureError(RuntimeError):
    pass


class NonConvergence(QuadratureError):
    """A segment failed to meet its error budget within the depth cap."""


class SingularityTooStrong(ValueError):
    """The declared origin behavior makes f^2 r^{n-1} non-integrable."""


@dataclass(frozen=True)
class RadialIntegrand:
    """A radial function together with its declared power behavior at 0.

    singularity_exponent e asserts f(r) = O(r^e) as r -> 0; integrability of
    the squared integrand then requires 2e + n > 0.
    """

    func: object
    singularity_exponent: float = 0.0

    def __call__(self, r):
        return self.func(r)


def surface_area(n: int) -> float:
    """Surface measure of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2)."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    return 2.0 * math.pi ** (0.5 * n) / math.gamma(0.5 * n)


def _bump(x: np.ndarray) -> np.ndarray:
    # e^{-1/x} for x > 0, identically 0 for x <= 0; smooth across the seam
    safe = np.where(x > 0.0, x, 1.0)
    return np.where(x > 0.0, np.exp(-1.0 / safe), 0.0)


def smooth_step(x):
    """C^infinity ramp: 0 for x <= 0, 1 for x >= 1, strictly monotone between."""
    x = np.asarray(x, dtype=float)
    lo = _bump(x)
    hi = _bump(1.0 - x)
    out = lo / (lo + hi)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class CutoffSpec:
    """Complementary smooth cutoffs around the radius eps.

    chi_low is 1 on [0, eps/2], 0 beyond eps; chi_high = 1 - chi_low exactly,
    so the pair partitions unity at every radius.
    """

    eps: float

    def __post_init__(self):
        if not (self.eps > 0.0):
            raise ValueError(f"cutoff radius must be positive, got {self.eps}")

    def chi_low(self, r):
        r = np.asarray(r, dtype=float)
        return smooth_step((self.eps - r) / (0.5 * self.eps))

    def chi_high(self, r):
        return 1.0 - self.chi_low(r)


def _panel(g, lo: float, hi: float) -> float:
    half = 0.5 * (hi - lo)
    r = 0.5 * (hi + lo) + half * GAUSS_NODES
    return half * float(np.dot(GAUSS_WEIGHTS, g(r)))


def _refine(g, lo: float, hi: float, tau: float, depth: int, coarse: float) -> float:
    mid = 0.5 * (lo + hi)
    left = _panel(g, lo, mid)
    right = _panel(g, mid, hi)
    fine = left + right
    if abs(fine - coarse) <= max(tau, REL_FLOOR * abs(fine)):
        return fine
    if depth >= MAX_DEPTH:
        raise NonConvergence(
            f"segment [{lo:.6e}, {hi:.6e}] still off budget at depth {depth}"
        )
    half_tau = 0.5 * tau
    return _refine(g, lo, mid, half_tau, depth + 1, left) + _refine(
        g, mid, hi, half_tau, depth + 1, right
    )


def _segments(r_max: float) -> list[tuple[float, float]]:
    bounds = [r_max]
    while bounds[-1] * 0.5 > R_FLOOR:
        bounds.append(bounds[-1] * 0.5)
    bounds.append(R_FLOOR)
    # ascending (lo, hi) pairs: a fixed reduction order keeps sums reproducible
    return [(bounds[i + 1], bounds[i]) for i in range(len(bounds) - 1)][::-1]


def l2_radial(f, n: int, r_max: float, tol: float = 1e-8) -> float:
    """Radial L2 norm of f over the ball of radius r_max in R^n.

    The absolute norm error is targeted at tol * (1 + norm); the budget is
    converted to an integral tolerance using a coarse first pass, split
    evenly over segments, and halved on each bisection.
    """
    integrand = f if isinstance(f, RadialIntegrand) else RadialIntegrand(f)
    if not (r_max > R_FLOOR):
        raise ValueError(f"r_max must exceed {R_FLOOR:g}, got {r_max}")
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    if 2.0 * integrand.singularity_exponent + n <= 0.0:
        raise SingularityTooStrong(
            f"declared origin exponent {integrand.singularity_exponent} with n={n} "
            "makes the squared integrand non-integrable"
        )

    def g(r):
        values = np.asarray(integrand.func(r), dtype=float)
        return values * values * r ** (n - 1)

    sphere = surface_area(n)
    segments = _segments(r_max)

    coarse = [_panel(g, lo, hi) for lo, hi in segments]
    norm0 = math.sqrt(sphere * max(sum(coarse), 0.0))
    eps_total = 2.0 * norm0 * tol * (1.0 + norm0) / sphere
    tau = eps_total / len(segments)

    total = 0.0
    for (lo, hi), first in zip(segments, coarse):
        total += _refine(g, lo, hi, tau, 0, first)
    return math.sqrt(sphere * max(total, 0.0))


def scaling_check(
    alpha: float,
    beta: float,
    c: float,
    n: int,
    t_grid=None,
    eps: float = 0.5,
    quad_tol: float = 1e-8,
) -> FitResult:
    """Fit the decay exponent of ||r^alpha e^{-c r^beta t} chi_low||_{L2(R^n)}.

    The norm concentrates at r ~ t^{-1/beta}, giving the power law
    t^{-n/(2 beta) - alpha/beta}; the returned fit carries that target.
    """
    if beta <= 0.0 or c <= 0.0:
        raise ValueError(f"need beta > 0 and c > 0, got beta={beta}, c={c}")
    if 2.0 * alpha + n <= 0.0:
        raise SingularityTooStrong(
            f"alpha={alpha} with n={n} gives a non-normalizable model integrand"
        )
    if t_grid is None:
        t_grid = np.geomspace(1e2, 1e5, 30)
    t_grid = np.asarray(t_grid, dtype=float)
    cut = CutoffSpec(eps)

    def profile_at(t: float):
        def f(r):
            return r**alpha * np.exp(-c * r**beta * t) * cut.chi_low(r)

        return RadialIntegrand(f, singularity_exponent=alpha)

    norms = np.array(
        [l2_radial(profile_at(t), n, r_max=eps, tol=quad_tol) for t in t_grid]
    )
    target = -0.5 * n / beta - alpha / beta
    return fit_loglog(t_grid, norms, target)
