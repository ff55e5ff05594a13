"""Semicircle laws, Catalan targets and the Wasserstein-1 distance on the line.

For probability measures on R, the supremum of |int f d(mu1 - mu2)| over
1-Lipschitz f is the area between the two CDFs (Kantorovich-Rubinstein), so
``w1_distance`` is the distance used for all ESD comparisons here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SemicircleLaw",
    "ComparisonResult",
    "semicircle_cdf",
    "catalan_target",
    "w1_distance",
    "edge_mass",
    "delta_calibration",
    "semicircle_comparison_bound",
    "smoothed_edge",
]

_PANELS = 10_000
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(4)


@dataclass(frozen=True)
class SemicircleLaw:
    """Semicircle law with density 2 / (pi R^2) sqrt(R^2 - y^2) on [-R, R]."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    def pdf(self, y):
        R = self.radius
        y = np.asarray(y, dtype=float)
        return 2.0 / (math.pi * R * R) * np.sqrt(np.clip(R * R - y * y, 0.0, None))

    def cdf(self, y):
        return semicircle_cdf(self, y)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        # (Y / R + 1) / 2 is Beta(3/2, 3/2)
        return self.radius * (2.0 * rng.beta(1.5, 1.5, size=n) - 1.0)

    @property
    def support(self):
        return (-self.radius, self.radius)


def semicircle_cdf(law: SemicircleLaw, y):
    R = law.radius
    t = np.clip(np.asarray(y, dtype=float) / R, -1.0, 1.0)
    out = 0.5 + (t * np.sqrt(1.0 - t * t) + np.arcsin(t)) / math.pi
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def catalan_target(k: int) -> float:
    """Limit of the normalized k-th trace moment: C_{k/2} for even k, 0 for odd k."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k % 2:
        return 0.0
    m = k // 2
    return float(math.comb(k, m) // (m + 1))


def _support(d):
    if isinstance(d, SemicircleLaw):
        return d.support
    return float(d.values[0]), float(d.values[-1])


def w1_distance(a, b, panels: int = _PANELS) -> float:
    """Area between the CDFs of two distributions (empirical or semicircle).

    Two empirical inputs are compared exactly on the merged breakpoints.
    Otherwise the support is split at every breakpoint plus ``panels`` uniform
    cells and each cell is integrated with 4-point Gauss-Legendre.
    """
    a_emp = not isinstance(a, SemicircleLaw)
    b_emp = not isinstance(b, SemicircleLaw)
    if a_emp and b_emp:
        pts = np.union1d(a.values, b.values)
        widths = np.diff(pts)
        return float(np.sum(np.abs(a.cdf(pts[:-1]) - b.cdf(pts[:-1])) * widths))
    lo_a, hi_a = _support(a)
    lo_b, hi_b = _support(b)
    lo, hi = min(lo_a, lo_b), max(hi_a, hi_b)
    if hi <= lo:
        return 0.0
    pts = [np.linspace(lo, hi, panels + 1)]
    if a_emp:
        pts.append(a.values)
    if b_emp:
        pts.append(b.values)
    pts = np.unique(np.concatenate(pts))
    left, right = pts[:-1], pts[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]

    def cdf_on(d, y, cell_mid):
        if not isinstance(d, SemicircleLaw):
            # constant inside each cell; evaluate at the midpoint
            return np.broadcast_to(d.cdf(cell_mid)[:, None], y.shape)
        return d.cdf(y)

    diff = np.abs(cdf_on(a, nodes, mid) - cdf_on(b, nodes, mid))
    return float(np.sum(half * (diff @ _GL_WEIGHTS)))


def edge_mass(d, xi2_at_rho: float, eps: float) -> float:
    """Fraction of ``d`` at or below -2 sqrt(xi''(rho)) + eps."""
    if xi2_at_rho < 0 or eps <= 0:
        raise ValueError("need xi2_at_rho >= 0 and eps > 0")
    return d.mass_below(-2.0 * math.sqrt(xi2_at_rho) + eps)


def delta_calibration(xi2_at_1: float, eps: float) -> float:
    """Standard-semicircle mass of [-2, -2 + eps / (2 sqrt(xi''(1)))].

    Evaluated with the closed-form semicircle CDF, which is the integral exactly.
    """
    if xi2_at_1 <= 0 or eps <= 0:
        raise ValueError("need xi2_at_1 > 0 and eps > 0")
    upper = min(-2.0 + eps / (2.0 * math.sqrt(xi2_at_1)), 2.0)
    return semicircle_cdf(SemicircleLaw(2.0), upper)


@dataclass(frozen=True)
class ComparisonResult:
    distance: float
    bound: float
    holds: bool


def semicircle_comparison_bound(R1: float, R2: float) -> ComparisonResult:
    """W1 between semicircles of radii R1 <= R2 against 2 (1 - R1^2 / R2^2)."""
    if not 0 < R1 <= R2:
        raise ValueError(f"need 0 < R1 <= R2, got R1={R1}, R2={R2}")
    dist = w1_distance(SemicircleLaw(R1), SemicircleLaw(R2))
    bound = 2.0 * (1.0 - R1 * R1 / (R2 * R2))
    return ComparisonResult(distance=dist, bound=bound, holds=dist < bound + 1e-9)


def smoothed_edge(y, xi2_at_rho: float, eps: float):
    """Piecewise-linear edge indicator: 1 below -2 sqrt(xi'') + eps/2, 0 above -2 sqrt(xi'') + eps.

    Lipschitz constant 2 / eps; sandwiched between the two edge indicators.
    """
    edge = -2.0 * math.sqrt(xi2_at_rho)
    y = np.asarray(y, dtype=float)
    return np.clip(1.0 - (2.0 / eps) * (y - edge - 0.5 * eps), 0.0, 1.0)
