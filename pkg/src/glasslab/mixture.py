"""Mixture functions xi(z) = sum_p gamma_p^2 z^p of mixed spherical spin glasses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

__all__ = [
    "MixtureSpec",
    "ConcavityResult",
    "xi_eval",
    "ground_state_target",
    "full_rsb_check",
]

_DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class MixtureSpec:
    """Finite mixture given by the coefficients ``gammas[p] = gamma_p``.

    Zero coefficients are dropped at construction, so ``orders`` only lists
    interaction orders that are actually present.
    """

    gammas: Mapping[int, float]
    _orders: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        clean = {}
        for p, g in dict(self.gammas).items():
            p = int(p)
            g = float(g)
            if p < 2:
                raise ValueError(f"interaction order must be >= 2, got {p}")
            if not np.isfinite(g) or g < 0:
                raise ValueError(f"gamma_{p} must be finite and >= 0, got {g}")
            if g > 0:
                clean[p] = g
        if not clean:
            raise ValueError("at least one gamma_p must be positive")
        clean = dict(sorted(clean.items()))
        object.__setattr__(self, "gammas", clean)
        object.__setattr__(self, "_orders", tuple(clean))

    @classmethod
    def pure(cls, p: int, gamma: float = 1.0) -> "MixtureSpec":
        return cls({p: gamma})

    @classmethod
    def from_dict(cls, data: Mapping) -> "MixtureSpec":
        return cls({int(k): float(v) for k, v in data["gammas"].items()})

    def to_dict(self) -> dict:
        return {"gammas": {str(p): g for p, g in self.gammas.items()}}

    @property
    def orders(self) -> tuple:
        return self._orders

    @property
    def p_max(self) -> int:
        return self._orders[-1]

    def truncate(self, p1: int) -> "MixtureSpec":
        """Drop every order above ``p1``."""
        kept = {p: g for p, g in self.gammas.items() if p <= p1}
        if not kept:
            raise ValueError(f"truncation at p1={p1} removes every order")
        return MixtureSpec(kept)

    @property
    def c_gamma(self) -> float:
        """Euclidean norm of (gamma_p p (p-1))_p, the Hessian Lipschitz constant in the disorder."""
        return float(np.sqrt(sum((g * p * (p - 1)) ** 2 for p, g in self.gammas.items())))

    def __call__(self, z, order: int = 0):
        return xi_eval(self, z, order)


def xi_eval(m: MixtureSpec, z, order: int = 0):
    """Evaluate xi, xi' or xi'' at ``z`` (scalar or array) with |z| <= 1."""
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(np.abs(z_arr) > 1 + _DOMAIN_TOL):
        raise ValueError("xi is only evaluated on |z| <= 1")
    out = np.zeros_like(z_arr)
    for p, g in m.gammas.items():
        if order == 0:
            out = out + g * g * z_arr**p
        elif order == 1:
            out = out + g * g * p * z_arr ** (p - 1)
        else:
            out = out + g * g * p * (p - 1) * z_arr ** (p - 2)
    if out.ndim == 0:
        return float(out)
    return out


def ground_state_target(m: MixtureSpec, quad_points: int = 64, panels: int = 8) -> float:
    """Integral of sqrt(xi''(t)) over [0, 1].

    The substitution t = s^2 turns the endpoint behaviour t^{(p-2)/2} into a
    polynomial factor, after which composite Gauss-Legendre is spectrally
    accurate.
    """
    if quad_points < 16:
        raise ValueError(f"quad_points must be >= 16, got {quad_points}")
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    edges = np.linspace(0.0, 1.0, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        s = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        integrand = 2.0 * s * np.sqrt(xi_eval(m, s * s, 2))
        total += 0.5 * (b - a) * float(np.dot(weights, integrand))
    return total


@dataclass(frozen=True)
class ConcavityResult:
    is_concave: bool
    worst_violation: float
    reason: Optional[str] = None


def full_rsb_check(m: MixtureSpec, grid_size: int = 1000) -> ConcavityResult:
    """Midpoint-concavity test of q -> xi''(q)^{-1/2} on the grid {k / grid_size}.

    ``worst_violation`` is the most negative slack g(q_k) - (g(q_{k-1}) + g(q_{k+1})) / 2
    (positive when every triple is concave).
    """
    if grid_size < 3:
        raise ValueError(f"grid_size must be >= 3, got {grid_size}")
    q = np.arange(1, grid_size + 1) / grid_size
    xi2 = xi_eval(m, q, 2)
    if np.any(xi2 <= 0):
        raise ValueError("xi'' vanishes on the test grid; g = xi''^{-1/2} is undefined")
    g = xi2**-0.5
    slack = g[1:-1] - 0.5 * (g[:-2] + g[2:])
    worst = float(slack.min())
    tol = 1e-12 * float(np.abs(g).max())
    if m.orders[0] > 2:
        # xi''(0) = 0 so g blows up at 0, which no concave function on (0, 1] can do
        return ConcavityResult(False, min(worst, 0.0), "xi''(0) = 0: g is unbounded near q = 0")
    if worst < -tol:
        return ConcavityResult(False, worst, "midpoint concavity fails on the grid")
    return ConcavityResult(True, worst)
