"""Hessian descent from the origin to the sphere.

Each step moves orthogonally to the current point by sqrt(N/K) along a
bottom eigenvector of the tangent-space Hessian, so after k steps
|x_k|^2 = k N / K exactly (Pythagoras).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import Model, local_derivatives, tangent_lift, tangent_restrict
from .laws import edge_mass
from .mixture import ground_state_target, xi_eval
from .spectral import EmpiricalDistribution, bottom_eigenpairs

__all__ = ["DescentConfig", "DescentTrace", "hessian_descent", "predicted_energy"]

CSV_COLUMNS = ("step", "rho", "lambda_min", "energy", "energy_per_site", "edge_mass")


@dataclass(frozen=True)
class DescentConfig:
    """``steps`` equal-squared-norm increments from 0 to the sphere.

    ``edge_window`` > 0 replaces the bottom eigenvector by a uniformly random
    unit vector in the span of eigenvectors with eigenvalue <= lambda_min + window.
    ``record_spectrum_every`` > 0 records the edge mass at ``eps`` every that many steps.
    """

    steps: int = 100
    sign_rule: str = "gradient_aligned"
    record_spectrum_every: int = 0
    edge_window: float = 0.0
    eps: float = 0.5

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"need at least 2 steps, got {self.steps}")
        if self.sign_rule != "gradient_aligned":
            raise ValueError(f"unknown sign rule {self.sign_rule!r}")
        if self.record_spectrum_every < 0 or self.edge_window < 0 or self.eps <= 0:
            raise ValueError("record_spectrum_every and edge_window must be >= 0, eps > 0")


@dataclass
class DescentTrace:
    """Per-point arrays have length K + 1 (x_0 = 0 through x_K); per-step arrays length K."""

    N: int
    steps: int
    rho: np.ndarray
    lambda_min: np.ndarray
    energy: np.ndarray
    edge_mass: np.ndarray
    gradient_overlap: np.ndarray
    signs: np.ndarray
    tangent_overlap: np.ndarray
    predicted_increment: np.ndarray
    terminal_point: np.ndarray = field(repr=False)
    first_step_rule: str = "euclidean_hessian"

    @property
    def terminal_energy(self) -> float:
        return float(self.energy[-1])

    @property
    def energy_per_site(self) -> float:
        return float(self.energy[-1]) / self.N

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.energy)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for k in range(self.steps + 1):
            em = self.edge_mass[k]
            w.writerow(
                [
                    k,
                    repr(float(self.rho[k])),
                    repr(float(self.lambda_min[k])),
                    repr(float(self.energy[k])),
                    repr(float(self.energy[k]) / self.N),
                    "" if math.isnan(em) else repr(float(em)),
                ]
            )
        return buf.getvalue()


def _pick_direction(V, rng):
    if V.shape[1] == 1:
        return V[:, 0]
    u = V @ rng.standard_normal(V.shape[1])
    return u / np.linalg.norm(u)


def hessian_descent(model: Model, cfg: DescentConfig, seed: int = 0) -> DescentTrace:
    """Run Hessian descent on ``model``.

    At the origin the projector is undefined, so the first direction is the
    bottom eigenvector of the Euclidean Hessian (a seeded random direction if
    that Hessian vanishes, as for mixtures without a 2-spin term). The step
    sign makes the first-order change nonpositive; ties go to +1.
    """
    N, K = model.N, cfg.steps
    rng = np.random.default_rng(seed)
    step = math.sqrt(N / K)
    x = np.zeros(N)

    rho = np.zeros(K + 1)
    lam = np.zeros(K + 1)
    energies = np.zeros(K + 1)
    masses = np.full(K + 1, np.nan)
    overlaps = np.zeros(K)
    signs = np.zeros(K)
    ortho = np.zeros(K)
    first_rule = "euclidean_hessian"

    for k in range(K + 1):
        d = local_derivatives(model, x)
        energies[k] = d.energy
        rho[k] = float(x @ x) / N
        if k == 0:
            A = d.hessian
        else:
            A = tangent_restrict(d.hessian, x)
        w, V = bottom_eigenpairs(A, cfg.edge_window)
        lam[k] = w[0]
        if cfg.record_spectrum_every and k % cfg.record_spectrum_every == 0:
            spectrum = np.linalg.eigvalsh(A)
            if k > 0:
                # the tangent spectrum plus the zero mode along x
                spectrum = np.append(spectrum, 0.0)
            xi2 = xi_eval(model.mixture, min(rho[k], 1.0), 2)
            masses[k] = edge_mass(EmpiricalDistribution(spectrum), xi2, cfg.eps)
        if k == K:
            break

        if k == 0 and not np.any(d.hessian):
            u = rng.standard_normal(N)
            u /= np.linalg.norm(u)
            first_rule = "random_direction"
        else:
            u = _pick_direction(V, rng)
            if k > 0:
                u = tangent_lift(u, x)
        ortho[k] = float(u @ x) / max(math.sqrt(float(x @ x)), 1.0)
        overlaps[k] = float(d.gradient @ u)
        signs[k] = -1.0 if overlaps[k] > 0 else 1.0
        x = x + signs[k] * step * u

    ks = np.arange(K)
    predicted = -(N / K) * np.sqrt(xi_eval(model.mixture, ks / K, 2))
    return DescentTrace(
        N=N,
        steps=K,
        rho=rho,
        lambda_min=lam,
        energy=energies,
        edge_mass=masses,
        gradient_overlap=overlaps,
        signs=signs,
        tangent_overlap=ortho,
        predicted_increment=predicted,
        terminal_point=x,
        first_step_rule=first_rule,
    )


def predicted_energy(model: Model) -> float:
    """-N times the integral of sqrt(xi''); descent minimizes, hence the sign."""
    return -model.N * ground_state_target(model.mixture)
