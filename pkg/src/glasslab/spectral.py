"""Eigendecompositions, empirical spectral distributions and trace moments."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np
import scipy.linalg

from .disorder import derive_seed
from .hamiltonian import Model, check_point, euclidean_hessian, projected_hessian, radius_parameter, truncate
from .laws import catalan_target
from .mixture import xi_eval

__all__ = [
    "EmpiricalDistribution",
    "MomentReport",
    "eigen_symmetric",
    "bottom_eigenpairs",
    "esd",
    "trace_moments",
    "normalized_trace_moment",
]


def eigen_symmetric(A):
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix.

    Backed by LAPACK ``syevd`` through :func:`numpy.linalg.eigh`.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    scale = float(np.abs(A).max()) if A.size else 0.0
    if np.abs(A - A.T).max(initial=0.0) > 1e-10 * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric")
    w, V = np.linalg.eigh(0.5 * (A + A.T))
    return w, V


def bottom_eigenpairs(A, window: float = 0.0):
    """Eigenpairs with eigenvalue <= lambda_min + window (just the minimum when window is 0).

    Uses LAPACK ``syevr`` on an index or value range, which skips the full
    back-transformation of eigenvectors.
    """
    A = np.asarray(A, dtype=float)
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    A = 0.5 * (A + A.T)
    w, V = scipy.linalg.eigh(A, subset_by_index=[0, 0], driver="evr")
    if window > 0:
        w, V = scipy.linalg.eigh(A, subset_by_value=(-np.inf, w[0] + window), driver="evr")
    return w, V


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Uniform probability measure on a finite sample, stored sorted."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float).ravel())
        if v.size == 0:
            raise ValueError("empirical distribution needs at least one value")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def cdf(self, y):
        return np.searchsorted(self.values, y, side="right") / self.values.size

    def moment(self, k: int) -> float:
        return float(np.mean(self.values**k))

    def mass_below(self, threshold: float) -> float:
        return float(self.cdf(threshold))

    def to_json(self, rho: Optional[float] = None) -> str:
        return json.dumps({"rho": rho, "eigenvalues": self.values.tolist()})


def esd(model: Model, x, projected: bool = True) -> EmpiricalDistribution:
    """Spectrum of the projected (default) or Euclidean Hessian at ``x``."""
    H = projected_hessian(model, x) if projected else euclidean_hessian(model, x)
    w, _ = eigen_symmetric(H)
    return EmpiricalDistribution(w)


@dataclass(frozen=True)
class MomentReport:
    k: int
    raw_moment: float
    normalized: float
    catalan_target: float
    stderr: float
    trials: int


def trace_moments(
    model: Model,
    x,
    ks: Iterable[int],
    trials: int = 20,
    seeds: Optional[Sequence[int]] = None,
    projected: bool = False,
) -> List[MomentReport]:
    """Monte Carlo estimates of (1/N) E Tr(Hess^k) / xi''(rho_x)^{k/2}.

    Each trial draws fresh disorder with the model's law; one decomposition per
    trial serves every k. ``seeds`` defaults to seeds derived from ``model.seed``.
    """
    ks = [int(k) for k in ks]
    if not ks or min(ks) < 1:
        raise ValueError("moment orders must be >= 1")
    x = check_point(model, x)
    xi2 = xi_eval(model.mixture, min(radius_parameter(x), 1.0), 2)
    if xi2 <= 0:
        raise ValueError("xi''(rho_x) = 0: moments cannot be normalized")
    if seeds is None:
        seeds = [derive_seed(model.seed, t) for t in range(trials)]
    seeds = list(seeds)[:trials]
    if len(seeds) < trials:
        raise ValueError(f"need {trials} seeds, got {len(seeds)}")
    samples = np.empty((trials, len(ks)))
    for t, s in enumerate(seeds):
        m = model.resample(s)
        H = projected_hessian(m, x) if projected else euclidean_hessian(m, x)
        w, _ = eigen_symmetric(H)
        for j, k in enumerate(ks):
            samples[t, j] = np.mean(w**k)
    reports = []
    for j, k in enumerate(ks):
        raw = float(samples[:, j].mean())
        se = float(samples[:, j].std(ddof=1) / np.sqrt(trials)) if trials > 1 else float("nan")
        norm = xi2 ** (k / 2)
        reports.append(
            MomentReport(
                k=k,
                raw_moment=raw,
                normalized=raw / norm,
                catalan_target=catalan_target(k),
                stderr=se / norm,
                trials=trials,
            )
        )
    return reports


def normalized_trace_moment(
    model: Model, x, k: int, trials: int = 20, seeds: Optional[Sequence[int]] = None
) -> MomentReport:
    return trace_moments(truncate(model, model.p_max), x, [k], trials, seeds)[0]
