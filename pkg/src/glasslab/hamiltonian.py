"""Mixed p-spin Hamiltonians on the ball of radius sqrt(N) and their derivatives.

All evaluation goes through successive tensor-vector contraction: an
order-p coefficient array is contracted one axis at a time, innermost
(last) axis first, so each contraction streams through memory with unit
stride and the cost is O(N^p) per order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np

from .disorder import DEFAULT_BUDGET, DisorderSpec, DisorderTensor, MemoryBudgetError, sample_tensor
from .mixture import MixtureSpec, xi_eval

__all__ = [
    "Model",
    "LocalDerivatives",
    "RegularityReport",
    "build_model",
    "radius_parameter",
    "check_point",
    "energy",
    "gradient",
    "directional_derivative",
    "euclidean_hessian",
    "projected_hessian",
    "projector",
    "tangent_basis",
    "tangent_restrict",
    "tangent_lift",
    "local_derivatives",
    "truncate",
    "regularity_report",
    "random_sphere_point",
    "random_ball_point",
    "north_pole",
]


@dataclass(frozen=True)
class Model:
    """Truncated mixed Hamiltonian: mixture, dimension and one tensor per order."""

    mixture: MixtureSpec
    N: int
    tensors: Dict[int, DisorderTensor] = field(repr=False)
    disorder: DisorderSpec
    seed: int

    def __post_init__(self):
        if set(self.tensors) != set(self.mixture.orders):
            raise ValueError(
                f"tensor orders {sorted(self.tensors)} do not match mixture orders {self.mixture.orders}"
            )
        for p, t in self.tensors.items():
            if t.order != p or t.dim != self.N:
                raise ValueError(f"tensor for p={p} has order {t.order}, dim {t.dim}; expected N={self.N}")

    @property
    def p_max(self) -> int:
        return self.mixture.p_max

    def resample(self, seed: int) -> "Model":
        """Same mixture, dimension and disorder law; fresh coefficients."""
        return build_model(self.mixture, self.N, self.disorder, seed)

    def xi2(self, x: np.ndarray) -> float:
        return xi_eval(self.mixture, min(radius_parameter(x), 1.0), 2)


def build_model(
    mixture: MixtureSpec,
    N: int,
    disorder: Optional[DisorderSpec] = None,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> Model:
    disorder = disorder or DisorderSpec()
    total = sum(N**p for p in mixture.orders)
    if total > budget:
        raise MemoryBudgetError(f"model needs {total} coefficients, budget is {budget}")
    tensors = {p: sample_tensor(disorder, p, N, seed, budget) for p in mixture.orders}
    return Model(mixture=mixture, N=N, tensors=tensors, disorder=disorder, seed=seed)


def radius_parameter(x: np.ndarray) -> float:
    """rho_x = |x|^2 / N."""
    x = np.asarray(x, dtype=float)
    return float(x @ x) / x.size


def check_point(model: Model, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (model.N,):
        raise ValueError(f"point has shape {x.shape}, expected ({model.N},)")
    if not np.all(np.isfinite(x)):
        raise ValueError("point has non-finite coordinates")
    if x @ x > model.N * (1.0 + 1e-9):
        raise ValueError(f"point lies outside the ball: |x|^2 = {x @ x:.6g} > N = {model.N}")
    return x


def _contract_axis(T: np.ndarray, v: np.ndarray, axis: int) -> np.ndarray:
    shape = T.shape
    if axis == T.ndim - 1:
        return T @ v
    n = shape[axis]
    lead = int(np.prod(shape[:axis], dtype=np.int64))
    tail = int(np.prod(shape[axis + 1 :], dtype=np.int64))
    out = v @ T.reshape(lead, n, tail)
    return out.reshape(shape[:axis] + shape[axis + 1 :])


def _contract(T: np.ndarray, vecs: Sequence[Optional[np.ndarray]]) -> np.ndarray:
    """Contract axis k of ``T`` with ``vecs[k]``; ``None`` keeps the axis free.

    Axes are eaten from the last one backwards so the free axes keep their order.
    """
    for axis in range(T.ndim - 1, -1, -1):
        if vecs[axis] is not None:
            T = _contract_axis(T, vecs[axis], axis)
    return T


def _scale(model: Model, p: int) -> float:
    return model.mixture.gammas[p] / model.N ** ((p - 1) / 2)


def energy(model: Model, x) -> float:
    x = check_point(model, x)
    total = 0.0
    for p, t in model.tensors.items():
        total += _scale(model, p) * float(_contract(t.array, [x] * p))
    return total


@dataclass(frozen=True)
class LocalDerivatives:
    energy: float
    gradient: np.ndarray
    hessian: np.ndarray


def _order_derivatives(J: np.ndarray, x: np.ndarray):
    """Energy, gradient and Euclidean Hessian of <J, x^{(x)p}> by the product rule.

    For each pair of positions a < b the slab S_ab keeps axes a and b free and
    contracts x into the rest; the Hessian is sum_{a<b} (S_ab + S_ab^T) and the
    gradient term for position a is read off any slab containing a.
    """
    p = J.ndim
    n = x.size
    hess = np.zeros((n, n))
    grad_parts = [None] * p
    for a, b in itertools.combinations(range(p), 2):
        vecs = [x] * p
        vecs[a] = vecs[b] = None
        S = _contract(J, vecs)
        hess += S + S.T
        if grad_parts[a] is None:
            grad_parts[a] = S @ x
        if grad_parts[b] is None:
            grad_parts[b] = x @ S
    grad = np.sum(grad_parts, axis=0)
    val = float(grad_parts[0] @ x)
    return val, grad, hess


def local_derivatives(model: Model, x) -> LocalDerivatives:
    """Energy, gradient and symmetric Euclidean Hessian at ``x`` in one pass."""
    x = check_point(model, x)
    n = model.N
    if n * n > DEFAULT_BUDGET:
        raise MemoryBudgetError(f"N x N Hessian with N={n} exceeds budget")
    e, g, h = 0.0, np.zeros(n), np.zeros((n, n))
    for p, t in model.tensors.items():
        c = _scale(model, p)
        ep, gp, hp = _order_derivatives(t.array, x)
        e += c * ep
        g += c * gp
        h += c * hp
    h = 0.5 * (h + h.T)
    return LocalDerivatives(energy=e, gradient=g, hessian=h)


def gradient(model: Model, x) -> np.ndarray:
    x = check_point(model, x)
    g = np.zeros(model.N)
    for p, t in model.tensors.items():
        J = t.array
        for a in range(p):
            vecs = [x] * p
            vecs[a] = None
            g += _scale(model, p) * _contract(J, vecs)
    return g


def euclidean_hessian(model: Model, x) -> np.ndarray:
    return local_derivatives(model, x).hessian


def directional_derivative(model: Model, x, v, i: int) -> float:
    """i-th derivative of t -> H(x + t v) at t = 0, for a unit vector ``v``.

    Contracting J with (x + t v) axis by axis keeps a polynomial in t whose
    coefficients are tensors; only degrees up to i are tracked. The result is
    i! times the degree-i coefficient.
    """
    x = check_point(model, x)
    v = np.asarray(v, dtype=float)
    if i not in (1, 2, 3):
        raise ValueError(f"derivative order must be 1, 2 or 3, got {i}")
    if abs(float(v @ v) - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector, |v|^2 = {v @ v!r}")
    total = 0.0
    for p, t in model.tensors.items():
        if i > p:
            continue
        coeffs = [t.array]
        for axis in range(p - 1, -1, -1):
            new = []
            for deg in range(min(len(coeffs) + 1, i + 1)):
                term = None
                if deg < len(coeffs):
                    term = _contract_axis(coeffs[deg], x, axis)
                if deg >= 1:
                    dv = _contract_axis(coeffs[deg - 1], v, axis)
                    term = dv if term is None else term + dv
                new.append(term)
            coeffs = new
        total += _scale(model, p) * float(coeffs[i])
    factorial = {1: 1, 2: 2, 3: 6}[i]
    return factorial * total


def projector(x) -> np.ndarray:
    """Orthogonal projector onto the complement of ``x``."""
    x = np.asarray(x, dtype=float)
    nrm2 = float(x @ x)
    if nrm2 == 0.0:
        raise ValueError("projector onto x^perp is undefined at x = 0")
    return np.eye(x.size) - np.outer(x, x) / nrm2


def projected_hessian(model: Model, x, hessian: Optional[np.ndarray] = None) -> np.ndarray:
    """P_x (Euclidean Hessian) P_x, symmetrized."""
    x = check_point(model, x)
    P = projector(x)
    H = euclidean_hessian(model, x) if hessian is None else hessian
    M = P @ H @ P
    return 0.5 * (M + M.T)


def _reflector(x):
    """Householder vector w and factor beta with (I - beta w w^T) x parallel to e_N."""
    x = np.asarray(x, dtype=float)
    nrm = float(np.linalg.norm(x))
    if nrm == 0.0:
        raise ValueError("tangent space is undefined at x = 0")
    w = x / nrm
    w[-1] += 1.0 if w[-1] >= 0 else -1.0
    return w, 2.0 / float(w @ w)


def tangent_basis(x) -> np.ndarray:
    """Orthonormal N x (N-1) basis of x^perp from one Householder reflection."""
    w, beta = _reflector(x)
    R = np.eye(w.size) - beta * np.outer(w, w)
    # R is a symmetric orthogonal matrix with R e_N parallel to x
    return R[:, :-1]


def tangent_restrict(H: np.ndarray, x) -> np.ndarray:
    """B^T H B for B = tangent_basis(x), by a rank-two update instead of two products."""
    w, beta = _reflector(x)
    Hw = H @ w
    c = float(w @ Hw)
    RHR = H - beta * np.outer(w, Hw) - beta * np.outer(Hw, w) + beta * beta * c * np.outer(w, w)
    A = RHR[:-1, :-1]
    return 0.5 * (A + A.T)


def tangent_lift(y: np.ndarray, x) -> np.ndarray:
    """B y for B = tangent_basis(x)."""
    w, beta = _reflector(x)
    z = np.append(y, 0.0)
    return z - beta * w * float(w @ z)


def truncate(model: Model, p1: int) -> Model:
    """Drop every order above ``p1``; tensors are shared with ``model``."""
    if not 2 <= p1 <= model.p_max:
        raise ValueError(f"p1 must lie in [2, {model.p_max}], got {p1}")
    mixture = model.mixture.truncate(p1)
    tensors = {p: t for p, t in model.tensors.items() if p <= p1}
    return Model(mixture=mixture, N=model.N, tensors=tensors, disorder=model.disorder, seed=model.seed)


def random_sphere_point(N: int, rng: np.random.Generator, rho: float = 1.0) -> np.ndarray:
    g = rng.standard_normal(N)
    return g * np.sqrt(rho * N) / np.linalg.norm(g)


def random_ball_point(N: int, rng: np.random.Generator) -> np.ndarray:
    x = random_sphere_point(N, rng)
    return x * rng.uniform() ** (1.0 / N)


def north_pole(N: int, rho: float = 1.0) -> np.ndarray:
    x = np.zeros(N)
    x[-1] = np.sqrt(rho * N)
    return x


@dataclass(frozen=True)
class RegularityReport:
    """Empirical lower bounds for the regularity constant R.

    ``directional[i]`` is max |d^i_v H(x)| / N^{1 - i/2}; ``hessian_lipschitz``
    is max |Hess(x) - Hess(y)|_op sqrt(N) / |x - y|.
    """

    directional: Dict[int, float]
    hessian_lipschitz: float
    n_points: int
    n_dirs: int


def regularity_report(model: Model, n_points: int = 10, n_dirs: int = 5, seed: int = 0) -> RegularityReport:
    if n_points < 1 or n_dirs < 1:
        raise ValueError("n_points and n_dirs must be >= 1")
    rng = np.random.default_rng(seed)
    N = model.N
    stats = {1: 0.0, 2: 0.0, 3: 0.0}
    points = [random_ball_point(N, rng) for _ in range(n_points)]
    for x in points:
        for _ in range(n_dirs):
            v = rng.standard_normal(N)
            v /= np.linalg.norm(v)
            for i in stats:
                d = directional_derivative(model, x, v, i)
                stats[i] = max(stats[i], abs(d) / N ** (1 - i / 2))
    lip = 0.0
    hessians = [euclidean_hessian(model, x) for x in points]
    pairs = list(zip(range(n_points - 1), range(1, n_points)))
    if n_points == 1:
        y = random_ball_point(N, rng)
        points.append(y)
        hessians.append(euclidean_hessian(model, y))
        pairs = [(0, 1)]
    for a, b in pairs:
        dist = float(np.linalg.norm(points[a] - points[b]))
        if dist > 0:
            op = float(np.linalg.norm(hessians[a] - hessians[b], 2))
            lip = max(lip, op * np.sqrt(N) / dist)
    return RegularityReport(directional=stats, hessian_lipschitz=lip, n_points=n_points, n_dirs=n_dirs)
