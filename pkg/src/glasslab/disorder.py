"""Disorder distributions and reproducible coefficient tensors.

Every coefficient is a deterministic function of ``(seed, p, flat_index)``:
the Philox-4x64 block cipher is keyed by ``(seed, p)`` and its counter is the
flat index (four 64-bit words per counter value). A coefficient therefore
does not depend on how the array is chunked or in which order it is filled.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy.special import ndtr, ndtri

__all__ = [
    "KINDS",
    "DEFAULT_BUDGET",
    "MemoryBudgetError",
    "DisorderSpec",
    "DisorderTensor",
    "SubGaussianDiagnostic",
    "raw_stream",
    "sample_tensor",
    "sym_coeff",
    "subgaussian_diagnostic",
    "derive_seed",
]

KINDS = ("gaussian", "uniform_sym", "rademacher", "truncated_gaussian")
DEFAULT_BUDGET = 200_000_000
_CHUNK = 1 << 22  # multiple of 4 so chunks start on a Philox block boundary
_MASK64 = (1 << 64) - 1
_TRUNC = 4.0
# variance of N(0, 1) conditioned on [-4, 4]
_TRUNC_VAR = 1.0 - 2.0 * _TRUNC * math.exp(-0.5 * _TRUNC**2) / math.sqrt(2 * math.pi) / (
    2.0 * float(ndtr(_TRUNC)) - 1.0
)

# Default LSI constants K in Ent(f^2) <= 2K E f'^2.
#   gaussian: K = 1.
#   uniform on [-a, a]: the interval LSI constant equals the inverse spectral gap, (2a)^2 / pi^2.
#   truncated gaussian: Bakry-Emery gives K <= 1 before rescaling, 1 / var after.
_DEFAULT_LSI = {
    "gaussian": 1.0,
    "uniform_sym": 12.0 / math.pi**2,
    "truncated_gaussian": 1.0 / _TRUNC_VAR,
    "rademacher": None,
}
_DEFAULT_TAGS = {
    "gaussian": frozenset({"LS", "SG", "M"}),
    "uniform_sym": frozenset({"LS", "SG", "M"}),
    "truncated_gaussian": frozenset({"LS", "SG", "M"}),
    "rademacher": frozenset({"SG", "M"}),
}


class MemoryBudgetError(ValueError):
    """Raised when a coefficient array would exceed the configured budget."""


@dataclass(frozen=True)
class DisorderSpec:
    """Distribution of the i.i.d. disorder coefficients (mean 0, variance 1)."""

    kind: str = "gaussian"
    params: Mapping = field(default_factory=dict)
    lsi_constant: Optional[float] = None
    condition_tags: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown disorder kind {self.kind!r}; expected one of {KINDS}")
        default_k = _DEFAULT_LSI[self.kind]
        k = self.lsi_constant
        if k is None:
            k = default_k
        elif default_k is None:
            raise ValueError(f"{self.kind} disorder does not satisfy (LS); lsi_constant must be null")
        elif k <= 0:
            raise ValueError(f"lsi_constant must be positive, got {k}")
        tags = frozenset(self.condition_tags) or _DEFAULT_TAGS[self.kind]
        if "LS" in tags and k is None:
            raise ValueError("LS tag requires an lsi_constant")
        if "LS" in tags and "SG" not in tags or "SG" in tags and "M" not in tags:
            raise ValueError(f"condition tags must respect LS => SG => M, got {sorted(tags)}")
        object.__setattr__(self, "lsi_constant", None if k is None else float(k))
        object.__setattr__(self, "condition_tags", tags)
        object.__setattr__(self, "params", dict(self.params))

    @classmethod
    def from_dict(cls, data: Mapping) -> "DisorderSpec":
        return cls(
            kind=data.get("kind", "gaussian"),
            params=data.get("params", {}),
            lsi_constant=data.get("lsi_constant"),
            condition_tags=frozenset(data.get("condition_tags", ())),
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "lsi_constant": self.lsi_constant,
            "condition_tags": sorted(self.condition_tags),
        }

    def transform(self, raw: np.ndarray) -> np.ndarray:
        """Map raw 64-bit words to coefficients, one word per coefficient."""
        if self.kind == "rademacher":
            return np.where(raw >> np.uint64(63), 1.0, -1.0)
        u = _unit_interval(raw)
        if self.kind == "gaussian":
            return ndtri(u)
        if self.kind == "uniform_sym":
            return math.sqrt(3.0) * (2.0 * u - 1.0)
        lo = float(ndtr(-_TRUNC))
        return ndtri(lo + u * (1.0 - 2.0 * lo)) / math.sqrt(_TRUNC_VAR)

    def sample(self, n: int, seed: int, stream: int = 0) -> np.ndarray:
        """``n`` i.i.d. draws, keyed on ``(seed, stream)``."""
        return self.transform(raw_stream(seed, stream, 0, n))


def _unit_interval(raw: np.ndarray) -> np.ndarray:
    # 53-bit midpoint grid: never exactly 0 or 1
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def raw_stream(seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Words ``start .. start + count - 1`` of the Philox stream keyed by ``(seed, stream)``."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    block, offset = divmod(start, 4)
    counter = np.array([block & _MASK64, block >> 64, 0, 0], dtype=np.uint64)
    words = np.random.Philox(key=key, counter=counter).random_raw(count + offset)
    return words[offset:]


def derive_seed(*parts: int) -> int:
    """Deterministic 64-bit seed from a tuple of non-negative integers."""
    base, *rest = parts
    ss = np.random.SeedSequence(base, spawn_key=tuple(rest))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class DisorderTensor:
    """Order-``p`` coefficient array J^(p), stored flat in row-major index order."""

    order: int
    dim: int
    coeffs: np.ndarray = field(repr=False)
    seed: int
    spec: DisorderSpec

    @property
    def array(self) -> np.ndarray:
        return self.coeffs.reshape((self.dim,) * self.order)


def sample_tensor(
    spec: DisorderSpec, p: int, N: int, seed: int, budget: int = DEFAULT_BUDGET
) -> DisorderTensor:
    """Sample J^(p) with N^p coefficients, filled chunk by chunk."""
    if p < 2 or N < 1:
        raise ValueError(f"need p >= 2 and N >= 1, got p={p}, N={N}")
    size = N**p
    if size > budget:
        raise MemoryBudgetError(f"N^p = {N}^{p} = {size} coefficients exceeds budget {budget}")
    coeffs = np.empty(size, dtype=np.float64)
    for start in range(0, size, _CHUNK):
        stop = min(start + _CHUNK, size)
        coeffs[start:stop] = spec.transform(raw_stream(seed, p, start, stop - start))
    coeffs.flags.writeable = False
    return DisorderTensor(order=p, dim=N, coeffs=coeffs, seed=seed, spec=spec)


def sym_coeff(t: DisorderTensor, idx: Sequence[int]) -> float:
    """Average of J over all p! orderings of the (0-based) multi-index ``idx``."""
    idx = tuple(int(i) for i in idx)
    if len(idx) != t.order:
        raise ValueError(f"index has length {len(idx)}, tensor order is {t.order}")
    if any(i < 0 or i >= t.dim for i in idx):
        raise IndexError(f"index {idx} out of range for dimension {t.dim}")
    arr = t.array
    total = math.fsum(arr[perm] for perm in itertools.permutations(idx))
    return total / math.factorial(t.order)


@dataclass(frozen=True)
class SubGaussianDiagnostic:
    s: np.ndarray
    log_mgf: np.ndarray
    bound: np.ndarray
    K: float
    fitted: bool


def subgaussian_diagnostic(
    spec: DisorderSpec, s_grid: Sequence[float], n_samples: int = 100_000, seed: int = 0
) -> SubGaussianDiagnostic:
    """Empirical log E exp(sJ) against K s^2 / 2.

    K is the declared LSI constant when there is one; otherwise the smallest K
    that makes the bound hold on the grid (``fitted=True``).
    """
    if n_samples < 1000:
        raise ValueError(f"n_samples must be >= 1000, got {n_samples}")
    s = np.asarray(s_grid, dtype=float)
    if np.any(np.abs(s) > 10):
        raise ValueError("|s| > 10 overflows the empirical MGF")
    x = spec.sample(n_samples, seed)
    # log-mean-exp, stable for large s * x
    a = np.outer(s, x)
    amax = a.max(axis=1, keepdims=True)
    log_mgf = (amax[:, 0] + np.log(np.mean(np.exp(a - amax), axis=1)))
    fitted = spec.lsi_constant is None
    if fitted:
        nz = s != 0
        K = float(np.max(2.0 * log_mgf[nz] / s[nz] ** 2)) if nz.any() else 0.0
        K = max(K, 0.0)
    else:
        K = spec.lsi_constant
    return SubGaussianDiagnostic(s=s, log_mgf=log_mgf, bound=0.5 * K * s**2, K=K, fitted=fitted)
