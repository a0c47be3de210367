"""Density matrices, qubit states, thermal context and entropic functionals.

All entropies and divergences are in bits. A qubit state is written
``eta[r, alpha]``: ground population ``r`` and coherence ``alpha = <0|rho|1>``
in the energy eigenbasis ``{|0>, |1>}`` with ``E1 >= E0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

from .exceptions import InvalidStateError

ATOL = 1e-12
LOG2E = math.log2(math.e)

ArrayLike = Union[np.ndarray, Sequence]


def check_density_matrix(rho, atol: float = ATOL) -> np.ndarray:
    """Validate ``rho`` and return it as a read-only complex array.

    Raises InvalidStateError if the matrix is not square, not Hermitian,
    not unit trace, or has eigenvalues below ``-atol``.
    """
    if isinstance(rho, QubitState):
        return rho.matrix()
    m = np.array(rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidStateError(f"density matrix must be square, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > atol:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(m) - 1.0) > atol:
        raise InvalidStateError(f"density matrix trace {np.trace(m).real!r} != 1")
    if np.linalg.eigvalsh(m).min() < -atol:
        raise InvalidStateError("density matrix has negative eigenvalues")
    m.setflags(write=False)
    return m


def _eigvals(rho) -> np.ndarray:
    m = check_density_matrix(rho)
    return np.clip(np.linalg.eigvalsh(m), 0.0, None)


def _entropy_of_spectrum(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


@dataclass(frozen=True)
class QubitState:
    """Qubit state ``eta[r, alpha]``."""

    r: float
    alpha: complex = 0.0

    def __post_init__(self):
        r = float(self.r)
        alpha = complex(self.alpha)
        if not (-ATOL <= r <= 1 + ATOL):
            raise InvalidStateError(f"ground population r={r} outside [0, 1]")
        r = min(max(r, 0.0), 1.0)
        if abs(alpha) ** 2 > r * (1 - r) + ATOL:
            raise InvalidStateError(
                f"|alpha|^2={abs(alpha) ** 2:.3g} exceeds r(1-r)={r * (1 - r):.3g}"
            )
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "alpha", alpha)

    @property
    def abs_alpha(self) -> float:
        return abs(self.alpha)

    def matrix(self) -> np.ndarray:
        m = np.array(
            [[self.r, self.alpha], [self.alpha.conjugate(), 1 - self.r]], dtype=complex
        )
        m.setflags(write=False)
        return m

    @classmethod
    def from_matrix(cls, rho) -> "QubitState":
        m = check_density_matrix(rho)
        if m.shape != (2, 2):
            raise InvalidStateError(f"expected a 2x2 matrix, got {m.shape}")
        return cls(m[0, 0].real, m[0, 1])

    @classmethod
    def from_bloch(cls, x: float, y: float, z: float) -> "QubitState":
        """State with Bloch vector (x, y, z); z = +1 is the ground state."""
        return cls((1 + z) / 2, complex(x, -y) / 2)

    @property
    def bloch(self) -> Tuple[float, float, float]:
        return (2 * self.alpha.real, -2 * self.alpha.imag, 2 * self.r - 1)


@dataclass(frozen=True)
class ThermalContext:
    """Dimensionless temperature data for a qubit with gap ``dE``.

    ``lam = exp(-dE / kT)`` and ``temp_ratio = kT / dE``. Build one with
    :meth:`from_temp_ratio` or :meth:`from_lambda`.
    """

    lam: float
    temp_ratio: float = field(default=float("nan"))

    def __post_init__(self):
        lam = float(self.lam)
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"lambda={lam} outside [0, 1]")
        t = float(self.temp_ratio)
        if math.isnan(t):
            t = _temp_from_lambda(lam)
        elif abs(_lambda_from_temp(t) - lam) > ATOL:
            raise ValueError(f"temp_ratio={t} inconsistent with lambda={lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "temp_ratio", t)

    @classmethod
    def from_temp_ratio(cls, temp_ratio: float) -> "ThermalContext":
        return cls(_lambda_from_temp(temp_ratio), temp_ratio)

    @classmethod
    def from_lambda(cls, lam: float) -> "ThermalContext":
        return cls(lam)

    @property
    def g(self) -> float:
        """Ground-state population of the Gibbs state."""
        return 1.0 / (1.0 + self.lam)


def _lambda_from_temp(t: float) -> float:
    t = float(t)
    if t < 0 or math.isnan(t):
        raise ValueError(f"temp_ratio must be >= 0, got {t}")
    if t == 0:
        return 0.0
    if math.isinf(t):
        return 1.0
    return math.exp(-1.0 / t)


def _temp_from_lambda(lam: float) -> float:
    if lam == 0:
        return 0.0
    if lam == 1:
        return math.inf
    return -1.0 / math.log(lam)


@dataclass(frozen=True)
class Code:
    """Ensemble of codewords ``(weight, state)``."""

    weights: Tuple[float, ...]
    states: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.weights) == 0:
            raise InvalidStateError("code must contain at least one codeword")
        if len(self.weights) != len(self.states):
            raise InvalidStateError("weights and states differ in length")
        w = tuple(float(p) for p in self.weights)
        if any(not 0.0 < p <= 1.0 for p in w):
            raise InvalidStateError("code weights must lie in (0, 1]")
        if abs(math.fsum(w) - 1.0) > ATOL:
            raise InvalidStateError(f"code weights sum to {math.fsum(w)!r}")
        states = tuple(check_density_matrix(s) for s in self.states)
        if len({s.shape for s in states}) != 1:
            raise InvalidStateError("codewords have different dimensions")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", states)

    @classmethod
    def from_pairs(cls, entries) -> "Code":
        entries = list(entries)
        return cls(tuple(p for p, _ in entries), tuple(s for _, s in entries))

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(zip(self.weights, self.states))

    def average(self) -> np.ndarray:
        return sum(p * s for p, s in self)


def gibbs_state(ctx: ThermalContext) -> QubitState:
    return QubitState(ctx.g, 0.0)


def binary_entropy(x):
    """h(x) in bits; accepts scalars or arrays."""
    if isinstance(x, (float, int)):
        x = float(x)
        if not -ATOL <= x <= 1 + ATOL:
            raise ValueError(f"binary entropy argument {x} outside [0, 1]")
        if x <= 0.0 or x >= 1.0:
            return 0.0
        return -(x * math.log2(x) + (1 - x) * math.log2(1 - x))
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -ATOL) or np.any(arr > 1 + ATOL) or np.any(np.isnan(arr)):
        raise ValueError("binary entropy argument outside [0, 1]")
    arr = np.clip(arr, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -(arr * np.log2(arr) + (1 - arr) * np.log2(1 - arr))
    out = np.where((arr == 0) | (arr == 1), 0.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def qubit_entropy(r, abs_alpha):
    """Entropy of ``eta[r, alpha]`` from ``r`` and ``|alpha|`` (vectorised)."""
    r = np.asarray(r, dtype=float)
    a = np.asarray(abs_alpha, dtype=float)
    det = np.clip(r * (1 - r) - a * a, 0.0, 0.25)
    disc = np.sqrt(np.clip((2 * r - 1) ** 2 + 4 * a * a, 0.0, 1.0))
    # smaller eigenvalue, written to avoid cancellation near pure states
    t = 2 * det / (1 + disc)
    return binary_entropy(np.clip(t, 0.0, 0.5))


def von_neumann_entropy(rho) -> float:
    if isinstance(rho, QubitState):
        return float(qubit_entropy(rho.r, rho.abs_alpha))
    return _entropy_of_spectrum(_eigvals(rho))


def relative_entropy(rho, sigma) -> float:
    """S(rho || sigma) in bits; ``math.inf`` when supp(rho) is not in supp(sigma)."""
    a = check_density_matrix(rho)
    b = check_density_matrix(sigma)
    if a.shape != b.shape:
        raise InvalidStateError(f"dimension mismatch: {a.shape} vs {b.shape}")
    mu, v = np.linalg.eigh(b)
    mu = np.clip(mu, 0.0, None)
    overlaps = np.real(np.einsum("ik,ij,jk->k", v.conj(), a, v))
    zero = mu <= 1e-14
    if np.any(overlaps[zero] > 1e-12):
        return math.inf
    cross = float(np.sum(overlaps[~zero] * np.log2(mu[~zero])))
    value = -_entropy_of_spectrum(_eigvals(a)) - cross
    return max(value, 0.0)


def free_energy(rho, ctx: ThermalContext | None = None, gibbs=None) -> float:
    """Non-equilibrium free energy S(rho || gamma) in bits.

    Qubit inputs take the Gibbs state from ``ctx``; other dimensions need
    an explicit ``gibbs`` matrix.
    """
    if gibbs is None:
        if ctx is None:
            raise ValueError("need a ThermalContext or an explicit Gibbs state")
        gibbs = gibbs_state(ctx)
    return relative_entropy(rho, gibbs)


def relative_entropy_of_coherence(rho) -> float:
    m = check_density_matrix(rho)
    diag = np.clip(np.real(np.diag(m)), 0.0, None)
    return max(_entropy_of_spectrum(diag) - von_neumann_entropy(rho), 0.0)


def negentropy(rho) -> float:
    m = check_density_matrix(rho)
    return math.log2(m.shape[0]) - von_neumann_entropy(rho)


def holevo_information(code: Code) -> float:
    """S(sum_k p_k sigma_k) - sum_k p_k S(sigma_k)."""
    avg = code.average()
    avg = (avg + avg.conj().T) / 2
    s_avg = _entropy_of_spectrum(np.clip(np.linalg.eigvalsh(avg), 0.0, None))
    s_mean = math.fsum(p * von_neumann_entropy(s) for p, s in code)
    return max(s_avg - s_mean, 0.0)
