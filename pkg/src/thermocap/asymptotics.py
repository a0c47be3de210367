"""Thermodynamic-limit capacity and the type-class code that attains it.

Many copies of a state are converted into energy eigenstate strings whose
letter frequencies follow ``weights``; all orderings of such a string share
one energy, so energy-conserving unitaries spread it over a code of size
multinomial(freqs). The per-copy rate tends to the free energy when the
weights are the Gibbs weights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from .states import LOG2E, ThermalContext, free_energy


def gibbs_weights(energies: Sequence[float]) -> np.ndarray:
    """Normalised Boltzmann weights for dimensionless energies ``beta*E_j``."""
    e = np.asarray(energies, dtype=float)
    w = np.exp(-(e - e.min()))
    return w / w.sum()


def gibbs_matrix(energies: Sequence[float]) -> np.ndarray:
    return np.diag(gibbs_weights(energies)).astype(complex)


def _round_frequencies(weights: np.ndarray, n: int) -> Tuple[int, ...]:
    f = np.rint(n * weights).astype(int)
    f[int(np.argmax(weights))] += n - int(f.sum())
    return tuple(int(x) for x in f)


@dataclass(frozen=True)
class TypeClassCode:
    energies: Tuple[float, ...]
    weights: Tuple[float, ...]
    n: int
    freqs: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        e = tuple(float(x) for x in self.energies)
        w = np.asarray(self.weights, dtype=float)
        if len(e) != len(w):
            raise ValueError("energies and weights differ in length")
        if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
            raise ValueError("weights must be a probability vector")
        if self.n < 1:
            raise ValueError("n must be positive")
        freqs = _round_frequencies(w, int(self.n))
        if min(freqs) < 0 or sum(freqs) < 1:
            raise ValueError(f"invalid frequency vector {freqs}")
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "weights", tuple(float(x) for x in w))
        object.__setattr__(self, "freqs", freqs)

    @classmethod
    def gibbs(cls, energies: Sequence[float], n: int) -> "TypeClassCode":
        return cls(tuple(energies), tuple(gibbs_weights(energies)), n)


def log2_multinomial(freqs: Sequence[int]) -> float:
    """log2 of (sum f)! / prod(f_j!)."""
    f = [int(x) for x in freqs]
    if any(x < 0 for x in f) or sum(f) < 1:
        raise ValueError("frequencies must be nonnegative with a positive total")
    val = math.lgamma(sum(f) + 1) - math.fsum(math.lgamma(x + 1) for x in f)
    return val / math.log(2)


def eigenstate_free_energies(energies: Sequence[float]) -> np.ndarray:
    """S(|E_j><E_j| || gamma) = log2 Z + beta*E_j*log2(e), in bits."""
    e = np.asarray(energies, dtype=float)
    shifted = e - e.min()
    log2_z = math.log2(float(np.sum(np.exp(-shifted))))
    return log2_z + shifted * LOG2E


def copies_consumed(tc: TypeClassCode, source_free_energy: float) -> float:
    """Number of source copies needed to build one eigenstate string."""
    w = np.asarray(tc.weights)
    s = eigenstate_free_energies(tc.energies)
    cost = float(np.sum(w[w > 0] * s[w > 0]))
    return tc.n * cost / source_free_energy


def finite_n_rate(tc: TypeClassCode, source_free_energy: float) -> float:
    """Bits of capacity per consumed source copy at block length ``n``."""
    if not source_free_energy > 0:
        raise ValueError("source free energy must be positive")
    return log2_multinomial(tc.freqs) / copies_consumed(tc, source_free_energy)


def limiting_rate(energies: Sequence[float], weights: Sequence[float], source_free_energy: float) -> float:
    """n -> infinity value of :func:`finite_n_rate`: F * H(w) / sum_j w_j S_j."""
    w = np.asarray(weights, dtype=float)
    s = eigenstate_free_energies(energies)
    nz = w > 0
    entropy = float(-np.sum(w[nz] * np.log2(w[nz])))
    return source_free_energy * entropy / float(np.sum(w[nz] * s[nz]))


def asymptotic_tic(rho, ctx: ThermalContext | None = None, gibbs=None) -> float:
    """Capacity per copy in the many-copy limit: the free energy."""
    return free_energy(rho, ctx, gibbs)
