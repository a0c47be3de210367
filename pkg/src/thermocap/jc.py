"""Resonant Jaynes-Cummings coupling of the memory to a thermal bosonic mode.

Interaction picture with hbar = 1 and dimensionless time ``tau = Omega*t``.
The pair ``|0, n+1>, |1, n>`` rotates at angle ``sqrt(n+1)*tau`` and
``|0, 0>`` is stationary, so the reduced memory state has a closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .accessible import z_conjugate
from .solver import PRESCAN_POINTS, maximize_scalar, tic
from .states import QubitState, ThermalContext, binary_entropy, qubit_entropy, von_neumann_entropy

TAIL_TOL = 1e-10
BISECT_TOL = 1e-6
# golden-section refinement gains orders of magnitude less than this over
# the q pre-scan, so no first crossing is skipped
SCREEN_SLACK = 1e-4


def default_cutoff(lam: float, tail_tol: float = TAIL_TOL) -> int:
    """Smallest N >= 1 with lam**(N+1) < tail_tol."""
    if lam <= 0:
        return 1
    if lam >= 1:
        raise ValueError("bath at lambda = 1 has no normalisable thermal state")
    n = math.ceil(math.log(tail_tol) / math.log(lam)) - 1
    while lam ** (n + 1) >= tail_tol:
        n += 1
    return max(n, 1)


@dataclass(frozen=True)
class JCConfig:
    lam: float
    fock_cutoff: Optional[int] = None
    tau_max: float = 2.0
    tau_steps: int = 4000

    def __post_init__(self):
        if not 0.0 <= self.lam < 1.0:
            raise ValueError(f"bath lambda must lie in [0, 1), got {self.lam}")
        if self.fock_cutoff is None:
            object.__setattr__(self, "fock_cutoff", default_cutoff(self.lam))
        if self.fock_cutoff < 1:
            raise ValueError("fock_cutoff must be positive")
        if not self.tau_max > 0 or self.tau_steps < 1:
            raise ValueError("need tau_max > 0 and tau_steps >= 1")

    @property
    def cutoff_adequate(self) -> bool:
        return self.lam ** (self.fock_cutoff + 1) < TAIL_TOL

    @property
    def taus(self) -> np.ndarray:
        return np.linspace(0.0, self.tau_max, self.tau_steps + 1)


def bath_weights(lam: float, cutoff: int) -> np.ndarray:
    """Thermal occupation of Fock levels 0..cutoff, renormalised."""
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"bath lambda must lie in [0, 1), got {lam}")
    w = (1 - lam) * np.power(float(lam), np.arange(cutoff + 1))
    return w / w.sum()


def _evolve(r: float, alpha: complex, taus, weights: np.ndarray):
    taus = np.asarray(taus, dtype=float)
    n = np.arange(len(weights))
    # cos/sin of the angle that mixes |0,n> and |1,n> with their partners
    c_n = np.cos(np.sqrt(n)[None, :] * taus[..., None])
    c_n1 = np.cos(np.sqrt(n + 1)[None, :] * taus[..., None])
    s_n1 = np.sin(np.sqrt(n + 1)[None, :] * taus[..., None])
    r_new = (weights * (r * c_n**2 + (1 - r) * s_n1**2)).sum(axis=-1)
    a_new = alpha * (weights * c_n * c_n1).sum(axis=-1)
    return r_new.reshape(taus.shape), a_new.reshape(taus.shape)


def _check(cfg: JCConfig):
    if not cfg.cutoff_adequate:
        raise ValueError(
            f"fock_cutoff={cfg.fock_cutoff} too small for lambda={cfg.lam}: "
            f"tail weight {cfg.lam ** (cfg.fock_cutoff + 1):.2e} >= {TAIL_TOL}"
        )


def evolve_reduced(source: QubitState, tau: float, cfg: JCConfig) -> QubitState:
    """Memory state after coupling to the bath for time ``tau``."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    _check(cfg)
    r, a = _evolve(source.r, source.alpha, tau, bath_weights(cfg.lam, cfg.fock_cutoff))
    return QubitState(float(r), complex(a))


def evolve_reduced_dense(source: QubitState, tau: float, lam: float, cutoff: int) -> QubitState:
    """Same evolution by exponentiating the joint Hamiltonian.

    The bath space keeps one level beyond ``cutoff`` so every occupied
    excitation manifold is complete.
    """
    dim_b = cutoff + 2
    b = np.diag(np.sqrt(np.arange(1, dim_b)), k=1)
    lower = np.array([[0, 0], [1, 0]], dtype=complex)  # |1><0|
    h = np.kron(lower, b) + np.kron(lower.conj().T, b.conj().T)
    u = scipy.linalg.expm(-1j * tau * h)
    w = np.zeros(dim_b)
    w[: cutoff + 1] = bath_weights(lam, cutoff)
    joint = np.kron(source.matrix(), np.diag(w))
    out = u @ joint @ u.conj().T
    reduced = np.einsum("ajbj->ab", out.reshape(2, dim_b, 2, dim_b))
    return QubitState(reduced[0, 0].real, reduced[0, 1])


def _capacity(source: QubitState, r_new: float, a_new: complex) -> float:
    r, s_src = source.r, von_neumann_entropy(source)
    s_new = float(qubit_entropy(r_new, abs(a_new)))

    def chi(q):
        return binary_entropy(np.clip(q * r + (1 - q) * r_new, 0.0, 1.0)) - (
            q * s_src + (1 - q) * s_new
        )

    def chi_scalar(q):
        return binary_entropy(min(max(q * r + (1 - q) * r_new, 0.0), 1.0)) - (
            q * s_src + (1 - q) * s_new
        )

    _, value = maximize_scalar(chi, 0.0, 1.0, chi_scalar)
    return max(value, 0.0)


def _screen_capacity(source: QubitState, r_grid: np.ndarray, a_grid: np.ndarray, chunk: int = 256) -> np.ndarray:
    """Pre-scan values of the achieved capacity on a whole time grid.

    Each entry is the best value over the optimiser's q pre-scan grid, so it
    is a lower bound that the golden-section stage improves only slightly.
    """
    r, s_src = source.r, von_neumann_entropy(source)
    s_grid = qubit_entropy(r_grid, np.abs(a_grid))
    q = np.linspace(0.0, 1.0, PRESCAN_POINTS)[None, :]
    out = np.empty(len(r_grid))
    for start in range(0, len(r_grid), chunk):
        rn = r_grid[start : start + chunk, None]
        sn = s_grid[start : start + chunk, None]
        chi = binary_entropy(np.clip(q * r + (1 - q) * rn, 0.0, 1.0)) - (q * s_src + (1 - q) * sn)
        out[start : start + chunk] = chi.max(axis=1)
    return out


def achieved_capacity(source: QubitState, tau: float, ctx: ThermalContext, cfg: JCConfig) -> float:
    """Best Holevo information of {rho, Z rho Z, rho(tau), Z rho(tau) Z}."""
    if abs(ctx.lam - cfg.lam) > 1e-12:
        raise ValueError("memory and bath temperatures differ")
    evolved = evolve_reduced(source, tau, cfg)
    return _capacity(source, evolved.r, evolved.alpha)


def achieved_code(source: QubitState, tau: float, q: float, cfg: JCConfig):
    """Codewords and weights of the achieved code for a given pair weight ``q``."""
    evolved = evolve_reduced(source, tau, cfg)
    return [
        (q / 2, source),
        (q / 2, z_conjugate(source)),
        ((1 - q) / 2, evolved),
        ((1 - q) / 2, z_conjugate(evolved)),
    ]


def times_to_efficiencies(
    source: QubitState,
    etas: Sequence[float],
    ctx: ThermalContext,
    cfg: JCConfig,
) -> list:
    """First time the achieved capacity reaches ``eta * tic`` for each ``eta``.

    Scans the uniform grid of ``cfg`` and bisects inside the bracketing step
    to ``BISECT_TOL``. Entries are None when the target is never reached on
    ``[0, tau_max]``.
    """
    if abs(ctx.lam - cfg.lam) > 1e-12:
        raise ValueError("memory and bath temperatures differ")
    for eta in etas:
        if not 0 < eta <= 1:
            raise ValueError(f"efficiency {eta} outside (0, 1]")
    _check(cfg)
    weights = bath_weights(cfg.lam, cfg.fock_cutoff)
    taus = cfg.taus
    r_grid, a_grid = _evolve(source.r, source.alpha, taus, weights)
    optimum = tic(source, ctx).capacity
    screened = _screen_capacity(source, r_grid, a_grid)
    cache = {}

    def cap_at(k):
        if k not in cache:
            cache[k] = _capacity(source, float(r_grid[k]), complex(a_grid[k]))
        return cache[k]

    def cap_tau(t):
        r, a = _evolve(source.r, source.alpha, t, weights)
        return _capacity(source, float(r), complex(a))

    results = []
    for eta in etas:
        target = eta * optimum
        candidates = np.flatnonzero(screened >= target - SCREEN_SLACK)
        hit = next((int(k) for k in candidates if cap_at(int(k)) >= target), None)
        if hit is None:
            results.append(None)
            continue
        if hit == 0:
            results.append(0.0)
            continue
        lo, hi = taus[hit - 1], taus[hit]
        while hi - lo > BISECT_TOL:
            mid = (lo + hi) / 2
            if cap_tau(mid) >= target:
                hi = mid
            else:
                lo = mid
        results.append(float(hi))
    return results


def time_to_efficiency(source: QubitState, eta: float, ctx: ThermalContext, cfg: JCConfig) -> Optional[float]:
    return times_to_efficiencies(source, [eta], ctx, cfg)[0]
