"""States reachable from a qubit state by thermal operations.

From ``eta[r, alpha]`` the reachable ground populations form the interval
between ``r`` and ``1 - lam*r``; at population ``s`` the coherence magnitude
is bounded by the envelope ``kappa(s)``, which equals ``|alpha|`` at ``s = r``
and vanishes at the tip ``s = 1 - lam*r``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .states import QubitState, ThermalContext

MEMBERSHIP_TOL = 1e-10
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class AccessibleSet:
    source: QubitState
    ctx: ThermalContext

    @property
    def s_lo(self) -> float:
        return min(self.source.r, 1 - self.ctx.lam * self.source.r)

    @property
    def s_hi(self) -> float:
        return max(self.source.r, 1 - self.ctx.lam * self.source.r)

    @property
    def denominator(self) -> float:
        return (self.ctx.lam + 1) * self.source.r - 1

    @property
    def degenerate(self) -> bool:
        """True when the source population equals the Gibbs population.

        The envelope formula is 0/0 there; the set is taken to be the
        dephasing segment ``{eta[g, c*alpha] : -1 <= c <= 1}``.
        """
        return abs(self.denominator) < DEGENERATE_TOL


def accessible_set(source: QubitState, ctx: ThermalContext) -> AccessibleSet:
    return AccessibleSet(source, ctx)


def kappa(aset: AccessibleSet, s):
    """Coherence envelope at ground population ``s`` (scalar or array)."""
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < aset.s_lo - MEMBERSHIP_TOL) or np.any(s_arr > aset.s_hi + MEMBERSHIP_TOL):
        raise ValueError(f"s outside the accessible interval [{aset.s_lo}, {aset.s_hi}]")
    a = aset.source.abs_alpha
    if aset.degenerate:
        out = np.full_like(s_arr, a)
    else:
        lam, r = aset.ctx.lam, aset.source.r
        prod = np.abs((lam * s_arr + r - 1) * (lam * r + s_arr - 1))
        out = a * np.sqrt(prod) / abs(aset.denominator)
    if out.ndim == 0:
        return float(out)
    return out


def tip_state(aset: AccessibleSet) -> QubitState:
    return QubitState(1 - aset.ctx.lam * aset.source.r, 0.0)


def z_conjugate(state: QubitState) -> QubitState:
    return QubitState(state.r, -state.alpha)


def _clamp(aset: AccessibleSet, s: float) -> float:
    return min(max(s, aset.s_lo), aset.s_hi)


def contains(aset: AccessibleSet, candidate: QubitState, tol: float = MEMBERSHIP_TOL) -> bool:
    if not aset.s_lo - tol <= candidate.r <= aset.s_hi + tol:
        return False
    return candidate.abs_alpha <= kappa(aset, _clamp(aset, candidate.r)) + tol


def extremal_state(aset: AccessibleSet, s: float, sign: int = 1) -> QubitState:
    """Boundary point ``eta[s, sign*kappa(s)*e^{i phi0}]``, phi0 the source phase."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    k = kappa(aset, s)
    phase = cmath.exp(1j * cmath.phase(aset.source.alpha)) if aset.source.abs_alpha > 0 else 1.0
    s = _clamp(aset, float(s))
    # guard against rounding pushing |beta|^2 just past s(1-s)
    k = min(k, math.sqrt(max(s * (1 - s), 0.0)))
    return QubitState(s, sign * k * phase)
