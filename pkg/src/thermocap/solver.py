"""Exact qubit thermal information capacity, plus a brute-force oracle.

An optimal code mixes the source, its Z-reflection and the tip of the
accessible set. With ``sbar`` the average ground population of the code the
capacity is ``max_sbar h(sbar) - xi(sbar)``, where ``xi`` interpolates the
codeword entropies linearly between the interval endpoints.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .accessible import AccessibleSet, accessible_set, kappa, tip_state, z_conjugate
from .states import (
    Code,
    QubitState,
    ThermalContext,
    binary_entropy,
    gibbs_state,
    qubit_entropy,
    von_neumann_entropy,
)

PRESCAN_POINTS = 2001
GOLDEN_TOL = 1e-10
_INV_PHI = (math.sqrt(5) - 1) / 2


class DegenerateSourceError(ValueError):
    """The source population equals the Gibbs population (r = g)."""


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = GOLDEN_TOL):
    """Maximise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def maximize_scalar(
    f: Callable,
    lo: float,
    hi: float,
    f_scalar: Callable[[float], float] | None = None,
    n: int = PRESCAN_POINTS,
    tol: float = GOLDEN_TOL,
):
    """Dense pre-scan to bracket the maximum, then golden-section refinement.

    ``f`` must accept numpy arrays; ``f_scalar``, if given, is the same
    function on floats and is used for the refinement. Ties resolve to the
    smallest argument.
    """
    if f_scalar is None:
        f_scalar = lambda t: float(f(np.array([t]))[0])  # noqa: E731
    if hi - lo <= 0:
        return lo, float(f(np.array([lo]))[0])
    grid = np.linspace(lo, hi, n)
    vals = f(grid)
    i = int(np.argmax(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, n - 1)]
    x, fx = golden_section_max(f_scalar, a, b, tol)
    if vals[i] >= fx:
        return float(grid[i]), float(vals[i])
    return x, fx


def q_of_sbar(sbar, r: float, lam: float):
    """Weight on the source pair that gives average population ``sbar``."""
    den = (1 + lam) * r - 1
    if abs(den) < 1e-12:
        raise DegenerateSourceError("q is undefined when r equals the Gibbs population")
    q = (np.asarray(sbar, dtype=float) + lam * r - 1) / den
    # round-off in the numerator is amplified by 1/den near r = g
    tol = 1e-12 / min(abs(den), 1.0)
    if np.any(q < -tol) or np.any(q > 1 + tol):
        raise ValueError("sbar outside the accessible interval")
    q = np.clip(q, 0.0, 1.0)
    if q.ndim == 0:
        return float(q)
    return q


def xi(sbar, source: QubitState, ctx: ThermalContext):
    """Least average codeword entropy at average population ``sbar``."""
    q = q_of_sbar(sbar, source.r, ctx.lam)
    s_src = von_neumann_entropy(source)
    s_tip = binary_entropy(1 - ctx.lam * source.r)
    return q * s_src + (1 - q) * s_tip


@dataclass(frozen=True)
class TICResult:
    capacity: float
    s_tilde: float
    q_star: float
    code: Code


def _paired_code(q: float, source: QubitState, tip: QubitState) -> Code:
    entries = [
        (q / 2, source.matrix()),
        (q / 2, z_conjugate(source).matrix()),
        (1 - q, tip.matrix()),
    ]
    return Code.from_pairs((p, s) for p, s in entries if p > 0)


def tic(source: QubitState, ctx: ThermalContext) -> TICResult:
    """Thermal information capacity of a qubit ``source`` in bits."""
    aset = accessible_set(source, ctx)
    if aset.degenerate:
        g = ctx.g
        if source.abs_alpha < 1e-12:
            return TICResult(0.0, g, 1.0, Code.from_pairs([(1.0, gibbs_state(ctx).matrix())]))
        code = _paired_code(1.0, source, source)
        cap = max(binary_entropy(g) - von_neumann_entropy(source), 0.0)
        return TICResult(cap, g, 1.0, code)

    r, lam = source.r, ctx.lam
    s_src = von_neumann_entropy(source)
    tip = tip_state(aset)
    s_tip = binary_entropy(tip.r)
    den = aset.denominator

    def objective(sbar):
        q = np.clip((sbar + lam * r - 1) / den, 0.0, 1.0)
        return binary_entropy(np.clip(sbar, 0.0, 1.0)) - (q * s_src + (1 - q) * s_tip)

    def objective_scalar(sbar):
        q = min(max((sbar + lam * r - 1) / den, 0.0), 1.0)
        return binary_entropy(min(max(sbar, 0.0), 1.0)) - (q * s_src + (1 - q) * s_tip)

    s_tilde, cap = maximize_scalar(objective, aset.s_lo, aset.s_hi, objective_scalar)
    q = q_of_sbar(s_tilde, r, lam)
    return TICResult(max(cap, 0.0), s_tilde, q, _paired_code(q, source, tip))


def _entropy_2x2(a, b_re, b_im):
    """Entropy of ``[[a, b], [b*, 1-a]]`` on broadcast arrays."""
    return qubit_entropy(np.clip(a, 0.0, 1.0), np.hypot(b_re, b_im))


def oracle_tic(
    source: QubitState,
    ctx: ThermalContext,
    grid_n: int = 201,
    asym_n: int = 41,
    triple_n: int = 4,
) -> float:
    """Brute-force TIC over codes drawn from the discretised boundary.

    Every candidate code is scored with the full Holevo formula on 2x2
    matrices. Families searched:

    * two populations ``s_i, s_j`` from a ``grid_n`` grid, each carried by a
      symmetric +/- boundary pair, mixed with weights on a ``1/grid_n`` grid;
    * two arbitrary boundary points (either sign) on an ``asym_n`` sub-grid,
      weights on a ``1/grid_n`` grid;
    * three arbitrary boundary points on a ``triple_n`` sub-grid, weights on
      the ``1/grid_n`` simplex.
    """
    if grid_n < 3:
        raise ValueError("grid_n must be >= 3")
    aset = accessible_set(source, ctx)
    if aset.s_hi - aset.s_lo < 1e-12:
        # dephasing segment: only +/- source coherence at s = g
        s = np.array([source.r])
    else:
        s = np.linspace(aset.s_lo, aset.s_hi, grid_n)
    k = np.asarray(kappa(aset, s), dtype=float).reshape(s.shape)
    ent = qubit_entropy(s, k)
    p = np.linspace(0.0, 1.0, grid_n + 1)
    best = 0.0

    # symmetric pairs at s_i and s_j: members carry opposite coherence, so
    # the code average is diagonal
    for i in range(len(s)):
        sj, ej = s[i:], ent[i:]
        pp = p[:, None]
        a = pp * s[i] + (1 - pp) * sj[None, :]
        chi = _entropy_2x2(a, 0.0, 0.0) - (pp * ent[i] + (1 - pp) * ej[None, :])
        best = max(best, float(chi.max()))

    def boundary_points(m):
        idx = np.unique(np.linspace(0, len(s) - 1, min(m, len(s))).round().astype(int))
        ss = np.concatenate([s[idx], s[idx]])
        bb = np.concatenate([k[idx], -k[idx]])
        return ss, bb, qubit_entropy(ss, np.abs(bb))

    # arbitrary two-point codes
    ss, bb, ee = boundary_points(asym_n)
    pp = p[:, None, None]
    a = pp * ss[None, :, None] + (1 - pp) * ss[None, None, :]
    b = pp * bb[None, :, None] + (1 - pp) * bb[None, None, :]
    chi = _entropy_2x2(a, b, 0.0) - (pp * ee[None, :, None] + (1 - pp) * ee[None, None, :])
    best = max(best, float(chi.max()))

    # arbitrary three-point codes on the weight simplex
    ss, bb, ee = boundary_points(triple_n)
    w1, w2 = np.meshgrid(p, p, indexing="ij")
    keep = w1 + w2 <= 1 + 1e-12
    w1, w2 = w1[keep], w2[keep]
    w3 = np.clip(1 - w1 - w2, 0.0, 1.0)
    for i, j, l in itertools.combinations(range(len(ss)), 3):
        a = w1 * ss[i] + w2 * ss[j] + w3 * ss[l]
        b = w1 * bb[i] + w2 * bb[j] + w3 * bb[l]
        chi = _entropy_2x2(a, b, 0.0) - (w1 * ee[i] + w2 * ee[j] + w3 * ee[l])
        best = max(best, float(chi.max()))
    return best
