"""Parameter scans behind the capacity landscapes, scatter studies and JC timings."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy import stats

from .accessible import accessible_set, tip_state
from .exceptions import NumericalInvariantError
from .jc import JCConfig, times_to_efficiencies
from .solver import tic
from .states import (
    QubitState,
    ThermalContext,
    free_energy,
    holevo_information,
    negentropy,
    relative_entropy_of_coherence,
)

RESOURCES = ("tic", "free_energy", "negentropy", "coherence")
HEATMAP_COLUMNS = ("temp_ratio", "x", "z") + RESOURCES
SCATTER_COLUMNS = ("kind", "temp_ratio", "r", "abs_alpha") + RESOURCES
JC_COLUMNS = ("temp_ratio", "efficiency", "tau_star")
INVARIANT_TOL = 1e-9


@dataclass
class ScanSpec:
    mode: str
    temperatures: List[float]
    bloch_resolution: int = 101
    source: Optional[QubitState] = None
    output_path: str = "-"
    format: str = "csv"
    seed: int = 0
    efficiencies: List[float] = field(default_factory=list)
    samples: int = 2000
    workers: int = 1
    tau_max: float = 2.0
    tau_steps: int = 4000
    fock_cutoff: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("heatmap", "scatter", "jc-times", "single"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not self.temperatures:
            raise ValueError("at least one temperature is required")
        if self.bloch_resolution < 2:
            raise ValueError("bloch_resolution must be >= 2")
        if list(self.efficiencies) != sorted(self.efficiencies):
            raise ValueError("efficiencies must be sorted ascending")
        if any(not 0 < e <= 1 for e in self.efficiencies):
            raise ValueError("efficiencies must lie in (0, 1]")
        if self.format not in ("csv", "json", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.samples < 2:
            raise ValueError("samples must be >= 2")


@dataclass
class Table:
    columns: Sequence[str]
    rows: List[list]


def resources(state: QubitState, ctx: ThermalContext) -> Dict[str, float]:
    """Capacity and the three comparison resources for one state."""
    result = tic(state, ctx)
    row = {
        "tic": result.capacity,
        "free_energy": free_energy(state, ctx),
        "negentropy": negentropy(state),
        "coherence": relative_entropy_of_coherence(state),
    }
    if not -INVARIANT_TOL <= row["tic"] <= 1 + INVARIANT_TOL:
        raise NumericalInvariantError(f"capacity {row['tic']} outside [0, 1] for {state}")
    if row["tic"] > row["free_energy"] + INVARIANT_TOL:
        raise NumericalInvariantError(f"capacity exceeds free energy for {state}")
    return row


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    """Ordered map, optionally over a bounded process pool."""
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def half_disk_grid(resolution: int):
    """(x, z) points of the x >= 0 half of the Bloch disk, x-major order."""
    xs = np.linspace(0.0, 1.0, resolution)
    zs = np.linspace(-1.0, 1.0, resolution)
    return [(float(x), float(z)) for x in xs for z in zs if x * x + z * z <= 1 + 1e-12]


def _heatmap_rows(args):
    temp, resolution = args
    ctx = ThermalContext.from_temp_ratio(temp)
    rows = []
    for x, z in half_disk_grid(resolution):
        # clip so rounding on the rim stays inside the Bloch ball
        xc = min(x, math.sqrt(max(1 - z * z, 0.0)))
        res = resources(QubitState((1 + z) / 2, xc / 2), ctx)
        rows.append([temp, x, z] + [res[k] for k in RESOURCES])
    return rows


def scan_heatmap(spec: ScanSpec) -> Table:
    chunks = _map(_heatmap_rows, [(t, spec.bloch_resolution) for t in spec.temperatures], spec.workers)
    return Table(HEATMAP_COLUMNS, [row for chunk in chunks for row in chunk])


def sample_bloch_ball(rng: np.random.Generator, n: int) -> List[QubitState]:
    """Uniform samples from the Bloch ball by rejection from the cube."""
    out = []
    while len(out) < n:
        v = rng.uniform(-1.0, 1.0, size=3)
        if v @ v <= 1.0:
            out.append(QubitState.from_bloch(*v))
    return out


ANCHORS = {"excited": QubitState(0.0, 0.0), "plus": QubitState(0.5, 0.5)}


def _scatter_rows(args):
    index, temp, seed, samples = args
    ctx = ThermalContext.from_temp_ratio(temp)
    rng = np.random.default_rng([seed, index])
    rows, values = [], []
    for state in sample_bloch_ball(rng, samples):
        res = resources(state, ctx)
        values.append([res[k] for k in RESOURCES])
        rows.append(["sample", temp, state.r, state.abs_alpha] + values[-1])
    for name, state in ANCHORS.items():
        res = resources(state, ctx)
        rows.append([name, temp, state.r, state.abs_alpha] + [res[k] for k in RESOURCES])
    corr = correlations(np.array(values))
    for kind in ("pearson", "spearman"):
        rows.append([kind, temp, None, None, 1.0] + [corr[kind][k] for k in RESOURCES[1:]])
    return rows


def correlations(values: np.ndarray) -> Dict[str, Dict[str, float]]:
    """Pearson and Spearman correlation of capacity with each resource.

    ``values`` has columns ordered as :data:`RESOURCES`.
    """
    out = {"pearson": {}, "spearman": {}}
    cap = values[:, 0]
    for j, name in enumerate(RESOURCES[1:], start=1):
        col = values[:, j]
        finite = np.isfinite(col)
        if finite.sum() < 2 or np.ptp(col[finite]) == 0:
            out["pearson"][name] = math.nan
        else:
            out["pearson"][name] = float(np.corrcoef(cap[finite], col[finite])[0, 1])
        out["spearman"][name] = float(stats.spearmanr(cap, col).statistic)
    return out


def scan_scatter(spec: ScanSpec) -> Table:
    jobs = [(i, t, spec.seed, spec.samples) for i, t in enumerate(spec.temperatures)]
    chunks = _map(_scatter_rows, jobs, spec.workers)
    return Table(SCATTER_COLUMNS, [row for chunk in chunks for row in chunk])


DEFAULT_JC_SOURCE = QubitState(0.0, 0.0)


def _jc_rows(args):
    temp, source, etas, tau_max, tau_steps, cutoff = args
    ctx = ThermalContext.from_temp_ratio(temp)
    cfg = JCConfig(ctx.lam, cutoff, tau_max, tau_steps)
    times = times_to_efficiencies(source, etas, ctx, cfg)
    return [[temp, eta, tau] for eta, tau in zip(etas, times)]


def scan_jc_times(spec: ScanSpec) -> Table:
    source = spec.source or DEFAULT_JC_SOURCE
    jobs = [
        (t, source, list(spec.efficiencies), spec.tau_max, spec.tau_steps, spec.fock_cutoff)
        for t in spec.temperatures
    ]
    chunks = _map(_jc_rows, jobs, spec.workers)
    return Table(JC_COLUMNS, [row for chunk in chunks for row in chunk])


def single(spec: ScanSpec) -> List[Dict[str, Any]]:
    """Full capacity record for ``spec.source`` at each temperature."""
    if spec.source is None:
        raise ValueError("single mode needs a source state")
    records = []
    for temp in spec.temperatures:
        ctx = ThermalContext.from_temp_ratio(temp)
        state = spec.source
        result = tic(state, ctx)
        if abs(holevo_information(result.code) - result.capacity) > INVARIANT_TOL:
            raise NumericalInvariantError("optimal code does not reproduce the capacity")
        aset = accessible_set(state, ctx)
        res = resources(state, ctx)
        records.append(
            {
                "temp_ratio": temp,
                "lambda": ctx.lam,
                "g": ctx.g,
                "source": {"r": state.r, "alpha_re": state.alpha.real, "alpha_im": state.alpha.imag},
                "capacity": result.capacity,
                "s_tilde": result.s_tilde,
                "q_star": result.q_star,
                "code": [
                    {
                        "weight": w,
                        "r": m[0, 0].real,
                        "alpha_re": m[0, 1].real,
                        "alpha_im": m[0, 1].imag,
                    }
                    for w, m in result.code
                ],
                "free_energy": res["free_energy"],
                "negentropy": res["negentropy"],
                "coherence": res["coherence"],
                "accessible_interval": [aset.s_lo, aset.s_hi],
                "tip_r": tip_state(aset).r,
            }
        )
    return records


# -- output -----------------------------------------------------------------


def fmt(value) -> str:
    """12-significant-digit text for numbers; ``none`` for absent values."""
    if value is None:
        return "none"
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    text = f"{v:.12g}"
    return "0" if text == "-0" else text


def _stringify(obj):
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return fmt(obj)


def table_to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def table_to_json(table: Table, mode: str) -> str:
    rows = [dict(zip(table.columns, (fmt(v) for v in row))) for row in table.rows]
    return json.dumps({"mode": mode, "columns": list(table.columns), "rows": rows}, indent=1) + "\n"


def records_to_json(records) -> str:
    return json.dumps({"mode": "single", "records": _stringify(records)}, indent=1) + "\n"


def records_to_csv(records) -> str:
    """Flattened ``temp_ratio,key,value`` rows."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["temp_ratio", "key", "value"])

    def walk(prefix, obj, temp):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else k, v, temp)
        elif isinstance(obj, (list, tuple)):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v, temp)
        else:
            writer.writerow([fmt(temp), prefix, fmt(obj)])

    for rec in records:
        walk("", {k: v for k, v in rec.items() if k != "temp_ratio"}, rec["temp_ratio"])
    return buf.getvalue()


def _fmt_complex(re, im) -> str:
    sign = "-" if im < 0 else "+"
    return f"{fmt(re)} {sign} {fmt(abs(im))}i"


def records_to_text(records) -> str:
    lines = []
    for rec in records:
        src = rec["source"]
        lines.append(
            f"T = {fmt(rec['temp_ratio'])} dE/k  (lambda = {fmt(rec['lambda'])}, g = {fmt(rec['g'])})"
        )
        lines.append(
            f"  source          r = {fmt(src['r'])}, alpha = {_fmt_complex(src['alpha_re'], src['alpha_im'])}"
        )
        lines.append(f"  capacity        {fmt(rec['capacity'])} bits")
        lines.append(f"  s_tilde, q*     {fmt(rec['s_tilde'])}, {fmt(rec['q_star'])}")
        for cw in rec["code"]:
            lines.append(
                f"    codeword  p = {fmt(cw['weight'])}: r = {fmt(cw['r'])}, "
                f"alpha = {_fmt_complex(cw['alpha_re'], cw['alpha_im'])}"
            )
        lo, hi = rec["accessible_interval"]
        lines.append(f"  accessible s    [{fmt(lo)}, {fmt(hi)}], tip r = {fmt(rec['tip_r'])}")
        lines.append(f"  free energy     {fmt(rec['free_energy'])} bits")
        lines.append(f"  negentropy      {fmt(rec['negentropy'])} bits")
        lines.append(f"  coherence       {fmt(rec['coherence'])} bits")
    return "\n".join(lines) + "\n"


def run(spec: ScanSpec) -> str:
    """Execute a scan and render it in ``spec.format``."""
    if spec.mode == "single":
        records = single(spec)
        if spec.format == "json":
            return records_to_json(records)
        if spec.format == "csv":
            return records_to_csv(records)
        return records_to_text(records)
    table = {"heatmap": scan_heatmap, "scatter": scan_scatter, "jc-times": scan_jc_times}[spec.mode](spec)
    if spec.format == "json":
        return table_to_json(table, spec.mode)
    if spec.format == "text":
        raise ValueError("text output is only available for single mode")
    return table_to_csv(table)
