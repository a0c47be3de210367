"""Command-line entry point: ``thermocap {heatmap,scatter,jc-times,single}``.

Settings come from built-in defaults, then an optional JSON config file
(``--config``), then command-line flags, later sources winning. Config keys
match the long flag names with dashes replaced by underscores::

    {"temp": "0,0.1,1,inf", "resolution": 51, "seed": 3,
     "source": "0.5,0.5,0", "efficiencies": "0.5,0.9",
     "out": "scan.csv", "format": "csv", "samples": 2000, "workers": 1,
     "tau_max": 2.0, "tau_steps": 4000, "cutoff": null}

List values may also be given as JSON arrays. ``--show-config`` prints the
effective settings and exits.

Exit codes: 0 success, 2 invalid arguments, 3 I/O failure, 4 numerical
invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Any, Dict, List, Optional

from .exceptions import InvalidStateError, NumericalInvariantError
from .scan import ScanSpec, run
from .states import QubitState

log = logging.getLogger("thermocap")

EXIT_OK, EXIT_ARGS, EXIT_IO, EXIT_NUMERICS = 0, 2, 3, 4

JC_TEMPS = ",".join(f"{0.05 * k:.2f}" for k in range(1, 41))

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "common": {
        "resolution": 101,
        "seed": 0,
        "source": None,
        "efficiencies": "0.2,0.5,0.7,0.9,0.95,0.99",
        "out": "-",
        "format": "csv",
        "samples": 2000,
        "workers": 1,
        "tau_max": 2.0,
        "tau_steps": 4000,
        "cutoff": None,
    },
    "heatmap": {"temp": "zero,0.1,1,1.5,2,inf"},
    "scatter": {"temp": "0.1,1,2,inf"},
    "jc-times": {"temp": JC_TEMPS, "source": "0,0,0"},
    "single": {"temp": "1", "format": "text"},
}


class UsageError(ValueError):
    pass


def parse_temperatures(value) -> List[float]:
    items = value if isinstance(value, list) else str(value).split(",")
    out = []
    for item in items:
        token = str(item).strip().lower()
        if token in ("zero", "0"):
            out.append(0.0)
        elif token in ("inf", "infinity"):
            out.append(math.inf)
        else:
            try:
                t = float(token)
            except ValueError:
                raise UsageError(f"bad temperature {item!r}") from None
            if t < 0 or math.isnan(t):
                raise UsageError(f"temperature must be >= 0, got {item!r}")
            out.append(t)
    if not out:
        raise UsageError("no temperatures given")
    return out


def parse_floats(value) -> List[float]:
    items = value if isinstance(value, list) else str(value).split(",")
    try:
        return [float(x) for x in items if str(x).strip()]
    except ValueError:
        raise UsageError(f"bad number list {value!r}") from None


def parse_source(value) -> Optional[QubitState]:
    if value is None:
        return None
    parts = parse_floats(value)
    if len(parts) == 2:
        parts.append(0.0)
    if len(parts) != 3:
        raise UsageError("--source expects r,re(alpha),im(alpha)")
    try:
        return QubitState(parts[0], complex(parts[1], parts[2]))
    except InvalidStateError as exc:
        raise UsageError(f"invalid source state: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermocap", description="Thermal information capacity of qubit memories."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="mode", required=True)
    helps = {
        "heatmap": "capacity and resources over the x>=0 half of the Bloch disk",
        "scatter": "capacity against free energy, purity and coherence for random states",
        "jc-times": "Jaynes-Cummings time to reach given fractions of the capacity",
        "single": "full capacity record for one state",
    }
    for mode, text in helps.items():
        p = sub.add_parser(mode, help=text, description=text)
        p.add_argument("--temp", help="comma list of kT/dE values; tokens zero, inf")
        p.add_argument("--resolution", type=int, help="grid points per axis (heatmap)")
        p.add_argument("--seed", type=int)
        p.add_argument("--source", help="r,re(alpha),im(alpha)")
        p.add_argument("--efficiencies", help="ascending comma list in (0,1] (jc-times)")
        p.add_argument("--out", help="output path, - for stdout")
        p.add_argument("--format", choices=["csv", "json", "text"])
        p.add_argument("--samples", type=int, help="random states per temperature (scatter)")
        p.add_argument("--workers", type=int, help="process pool size")
        p.add_argument("--tau-max", dest="tau_max", type=float)
        p.add_argument("--tau-steps", dest="tau_steps", type=int)
        p.add_argument("--cutoff", type=int, help="bath Fock cutoff (default: automatic)")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--show-config", action="store_true", help="print effective settings and exit")
    return parser


def effective_config(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = dict(DEFAULTS["common"])
    cfg.update(DEFAULTS[args.mode])
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(loaded) - set(cfg) - {"temp"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in list(cfg) + ["temp"]:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def spec_from_config(mode: str, cfg: Dict[str, Any]) -> ScanSpec:
    try:
        return ScanSpec(
            mode=mode,
            temperatures=parse_temperatures(cfg["temp"]),
            bloch_resolution=int(cfg["resolution"]),
            source=parse_source(cfg["source"]),
            output_path=str(cfg["out"]),
            format=str(cfg["format"]),
            seed=int(cfg["seed"]),
            efficiencies=parse_floats(cfg["efficiencies"]),
            samples=int(cfg["samples"]),
            workers=int(cfg["workers"]),
            tau_max=float(cfg["tau_max"]),
            tau_steps=int(cfg["tau_steps"]),
            fock_cutoff=None if cfg["cutoff"] is None else int(cfg["cutoff"]),
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = effective_config(args)
        if args.show_config:
            print(json.dumps({"mode": args.mode, **cfg}, indent=1, sort_keys=True))
            return EXIT_OK
        spec = spec_from_config(args.mode, cfg)
        log.info("running %s over %d temperature(s)", spec.mode, len(spec.temperatures))
        text = run(spec)
        if spec.output_path == "-":
            sys.stdout.write(text)
        else:
            with open(spec.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except NumericalInvariantError as exc:
        print(f"thermocap: numerical invariant violated: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except OSError as exc:
        print(f"thermocap: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError, json.JSONDecodeError) as exc:
        print(f"thermocap: {exc}", file=sys.stderr)
        return EXIT_ARGS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
