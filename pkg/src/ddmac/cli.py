"""Command-line front end: ``ddmac outage-sweep | coverage-grid | validate``.

Parameters are resolved in the order built-in defaults, then preset, then
``--config`` file (``key=value`` lines), then explicit flags. Average SNRs
are given in dB here and converted to linear scale before anything else
sees them.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .coverage import METHODS, GridSpec, coverage_region
from .dependence import DependenceModel, Family
from .fading import AvgSnrPair, Geometry
from .montecarlo import estimate_outage
from .outage import OutageQuery, outage_probability
from .validate import SUITES, run


def fmt(x) -> str:
    """Shortest decimal, capped at 12 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g")
    if isinstance(x, (list, tuple)):
        return ",".join(fmt(v) for v in x)
    return str(x)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _families(text: str) -> list[str]:
    names = [v.strip() for v in str(text).split(",") if v.strip()]
    for n in names:
        try:
            Family(n)
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown family {n!r}") from None
    return names


def _grid(text: str) -> tuple[int, int]:
    try:
        n1, n2 = (int(v) for v in str(text).lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 50x50, got {text!r}") from None
    return n1, n2


def _choice(options):
    def parse(text):
        if text not in options:
            raise argparse.ArgumentTypeError(f"expected one of {', '.join(options)}, got {text!r}")
        return text
    return parse


@dataclass(frozen=True)
class Param:
    parse: Callable
    default: object
    help: str


COMMON = {
    "alpha": Param(float, 3.5, "path-loss exponent"),
    "d1": Param(float, 1.0, "distance of transmitter 1"),
    "d2": Param(float, 1.0, "distance of transmitter 2"),
    "mu": Param(_floats, [1.0], "ratio gbar2/gbar1, comma list"),
    "gbar1_db": Param(_floats, [10.0], "average SNR of link 1 in dB, comma list"),
    "theta_fgm": Param(_floats, [-1.0, 0.0, 1.0], "FGM parameters, comma list"),
}
SWEEP = {
    "theta_frank": Param(_floats, [-30.0, 30.0], "Frank parameters, comma list"),
    "ro": Param(float, 1.0, "threshold rate in bits/use (fixed when sweeping gbar1_db)"),
    "families": Param(_families, ["lower_fh", "upper_fh", "frank", "fgm"], "families, comma list"),
    "sweep": Param(_choice(("gbar1_db", "ro")), "gbar1_db", "swept variable"),
    "start": Param(float, 0.0, "first sweep value"),
    "stop": Param(float, 30.0, "last sweep value (inclusive)"),
    "step": Param(float, 2.0, "sweep step"),
    "mc": Param(int, 0, "Monte-Carlo samples per point (0 disables)"),
    "seed": Param(int, 0, "Monte-Carlo seed"),
    "workers": Param(int, 1, "threads for Monte-Carlo chunks"),
}
GRID = {
    "grid": Param(_grid, (50, 50), "cells per axis, N1xN2"),
    "method": Param(_choice(METHODS), "exact", "sum-rate evaluator"),
    "target_rate": Param(float, 1.0, "target sum rate in bits/use"),
    "d1_max": Param(float, 3.0, "grid extent along d1"),
    "d2_max": Param(float, 3.0, "grid extent along d2"),
}

PRESETS = {
    "fig2": ("outage-sweep", {
        "alpha": 3.5, "d1": 1.0, "d2": 1.0, "mu": [1.0, 2.0], "ro": 1.0,
        "sweep": "gbar1_db", "start": 0.0, "stop": 30.0, "step": 2.0,
        "families": ["lower_fh", "upper_fh", "frank", "fgm"],
        "theta_fgm": [-1.0, 0.0, 1.0], "theta_frank": [-30.0, 30.0],
    }),
    "fig3": ("outage-sweep", {
        "alpha": 3.5, "d1": 1.0, "d2": 1.0, "mu": [1.0, 2.0], "gbar1_db": [10.0],
        "sweep": "ro", "start": 0.1, "stop": 5.0, "step": 0.1,
        "families": ["lower_fh", "upper_fh", "frank", "fgm"],
        "theta_fgm": [-1.0, 0.0, 1.0], "theta_frank": [-30.0, 30.0],
    }),
    "fig4": ("coverage-grid", {
        "alpha": 3.5, "mu": [1.0], "gbar1_db": [10.0, 20.0], "theta_fgm": [-1.0, 0.0, 1.0],
        "target_rate": 1.0, "d1_max": 3.0, "d2_max": 3.0, "grid": (50, 50), "method": "exact",
    }),
}


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (p.strip() for p in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def resolve(params: dict[str, Param], command: str, args: argparse.Namespace) -> dict:
    """Merge defaults < preset < config file < flags."""
    config = read_config(args.config) if args.config else {}
    preset = args.preset or config.pop("preset", None)
    config.pop("preset", None)
    values = {k: p.default for k, p in params.items()}
    if preset:
        if preset not in PRESETS or PRESETS[preset][0] != command:
            raise ValueError(f"preset {preset!r} does not apply to {command}")
        values.update({k: v for k, v in PRESETS[preset][1].items() if k in params})
    for key, text in config.items():
        if key not in params:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = params[key].parse(text)
    for key in params:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    values["preset"] = preset or ""
    return values


def _add_params(parser: argparse.ArgumentParser, params: dict[str, Param]):
    for key, p in params.items():
        parser.add_argument("--" + key.replace("_", "-"), dest=key, type=p.parse, default=None,
                            help=f"{p.help} (default {fmt(p.default)})")


def _models(families, theta_fgm, theta_frank) -> list[DependenceModel]:
    models = []
    for fam in families:
        if fam == "frank":
            models += [DependenceModel.frank(t) for t in theta_frank]
        elif fam == "fgm":
            models += [DependenceModel.fgm(t) for t in theta_fgm]
        else:
            models.append(DependenceModel(Family(fam)))
    return models


def _column(model: DependenceModel) -> str:
    return model.family.value if model.theta is None else f"{model.family.value}_{fmt(model.theta)}"


def sweep_values(start: float, stop: float, step: float) -> np.ndarray:
    if not step > 0:
        raise ValueError("sweep step must be positive")
    if not start < stop:
        raise ValueError("sweep start must be below stop")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def _header(command: str, values: dict) -> list[str]:
    lines = [f"# ddmac {__version__} {command}"]
    lines += [f"# {k}={fmt(values[k] if k != 'grid' else 'x'.join(map(str, values[k])))}" for k in sorted(values)]
    return lines


def _emit(lines: list[str], rows: list[list], columns: list[str], out: str | None, trailer=()):
    buf = io.StringIO()
    for line in lines:
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    for line in trailer:
        buf.write(line + "\n")
    text = buf.getvalue()
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def outage_table(v: dict) -> tuple[list[str], list[list]]:
    """Rows of the outage sweep: one per (mu, sweep point)."""
    if any(m <= 0 for m in v["mu"]):
        raise ValueError("mu must be positive")
    points = sweep_values(v["start"], v["stop"], v["step"])
    models = _models(v["families"], v["theta_fgm"], v["theta_frank"])
    geom = Geometry(v["d1"], v["d2"], v["alpha"])
    columns = ["mu", "gbar1_db", "ro"] + [f"op_{_column(m)}" for m in models]
    if v["mc"]:
        for m in models:
            columns += [f"mc_{_column(m)}", f"mc_se_{_column(m)}"]
    rows = []
    for mu in v["mu"]:
        for x in points:
            gdb, ro = (x, v["ro"]) if v["sweep"] == "gbar1_db" else (v["gbar1_db"][0], x)
            g1 = float(db_to_linear(gdb))
            snrs = AvgSnrPair(g1, mu * g1)
            q = OutageQuery.from_geometry(geom, ro)
            row = [mu, gdb, ro] + [outage_probability(m, snrs, q) for m in models]
            if v["mc"]:
                for m in models:
                    e = estimate_outage(m, snrs, geom, ro, n=v["mc"], seed=v["seed"], workers=v["workers"])
                    row += [e.mean, e.std_error]
            rows.append(row)
    return columns, rows


def coverage_table(v: dict) -> tuple[list[str], list[list], list[str]]:
    """Long-format coverage rows plus one area summary line per configuration."""
    grid = GridSpec(v["d1_max"], v["d2_max"], *v["grid"])
    columns = ["gbar1_db", "mu", "theta_fgm", "d1", "d2", "sum_rate", "in_region"]
    rows, trailer = [], []
    for gdb in v["gbar1_db"]:
        for mu in v["mu"]:
            g1 = float(db_to_linear(gdb))
            for t in v["theta_fgm"]:
                res = coverage_region(DependenceModel.fgm(t), AvgSnrPair(g1, mu * g1), v["alpha"],
                                      v["target_rate"], grid, v["method"])
                for i, d1 in enumerate(res.d1):
                    for j, d2 in enumerate(res.d2):
                        rows.append([gdb, mu, t, d1, d2, res.rates[i, j], bool(res.inside[i, j])])
                trailer.append(
                    f"# area gbar1_db={fmt(gdb)} mu={fmt(mu)} theta_fgm={fmt(t)} "
                    f"cells={int(res.inside.sum())} area={fmt(res.area)}"
                )
    return columns, rows, trailer


def validate_report(suite: str, seed: int) -> tuple[str, str, bool]:
    """(human text, CSV text, all passed) for a validation suite."""
    checks = run(suite, seed)
    human = io.StringIO()
    machine = io.StringIO()
    w = csv.writer(machine, lineterminator="\n")
    w.writerow(["suite", "check", "measured", "relation", "tolerance", "status"])
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        rel = "<=" if c.relation == "le" else ">="
        human.write(f"{status}  {c.suite:<9} {c.name:<44} {fmt(c.measured):>20} {rel} {fmt(c.tolerance)}\n")
        w.writerow([c.suite, c.name, fmt(c.measured), rel, fmt(c.tolerance), status])
    failed = sum(not c.passed for c in checks)
    human.write(f"{len(checks)} checks, {failed} failed (suite={suite}, seed={seed})\n")
    return human.getvalue(), machine.getvalue(), failed == 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ddmac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p):
        _add_params(p, COMMON)
        p.add_argument("--preset", choices=sorted(PRESETS), default=None)
        p.add_argument("--config", default=None, help="key=value file, overridden by flags")
        p.add_argument("--out", default=None, help="output CSV path (stdout if omitted)")

    p = sub.add_parser("outage-sweep", help="outage probability along a sweep of gbar1 or Ro")
    shared(p)
    _add_params(p, SWEEP)
    p = sub.add_parser("coverage-grid", help="sum rate and coverage region on a distance grid")
    shared(p)
    _add_params(p, GRID)
    p = sub.add_parser("validate", help="run the self-check suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="also write the CSV report here")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "validate":
        human, machine, ok = validate_report(args.suite, args.seed)
        sys.stdout.write(human)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(machine)
        return 0 if ok else 1
    try:
        if args.command == "outage-sweep":
            values = resolve({**COMMON, **SWEEP}, args.command, args)
            columns, rows = outage_table(values)
            trailer = []
        else:
            values = resolve({**COMMON, **GRID}, args.command, args)
            columns, rows, trailer = coverage_table(values)
    except (ValueError, OSError, argparse.ArgumentTypeError) as exc:
        parser.error(str(exc))
    _emit(_header(args.command, values), rows, columns, args.out, trailer)
    return 0


if __name__ == "__main__":
    sys.exit(main())
