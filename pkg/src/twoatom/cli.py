"""Command-line interface: rates, evolve, sweep, events, check.

Output is deterministic byte for byte for a fixed configuration: '#'
metadata lines first (tool version, resolved settings, coupling rates),
then a CSV header, then data rows at 9 significant digits with LF line
endings and no timestamps.

Exit codes: 0 success, 1 check-suite failure, 2 argument or configuration
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import CollectiveParams, collective_rates, time_grid
from .measures import oracle_deviations
from .states import XState
from .sweep import Surface, Trajectory, detect_events, surface, trajectory

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

# short measure keys as accepted by --measures, in canonical column order
MEASURE_KEYS = {
    "c": "concurrence",
    "d": "discord",
    "g": "geometric_discord",
    "obs": "observable_bound",
}
MEASURE_COLUMNS = {"c": "C", "d": "D", "g": "G", "obs": "G_obs"}
KEY_ORDER = ("c", "d", "g", "obs")

DEFAULT_DISTANCE = 0.125
DEFAULT_TMAX = 10.0
DEFAULT_TRAJECTORY_STEPS = 1001
DEFAULT_SWEEP_STEPS = 401
DEFAULT_P_RANGE = (0.0, 1.0, 201)

CONFIG_KEYS = (
    "distance", "p", "p_range", "tmax", "steps", "measures",
    "oracle_check", "output", "figure",
)


def _g9(x) -> str:
    return format(float(x), ".9g")


def _g10(x) -> str:
    return format(float(x), ".10g")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one command invocation."""

    distance: float = DEFAULT_DISTANCE
    p: float | None = None
    p_range: tuple[float, float, int] | None = None
    tmax: float = DEFAULT_TMAX
    steps: int = DEFAULT_TRAJECTORY_STEPS
    measures: tuple[str, ...] = KEY_ORDER
    oracle_check: bool = False
    output: str | None = None
    figure: str | None = None

    def __post_init__(self):
        if self.distance <= 0.0:
            raise ValueError(f"distance must be positive, got {self.distance}")
        if self.tmax <= 0.0:
            raise ValueError(f"tmax must be positive, got {self.tmax}")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.p_range is not None:
            a, b, n = self.p_range
            if not (0.0 <= a < b <= 1.0):
                raise ValueError(f"p-range bounds must satisfy 0 <= a < b <= 1, got {a}:{b}")
            if n < 2:
                raise ValueError(f"p-range needs at least 2 points, got {n}")
        for key in self.measures:
            if key not in MEASURE_KEYS:
                raise ValueError(f"unknown measure key {key!r} (choose from {', '.join(KEY_ORDER)})")

    @property
    def kr(self) -> float:
        return 2.0 * math.pi * self.distance


def parse_measures(text: str) -> tuple[str, ...]:
    keys = [part.strip() for part in text.split(",") if part.strip()]
    if not keys:
        raise ValueError("measure list is empty")
    for key in keys:
        if key not in MEASURE_KEYS:
            raise ValueError(f"unknown measure key {key!r} (choose from {', '.join(KEY_ORDER)})")
    return tuple(k for k in KEY_ORDER if k in set(keys))


def parse_p_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"p-range must look like a:b:n, got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def load_config_file(path: str) -> dict[str, str]:
    """Flat key = value file; '#' comments and blank lines ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        out[key] = value.strip()
    return out


_CASTS = {
    "distance": float,
    "p": float,
    "p_range": parse_p_range,
    "tmax": float,
    "steps": int,
    "measures": parse_measures,
    "oracle_check": parse_bool,
    "output": str,
    "figure": str,
}


def resolve_config(args: argparse.Namespace, defaults: dict) -> RunConfig:
    """Merge CLI flags over config-file values over built-in defaults."""
    file_vals = load_config_file(args.config) if getattr(args, "config", None) else {}
    resolved = {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
        elif key in file_vals:
            resolved[key] = _CASTS[key](file_vals[key])
        elif key in defaults:
            resolved[key] = defaults[key]
    return RunConfig(**resolved)


def _metadata(command: str, cfg: RunConfig, params: CollectiveParams) -> list[str]:
    lines = [
        f"# twoatom {__version__}",
        f"# command: {command}",
        f"# distance: {_g10(cfg.distance)}",
        f"# kr: {_g10(cfg.kr)}",
        f"# gamma12_over_gamma: {_g10(params.gamma12 / params.gamma)}",
        f"# omega12_over_gamma: {_g10(params.omega12 / params.gamma)}",
        f"# tmax: {_g10(cfg.tmax)}",
        f"# steps: {cfg.steps}",
    ]
    if cfg.p is not None:
        lines.append(f"# p: {_g10(cfg.p)}")
    if cfg.p_range is not None:
        a, b, n = cfg.p_range
        lines.append(f"# p_range: {_g10(a)}:{_g10(b)}:{n}")
    lines.append(f"# measures: {','.join(cfg.measures)}")
    lines.append(f"# oracle_check: {'true' if cfg.oracle_check else 'false'}")
    lines.append(f"# output: {cfg.output if cfg.output else 'stdout'}")
    lines.append(f"# figure: {cfg.figure if cfg.figure else 'none'}")
    return lines


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _x_at(traj: Trajectory, i: int) -> XState:
    return XState(
        rho11=float(traj.rho11[i]),
        rho22=float(traj.rho22[i]),
        rho33=float(traj.rho33[i]),
        rho44=float(traj.rho44[i]),
        rho14=complex(traj.rho14[i]),
        rho23=complex(traj.rho23[i]),
    )


def _oracle_lines(traj: Trajectory) -> list[str]:
    """Re-derive sampled rows through the general-path oracles and report
    the worst gap per measure (at most 21 evenly spaced samples)."""
    n = traj.t.size
    idx = np.unique(np.linspace(0, n - 1, min(21, n)).astype(int))
    worst = {"concurrence": 0.0, "discord": 0.0, "geometric_discord": 0.0}
    for i in idx:
        devs = oracle_deviations(_x_at(traj, int(i)).to_matrix())
        for key in worst:
            worst[key] = max(worst[key], devs[key])
    return [
        f"# oracle_deviation_{key}: {worst[key]:.3e} ({idx.size} sampled rows)"
        for key in ("concurrence", "discord", "geometric_discord")
    ]


def cmd_rates(args: argparse.Namespace) -> int:
    cfg = resolve_config(args, {})
    rates = collective_rates(cfg.kr)
    lines = [
        f"gamma12/gamma = {rates.gamma12:.7g}",
        f"omega12/gamma = {rates.omega12:.7g}",
        f"gamma_plus = {1.0 + rates.gamma12:.7g}",
        f"gamma_minus = {1.0 - rates.gamma12:.7g}",
    ]
    _emit("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


def cmd_evolve(args: argparse.Namespace) -> int:
    cfg = resolve_config(args, {"steps": DEFAULT_TRAJECTORY_STEPS})
    if cfg.p is None:
        raise ValueError("evolve needs p (--p or config file)")
    params = CollectiveParams.from_distance(cfg.kr)
    traj = trajectory(cfg.p, params, time_grid(cfg.tmax, cfg.steps))

    lines = _metadata("evolve", cfg, params)
    if cfg.oracle_check:
        lines.extend(_oracle_lines(traj))
    header = ["t"]
    header.extend(MEASURE_COLUMNS[k] for k in cfg.measures)
    header.extend(["rho11", "rho22", "rho33", "rho44", "abs_rho14", "abs_rho23"])
    lines.append(",".join(header))

    columns = [traj.t]
    columns.extend(getattr(traj, MEASURE_KEYS[k]) for k in cfg.measures)
    columns.extend([traj.rho11, traj.rho22, traj.rho33, traj.rho44,
                    np.abs(traj.rho14), np.abs(traj.rho23)])
    for i in range(traj.t.size):
        lines.append(",".join(_g9(col[i]) for col in columns))
    _emit("\n".join(lines) + "\n", cfg.output)

    if cfg.figure is not None:
        from .plots import render_trajectory

        render_trajectory(traj, cfg.figure, [MEASURE_KEYS[k] for k in cfg.measures])
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = resolve_config(args, {"steps": DEFAULT_SWEEP_STEPS,
                                "p_range": DEFAULT_P_RANGE,
                                "measures": ("c",)})
    if len(cfg.measures) != 1:
        raise ValueError("sweep tabulates one measure; pass a single key to --measures")
    params = CollectiveParams.from_distance(cfg.kr)
    a, b, n = cfg.p_range
    surf = surface(MEASURE_KEYS[cfg.measures[0]], np.linspace(a, b, n),
                   params, time_grid(cfg.tmax, cfg.steps))

    lines = _metadata("sweep", cfg, params)
    lines.append("p,t,value")
    for i, p in enumerate(surf.p_values):
        p_txt = _g9(p)
        row = surf.values[i]
        for j, t in enumerate(surf.t):
            lines.append(f"{p_txt},{_g9(t)},{_g9(row[j])}")
    _emit("\n".join(lines) + "\n", cfg.output)

    if cfg.figure is not None:
        from .plots import render_surface

        render_surface(surf, cfg.figure)
    return EXIT_OK


def cmd_events(args: argparse.Namespace) -> int:
    cfg = resolve_config(args, {"steps": DEFAULT_TRAJECTORY_STEPS})
    if cfg.p is None:
        raise ValueError("events needs p (--p or config file)")
    params = CollectiveParams.from_distance(cfg.kr)
    traj = trajectory(cfg.p, params, time_grid(cfg.tmax, cfg.steps))
    report = detect_events(traj)

    lines = _metadata("events", cfg, params)
    for lo, hi in report.zero_intervals:
        lines.append(f"# zero_interval: {_g9(lo)} {_g9(hi)}")
    for t, value, kind in report.discord_extrema:
        lines.append(f"# discord_extremum: {kind} t={_g9(t)} value={_g9(value)}")
    lines.append("event,t")
    rows = [("death", t) for t in report.death_times]
    rows.extend(("birth", t) for t in report.birth_times)
    rows.sort(key=lambda item: item[1])
    for kind, t in rows:
        lines.append(f"{kind},{_g9(t)}")
    _emit("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    from .selfcheck import run_checks

    ok, _ = run_checks()
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoatom",
        description="Dissipative two-atom dynamics and quantum-correlation measures.",
    )
    parser.add_argument("--version", action="version", version=f"twoatom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_output=True):
        p.add_argument("--distance", type=float, default=None,
                       help="separation in wavelengths (default 0.125)")
        p.add_argument("--config", type=str, default=None,
                       help="flat key = value file; flags override it")
        if with_output:
            p.add_argument("--output", type=str, default=None,
                           help="write to this path instead of stdout")

    p_rates = sub.add_parser("rates", help="print the collective coupling rates")
    add_common(p_rates)
    p_rates.set_defaults(func=cmd_rates)

    p_evolve = sub.add_parser("evolve", help="CSV trajectory of measures and X elements")
    add_common(p_evolve)
    p_evolve.add_argument("--p", type=float, default=None, help="initial-state parameter in [0, 1]")
    p_evolve.add_argument("--tmax", type=float, default=None, help="final scaled time (default 10)")
    p_evolve.add_argument("--steps", type=int, default=None, help="grid points (default 1001)")
    p_evolve.add_argument("--measures", type=parse_measures, default=None,
                          help="comma list from c,d,g,obs (default all)")
    p_evolve.add_argument("--oracle-check", dest="oracle_check", action="store_true", default=None,
                          help="re-derive sampled rows through the general paths")
    p_evolve.add_argument("--figure", type=str, default=None,
                          help="also render the trajectory to this image file")
    p_evolve.set_defaults(func=cmd_evolve)

    p_sweep = sub.add_parser("sweep", help="CSV surface of one measure over (p, t)")
    add_common(p_sweep)
    p_sweep.add_argument("--p-range", dest="p_range", type=parse_p_range, default=None,
                         help="a:b:n grid over p (default 0:1:201)")
    p_sweep.add_argument("--tmax", type=float, default=None, help="final scaled time (default 10)")
    p_sweep.add_argument("--steps", type=int, default=None, help="time points (default 401)")
    p_sweep.add_argument("--measures", type=parse_measures, default=None,
                         help="single key from c,d,g,obs (default c)")
    p_sweep.add_argument("--figure", type=str, default=None,
                         help="also render the surface to this image file")
    p_sweep.set_defaults(func=cmd_sweep)

    p_events = sub.add_parser("events", help="CSV of concurrence death/birth times")
    add_common(p_events)
    p_events.add_argument("--p", type=float, default=None, help="initial-state parameter in [0, 1]")
    p_events.add_argument("--tmax", type=float, default=None, help="final scaled time (default 10)")
    p_events.add_argument("--steps", type=int, default=None, help="grid points (default 1001)")
    p_events.set_defaults(func=cmd_events)

    p_check = sub.add_parser("check", help="run the built-in equivalence suites")
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())
