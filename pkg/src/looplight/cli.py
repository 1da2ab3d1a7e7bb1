"""Command-line front end.

    looplight scan         --config FILE --grid a:b:n [--out FILE]
    looplight doppler-scan --config FILE --grid a:b:n [--nodes N]
    looplight lpi          --config FILE --delta41 VALUE [--nodes N]
    looplight verify       --config FILE --grid a:b:n
    looplight preset NAME  [--out FILE] [--save-config FILE]

Any mode accepts ``--preset NAME`` instead of ``--config``.  Detunings are
in the configured units (natural linewidths or rad/s).  Exit codes: 1 for
configuration errors, 2 when every grid point is singular, 3 when
verification fails.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .broadening import DEFAULT_NODES, doppler_average_scan, thermal_quadrature
from .config import Config, ConfigError, config_from_preset, config_to_dict, load_config
from .floquet import SingularGenerator, solve_hierarchy
from .liouvillian import PROBE_COMPONENT, build_liouvillian
from .oracle import steady_harmonics
from .presets import PRESET_NAMES, get_preset
from .propagation import selfphase_report
from .response import ResponseCurve, scan

EXIT_CONFIG = 1
EXIT_SINGULAR = 2
EXIT_VERIFY = 3
VERIFY_TOLERANCE = 1e-3
VERIFY_POINTS = 5
CSV_HEADER = "delta41,re_chi1,im_chi1,re_chi3s,im_chi3s"
MODES = ("scan", "doppler-scan", "lpi", "verify", "preset")


@dataclass(frozen=True)
class RunConfig:
    mode: str
    configPath: Optional[str] = None
    grid: Optional[tuple] = None
    out: Optional[str] = None
    nodes: int = DEFAULT_NODES
    maxOrder: int = 3
    preset: Optional[str] = None
    delta41: Optional[float] = None
    units: Optional[str] = None
    absolute: bool = False
    saveConfig: Optional[str] = None


def parse_grid(text: str) -> tuple:
    """``start:stop:points`` with points >= 1."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("grid must be start:stop:points")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from exc
    if points < 1:
        raise ConfigError("grid needs at least one point")
    if points > 1 and not stop > start:
        raise ConfigError("grid stop must exceed start")
    return start, stop, points


def grid_values(spec: tuple) -> np.ndarray:
    start, stop, points = spec
    return np.array([start]) if points == 1 else np.linspace(start, stop, points)


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.17g}"


def write_curve(curve: ResponseCurve, out) -> None:
    out.write(CSV_HEADER + "\n")
    for d, c1, c3 in zip(curve.grid, curve.chi1, curve.chi3Scaled):
        out.write(",".join(_fmt(v) for v in (d, c1.real, c1.imag, c3.real, c3.imag)) + "\n")


def _emit_curve(curve: ResponseCurve, path: Optional[str]) -> None:
    if path is None:
        write_curve(curve, sys.stdout)
    else:
        with open(path, "w", newline="") as fh:
            write_curve(curve, fh)


def _resolve(rc: RunConfig) -> tuple[Config, Optional[np.ndarray]]:
    """Configuration and default grid from --config or --preset."""
    if rc.preset is not None:
        try:
            pre = get_preset(rc.preset)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from exc
        cfg, grid = config_from_preset(pre), pre.grid
    elif rc.configPath is not None:
        cfg, grid = load_config(rc.configPath), None
    else:
        raise ConfigError("--config or --preset is required")
    if rc.units is not None and rc.units != cfg.units:
        cfg = Config(cfg.system, cfg.probe, rc.units, cfg.medium, cfg.gammaSI)
    if rc.grid is not None:
        grid = grid_values(rc.grid)
    return cfg, grid


def _need_grid(grid):
    if grid is None:
        raise ConfigError("--grid is required")
    return grid


def _need_medium(cfg: Config):
    if cfg.medium is None:
        raise ConfigError("this mode needs a 'medium' section")
    return cfg.medium


def _doppler_curve(cfg: Config, grid, rc: RunConfig) -> ResponseCurve:
    medium = _need_medium(cfg)
    q = thermal_quadrature(medium, rc.nodes)
    return doppler_average_scan(cfg.system, cfg.probe, medium, grid, q, rc.maxOrder,
                                frequencyScale=cfg.frequencyScale, normalized=not rc.absolute)


def _plain_curve(cfg: Config, grid, rc: RunConfig) -> ResponseCurve:
    if rc.absolute:
        return scan(cfg.system, cfg.probe, _need_medium(cfg), grid, rc.maxOrder)
    return scan(cfg.system, cfg.probe, None, grid, rc.maxOrder)


def _finish_curve(curve: ResponseCurve, rc: RunConfig) -> int:
    _emit_curve(curve, rc.out)
    if curve.gaps.all():
        print("error: every grid point hit a singular generator", file=sys.stderr)
        return EXIT_SINGULAR
    return 0


def run_lpi(cfg: Config, rc: RunConfig) -> int:
    if rc.delta41 is None:
        raise ConfigError("--delta41 is required for lpi")
    medium = _need_medium(cfg)
    q = thermal_quadrature(medium, rc.nodes)
    curve = doppler_average_scan(cfg.system, cfg.probe, medium, [rc.delta41], q, rc.maxOrder,
                                 frequencyScale=cfg.frequencyScale, normalized=False)
    if curve.gaps.all():
        print("error: singular generator at the requested detuning", file=sys.stderr)
        return EXIT_SINGULAR
    chi1, chi3 = complex(curve.chi1[0]), complex(curve.chi3Scaled[0])
    report = selfphase_report(chi1, chi3, medium).to_dict()
    report["delta41"] = rc.delta41
    report["chi1"] = [chi1.real, chi1.imag]
    report["chi3Scaled"] = [chi3.real, chi3.imag]
    report["nodes"] = rc.nodes
    text = json.dumps(report, indent=2, sort_keys=True)
    if rc.out is None:
        print(text)
    else:
        with open(rc.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def verify_point(cfg: Config, delta41: float, maxOrder: int = 3) -> float:
    """Relative deviation of the rho41 probe harmonic, hierarchy vs time domain."""
    p = cfg.system.with_(delta41=delta41)
    omega41 = cfg.probe.resolve(p)
    Delta = p.multiphoton_detuning
    s = solve_hierarchy(build_liouvillian(p), Delta, maxOrder, p.loop_phase)
    h = steady_harmonics(p, cfg.probe)
    if Delta == 0:
        ref = s.reconstruct(omega41)[PROBE_COMPONENT]
        got = h[0][PROBE_COMPONENT]
    else:
        ref = s.harmonic_sum(omega41, 1)[PROBE_COMPONENT]
        got = h[1][PROBE_COMPONENT]
    return float(abs(got - ref) / abs(ref))


def run_verify(cfg: Config, grid, rc: RunConfig) -> int:
    grid = _need_grid(grid)
    idx = sorted(set(np.linspace(0, grid.size - 1, min(VERIFY_POINTS, grid.size)).round().astype(int)))
    rows = []
    for i in idx:
        try:
            dev = verify_point(cfg, float(grid[i]), rc.maxOrder)
        except SingularGenerator:
            dev = math.nan
        rows.append({"delta41": float(grid[i]), "relativeDeviation": dev})
    finite = [r["relativeDeviation"] for r in rows if not math.isnan(r["relativeDeviation"])]
    if not finite:
        print(json.dumps({"points": rows}, indent=2))
        return EXIT_SINGULAR
    worst = max(finite)
    print(json.dumps({"points": rows, "maxRelativeDeviation": worst,
                      "tolerance": VERIFY_TOLERANCE}, indent=2))
    return EXIT_VERIFY if worst > VERIFY_TOLERANCE else 0


def run_preset(rc: RunConfig) -> int:
    cfg, grid = _resolve(rc)
    if rc.saveConfig is not None:
        with open(rc.saveConfig, "w") as fh:
            json.dump(config_to_dict(cfg), fh, indent=2)
            fh.write("\n")
    curve = _doppler_curve(cfg, grid, rc) if cfg.medium is not None else _plain_curve(cfg, grid, rc)
    return _finish_curve(curve, rc)


def run(rc: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    if rc.mode not in MODES:
        raise ConfigError(f"unknown mode {rc.mode!r}")
    if rc.maxOrder < 1:
        raise ConfigError("--max-order must be >= 1")
    if rc.nodes < 2 or rc.nodes % 2:
        raise ConfigError("--nodes must be even and >= 2")
    if rc.mode == "preset":
        if rc.preset is None:
            raise ConfigError("preset name required")
        return run_preset(rc)
    cfg, grid = _resolve(rc)
    if rc.mode == "scan":
        return _finish_curve(_plain_curve(cfg, _need_grid(grid), rc), rc)
    if rc.mode == "doppler-scan":
        return _finish_curve(_doppler_curve(cfg, _need_grid(grid), rc), rc)
    if rc.mode == "lpi":
        return run_lpi(cfg, rc)
    return run_verify(cfg, grid, rc)


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="looplight",
                                 description="Probe susceptibilities of a closed-loop double-Lambda medium.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("mode", choices=MODES)
    ap.add_argument("name", nargs="?", help="preset name for the preset mode")
    ap.add_argument("--config", help="JSON configuration file")
    ap.add_argument("--preset", help=f"use a figure parameter set ({', '.join(PRESET_NAMES)})")
    ap.add_argument("--grid", help="probe detuning grid start:stop:points")
    ap.add_argument("--out", help="output file (default stdout)")
    ap.add_argument("--nodes", type=int, default=DEFAULT_NODES, help="velocity quadrature nodes")
    ap.add_argument("--max-order", type=int, default=3, dest="maxOrder")
    ap.add_argument("--delta41", type=float, help="probe detuning for lpi")
    ap.add_argument("--units", choices=("gamma", "si"), help="override the configured units")
    ap.add_argument("--absolute", action="store_true",
                    help="write absolute susceptibilities instead of units of 3/(8 pi^2) lambda^3 N")
    ap.add_argument("--save-config", dest="saveConfig", help="preset mode: also write its JSON config")
    return ap


# options whose values may start with '-' (negative detunings)
_SIGNED_OPTIONS = ("--grid", "--delta41")


def _join_signed(argv: list) -> list:
    """Rewrite ``--grid -40:-10:31`` as ``--grid=-40:-10:31`` for argparse."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _SIGNED_OPTIONS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(_join_signed(list(sys.argv[1:] if argv is None else argv)))
    preset = args.preset
    if args.mode == "preset":
        preset = args.name or args.preset
    elif args.name is not None:
        ap.error("positional name is only used by the preset mode")
    try:
        rc = RunConfig(mode=args.mode, configPath=args.config,
                       grid=parse_grid(args.grid) if args.grid else None,
                       out=args.out, nodes=args.nodes, maxOrder=args.maxOrder,
                       preset=preset, delta41=args.delta41, units=args.units,
                       absolute=args.absolute, saveConfig=args.saveConfig)
        return run(rc)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
