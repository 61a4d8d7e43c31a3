"""CSV-emitting command line for the qutrit-pair dephasing sweeps.

Five subcommands cover the standard plots:

    evolve          time sweep of mutual information / classical / discord
    surface         long-time classical correlations over (theta, phi)
    stationary-map  long-time classical correlations over mixture weights
    compare         optimized vs fixed pointer-basis classical correlations
    pfactor         the elementary coherence factor P(t)

Output is UTF-8 CSV with LF line endings and 9-significant-digit floats,
byte-identical across runs and across worker counts. Time-point rows are
farmed out to a process pool sized by the QORREL_WORKERS environment
variable (default: all cores); results are gathered in index order.

Exit codes: 0 success, 2 bad usage or config, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from qorrel.correlations import (
    GRID_CHI,
    GRID_PHI,
    GRID_THETA,
    MeasurementAngles,
    _angle_grid,
    _classical_search,
    conditional_entropy,
    discord,
)
from qorrel.dynamics import RatePoleError, ReservoirParams, decoherence_factor, evolve, evolve_markovian
from qorrel.linalg import InvalidStateError, partial_trace_B, von_neumann_entropy
from qorrel.states import MixtureWeights, initial_state
from qorrel.stationary import stationary_classical_at, stationary_map_batch

__all__ = [
    "ConfigError",
    "SweepConfig",
    "run_evolve",
    "run_surface",
    "run_stationary_map",
    "run_compare",
    "run_pfactor",
    "main",
]

EVOLVE_HEADER = "Gamma_t,mutual_information,classical,discord,argmax_theta,argmax_phi,status"
SURFACE_HEADER = "theta,phi,f"
STATIONARY_MAP_HEADER = "p0,p1,C_infinity"
COMPARE_HEADER = "Gamma_t,C_optimized,C_pointer_basis,status"
PFACTOR_HEADER = "Gamma_t,P"

WORKERS_ENV = "QORREL_WORKERS"
# Weight-grid rows are batched in fixed-size blocks so the emitted bytes do
# not depend on how many workers happened to run them.
_MAP_BLOCK = 1024

_POINTER_ANGLES = MeasurementAngles(0.0, 0.0, 0.0, 0.0)


class ConfigError(Exception):
    """Bad flag, config-file entry, or parameter combination."""


@dataclass(frozen=True)
class SweepConfig:
    """Fully resolved parameters of one CLI run."""

    command: str
    weights: MixtureWeights
    gamma_over_Gamma: float = 1.0
    t_max: float = 10.0
    t_points: int = 201
    grid: int = 201
    markovian: bool = False
    out: str | None = None

    def __post_init__(self) -> None:
        if not self.gamma_over_Gamma > 0.0:
            raise ConfigError(f"gamma-ratio must be positive, got {self.gamma_over_Gamma}")
        if not self.t_max > 0.0:
            raise ConfigError(f"tmax must be positive, got {self.t_max}")
        if self.t_points < 2:
            raise ConfigError(f"tpoints must be at least 2, got {self.t_points}")
        if self.grid < 11:
            raise ConfigError(f"grid must be at least 11, got {self.grid}")


def _fmt(x) -> str:
    # +0.0 turns a signed negative zero into plain 0.
    return format(float(x) + 0.0, ".9g")


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{WORKERS_ENV}={raw!r} is not an integer") from exc
    if n < 1:
        raise ConfigError(f"{WORKERS_ENV} must be >= 1, got {n}")
    return n


def _pmap(fn, items):
    """Order-preserving map over a process pool; serial when it cannot help."""
    items = list(items)
    workers = _worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    # Build the shared measurement-basis grid before forking so every worker
    # inherits the cache instead of rebuilding it.
    _angle_grid(GRID_THETA, GRID_PHI, GRID_CHI)
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _evolved_state(t: float, p: tuple, ratio: float, markovian: bool) -> np.ndarray:
    rho0 = initial_state(MixtureWeights(*p))
    if markovian:
        return evolve_markovian(rho0, 1.0, 1.0, t)
    res = ReservoirParams(1.0, ratio)
    return evolve(rho0, res, res, t)


def _evolve_row(args):
    t, p, ratio, markovian = args
    result = discord(_evolved_state(t, p, ratio, markovian))
    return (
        t,
        result.mutual_information,
        result.classical,
        result.discord,
        result.argmax.theta,
        result.argmax.phi,
        "ok" if result.converged else "unconverged",
    )


def _compare_row(args):
    t, p, ratio, markovian = args
    rho = _evolved_state(t, p, ratio, markovian)
    c_opt, _, _, converged = _classical_search(rho)
    s_a = von_neumann_entropy(partial_trace_B(rho))
    c_pointer = s_a - conditional_entropy(rho, _POINTER_ANGLES)
    return (t, c_opt, c_pointer, "ok" if converged else "unconverged")


def _time_grid(cfg: SweepConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.t_max, cfg.t_points)


def run_evolve(cfg: SweepConfig) -> list[str]:
    """Correlation dynamics sweep; one row per time point."""
    p = cfg.weights.as_array()
    work = [(float(t), tuple(p), cfg.gamma_over_Gamma, cfg.markovian) for t in _time_grid(cfg)]
    lines = [EVOLVE_HEADER]
    for t, mi, c, d, th, ph, status in _pmap(_evolve_row, work):
        lines.append(
            f"{_fmt(t)},{_fmt(mi)},{_fmt(c)},{_fmt(d)},{_fmt(th)},{_fmt(ph)},{status}"
        )
    return lines


def run_compare(cfg: SweepConfig) -> list[str]:
    """Optimized vs pointer-basis classical correlations per time point."""
    p = cfg.weights.as_array()
    work = [(float(t), tuple(p), cfg.gamma_over_Gamma, cfg.markovian) for t in _time_grid(cfg)]
    lines = [COMPARE_HEADER]
    for t, c_opt, c_pointer, status in _pmap(_compare_row, work):
        lines.append(f"{_fmt(t)},{_fmt(c_opt)},{_fmt(c_pointer)},{status}")
    return lines


def run_surface(cfg: SweepConfig) -> list[str]:
    """Long-time classical-correlation surface over the angle square."""
    axis = np.linspace(0.0, 0.5 * np.pi, cfg.grid)
    th, ph = np.meshgrid(axis, axis, indexing="ij")
    f = stationary_classical_at(cfg.weights, th, ph)
    lines = [SURFACE_HEADER]
    for t, p, v in zip(th.ravel(), ph.ravel(), np.ravel(f)):
        lines.append(f"{_fmt(t)},{_fmt(p)},{_fmt(v)}")
    return lines


def run_stationary_map(cfg: SweepConfig) -> list[str]:
    """Long-time classical correlations over the weight simplex."""
    axis = np.linspace(0.0, 1.0, cfg.grid)
    pairs = [
        (float(a), float(b)) for a in axis for b in axis if a + b <= 1.0 + 1e-12
    ]
    rows = np.array([[a, b, max(1.0 - a - b, 0.0)] for a, b in pairs])
    blocks = [rows[lo : lo + _MAP_BLOCK] for lo in range(0, len(rows), _MAP_BLOCK)]
    values = np.concatenate(_pmap(stationary_map_batch, blocks))
    lines = [STATIONARY_MAP_HEADER]
    for (a, b), v in zip(pairs, values):
        lines.append(f"{_fmt(a)},{_fmt(b)},{_fmt(v)}")
    return lines


def run_pfactor(cfg: SweepConfig) -> list[str]:
    """Elementary coherence factor P(t) along the time grid."""
    res = ReservoirParams(1.0, cfg.gamma_over_Gamma)
    t = _time_grid(cfg)
    p = np.asarray(decoherence_factor(res, t))
    lines = [PFACTOR_HEADER]
    for ti, pi in zip(t, p):
        lines.append(f"{_fmt(ti)},{_fmt(pi)}")
    return lines


_RUNNERS = {
    "evolve": run_evolve,
    "surface": run_surface,
    "stationary-map": run_stationary_map,
    "compare": run_compare,
    "pfactor": run_pfactor,
}

_DEFAULT_WEIGHTS = {
    "evolve": (0.3, 0.1, 0.6),
    "surface": (0.3, 0.1, 0.6),
    "stationary-map": (0.3, 0.1, 0.6),
    "compare": (0.3, 0.6, 0.1),
    "pfactor": (0.3, 0.1, 0.6),
}

_CONFIG_PARSERS = {
    "p0": float,
    "p1": float,
    "p2": float,
    "gamma_ratio": float,
    "tmax": float,
    "tpoints": int,
    "grid": int,
    "out": str,
}


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"cannot read {raw!r} as a boolean")


def _read_config_file(path: str) -> dict:
    """Plain key=value lines; blank lines and # comments skipped."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "markovian":
            values[key] = _parse_bool(value)
            continue
        if key not in _CONFIG_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qorrel",
        description="Correlation dynamics of two qutrits under independent dephasing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, runner in _RUNNERS.items():
        cmd = sub.add_parser(name, help=runner.__doc__.splitlines()[0].lower().rstrip("."))
        cmd.add_argument("--p0", type=float, default=None, help="weight of the first entangled vector")
        cmd.add_argument("--p1", type=float, default=None, help="weight of the second entangled vector")
        cmd.add_argument("--p2", type=float, default=None, help="weight of the third entangled vector")
        cmd.add_argument("--gamma-ratio", type=float, default=None, dest="gamma_ratio",
                         help="reservoir memory rate over coupling rate (gamma/Gamma)")
        cmd.add_argument("--markovian", action="store_true", default=None,
                         help="use the memoryless exponential dephasing factor")
        cmd.add_argument("--tmax", type=float, default=None, help="sweep end in Gamma*t units")
        cmd.add_argument("--tpoints", type=int, default=None, help="number of time samples")
        cmd.add_argument("--grid", type=int, default=None, help="angle/weight grid resolution")
        cmd.add_argument("--out", type=str, default=None, help="CSV output path (default stdout)")
        cmd.add_argument("--config", type=str, default=None, help="key=value config file; flags override")
    return parser


def _resolve_config(args: argparse.Namespace) -> SweepConfig:
    settings = {
        "p0": None,
        "p1": None,
        "p2": None,
        "gamma_ratio": 1.0,
        "markovian": False,
        "tmax": 10.0,
        "tpoints": 201,
        "grid": 201,
        "out": None,
    }
    if args.config is not None:
        settings.update(_read_config_file(args.config))
    for key in ("p0", "p1", "p2", "gamma_ratio", "markovian", "tmax", "tpoints", "grid", "out"):
        flag = getattr(args, key)
        if flag is not None:
            settings[key] = flag

    defaults = _DEFAULT_WEIGHTS[args.command]
    given = [settings["p0"], settings["p1"], settings["p2"]]
    if any(v is not None for v in given) and not all(v is not None for v in given):
        raise ConfigError("give all three of --p0 --p1 --p2 or none")
    p = tuple(float(v) for v in given) if given[0] is not None else defaults
    try:
        weights = MixtureWeights.normalized(*p)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    return SweepConfig(
        command=args.command,
        weights=weights,
        gamma_over_Gamma=float(settings["gamma_ratio"]),
        t_max=float(settings["tmax"]),
        t_points=int(settings["tpoints"]),
        grid=int(settings["grid"]),
        markovian=bool(settings["markovian"]),
        out=settings["out"],
    )


def _write(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ConfigError):
        return 2
    if isinstance(exc, (InvalidStateError, RatePoleError, ValueError, ArithmeticError)):
        return 3
    raise exc


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        lines = _RUNNERS[cfg.command](cfg)
        _write(lines, cfg.out)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        code = _exit_code_for(exc)
        print(f"qorrel: error: {exc}", file=sys.stderr)
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
