"""Configuration-driven command-line front end.

Subcommands run spectrum analyses, trajectory solves, resolution series,
and figure-reproduction sweeps, writing deterministic CSV/JSON artifacts:

    qillum spectrum --config run.ini --out results/
    qillum fig2 --t-max 400 --workers 4

Configuration is an INI file with sections [bath], [illumination], [grid],
[dynamics], [sweep], [output] plus per-preset sections [fig1b], [fig2],
[fig3]; unknown sections or keys are rejected.  Every value can also be set
on the command line with --override section.key=value.  Outputs are placed
in --out, else [output] dir, else $QILLUM_OUT, else the working directory.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import (
    DEFAULT_DT,
    dump_trajectory_csv,
    solve_u_volterra,
    u_asymptotic,
    u_bma,
    u_ideal,
)
from .illumination import (
    METHOD_TAGS,
    IlluminationParams,
    dump_series_csv,
    f_minus_approx,
    resolution_series,
    theta_noisy,
    theta_steady,
)
from .spectral import SpectralDensity, bound_state_threshold_eta, find_bound_state

SCHEMA = {
    "bath": {"eta", "s", "omega_c"},
    "illumination": {"r", "xi", "beta", "method"},
    "grid": {"t_max", "dt"},
    "dynamics": {"regimes"},
    "sweep": {"parameter", "values"},
    "output": {"dir"},
    "fig1b": {"r_values"},
    "fig2": {"eta_values", "s_values", "omega_c_d"},
    "fig3": {"eta_values", "r_values"},
}

DEFAULTS = {
    "bath": {"eta": "0.2", "s": "0.8", "omega_c": "10"},
    "illumination": {
        "r": "1.0",
        "xi": "1e-3",
        "beta": "2.0",
        "method": "approx_leading_order",
    },
    "grid": {"t_max": "400", "dt": ""},
    "dynamics": {"regimes": "ideal,bma,volterra"},
    "sweep": {},
    "output": {},
    "fig1b": {"r_values": "0.5,1,1.5"},
    "fig2": {
        "eta_values": "0.05,0.1,0.2,0.3",
        "s_values": "0.5,1,1.5,2.5",
        "omega_c_d": "5",
    },
    "fig3": {"eta_values": "0.05,0.2", "r_values": "0,0.5,1,1.5,2"},
}

# per-preset parameter defaults, applied under the file/flag layers
PRESETS = {
    "fig1b": {
        "bath": {"eta": "0.05", "s": "0.8", "omega_c": "10"},
        "illumination": {"r": "1.0", "xi": "1e-3", "beta": "1.0"},
    },
    "fig2": {
        "bath": {"eta": "0.2", "s": "0.8", "omega_c": "10"},
        "illumination": {"r": "1.0", "xi": "1e-3", "beta": "2.0"},
    },
    "fig3": {
        "bath": {"eta": "0.2", "s": "0.8", "omega_c": "10"},
        "illumination": {"r": "1.0", "xi": "1e-3", "beta": "2.0"},
    },
}

REGIME_CHOICES = ("ideal", "bma", "volterra", "asymptotic")

# CSV stride for figure outputs; fine solver grids are downsampled to this
FIGURE_TIME_STRIDE = 0.1


class ConfigError(Exception):
    """Invalid configuration: unknown keys, bad values, missing sections."""


@dataclass(frozen=True)
class RunConfig:
    bath: SpectralDensity
    illum: IlluminationParams
    t_max: float
    dt: float | None
    regimes: tuple[str, ...]
    method: str
    sweep_parameter: str | None
    sweep_values: tuple[float, ...]
    out_dir: Path
    workers: int
    fig1b_r: tuple[float, ...]
    fig2_eta: tuple[float, ...]
    fig2_s: tuple[float, ...]
    fig2_omega_c_d: float
    fig3_eta: tuple[float, ...]
    fig3_r: tuple[float, ...]


def _available_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _parse_float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key} must be a number, got {raw!r}") from None


def _parse_float_list(section: str, key: str, raw: str) -> tuple[float, ...]:
    items = [item.strip() for item in raw.split(",") if item.strip()]
    if not items:
        raise ConfigError(f"{section}.{key} must be a comma-separated list of numbers")
    return tuple(_parse_float(section, key, item) for item in items)


def _merge_layer(data: dict, layer: dict) -> None:
    for section, entries in layer.items():
        data.setdefault(section, {}).update(entries)


def build_config(
    command: str,
    config_path: str | None,
    overrides: list[str],
    out_flag: str | None,
    workers_flag: int | None,
    dt_flag: float | None,
    t_max_flag: float | None,
) -> RunConfig:
    """Layered assembly: defaults < preset < config file < --override < flags."""
    data: dict[str, dict[str, str]] = {}
    _merge_layer(data, DEFAULTS)
    _merge_layer(data, PRESETS.get(command, {}))

    if config_path is not None:
        parser = configparser.ConfigParser()
        read = parser.read(config_path)
        if not read:
            raise ConfigError(f"config file {config_path} not found or unreadable")
        if parser.defaults():
            raise ConfigError(
                f"top-level keys {sorted(parser.defaults())} outside any section"
            )
        file_layer: dict[str, dict[str, str]] = {}
        for section in parser.sections():
            if section not in SCHEMA:
                raise ConfigError(
                    f"unknown section [{section}]; known: {sorted(SCHEMA)}"
                )
            for key, value in parser.items(section):
                if key not in SCHEMA[section]:
                    raise ConfigError(
                        f"unknown key {section}.{key}; "
                        f"known keys: {sorted(SCHEMA[section])}"
                    )
                file_layer.setdefault(section, {})[key] = value
        _merge_layer(data, file_layer)

    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(
                f"override {item!r} must have the form section.key=value"
            )
        dotted, value = item.split("=", 1)
        section, key = dotted.split(".", 1)
        if section not in SCHEMA or key not in SCHEMA[section]:
            raise ConfigError(f"unknown override target {section}.{key}")
        data.setdefault(section, {})[key] = value

    if dt_flag is not None:
        data["grid"]["dt"] = repr(dt_flag)
    if t_max_flag is not None:
        data["grid"]["t_max"] = repr(t_max_flag)
    if out_flag is not None:
        data.setdefault("output", {})["dir"] = out_flag

    try:
        bath = SpectralDensity(
            eta=_parse_float("bath", "eta", data["bath"]["eta"]),
            s=_parse_float("bath", "s", data["bath"]["s"]),
            omega_c=_parse_float("bath", "omega_c", data["bath"]["omega_c"]),
        )
        illum = IlluminationParams(
            r=_parse_float("illumination", "r", data["illumination"]["r"]),
            xi=_parse_float("illumination", "xi", data["illumination"]["xi"]),
            beta=_parse_float("illumination", "beta", data["illumination"]["beta"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    method = data["illumination"]["method"]
    if method not in METHOD_TAGS:
        raise ConfigError(f"illumination.method must be one of {METHOD_TAGS}")

    t_max = _parse_float("grid", "t_max", data["grid"]["t_max"])
    if t_max <= 0:
        raise ConfigError(f"grid.t_max must be > 0, got {t_max}")
    dt_raw = data["grid"].get("dt", "")
    dt = None if dt_raw.strip() == "" else _parse_float("grid", "dt", dt_raw)
    if dt is not None and dt <= 0:
        raise ConfigError(f"grid.dt must be > 0, got {dt}")

    regimes = tuple(
        item.strip() for item in data["dynamics"]["regimes"].split(",") if item.strip()
    )
    for regime in regimes:
        if regime not in REGIME_CHOICES:
            raise ConfigError(
                f"unknown regime {regime!r}; choices: {REGIME_CHOICES}"
            )
    if not regimes:
        raise ConfigError("dynamics.regimes must name at least one regime")

    sweep_parameter = data["sweep"].get("parameter")
    sweep_values: tuple[float, ...] = ()
    if sweep_parameter is not None:
        if sweep_parameter not in ("eta", "s", "r"):
            raise ConfigError(
                f"sweep.parameter must be eta, s, or r, got {sweep_parameter!r}"
            )
        if "values" not in data["sweep"]:
            raise ConfigError("sweep.values required when sweep.parameter is set")
        sweep_values = _parse_float_list("sweep", "values", data["sweep"]["values"])
    elif "values" in data["sweep"]:
        raise ConfigError("sweep.values given without sweep.parameter")

    out_dir = Path(
        data["output"].get("dir") or os.environ.get("QILLUM_OUT") or os.getcwd()
    )

    workers = workers_flag if workers_flag is not None else _available_workers()
    if workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {workers}")

    return RunConfig(
        bath=bath,
        illum=illum,
        t_max=t_max,
        dt=dt,
        regimes=regimes,
        method=method,
        sweep_parameter=sweep_parameter,
        sweep_values=sweep_values,
        out_dir=out_dir,
        workers=workers,
        fig1b_r=_parse_float_list("fig1b", "r_values", data["fig1b"]["r_values"]),
        fig2_eta=_parse_float_list("fig2", "eta_values", data["fig2"]["eta_values"]),
        fig2_s=_parse_float_list("fig2", "s_values", data["fig2"]["s_values"]),
        fig2_omega_c_d=_parse_float("fig2", "omega_c_d", data["fig2"]["omega_c_d"]),
        fig3_eta=_parse_float_list("fig3", "eta_values", data["fig3"]["eta_values"]),
        fig3_r=_parse_float_list("fig3", "r_values", data["fig3"]["r_values"]),
    )


def _comment(**params) -> str:
    parts = []
    for key, value in params.items():
        if isinstance(value, float):
            parts.append(f"{key}={value:.12g}")
        else:
            parts.append(f"{key}={value}")
    return " ".join(parts)


def _bath_comment(cfg: RunConfig, **extra) -> str:
    return _comment(
        eta=cfg.bath.eta,
        s=cfg.bath.s,
        omega_c=cfg.bath.omega_c,
        r=cfg.illum.r,
        xi=cfg.illum.xi,
        beta=cfg.illum.beta,
        t_max=cfg.t_max,
        **extra,
    )


def _run_pool(worker, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(worker, tasks))


def _announce(path: Path) -> None:
    print(f"wrote {path}")


# ---------------------------------------------------------------- spectrum


def _spectrum_worker(task):
    eta, s, omega_c = task
    bound = find_bound_state(SpectralDensity(eta=eta, s=s, omega_c=omega_c))
    if bound is None:
        return (None, None, False)
    return (bound.energy_E_b, bound.residue_Z, True)


def cmd_spectrum(cfg: RunConfig) -> int:
    if cfg.sweep_parameter not in ("eta", "s"):
        raise ConfigError("spectrum requires a sweep over eta or s")
    values = tuple(sorted(cfg.sweep_values))
    if cfg.sweep_parameter == "eta":
        tasks = [(v, cfg.bath.s, cfg.bath.omega_c) for v in values]
    else:
        tasks = [(cfg.bath.eta, v, cfg.bath.omega_c) for v in values]
    results = _run_pool(_spectrum_worker, tasks, cfg.workers)

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = cfg.out_dir / "spectrum.csv"
    with open(csv_path, "w", newline="\n") as fh:
        fh.write(f"# {_bath_comment(cfg, sweep=cfg.sweep_parameter)}\n")
        fh.write("param,E_b,Z,exists\n")
        for value, (e_b, z, exists) in zip(values, results):
            e_txt = "" if e_b is None else f"{e_b:.17g}"
            z_txt = "" if z is None else f"{z:.17g}"
            fh.write(f"{value:.17g},{e_txt},{z_txt},{str(exists).lower()}\n")
    _announce(csv_path)

    meta = {
        "sweep_parameter": cfg.sweep_parameter,
        "tolerances": {
            "root_bisection_xtol": 1e-15,
            "root_bisection_rtol": 1e-12,
            "quadrature_epsabs": 1.49e-8,
            "existence_boundary_guard": 1e-9,
        },
    }
    if cfg.sweep_parameter == "eta":
        meta["fixed"] = {"s": cfg.bath.s, "omega_c": cfg.bath.omega_c}
        meta["analytic_threshold"] = {
            "eta_c": bound_state_threshold_eta(cfg.bath.s, cfg.bath.omega_c),
            "expression": "omega_0 / (omega_c * Gamma(s))",
        }
    else:
        meta["fixed"] = {"eta": cfg.bath.eta, "omega_c": cfg.bath.omega_c}
        meta["analytic_threshold"] = {
            "expression": "omega_0 / (omega_c * Gamma(s))",
            "eta_c_per_value": {
                f"{v:.12g}": bound_state_threshold_eta(v, cfg.bath.omega_c)
                for v in values
            },
        }
    meta_path = cfg.out_dir / "spectrum_meta.json"
    with open(meta_path, "w", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _announce(meta_path)
    return 0


# ------------------------------------------------------------ trajectories


def _solve_regime(cfg: RunConfig, regime: str):
    """Trajectory for one regime on the configured grid."""
    if regime == "ideal":
        return u_ideal(cfg.t_max, cfg.dt if cfg.dt is not None else 0.1)
    if regime == "bma":
        return u_bma(cfg.bath, cfg.t_max, cfg.dt if cfg.dt is not None else 0.1)
    if regime == "volterra":
        return solve_u_volterra(
            cfg.bath, cfg.t_max, cfg.dt if cfg.dt is not None else DEFAULT_DT
        )
    # asymptotic costs one oscillatory quadrature per grid point, so its
    # default grid is coarse; an explicit dt overrides it
    dt = cfg.dt if cfg.dt is not None else cfg.t_max / 400.0
    return u_asymptotic(cfg.bath, cfg.t_max, dt)


def cmd_utraj(cfg: RunConfig) -> int:
    if cfg.sweep_parameter is not None:
        raise ConfigError("utraj does not support sweeps")
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    meta = {}
    for regime in cfg.regimes:
        traj = _solve_regime(cfg, regime)
        path = cfg.out_dir / f"utraj_{regime}.csv"
        with open(path, "w", newline="\n") as fh:
            dump_trajectory_csv(
                traj, fh, comment=_bath_comment(cfg, regime=regime, dt=traj.dt)
            )
        _announce(path)
        entry = {"dt": traj.dt, "points": int(traj.values.size)}
        entry.update(traj.diagnostics)
        meta[regime] = entry
    meta_path = cfg.out_dir / "utraj_meta.json"
    with open(meta_path, "w", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _announce(meta_path)
    return 0


def cmd_illuminate(cfg: RunConfig) -> int:
    if cfg.sweep_parameter not in (None, "r"):
        raise ConfigError("illuminate supports only an r sweep")
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    r_values = cfg.sweep_values if cfg.sweep_parameter == "r" else (cfg.illum.r,)
    r_values = tuple(sorted(r_values))
    for regime in cfg.regimes:
        traj = _solve_regime(cfg, regime)
        for r in r_values:
            illum = IlluminationParams(r=r, xi=cfg.illum.xi, beta=cfg.illum.beta)
            series = resolution_series(illum, traj, cfg.method)
            suffix = f"_r{r:.12g}" if cfg.sweep_parameter == "r" else ""
            path = cfg.out_dir / f"illuminate_{regime}{suffix}.csv"
            comment = _comment(
                eta=cfg.bath.eta,
                s=cfg.bath.s,
                omega_c=cfg.bath.omega_c,
                r=r,
                xi=cfg.illum.xi,
                beta=cfg.illum.beta,
                t_max=cfg.t_max,
                dt=traj.dt,
                regime=regime,
                method=cfg.method,
            )
            dump_series_csv(series, path, comment=comment)
            _announce(path)
    return 0


# ---------------------------------------------------------------- figures


def cmd_fig1b(cfg: RunConfig) -> int:
    print(f"fig1b parameters: {_bath_comment(cfg, r_values=list(cfg.fig1b_r))}")
    dt = cfg.dt if cfg.dt is not None else FIGURE_TIME_STRIDE
    trajectories = {
        "ideal": u_ideal(cfg.t_max, dt),
        "bma": u_bma(cfg.bath, cfg.t_max, dt),
    }
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / "fig1b.csv"
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# {_bath_comment(cfg, dt=dt)}\n")
        fh.write("t,f_minus,regime,r\n")
        for regime, traj in trajectories.items():
            for r in sorted(cfg.fig1b_r):
                illum = IlluminationParams(r=r, xi=cfg.illum.xi, beta=cfg.illum.beta)
                series = resolution_series(illum, traj, cfg.method)
                for t, value in zip(series.times, series.f_minus):
                    fh.write(f"{t:.17g},{value:.17g},{regime},{r:.12g}\n")
    _announce(path)
    return 0


def _volterra_worker(task):
    eta, s, omega_c, t_max, dt = task
    sd = SpectralDensity(eta=eta, s=s, omega_c=omega_c)
    traj = solve_u_volterra(sd, t_max, dt)
    bound = find_bound_state(sd)
    z = None if bound is None else bound.residue_Z
    return (traj.values, traj.dt, traj.diagnostics, z)


def _downsample_indices(n_points: int, dt: float) -> np.ndarray:
    stride = max(1, int(round(FIGURE_TIME_STRIDE / dt)))
    idx = np.arange(0, n_points, stride)
    if idx[-1] != n_points - 1:
        idx = np.append(idx, n_points - 1)
    return idx


def _fig2_panel(cfg: RunConfig, fh, values, tasks) -> None:
    results = _run_pool(_volterra_worker, tasks, cfg.workers)
    illum = cfg.illum
    fh.write("t,f_minus,param,eq13_level\n")
    for value, (u_values, dt, _diag, z) in zip(values, results):
        level = (
            ""
            if z is None
            else f"{f_minus_approx(illum, theta_steady(illum, z)):.17g}"
        )
        idx = _downsample_indices(u_values.size, dt)
        for k in idx:
            f_val = f_minus_approx(illum, theta_noisy(illum, u_values[k]))
            fh.write(f"{k * dt:.17g},{f_val:.17g},{value:.12g},{level}\n")


def cmd_fig2(cfg: RunConfig) -> int:
    dt = cfg.dt if cfg.dt is not None else DEFAULT_DT
    cfg.out_dir.mkdir(parents=True, exist_ok=True)

    print(
        "fig2b parameters: "
        + _comment(
            s=cfg.bath.s,
            omega_c=cfg.bath.omega_c,
            r=cfg.illum.r,
            xi=cfg.illum.xi,
            beta=cfg.illum.beta,
            t_max=cfg.t_max,
            eta_values=list(cfg.fig2_eta),
        )
    )
    eta_values = tuple(sorted(cfg.fig2_eta))
    path_b = cfg.out_dir / "fig2b.csv"
    with open(path_b, "w", newline="\n") as fh:
        fh.write(
            f"# {_comment(sweep='eta', s=cfg.bath.s, omega_c=cfg.bath.omega_c, r=cfg.illum.r, xi=cfg.illum.xi, beta=cfg.illum.beta, t_max=cfg.t_max, dt=dt)}\n"
        )
        tasks = [(v, cfg.bath.s, cfg.bath.omega_c, cfg.t_max, dt) for v in eta_values]
        _fig2_panel(cfg, fh, eta_values, tasks)
    _announce(path_b)

    print(
        "fig2d parameters: "
        + _comment(
            eta=cfg.bath.eta,
            omega_c=cfg.fig2_omega_c_d,
            r=cfg.illum.r,
            xi=cfg.illum.xi,
            beta=cfg.illum.beta,
            t_max=cfg.t_max,
            s_values=list(cfg.fig2_s),
        )
    )
    s_values = tuple(sorted(cfg.fig2_s))
    path_d = cfg.out_dir / "fig2d.csv"
    with open(path_d, "w", newline="\n") as fh:
        fh.write(
            f"# {_comment(sweep='s', eta=cfg.bath.eta, omega_c=cfg.fig2_omega_c_d, r=cfg.illum.r, xi=cfg.illum.xi, beta=cfg.illum.beta, t_max=cfg.t_max, dt=dt)}\n"
        )
        tasks = [
            (cfg.bath.eta, v, cfg.fig2_omega_c_d, cfg.t_max, dt) for v in s_values
        ]
        _fig2_panel(cfg, fh, s_values, tasks)
    _announce(path_d)
    return 0


def cmd_fig3(cfg: RunConfig) -> int:
    dt = cfg.dt if cfg.dt is not None else DEFAULT_DT
    print(
        "fig3 parameters: "
        + _comment(
            s=cfg.bath.s,
            omega_c=cfg.bath.omega_c,
            xi=cfg.illum.xi,
            beta=cfg.illum.beta,
            t_steady=cfg.t_max,
            eta_values=list(cfg.fig3_eta),
            r_values=list(cfg.fig3_r),
        )
    )
    eta_values = tuple(sorted(cfg.fig3_eta))
    r_values = tuple(sorted(cfg.fig3_r))
    tasks = [(v, cfg.bath.s, cfg.bath.omega_c, cfg.t_max, dt) for v in eta_values]
    results = _run_pool(_volterra_worker, tasks, cfg.workers)

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / "fig3.csv"
    with open(path, "w", newline="\n") as fh:
        fh.write(
            f"# {_comment(sweep='eta', s=cfg.bath.s, omega_c=cfg.bath.omega_c, xi=cfg.illum.xi, beta=cfg.illum.beta, t_steady=cfg.t_max, dt=dt)}\n"
        )
        fh.write("param,r,f_minus_steady,eq13_prediction\n")
        for eta, (u_values, _dt, _diag, z) in zip(eta_values, results):
            u_final = u_values[-1]
            for r in r_values:
                illum = IlluminationParams(r=r, xi=cfg.illum.xi, beta=cfg.illum.beta)
                steady = f_minus_approx(illum, theta_noisy(illum, u_final))
                z_eff = 0.0 if z is None else z
                prediction = f_minus_approx(illum, theta_steady(illum, z_eff))
                fh.write(
                    f"{eta:.12g},{r:.12g},{steady:.17g},{prediction:.17g}\n"
                )
    _announce(path)
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "utraj": cmd_utraj,
    "illuminate": cmd_illuminate,
    "fig1b": cmd_fig1b,
    "fig2": cmd_fig2,
    "fig3": cmd_fig3,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qillum",
        description="Quantum-illumination resolution under structured decoherence",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI configuration file")
    common.add_argument("--out", help="output directory (overrides config and env)")
    common.add_argument(
        "--workers",
        type=int,
        help="worker pool size for sweep points (default: available cores)",
    )
    common.add_argument("--dt", type=float, help="time step override")
    common.add_argument("--t-max", type=float, help="time horizon override")
    common.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="set any config value (repeatable)",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "spectrum", parents=[common], help="bound-state sweep: E_b, Z, existence"
    )
    sub.add_parser(
        "utraj", parents=[common], help="decoherence trajectories per regime"
    )
    sub.add_parser(
        "illuminate", parents=[common], help="resolution series per regime"
    )
    sub.add_parser("fig1b", parents=[common], help="ideal vs bma resolution curves")
    sub.add_parser(
        "fig2", parents=[common], help="resolution under eta and s sweeps"
    )
    sub.add_parser("fig3", parents=[common], help="steady-state resolution vs r")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = build_config(
            command=args.command,
            config_path=args.config,
            overrides=args.override,
            out_flag=args.out,
            workers_flag=args.workers,
            dt_flag=args.dt,
            t_max_flag=args.t_max,
        )
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
