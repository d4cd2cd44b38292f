"""Command-line driver: dispatch experiments and write CSV/summary outputs."""

import os

# worker caps must land in the environment before numpy spins up its pools
_threads = os.environ.get("MKM_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import json
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import config as cfgmod
from .evolution import evolve as run_evolve
from .gridfn import GridFunction
from .moments import moment_recursion, tail_classification
from .selfsimilar import solve_profile
from .spectral import spectral_profile
from .transforms import radial_inverse_fourier_3d

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3

_F = "%.17g"


def _fmt(x) -> str:
    return _F % float(x)


def _write_csv(path: Path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(c) if isinstance(c, (int, float, np.floating))
                              and not isinstance(c, bool) else str(c)
                              for c in row) + "\n")


def _write_summary(path: Path, payload: dict):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, default=float)
        fh.write("\n")


def _load(config_path) -> dict:
    if config_path is None:
        return {}
    return cfgmod.load_config(config_path)


def _model(cfg):
    section = cfg.get("model", {"type": "A"})
    return cfgmod.build_model(section)


def _out_dir(cfg, output) -> Path:
    d = Path(output or cfg.get("output", {}).get("dir", "."))
    d.mkdir(parents=True, exist_ok=True)
    return d


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _guarded(fn):
    def wrapper(*args, **kwargs):
        t0 = time.time()
        try:
            fn(*args, **kwargs)
        except _Fail as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.code)
        except (cfgmod.ConfigError, ValueError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        click.echo(f"done in {time.time() - t0:.2f}s", err=True)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
def main():
    """Numerics for Maxwell-type kinetic models in Fourier representation."""


_common = [
    click.option("--config", "config_path", type=click.Path(exists=True),
                 default=None, help="JSON experiment config."),
    click.option("--output", default=None, help="Output directory."),
    click.option("--plot", is_flag=True, help="Render a PNG next to the CSV."),
]


def _with_common(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@main.command()
@_with_common
@click.option("--p-min", type=float, default=None)
@click.option("--p-max", type=float, default=None)
@click.option("--steps", type=int, default=None)
@_guarded
def spectral(config_path, output, plot, p_min, p_max, steps):
    """Sample lambda(p), mu(p), mu'(p) and classify the model."""
    cfg = _load(config_path)
    model = _model(cfg)
    sec = cfg.get("spectral", {})
    prof = spectral_profile(
        model,
        p_min=p_min if p_min is not None else float(sec.get("p_min", 0.1)),
        p_max=p_max if p_max is not None else float(sec.get("p_max", 8.0)),
        steps=steps if steps is not None else int(sec.get("steps", 80)),
        n_quad=cfgmod.quad_nodes(cfg),
    )
    out = _out_dir(cfg, output)
    _write_csv(out / "spectral.csv", ["p", "lambda", "mu", "mu_prime"],
               zip(prof.p_grid, prof.lambda_values, prof.mu_values,
                   prof.mu_prime_values))
    _write_summary(out / "spectral_summary.json", {
        "p0": prof.p0 if np.isfinite(prof.p0) else "infinite",
        "mu_p0": prof.mu_at_p0,
        "class": prof.class_tag,
        "s_star_of_1": prof.s_star_of_1 if np.isfinite(prof.s_star_of_1)
        else None,
    })
    if plot:
        from .plots import plot_spectral
        plot_spectral(prof, out / "spectral.png")


def _initial_state(spec, x):
    if spec == "exp":
        return GridFunction(x, np.exp(-x))
    if spec.startswith("exp_p:"):
        p = float(spec.split(":", 1)[1])
        return GridFunction(x, np.exp(-x ** p))
    if spec.startswith("csv:"):
        data = np.loadtxt(spec.split(":", 1)[1], delimiter=",", skiprows=1)
        return GridFunction(data[:, 0], data[:, 1])
    raise cfgmod.ConfigError(f"unknown initial state {spec!r}")


@main.command()
@_with_common
@click.option("--t-end", type=float, default=None)
@click.option("--dt", type=float, default=None)
@click.option("--snapshot-every", type=int, default=None)
@click.option("--u0", default=None,
              help="Initial state: exp, exp_p:<p>, or csv:<path>.")
@_guarded
def evolve(config_path, output, plot, t_end, dt, snapshot_every, u0):
    """Integrate u_t + u = Gamma(u) and dump snapshots."""
    cfg = _load(config_path)
    model = _model(cfg)
    sec = cfg.get("evolve", {})
    x = cfgmod.grid_from_config(cfg)
    state = _initial_state(u0 or sec.get("u0", "exp"), x)
    traj = run_evolve(
        model, state,
        t_end if t_end is not None else float(sec.get("t_end", 10.0)),
        dt if dt is not None else float(sec.get("dt", 0.01)),
        snapshot_every=snapshot_every
        if snapshot_every is not None else sec.get("snapshot_every"),
        n_quad=cfgmod.quad_nodes(cfg),
    )
    out = _out_dir(cfg, output)
    rows = []
    for t, snap in zip(traj.times, traj.snapshots):
        for xi, ui in zip(snap.x, snap.values):
            rows.append((t, xi, ui))
    _write_csv(out / "evolve.csv", ["t", "x", "u"], rows)
    if plot:
        from .plots import plot_trajectory
        plot_trajectory(traj, out / "evolve.png")


@main.command()
@_with_common
@click.option("--p", type=float, default=None)
@click.option("--tol", type=float, default=None)
@click.option("--max-iter", type=int, default=None)
@_guarded
def profile(config_path, output, plot, p, tol, max_iter):
    """Solve the self-similar profile equation for a given order p."""
    cfg = _load(config_path)
    model = _model(cfg)
    sec = cfg.get("profile", {})
    prof = solve_profile(
        model,
        p if p is not None else float(sec.get("p", 1.0)),
        tol=tol if tol is not None else float(sec.get("tol", 1e-9)),
        max_iter=max_iter
        if max_iter is not None else int(sec.get("max_iter", 500)),
        x=cfgmod.grid_from_config(cfg),
        n_quad=cfgmod.quad_nodes(cfg),
    )
    out = _out_dir(cfg, output)
    _write_csv(out / "profile.csv", ["x", "psi"],
               zip(prof.profile.x, prof.profile.values))
    _write_summary(out / "profile_summary.json", {
        "p": prof.p, "mu_star": prof.mu_star,
        "iterations": prof.iterations, "residual": prof.residual,
        "converged": prof.converged,
    })
    if plot:
        from .plots import plot_profile
        plot_profile(prof, out / "profile.png")
    if not prof.converged:
        raise _Fail(EXIT_NO_CONVERGENCE,
                    f"profile iteration stalled at residual "
                    f"{prof.residual:.3e} after {prof.iterations} steps")


@main.command()
@_with_common
@click.option("--s-max", type=int, default=None)
@click.option("--p", type=float, default=None)
@_guarded
def moments(config_path, output, plot, s_max, p):
    """Moment table of the order-1 profile plus tail classification."""
    cfg = _load(config_path)
    model = _model(cfg)
    sec = cfg.get("moments", {})
    p_val = p if p is not None else float(sec.get("p", 1.0))
    table = moment_recursion(
        model, s_max if s_max is not None else int(sec.get("s_max", 6)),
        n_quad=cfgmod.quad_nodes(cfg))
    tails = tail_classification(model, p_val, n_quad=cfgmod.quad_nodes(cfg))
    out = _out_dir(cfg, output)
    _write_csv(out / "moments.csv", ["s", "m_s", "finite", "denominator"],
               [(s, m, str(f).lower(), d) for s, m, f, d in
                zip(table.s_values, table.m_values, table.finite,
                    table.denominators)])
    _write_summary(out / "moments_summary.json", {
        "p": p_val,
        "s_star": table.s_star if np.isfinite(table.s_star) else None,
        "tail": tails["summary"],
        "notes": table.notes,
    })
    if plot:
        from .plots import plot_moments
        plot_moments(table, out / "moments.png")


@main.command()
@_with_common
@click.option("--input", "input_spec", default=None,
              help="Characteristic function as csv:<path> with columns x,psi.")
@click.option("--v-max", type=float, default=None)
@click.option("--v-points", type=int, default=None)
@_guarded
def reconstruct(config_path, output, plot, input_spec, v_max, v_points):
    """Invert a radial characteristic function to a speed density."""
    cfg = _load(config_path)
    sec = cfg.get("reconstruct", {})
    spec = input_spec or sec.get("input")
    if not spec or not spec.startswith("csv:"):
        raise cfgmod.ConfigError("reconstruct needs --input csv:<path>")
    data = np.loadtxt(spec.split(":", 1)[1], delimiter=",", skiprows=1)
    psi = GridFunction(data[:, 0], data[:, 1])
    v = np.linspace(
        0.0,
        v_max if v_max is not None else float(sec.get("v_max", 8.0)),
        v_points if v_points is not None else int(sec.get("v_points", 161)),
    )
    dist = radial_inverse_fourier_3d(psi, v)
    out = _out_dir(cfg, output)
    _write_csv(out / "reconstruct.csv", ["v", "F"], zip(dist.v, dist.F))
    _write_summary(out / "reconstruct_summary.json", {"mass": dist.mass})
    if plot:
        from .plots import plot_density
        plot_density(dist, out / "reconstruct.png")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None)
def verify(config_path):
    """Run the full verification suite and report one line per check."""
    from .acceptance import run_all
    results = run_all(report=click.echo)
    failed = [r for r in results if not r.ok]
    click.echo(f"{len(results) - len(failed)}/{len(results)} checks passed")
    sys.exit(EXIT_OK if not failed else 1)


if __name__ == "__main__":
    main()
