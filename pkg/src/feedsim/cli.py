"""Command-line front end: FK/IK evaluation, trajectory CSV and plots,
scripted feeding scenarios, and the service launcher."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import ik as ik_mod
from . import kinematics, trajectory
from .model import ModelError, RobotModel, default_menu_path, default_model_path
from .session import SessionConfig, run_scenario, write_events_json

CONFIG_ENV = "FEEDSIM_CONFIG"


def _load_model(path: str | None) -> RobotModel:
    return RobotModel.from_json(path or default_model_path())


def _parse_q(text: str) -> np.ndarray:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 5:
        raise click.UsageError(f"expected 5 joint angles, got {len(parts)}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise click.UsageError(f"bad joint angle in {text!r}") from exc


def _parse_vec3(text: str) -> np.ndarray:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise click.UsageError(f"expected 3 coordinates, got {len(parts)}")
    return np.array([float(p) for p in parts])


@click.group()
def main():
    """Software twin of the voice-commanded feeding arm."""


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), default=None)
@click.option("--q", "q_text", required=True, help="5 joint angles in degrees, comma separated")
def fk(model_path, q_text):
    """End-effector position and transform for a joint vector."""
    model = _load_model(model_path)
    try:
        T, pos = kinematics.forward_kinematics(model, _parse_q(q_text))
    except ModelError as exc:
        raise click.ClickException(str(exc))
    click.echo(" ".join(f"{v:.6f}" for v in pos))
    for row in T:
        click.echo("  " + " ".join(f"{v:12.6f}" for v in row))


@main.command("ik")
@click.option("--model", "model_path", type=click.Path(exists=True), default=None)
@click.option("--target", required=True, help="x,y,z in inches")
@click.option("--seed-q", default="90,90,90,90,90", help="starting joint vector")
@click.option("--pitch", type=float, default=None, help="q2+q3+q4 sum constraint, degrees")
@click.option("--tol", type=float, default=ik_mod.DEFAULT_TOL)
@click.option("--max-iter", type=int, default=ik_mod.DEFAULT_MAX_ITER)
def ik_cmd(model_path, target, seed_q, pitch, tol, max_iter):
    """Solve joint angles for a Cartesian target; prints the result as JSON."""
    model = _load_model(model_path)
    try:
        req = ik_mod.IKRequest(
            target=_parse_vec3(target),
            seed=model.clamp(_parse_q(seed_q)),
            pitch_constraint=pitch,
            tol=tol,
            max_iter=max_iter,
        )
        result = ik_mod.solve_ik(model, req)
    except ModelError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(result.to_dict(), indent=2))
    if not result.converged:
        sys.exit(1)


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), default=None)
@click.option("--from-q", "from_q", required=True)
@click.option("--to-q", "to_q", required=True)
@click.option("--speed-scale", type=float, default=1.0)
@click.option("--dt", type=float, default=trajectory.DEFAULT_DT)
@click.option("--out", type=click.Path(), default=".", help="output directory")
@click.option("--csv", "csv_name", default="trajectory.csv")
@click.option("--plot/--no-plot", default=True, help="emit t-vs-x/y/z panels")
def traj(model_path, from_q, to_q, speed_scale, dt, out, csv_name, plot):
    """Plan a speed-limited move and export its displacement curves."""
    model = _load_model(model_path)
    try:
        seg = trajectory.plan_segment(model, _parse_q(from_q), _parse_q(to_q), speed_scale)
        points = trajectory.sample(model, seg, dt)
    except ModelError as exc:
        raise click.ClickException(str(exc))
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / csv_name
    trajectory.write_csv(points, csv_path)
    click.echo(f"duration {seg.duration:.6f} s, {len(points)} samples -> {csv_path}")
    if plot:
        png = _plot_displacement(points, out_dir / "trajectory.png")
        click.echo(f"plot -> {png}")


def _plot_displacement(points, path: Path) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    t = [p.t for p in points]
    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
    for i, (ax, label) in enumerate(zip(axes, "xyz")):
        ax.plot(t, [p.ee[i] for p in points])
        ax.set_ylabel(f"{label} (in)")
        ax.grid(True, alpha=0.3)
    axes[-1].set_xlabel("time (s)")
    fig.suptitle("End-effector displacement vs time")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), default=None)
@click.option("--n", "n_per_joint", type=int, default=4, help="grid points per joint")
@click.option("--out", type=click.Path(), default=None, help="optional CSV of sampled points")
def workspace(model_path, n_per_joint, out):
    """Sample reachable end-effector positions over a joint grid."""
    model = _load_model(model_path)
    try:
        pts = kinematics.workspace_sample(model, n_per_joint)
    except ModelError as exc:
        raise click.ClickException(str(exc))
    r = np.linalg.norm(pts - [0, 0, model.base_height], axis=1)
    click.echo(
        f"{len(pts)} points; max radius from shoulder {r.max():.3f} in "
        f"(reach limit {model.total_reach:.0f}); z range "
        f"[{pts[:, 2].min():.3f}, {pts[:, 2].max():.3f}]"
    )
    if out:
        np.savetxt(out, pts, delimiter=",", header="x,y,z", comments="", fmt="%.6f")
        click.echo(f"points -> {out}")


@main.command()
@click.argument("script", type=click.Path(exists=True))
@click.option("--model", "model_path", type=click.Path(exists=True), default=None)
@click.option("--menu", "menu_path", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=0)
@click.option("--dt", type=float, default=0.02)
@click.option("--out", type=click.Path(), default=".", help="output directory")
def scenario(script, model_path, menu_path, seed, dt, out):
    """Run a scripted session (timed transcripts + sensor events) on the
    fast clock and dump its telemetry CSV."""
    cfg = SessionConfig(
        model_path=model_path or default_model_path(),
        menu_path=menu_path or default_menu_path(),
        clock="fast",
        seed=seed,
        dt=dt,
    )
    session, result = run_scenario(script, cfg)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    session.write_csv(out_dir / "telemetry.csv")
    write_events_json(session, out_dir / "events.json")
    click.echo(
        f"ran {session.now:.2f} s, final state {result.final_state}, "
        f"{result.serves_completed} serves completed"
    )
    for w in result.warnings:
        click.echo(f"warning: {w}", err=True)
    for v in result.violations:
        click.echo(f"violation: {v}", err=True)
    for a in result.assert_failures:
        click.echo(f"assert failed: {a}", err=True)
    if not result.ok:
        sys.exit(1)


@main.command()
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help=f"session config JSON (default ${CONFIG_ENV})")
@click.option("--autostart/--no-autostart", default=True,
              help="start a session immediately from the config")
def serve(port, host, config_path, autostart):
    """Launch the HTTP/WebSocket service."""
    import uvicorn

    from .service import SessionRequest, create_app

    app = create_app()
    config_path = config_path or os.environ.get(CONFIG_ENV)
    if autostart:
        doc = {}
        if config_path:
            with open(config_path) as f:
                doc = json.load(f)
        app.state.svc.start(SessionRequest(**doc))
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
