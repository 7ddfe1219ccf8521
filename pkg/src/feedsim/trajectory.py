"""Time-parameterized joint paths: synchronized linear interpolation under
per-joint servo speed limits, sampling into (t, q, ee) points, CSV export."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .kinematics import fk_position_only
from .model import ModelError, RobotModel, as_joint_vector

DEFAULT_DT = 0.02  # 50 Hz, standard servo PWM cadence


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    q: np.ndarray
    ee: np.ndarray


@dataclass(frozen=True)
class Segment:
    """One synchronized joint-space move: all joints arrive together."""

    q_start: np.ndarray
    q_end: np.ndarray
    duration: float

    def q_at(self, t: float) -> np.ndarray:
        """Joint vector at elapsed time t, clamped to the segment; the
        endpoints are returned bitwise exact."""
        if t <= 0.0 or self.duration == 0.0:
            return self.q_start.copy()
        if t >= self.duration:
            return self.q_end.copy()
        s = t / self.duration
        return self.q_start + s * (self.q_end - self.q_start)


def plan_segment(
    model: RobotModel, q_start, q_end, speed_scale: float = 1.0
) -> Segment:
    """Auto-time a move: duration = max over joints of travel divided by
    the scaled per-joint speed limit."""
    q_start = as_joint_vector(q_start)
    q_end = as_joint_vector(q_end)
    if not 0.0 < speed_scale <= 1.0:
        raise ModelError(f"speed_scale must be in (0, 1], got {speed_scale}")
    if not model.within_limits(q_start):
        raise ModelError(f"segment start outside joint limits: {q_start}")
    if not model.within_limits(q_end):
        raise ModelError(f"segment end outside joint limits: {q_end}")
    speeds = np.asarray(model.max_joint_speed) * speed_scale
    duration = float(np.max(np.abs(q_end - q_start) / speeds))
    return Segment(q_start=q_start, q_end=q_end, duration=duration)


def sample(model: RobotModel, segment: Segment, dt: float = DEFAULT_DT) -> list[TrajectoryPoint]:
    """Points at t = 0, dt, 2dt, ..., duration; the final point is exactly
    the segment end."""
    if dt <= 0:
        raise ModelError(f"dt must be > 0, got {dt}")
    times = [0.0]
    i = 1
    while i * dt < segment.duration - 1e-12:
        times.append(i * dt)
        i += 1
    if segment.duration > 0.0:
        times.append(segment.duration)
    points = []
    for t in times:
        q = segment.q_at(t)
        points.append(TrajectoryPoint(t=t, q=q, ee=fk_position_only(model, q)))
    return points


def write_csv(points: list[TrajectoryPoint], path: str | Path) -> None:
    """Fixed-format trajectory CSV: t,q1..q5,x,y,z with 6 decimals."""
    with open(path, "w", newline="") as f:
        f.write("t,q1,q2,q3,q4,q5,x,y,z\n")
        for p in points:
            cols = [p.t, *p.q, *p.ee]
            f.write(",".join(f"{v:.6f}" for v in cols) + "\n")
