"""Robot geometry: D-H table, joint limits, and servo speed limits.

All angles are degrees and all lengths are inches at every interface;
there is deliberately no unit conversion anywhere in the core.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

N_JOINTS = 5


class ModelError(ValueError):
    """Raised when a robot model or joint vector fails validation."""


@dataclass(frozen=True)
class DHRow:
    """One row of the D-H table: twist/offset of the previous link plus
    the home offset added to this joint's variable angle."""

    alpha_prev: float  # degrees
    a_prev: float      # inches
    d: float           # inches
    theta_home: float = 0.0  # degrees

    def __post_init__(self):
        vals = (self.alpha_prev, self.a_prev, self.d, self.theta_home)
        if not all(math.isfinite(v) for v in vals):
            raise ModelError(f"non-finite D-H row: {vals}")
        if self.a_prev < 0:
            raise ModelError(f"a_prev must be >= 0, got {self.a_prev}")
        if not -180.0 <= self.alpha_prev <= 180.0:
            raise ModelError(f"alpha_prev out of [-180, 180]: {self.alpha_prev}")


@dataclass
class RobotModel:
    """Single source of geometric truth for the 5-DOF arm (the gripper
    roll is fixed to hold the spoon and is not modeled as a joint)."""

    dh_rows: list[DHRow]
    joint_limits: list[tuple[float, float]]
    max_joint_speed: list[float]  # degrees/second per joint
    link_lengths: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.dh_rows) != N_JOINTS:
            raise ModelError(f"expected {N_JOINTS} D-H rows, got {len(self.dh_rows)}")
        if len(self.joint_limits) != N_JOINTS or len(self.max_joint_speed) != N_JOINTS:
            raise ModelError("joint_limits and max_joint_speed must have 5 entries")
        for j, (lo, hi) in enumerate(self.joint_limits):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ModelError(f"joint {j + 1} limits invalid: [{lo}, {hi}]")
        for j, s in enumerate(self.max_joint_speed):
            if not (math.isfinite(s) and s > 0):
                raise ModelError(f"joint {j + 1} max speed must be > 0, got {s}")
        # Contiguous (5, 4) float64 table consumed by the kernels.
        self._dh = np.ascontiguousarray(
            [[r.alpha_prev, r.a_prev, r.d, r.theta_home] for r in self.dh_rows],
            dtype=np.float64,
        )
        self._limits_lo = np.array([lo for lo, _ in self.joint_limits])
        self._limits_hi = np.array([hi for _, hi in self.joint_limits])

    @property
    def dh_array(self) -> np.ndarray:
        """(5, 4) array of [alpha_prev, a_prev, d, theta_home] rows."""
        return self._dh

    @property
    def limits_lo(self) -> np.ndarray:
        return self._limits_lo

    @property
    def limits_hi(self) -> np.ndarray:
        return self._limits_hi

    @property
    def total_reach(self) -> float:
        """Maximum end-effector distance from the shoulder point (0, 0, d1)."""
        return float(sum(r.a_prev for r in self.dh_rows))

    @property
    def base_height(self) -> float:
        return self.dh_rows[0].d

    def within_limits(self, q, tol: float = 1e-9) -> bool:
        q = as_joint_vector(q)
        return bool(
            np.all(q >= self._limits_lo - tol) and np.all(q <= self._limits_hi + tol)
        )

    def clamp(self, q) -> np.ndarray:
        q = as_joint_vector(q)
        return np.clip(q, self._limits_lo, self._limits_hi)

    @classmethod
    def from_dict(cls, doc: dict) -> "RobotModel":
        rows = [DHRow(**r) for r in doc["dh_rows"]]
        limits = [tuple(map(float, pair)) for pair in doc["joint_limits"]]
        speeds = [float(s) for s in doc["max_joint_speed"]]
        return cls(rows, limits, speeds, dict(doc.get("link_lengths", {})))

    @classmethod
    def from_json(cls, path: str | Path) -> "RobotModel":
        with open(path) as f:
            return cls.from_dict(json.load(f))


def as_joint_vector(q) -> np.ndarray:
    """Coerce to a finite float64 vector of 5 joint angles in degrees."""
    arr = np.asarray(q, dtype=np.float64)
    if arr.shape != (N_JOINTS,):
        raise ModelError(f"joint vector must have 5 entries, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ModelError(f"joint vector contains non-finite entries: {arr}")
    return arr


def default_model_path() -> Path:
    return Path(resources.files("feedsim").joinpath("data/braccio_default.json"))


def default_menu_path() -> Path:
    return Path(resources.files("feedsim").joinpath("data/menu_default.json"))


def load_default_model() -> RobotModel:
    return RobotModel.from_json(default_model_path())
