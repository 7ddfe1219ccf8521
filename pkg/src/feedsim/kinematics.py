"""Forward kinematics for the 5-DOF arm: link transforms, the five-matrix
chain product, finite-difference Jacobian, and workspace sampling."""

from __future__ import annotations

import itertools
import math

import numpy as np

from ._kernels import (
    BACKEND_NAME,
    chain_transform,
    fk_position,
    fk_positions_batch,
    jacobian_central,
)
from .model import DHRow, ModelError, RobotModel, as_joint_vector

MAX_WORKSPACE_POINTS = 10_000_000

__all__ = [
    "BACKEND_NAME",
    "link_transform",
    "forward_kinematics",
    "fk_position_only",
    "numerical_jacobian",
    "workspace_sample",
    "is_rigid_transform",
    "rot_z",
]


def link_transform(row: DHRow, theta: float) -> np.ndarray:
    """4x4 transform of one link; theta is the joint angle in degrees,
    to which the row's home offset is added."""
    if not math.isfinite(theta):
        raise ModelError(f"non-finite joint angle: {theta}")
    from ._kernels import link_matrix

    return link_matrix(row.alpha_prev, row.a_prev, row.d, theta + row.theta_home)


def forward_kinematics(model: RobotModel, q) -> tuple[np.ndarray, np.ndarray]:
    """End-effector pose: (4x4 transform, position in inches, base frame).

    Joint limits are deliberately not enforced; this is pure math and is
    also used to diagnose limit violations.
    """
    q = as_joint_vector(q)
    T = chain_transform(model.dh_array, q)
    return T, T[:3, 3].copy()


def fk_position_only(model: RobotModel, q) -> np.ndarray:
    """Position-only FK, the hot path for IK and telemetry."""
    return fk_position(model.dh_array, as_joint_vector(q))


def numerical_jacobian(model: RobotModel, q, h: float = 1e-4) -> np.ndarray:
    """Central-difference Jacobian of end-effector position w.r.t. joint
    angles, shape (3, 5), inches per degree."""
    if not (math.isfinite(h) and h > 0):
        raise ModelError(f"jacobian step must be > 0, got {h}")
    return jacobian_central(model.dh_array, as_joint_vector(q), h)


def workspace_sample(model: RobotModel, n_per_joint: int) -> np.ndarray:
    """FK positions over a uniform within-limit joint grid, ordered
    lexicographically over the grid. Returns an (n^5, 3) array."""
    if n_per_joint < 2:
        raise ModelError(f"n_per_joint must be >= 2, got {n_per_joint}")
    total = n_per_joint ** len(model.dh_rows)
    if total > MAX_WORKSPACE_POINTS:
        raise ModelError(f"workspace grid too large: {total} points")
    axes = [
        np.linspace(lo, hi, n_per_joint) for lo, hi in model.joint_limits
    ]
    grid = np.array(list(itertools.product(*axes)))
    return fk_positions_batch(model.dh_array, np.ascontiguousarray(grid))


def is_rigid_transform(T: np.ndarray, tol: float = 1e-9) -> bool:
    """Rigid-body check: exact (0,0,0,1) bottom row, orthonormal rotation
    block within tol, determinant within tol of 1."""
    if T.shape != (4, 4):
        return False
    if not np.array_equal(T[3], np.array([0.0, 0.0, 0.0, 1.0])):
        return False
    R = T[:3, :3]
    if np.max(np.abs(R.T @ R - np.eye(3))) > tol:
        return False
    return abs(np.linalg.det(R) - 1.0) <= tol


def rot_z(angle_deg: float) -> np.ndarray:
    """3x3 rotation about the base z axis, used for yaw-equivariance checks."""
    a = math.radians(angle_deg)
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
