"""Iterative inverse kinematics: damped-least-squares position solve with
joint-limit clamping and an optional spoon-pitch constraint."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import fk_position_only, numerical_jacobian
from .model import ModelError, RobotModel, as_joint_vector

DEFAULT_TOL = 0.05        # inches
DEFAULT_MAX_ITER = 200
LAMBDA_INIT = 0.5
LAMBDA_FLOOR = 1e-3
STEP_CAP_DEG = 10.0
PITCH_TOL_DEG = 0.1       # internal stop threshold, well under the 0.5 contract
MAX_RETRIES = 40


@dataclass
class IKRequest:
    target: np.ndarray            # (3,) inches
    seed: np.ndarray              # (5,) degrees, within limits
    pitch_constraint: float | None = None  # desired q2+q3+q4 sum, degrees
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        self.target = np.asarray(self.target, dtype=np.float64)
        if self.target.shape != (3,) or not np.all(np.isfinite(self.target)):
            raise ModelError(f"target must be a finite 3-vector: {self.target}")
        self.seed = as_joint_vector(self.seed)
        if self.tol <= 0:
            raise ModelError(f"tol must be > 0, got {self.tol}")
        if self.max_iter < 1:
            raise ModelError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass
class IKResult:
    q: np.ndarray
    achieved: np.ndarray
    residual: float
    iterations: int
    converged: bool
    reachable: bool = True

    def to_dict(self) -> dict:
        return {
            "q": [float(v) for v in self.q],
            "achieved": [float(v) for v in self.achieved],
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "reachable": self.reachable,
        }


def snap_to_limits(model: RobotModel, q) -> np.ndarray:
    """Per-joint clamp into the configured limits; idempotent."""
    return model.clamp(q)


def _pitch(q: np.ndarray) -> float:
    return float(q[1] + q[2] + q[3])


def solve_ik(model: RobotModel, req: IKRequest) -> IKResult:
    """Damped least squares: dq = J^T (J J^T + lambda^2 I)^-1 e, with the
    step clamped to joint limits and capped in norm. The damping doubles
    whenever a step would increase the position residual and halves
    (floored) after an accepted step, so accepted steps never increase
    the residual beyond round-off.
    """
    if not model.within_limits(req.seed):
        raise ModelError("IK seed is outside joint limits")

    shoulder = np.array([0.0, 0.0, model.base_height])
    if np.linalg.norm(req.target - shoulder) > model.total_reach:
        pos = fk_position_only(model, req.seed)
        return IKResult(
            q=req.seed.copy(),
            achieved=pos,
            residual=float(np.linalg.norm(pos - req.target)),
            iterations=0,
            converged=False,
            reachable=False,
        )

    q = req.seed.copy()
    pos = fk_position_only(model, q)
    residual = float(np.linalg.norm(pos - req.target))
    lam = LAMBDA_INIT
    pitch_ok = (
        req.pitch_constraint is None
        or abs(_pitch(q) - req.pitch_constraint) <= PITCH_TOL_DEG
    )

    iters = 0
    while iters < req.max_iter and not (residual <= req.tol and pitch_ok):
        e = req.target - pos
        J = numerical_jacobian(model, q)
        if req.pitch_constraint is not None:
            e = np.append(e, req.pitch_constraint - _pitch(q))
            J = np.vstack([J, [0.0, 1.0, 1.0, 1.0, 0.0]])

        accepted = False
        for _ in range(MAX_RETRIES):
            m = J.shape[0]
            dq = J.T @ np.linalg.solve(J @ J.T + lam * lam * np.eye(m), e)
            norm = np.linalg.norm(dq)
            if norm > STEP_CAP_DEG:
                dq *= STEP_CAP_DEG / norm
            q_new = model.clamp(q + dq)
            pos_new = fk_position_only(model, q_new)
            res_new = float(np.linalg.norm(pos_new - req.target))
            if res_new <= residual + 1e-9:
                q, pos, residual = q_new, pos_new, res_new
                lam = max(lam / 2.0, LAMBDA_FLOOR)
                accepted = True
                break
            lam *= 2.0
        iters += 1
        pitch_ok = (
            req.pitch_constraint is None
            or abs(_pitch(q) - req.pitch_constraint) <= PITCH_TOL_DEG
        )
        if not accepted:
            break  # fully damped step still failed; stuck at a local minimum

    return IKResult(
        q=q,
        achieved=pos,
        residual=residual,
        iterations=iters,
        converged=bool(residual <= req.tol and pitch_ok),
        reachable=True,
    )
