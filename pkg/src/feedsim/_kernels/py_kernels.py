"""Pure-Python (numpy) kinematics kernels.

Mirrors the compiled `_fastkin` API exactly; used whenever the extension
is unavailable or FEEDSIM_PURE_PYTHON=1 is set.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"


def link_matrix(alpha_prev: float, a_prev: float, d: float, theta_deg: float) -> np.ndarray:
    """Single link transform for one D-H row, angles in degrees."""
    th = math.radians(theta_deg)
    al = math.radians(alpha_prev)
    ct, st = math.cos(th), math.sin(th)
    ca, sa = math.cos(al), math.sin(al)
    return np.array(
        [
            [ct, -st, 0.0, a_prev],
            [st * ca, ct * ca, -sa, -sa * d],
            [st * sa, ct * sa, ca, ca * d],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def chain_transform(dh: np.ndarray, q_deg: np.ndarray) -> np.ndarray:
    """Product of the five link transforms; dh is (5, 4), q_deg is (5,)."""
    T = np.eye(4)
    for i in range(dh.shape[0]):
        alpha, a, d, home = dh[i]
        T = T @ link_matrix(alpha, a, d, q_deg[i] + home)
    return T


def fk_position(dh: np.ndarray, q_deg: np.ndarray) -> np.ndarray:
    return chain_transform(dh, q_deg)[:3, 3].copy()


def jacobian_central(dh: np.ndarray, q_deg: np.ndarray, h: float) -> np.ndarray:
    """Central-difference position Jacobian, inches per degree, shape (3, 5)."""
    n = dh.shape[0]
    J = np.empty((3, n))
    for j in range(n):
        qp = np.array(q_deg, dtype=np.float64)
        qm = np.array(q_deg, dtype=np.float64)
        qp[j] += h
        qm[j] -= h
        J[:, j] = (fk_position(dh, qp) - fk_position(dh, qm)) / (2.0 * h)
    return J


def fk_positions_batch(dh: np.ndarray, qs: np.ndarray) -> np.ndarray:
    """End-effector positions for a (m, 5) batch of joint vectors."""
    out = np.empty((qs.shape[0], 3))
    for i in range(qs.shape[0]):
        out[i] = fk_position(dh, qs[i])
    return out
