"""Independent reference implementations used only to check the package.

Everything here is deliberately written without the package's kernels:
plain-Python 4x4 matrix products, forward differences, and a recursive
edit distance. Keep it slow and obvious.
"""

import math
from functools import lru_cache


def dh_link_matrix(alpha_prev, a_prev, d, theta_deg):
    """Link transform assembled entry by entry from the D-H convention."""
    th = math.radians(theta_deg)
    al = math.radians(alpha_prev)
    ct, st = math.cos(th), math.sin(th)
    ca, sa = math.cos(al), math.sin(al)
    return [
        [ct, -st, 0.0, a_prev],
        [st * ca, ct * ca, -sa, -sa * d],
        [st * sa, ct * sa, ca, ca * d],
        [0.0, 0.0, 0.0, 1.0],
    ]


def matmul4(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(4)) for j in range(4)]
        for i in range(4)
    ]


def fk_oracle(dh_rows, q_deg):
    """Chain product over the D-H rows; rows are (alpha, a, d, theta_home)."""
    T = [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)]
    for (alpha, a, d, home), theta in zip(dh_rows, q_deg):
        T = matmul4(T, dh_link_matrix(alpha, a, d, theta + home))
    return T


def fk_position_oracle(dh_rows, q_deg):
    T = fk_oracle(dh_rows, q_deg)
    return [T[0][3], T[1][3], T[2][3]]


def jacobian_forward_oracle(dh_rows, q_deg, h=1e-5):
    """Forward (one-sided) differences, independent of the package's
    central-difference scheme."""
    base = fk_position_oracle(dh_rows, q_deg)
    J = [[0.0] * len(q_deg) for _ in range(3)]
    for j in range(len(q_deg)):
        qp = list(q_deg)
        qp[j] += h
        p = fk_position_oracle(dh_rows, qp)
        for i in range(3):
            J[i][j] = (p[i] - base[i]) / h
    return J


def levenshtein_recursive(a, b):
    """Textbook recursive definition (memoized for tractability)."""

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(
            d(i - 1, j) + 1,
            d(i, j - 1) + 1,
            d(i - 1, j - 1) + (a[i - 1] != b[j - 1]),
        )

    return d(len(a), len(b))
