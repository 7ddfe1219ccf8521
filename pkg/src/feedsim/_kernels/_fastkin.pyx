# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kinematics kernels: D-H chain product, FK position, and the
central-difference position Jacobian. Same API as py_kernels."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND_NAME = "cython"

cdef double DEG = 0.017453292519943295  # pi / 180


cdef void _link(const double* row, double theta_deg, double* T) noexcept nogil:
    cdef double th = theta_deg * DEG
    cdef double al = row[0] * DEG
    cdef double a = row[1]
    cdef double d = row[2]
    cdef double ct = cos(th), st = sin(th)
    cdef double ca = cos(al), sa = sin(al)
    T[0] = ct;      T[1] = -st;     T[2] = 0.0;  T[3] = a
    T[4] = st * ca; T[5] = ct * ca; T[6] = -sa;  T[7] = -sa * d
    T[8] = st * sa; T[9] = ct * sa; T[10] = ca;  T[11] = ca * d
    T[12] = 0.0;    T[13] = 0.0;    T[14] = 0.0; T[15] = 1.0


cdef void _matmul4(const double* A, const double* B, double* C) noexcept nogil:
    cdef int i, j, k
    cdef double s
    for i in range(4):
        for j in range(4):
            s = 0.0
            for k in range(4):
                s += A[4 * i + k] * B[4 * k + j]
            C[4 * i + j] = s


cdef void _chain(const double* dh, const double* q, int n, double* T) noexcept nogil:
    cdef double L[16]
    cdef double tmp[16]
    cdef int i, k
    _link(dh, q[0] + dh[3], T)
    for i in range(1, n):
        _link(dh + 4 * i, q[i] + dh[4 * i + 3], L)
        _matmul4(T, L, tmp)
        for k in range(16):
            T[k] = tmp[k]


def link_matrix(double alpha_prev, double a_prev, double d, double theta_deg):
    cdef cnp.ndarray[double, ndim=2] out = np.empty((4, 4))
    cdef double row[4]
    row[0] = alpha_prev; row[1] = a_prev; row[2] = d; row[3] = 0.0
    _link(row, theta_deg, <double*> out.data)
    return out


def chain_transform(const double[:, ::1] dh, const double[::1] q_deg):
    cdef cnp.ndarray[double, ndim=2] out = np.empty((4, 4))
    _chain(&dh[0, 0], &q_deg[0], dh.shape[0], <double*> out.data)
    return out


def fk_position(const double[:, ::1] dh, const double[::1] q_deg):
    cdef double T[16]
    _chain(&dh[0, 0], &q_deg[0], dh.shape[0], T)
    cdef cnp.ndarray[double, ndim=1] out = np.empty(3)
    out[0] = T[3]; out[1] = T[7]; out[2] = T[11]
    return out


def jacobian_central(const double[:, ::1] dh, const double[::1] q_deg, double h):
    cdef int n = dh.shape[0]
    cdef cnp.ndarray[double, ndim=2] J = np.empty((3, n))
    cdef double Tp[16]
    cdef double Tm[16]
    cdef double qw[16]
    cdef int i, j
    for i in range(n):
        qw[i] = q_deg[i]
    for j in range(n):
        qw[j] = q_deg[j] + h
        _chain(&dh[0, 0], qw, n, Tp)
        qw[j] = q_deg[j] - h
        _chain(&dh[0, 0], qw, n, Tm)
        qw[j] = q_deg[j]
        J[0, j] = (Tp[3] - Tm[3]) / (2.0 * h)
        J[1, j] = (Tp[7] - Tm[7]) / (2.0 * h)
        J[2, j] = (Tp[11] - Tm[11]) / (2.0 * h)
    return J


def fk_positions_batch(const double[:, ::1] dh, const double[:, ::1] qs):
    cdef int m = qs.shape[0]
    cdef int n = dh.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((m, 3))
    cdef double T[16]
    cdef int i
    for i in range(m):
        _chain(&dh[0, 0], &qs[i, 0], n, T)
        out[i, 0] = T[3]; out[i, 1] = T[7]; out[i, 2] = T[11]
    return out
