# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled path-tracking core for the total-degree homotopy.

Tracks one continuation path of H(x,t) = (1-t)*gamma*g(x) + t*f(x) with
start system g_i = x_i^d_i - 1, explicit Euler prediction on the Davidenko
ODE and a short Newton corrector. The pure-Python twin lives in
``_kernel_py``; ``_core`` selects between them at import time.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

STATUS_TRACKED = 0
STATUS_DIVERGED = 1
STATUS_FAILED = 2

IS_COMPILED = True


cdef inline double complex cpow_int(double complex z, long e) noexcept:
    cdef double complex r = 1.0
    cdef long k
    for k in range(e):
        r = r * z
    return r


cdef void eval_packed(const long[::1] offsets, const long[:, ::1] exps,
                      const double complex[::1] coeffs,
                      const double complex[::1] x,
                      double complex[::1] out, Py_ssize_t m, Py_ssize_t v) noexcept:
    cdef Py_ssize_t i, k, j
    cdef double complex acc, term
    for i in range(m):
        acc = 0.0
        for k in range(offsets[i], offsets[i + 1]):
            term = coeffs[k]
            for j in range(v):
                if exps[k, j] != 0:
                    term = term * cpow_int(x[j], exps[k, j])
            acc = acc + term
        out[i] = acc


cdef int solve_inplace(double complex[:, ::1] a, double complex[::1] b,
                       Py_ssize_t m) noexcept:
    """Gaussian elimination with partial pivoting; solution left in b.

    Returns 0 on success, 1 on a (near-)singular pivot.
    """
    cdef Py_ssize_t i, j, k, piv
    cdef double best, mag
    cdef double complex factor, tmp
    for k in range(m):
        piv = k
        best = abs(a[k, k].real) + abs(a[k, k].imag)
        for i in range(k + 1, m):
            mag = abs(a[i, k].real) + abs(a[i, k].imag)
            if mag > best:
                best = mag
                piv = i
        if best < 1e-150:
            return 1
        if piv != k:
            for j in range(k, m):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            tmp = b[k]
            b[k] = b[piv]
            b[piv] = tmp
        for i in range(k + 1, m):
            factor = a[i, k] / a[k, k]
            for j in range(k, m):
                a[i, j] = a[i, j] - factor * a[k, j]
            b[i] = b[i] - factor * b[k]
    for k in range(m - 1, -1, -1):
        tmp = b[k]
        for j in range(k + 1, m):
            tmp = tmp - a[k, j] * b[j]
        b[k] = tmp / a[k, k]
    return 0


cdef void build_hx(double complex[:, ::1] hx, const double complex[::1] x,
                   double t, double complex gamma, const long[::1] degrees,
                   const long[::1] j_offsets, const long[:, ::1] j_exps,
                   const double complex[::1] j_coeffs,
                   double complex[::1] scratch, Py_ssize_t m) noexcept:
    cdef Py_ssize_t i, j
    eval_packed(j_offsets, j_exps, j_coeffs, x, scratch, m * m, m)
    for i in range(m):
        for j in range(m):
            hx[i, j] = t * scratch[i * m + j]
        hx[i, i] = hx[i, i] + (1.0 - t) * gamma * degrees[i] * cpow_int(x[i], degrees[i] - 1)


def track_path(double complex[::1] x0, double complex gamma, long[::1] degrees,
               long[::1] f_offsets, long[:, ::1] f_exps, double complex[::1] f_coeffs,
               long[::1] j_offsets, long[:, ::1] j_exps, double complex[::1] j_coeffs,
               double step_init, double step_min, double corrector_tol,
               double divergence_bound, long max_steps):
    cdef Py_ssize_t m = x0.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] x_arr = np.array(x0, dtype=np.complex128)
    cdef double complex[::1] x = x_arr
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] xp_arr = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] xp = xp_arr
    cdef double complex[::1] fval = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] rhs = np.empty(m, dtype=np.complex128)
    cdef double complex[:, ::1] hx = np.empty((m, m), dtype=np.complex128)
    cdef double complex[::1] jscratch = np.empty(m * m, dtype=np.complex128)

    cdef double t = 0.0
    cdef double h = step_init
    cdef double dt, nrm, upd
    cdef long steps = 0, consecutive = 0
    cdef int it, ok
    cdef Py_ssize_t i
    cdef double complex gi

    while t < 1.0 - 1e-14:
        if steps >= max_steps:
            return x_arr, STATUS_FAILED
        steps += 1
        dt = h if h < 1.0 - t else 1.0 - t

        # Euler predictor: dx/dt = -Hx^{-1} Ht with Ht = f(x) - gamma*g(x).
        eval_packed(f_offsets, f_exps, f_coeffs, x, fval, m, m)
        for i in range(m):
            gi = cpow_int(x[i], degrees[i]) - 1.0
            rhs[i] = -(fval[i] - gamma * gi)
        build_hx(hx, x, t, gamma, degrees, j_offsets, j_exps, j_coeffs, jscratch, m)
        if solve_inplace(hx, rhs, m) != 0:
            h = h * 0.5
            consecutive = 0
            if h < step_min:
                return x_arr, STATUS_DIVERGED
            continue
        for i in range(m):
            xp[i] = x[i] + dt * rhs[i]

        # Newton corrector at t + dt, at most 3 iterations.
        ok = 0
        for it in range(3):
            eval_packed(f_offsets, f_exps, f_coeffs, xp, fval, m, m)
            for i in range(m):
                gi = cpow_int(xp[i], degrees[i]) - 1.0
                rhs[i] = -((1.0 - (t + dt)) * gamma * gi + (t + dt) * fval[i])
            build_hx(hx, xp, t + dt, gamma, degrees, j_offsets, j_exps, j_coeffs,
                     jscratch, m)
            if solve_inplace(hx, rhs, m) != 0:
                break
            upd = 0.0
            nrm = 0.0
            for i in range(m):
                xp[i] = xp[i] + rhs[i]
                upd += rhs[i].real * rhs[i].real + rhs[i].imag * rhs[i].imag
                nrm += xp[i].real * xp[i].real + xp[i].imag * xp[i].imag
            if sqrt(upd) < corrector_tol * (1.0 if nrm < 1.0 else sqrt(nrm)):
                ok = 1
                break

        if ok:
            for i in range(m):
                x[i] = xp[i]
            t = t + dt
            consecutive += 1
            if consecutive >= 5:
                h = h * 2.0
                if h > step_init:
                    h = step_init
                consecutive = 0
        else:
            h = h * 0.5
            consecutive = 0
            if h < step_min:
                return x_arr, STATUS_DIVERGED

        nrm = 0.0
        for i in range(m):
            nrm += x[i].real * x[i].real + x[i].imag * x[i].imag
        if sqrt(nrm) > divergence_bound:
            return x_arr, STATUS_DIVERGED

    return x_arr, STATUS_TRACKED
