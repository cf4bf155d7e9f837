# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of mhi._kernels_py; see that module for the contract."""

from libc.math cimport atan2, cos, fabs, sin, sqrt, acos

import numpy as np

cimport numpy as cnp

from .errors import AntipodalError, DomainError

cnp.import_array()

BACKEND_NAME = "compiled"

cdef double _ANTIPODAL_TOL = 1e-10
cdef double _MONO_SLACK = 1e-13
cdef int _MAXD = 16


cdef inline void _pieces(double theta, double t,
                         double* rho, double* drho, double* ddrho) noexcept nogil:
    cdef double u = theta * fabs(t)
    cdef double sgn
    if u >= 1.0:
        rho[0] = 0.0
        drho[0] = 0.0
        ddrho[0] = 0.0
        return
    sgn = 1.0 if t > 0.0 else (-1.0 if t < 0.0 else 0.0)
    rho[0] = 1.0 - 3.0 * u * u + 2.0 * u * u * u
    drho[0] = 6.0 * theta * sgn * u * (u - 1.0)
    ddrho[0] = theta * theta * (12.0 * u - 6.0)


def corr_vector(double[:, ::1] plan, double[::1] theta, double[::1] omega):
    cdef Py_ssize_t k = plan.shape[0]
    cdef Py_ssize_t d = plan.shape[1]
    if d > _MAXD:
        raise ValueError("too many parameter axes for the compiled kernel")
    out_arr = np.empty(k * (d + 1))
    cdef double[::1] out = out_arr
    cdef double rho[16]
    cdef double drho[16]
    cdef double dd, prod, excl
    cdef Py_ssize_t j, a, i
    for j in range(k):
        prod = 1.0
        for a in range(d):
            _pieces(theta[a], omega[a] - plan[j, a], &rho[a], &drho[a], &dd)
            prod *= rho[a]
        out[j] = prod
        for i in range(d):
            excl = 1.0
            for a in range(d):
                if a != i:
                    excl *= rho[a]
            out[k * (i + 1) + j] = -drho[i] * excl
    return out_arr


def corr_vectors(double[:, ::1] plan, double[::1] theta, double[:, ::1] omegas):
    cdef Py_ssize_t k = plan.shape[0]
    cdef Py_ssize_t d = plan.shape[1]
    cdef Py_ssize_t n = omegas.shape[0]
    if d > _MAXD:
        raise ValueError("too many parameter axes for the compiled kernel")
    out_arr = np.empty((n, k * (d + 1)))
    cdef double[:, ::1] out = out_arr
    cdef double rho[16]
    cdef double drho[16]
    cdef double dd, prod, excl
    cdef Py_ssize_t q, j, a, i
    with nogil:
        for q in range(n):
            for j in range(k):
                prod = 1.0
                for a in range(d):
                    _pieces(theta[a], omegas[q, a] - plan[j, a], &rho[a], &drho[a], &dd)
                    prod *= rho[a]
                out[q, j] = prod
                for i in range(d):
                    excl = 1.0
                    for a in range(d):
                        if a != i:
                            excl *= rho[a]
                    out[q, k * (i + 1) + j] = -drho[i] * excl
    return out_arr


def corr_vector_partial(double[:, ::1] plan, double[::1] theta,
                        double[::1] omega, int axis):
    cdef Py_ssize_t k = plan.shape[0]
    cdef Py_ssize_t d = plan.shape[1]
    if d > _MAXD:
        raise ValueError("too many parameter axes for the compiled kernel")
    out_arr = np.empty(k * (d + 1))
    cdef double[::1] out = out_arr
    cdef double rho[16]
    cdef double drho[16]
    cdef double ddrho[16]
    cdef double excl, rest
    cdef Py_ssize_t j, a, i
    for j in range(k):
        for a in range(d):
            _pieces(theta[a], omega[a] - plan[j, a], &rho[a], &drho[a], &ddrho[a])
        excl = 1.0
        for a in range(d):
            if a != axis:
                excl *= rho[a]
        out[j] = drho[axis] * excl
        for i in range(d):
            if i == axis:
                out[k * (i + 1) + j] = -ddrho[i] * excl
            else:
                rest = 1.0
                for a in range(d):
                    if a != i and a != axis:
                        rest *= rho[a]
                out[k * (i + 1) + j] = -drho[axis] * drho[i] * rest
    return out_arr


def euclidean_descent(double[:, ::1] points, double[::1] weights,
                      double[::1] q0, double alpha, double tau, int max_iter):
    cdef Py_ssize_t k = points.shape[0]
    cdef Py_ssize_t n = points.shape[1]
    q_arr = np.array(q0, dtype=float)
    s_arr = np.empty(n)
    cdef double[::1] q = q_arr
    cdef double[::1] s = s_arr
    cdef double gnorm = 0.0, objective, prev = 0.0, diff, sq, w
    cdef bint monotone = True, have_prev = False
    cdef int iters = 0
    cdef Py_ssize_t j, a

    while True:
        objective = 0.0
        for a in range(n):
            s[a] = 0.0
        for j in range(k):
            sq = 0.0
            w = weights[j]
            for a in range(n):
                diff = points[j, a] - q[a]
                s[a] += w * diff
                sq += diff * diff
            objective += 0.5 * w * sq
        gnorm = 0.0
        for a in range(n):
            gnorm += s[a] * s[a]
        gnorm = sqrt(gnorm)
        if have_prev and objective > prev + _MONO_SLACK * (1.0 + fabs(prev)):
            monotone = False
        prev = objective
        have_prev = True
        if gnorm <= tau or iters >= max_iter:
            break
        for a in range(n):
            q[a] += alpha * s[a]
        iters += 1
    return q_arr, iters, gnorm, bool(monotone)


def sphere_descent(double[:, ::1] points, double[::1] weights,
                   double[::1] q0, double alpha, double tau, int max_iter):
    cdef Py_ssize_t k = points.shape[0]
    q_arr = np.array(q0, dtype=float)
    cdef double[::1] q = q_arr
    cdef double s0, s1, s2, c, w0, w1, w2, nw, ang, factor, wj
    cdef double gnorm = 0.0, objective, prev = 0.0, nv, cs, sn, qn
    cdef bint monotone = True, have_prev = False, domain_fail = False
    cdef int iters = 0
    cdef Py_ssize_t j

    while True:
        s0 = s1 = s2 = 0.0
        objective = 0.0
        for j in range(k):
            c = points[j, 0] * q[0] + points[j, 1] * q[1] + points[j, 2] * q[2]
            if c <= -1.0 + _ANTIPODAL_TOL:
                domain_fail = True
                break
            w0 = points[j, 0] - c * q[0]
            w1 = points[j, 1] - c * q[1]
            w2 = points[j, 2] - c * q[2]
            nw = sqrt(w0 * w0 + w1 * w1 + w2 * w2)
            ang = atan2(nw, c)
            factor = ang / nw if nw > 1e-300 else 1.0
            wj = weights[j]
            s0 += wj * factor * w0
            s1 += wj * factor * w1
            s2 += wj * factor * w2
            objective += 0.5 * wj * ang * ang
        if domain_fail:
            raise AntipodalError(
                "barycenter iterate became antipodal to a sample point"
            )
        gnorm = sqrt(s0 * s0 + s1 * s1 + s2 * s2)
        if have_prev and objective > prev + _MONO_SLACK * (1.0 + fabs(prev)):
            monotone = False
        prev = objective
        have_prev = True
        if gnorm <= tau or iters >= max_iter:
            break
        nv = alpha * gnorm
        cs = cos(nv)
        sn = sin(nv) / nv * alpha
        q[0] = cs * q[0] + sn * s0
        q[1] = cs * q[1] + sn * s1
        q[2] = cs * q[2] + sn * s2
        qn = sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2])
        q[0] /= qn
        q[1] /= qn
        q[2] /= qn
        iters += 1
    return q_arr, iters, gnorm, bool(monotone)


cdef inline void _mat_mul3(double* a, double* b, double* out) noexcept nogil:
    cdef Py_ssize_t r, c, i
    for r in range(3):
        for c in range(3):
            out[3 * r + c] = 0.0
            for i in range(3):
                out[3 * r + c] += a[3 * r + i] * b[3 * i + c]


def so3_descent(double[:, ::1] points, double[::1] weights,
                double[::1] q0, double alpha, double tau, int max_iter):
    cdef Py_ssize_t k = points.shape[0]
    q_arr = np.array(q0, dtype=float)
    cdef double[::1] q = q_arr
    cdef double rel[9]
    cdef double s[9]
    cdef double step[9]
    cdef double rot[9]
    cdef double qnew[9]
    cdef double tr, c, ang, factor, wj, wa, wb, wc
    cdef double gnorm = 0.0, objective, prev = 0.0
    cdef double th, c1, c2, ss_rc
    cdef bint monotone = True, have_prev = False, domain_fail = False
    cdef int iters = 0
    cdef Py_ssize_t j, r, cc, i

    while True:
        for i in range(9):
            s[i] = 0.0
        objective = 0.0
        for j in range(k):
            # rel = Q^T P_j  (both row-major 3x3)
            for r in range(3):
                for cc in range(3):
                    rel[3 * r + cc] = (q[r] * points[j, cc]
                                       + q[3 + r] * points[j, 3 + cc]
                                       + q[6 + r] * points[j, 6 + cc])
            tr = rel[0] + rel[4] + rel[8]
            if tr + 1.0 <= 1e-10:
                domain_fail = True
                break
            c = 0.5 * (tr - 1.0)
            if c > 1.0:
                c = 1.0
            elif c < -1.0:
                c = -1.0
            ang = acos(c)
            if ang < 1e-4:
                factor = 1.0 + ang * ang / 6.0 + 7.0 * ang ** 4 / 360.0
            else:
                factor = ang / sin(ang)
            # skew part entries (upper triangle)
            wa = 0.5 * (rel[1] - rel[3]) * factor   # (0,1)
            wb = 0.5 * (rel[2] - rel[6]) * factor   # (0,2)
            wc = 0.5 * (rel[5] - rel[7]) * factor   # (1,2)
            wj = weights[j]
            s[1] += wj * wa
            s[3] -= wj * wa
            s[2] += wj * wb
            s[6] -= wj * wb
            s[5] += wj * wc
            s[7] -= wj * wc
            objective += wj * ang * ang  # = 0.5 * wj * dist^2, dist^2 = 2 ang^2
        if domain_fail:
            raise DomainError(
                "barycenter iterate reached a rotation angle of pi to a sample"
            )
        gnorm = sqrt(2.0 * (s[1] * s[1] + s[2] * s[2] + s[5] * s[5]))
        if have_prev and objective > prev + _MONO_SLACK * (1.0 + fabs(prev)):
            monotone = False
        prev = objective
        have_prev = True
        if gnorm <= tau or iters >= max_iter:
            break
        for i in range(9):
            step[i] = alpha * s[i]
        # Rodrigues form of exp for the skew step
        th = sqrt(step[1] * step[1] + step[2] * step[2] + step[5] * step[5])
        if th < 1e-4:
            c1 = 1.0 - th * th / 6.0 + th ** 4 / 120.0
            c2 = 0.5 - th * th / 24.0 + th ** 4 / 720.0
        else:
            c1 = sin(th) / th
            c2 = (1.0 - cos(th)) / (th * th)
        _mat_mul3(&step[0], &step[0], &rot[0])
        for i in range(9):
            rot[i] = c1 * step[i] + c2 * rot[i]
        rot[0] += 1.0
        rot[4] += 1.0
        rot[8] += 1.0
        _mat_mul3(&q[0], &rot[0], &qnew[0])
        for i in range(9):
            q[i] = qnew[i]
        iters += 1
    return q_arr, iters, gnorm, bool(monotone)
