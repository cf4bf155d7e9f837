"""NumPy implementations of the hot kernels.

This module mirrors the compiled extension ``mhi._kernels`` one to one;
``mhi.backend`` picks whichever is available. Each descent kernel runs
the full fixed-step gradient iteration for one query and returns

    (point, iterations, gradient_norm, monotone)

where ``monotone`` records whether the objective ever increased between
accepted iterates. Non-convergence is signalled by returning with
``gradient_norm > tau`` after ``max_iter`` steps; raising is left to the
caller.
"""

import numpy as np

from .errors import AntipodalError, DomainError

BACKEND_NAME = "python"

_ANTIPODAL_TOL = 1e-10


def _cubic_pieces(theta, t):
    """Per-axis cubic correlation values and t-derivatives.

    Returns (rho, drho, ddrho) for the compactly supported cubic
    1 - 3u^2 + 2u^3 with u = theta*|t|, all zero outside u < 1.
    """
    u = theta * np.abs(t)
    inside = u < 1.0
    rho = np.where(inside, 1.0 - 3.0 * u**2 + 2.0 * u**3, 0.0)
    drho = np.where(inside, 6.0 * theta * np.sign(t) * u * (u - 1.0), 0.0)
    ddrho = np.where(inside, theta**2 * (12.0 * u - 6.0), 0.0)
    return rho, drho, ddrho


def _prod_excluding(rho):
    """prod_excl[..., i] = product of rho over axes != i."""
    d = rho.shape[-1]
    out = np.empty_like(rho)
    for i in range(d):
        cols = [a for a in range(d) if a != i]
        out[..., i] = np.prod(rho[..., cols], axis=-1) if cols else 1.0
    return out


def corr_vector(plan, theta, omega):
    """Correlation vector of a query location against all augmented slots.

    Slot layout: k value slots, then k gradient slots per axis
    (axis-major). Gradient slots hold the derivative of the correlation
    with respect to the sample's coordinate.
    """
    plan = np.asarray(plan, dtype=float)
    theta = np.asarray(theta, dtype=float)
    k, d = plan.shape
    t = np.asarray(omega, dtype=float)[None, :] - plan  # (k, d)
    rho, drho, _ = _cubic_pieces(theta, t)
    excl = _prod_excluding(rho)
    out = np.empty(k * (d + 1))
    out[:k] = np.prod(rho, axis=1)
    for i in range(d):
        # d/d(sample coordinate i) of the correlation = -drho_i(t) * prod_{a != i} rho_a
        out[k * (i + 1) : k * (i + 2)] = -drho[:, i] * excl[:, i]
    return out


def corr_vectors(plan, theta, omegas):
    """Correlation vectors for a batch of query locations, shape (n, K)."""
    plan = np.asarray(plan, dtype=float)
    theta = np.asarray(theta, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    k, d = plan.shape
    t = omegas[:, None, :] - plan[None, :, :]  # (n, k, d)
    rho, drho, _ = _cubic_pieces(theta, t)
    out = np.empty((omegas.shape[0], k * (d + 1)))
    out[:, :k] = np.prod(rho, axis=2)
    for i in range(d):
        cols = [a for a in range(d) if a != i]
        excl = np.prod(rho[:, :, cols], axis=2) if cols else 1.0
        out[:, k * (i + 1) : k * (i + 2)] = -drho[:, :, i] * excl
    return out


def corr_vector_partial(plan, theta, omega, axis):
    """Partial derivative of ``corr_vector`` with respect to the query
    coordinate ``axis``."""
    plan = np.asarray(plan, dtype=float)
    theta = np.asarray(theta, dtype=float)
    k, d = plan.shape
    t = np.asarray(omega, dtype=float)[None, :] - plan
    rho, drho, ddrho = _cubic_pieces(theta, t)
    excl = _prod_excluding(rho)
    out = np.empty(k * (d + 1))
    out[:k] = drho[:, axis] * excl[:, axis]
    for i in range(d):
        if i == axis:
            block = -ddrho[:, i] * excl[:, i]
        else:
            cols = [a for a in range(d) if a != i and a != axis]
            rest = np.prod(rho[:, cols], axis=1) if cols else 1.0
            block = -drho[:, axis] * drho[:, i] * rest
        out[k * (i + 1) : k * (i + 2)] = block
    return out


def _monotone_update(value, previous, monotone):
    slack = 1e-13 * (1.0 + abs(previous))
    if value > previous + slack:
        monotone = False
    return value, monotone


def euclidean_descent(points, weights, q0, alpha, tau, max_iter):
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    q = np.array(q0, dtype=float)

    def grad_state(q):
        diffs = points - q[None, :]
        s = weights @ diffs  # minus the gradient
        objective = 0.5 * float(weights @ np.sum(diffs**2, axis=1))
        return s, float(np.linalg.norm(s)), objective

    s, gnorm, objective = grad_state(q)
    prev = objective
    monotone = True
    iters = 0
    while gnorm > tau and iters < max_iter:
        q = q + alpha * s
        iters += 1
        s, gnorm, objective = grad_state(q)
        prev, monotone = _monotone_update(objective, prev, monotone)
    return q, iters, gnorm, monotone


def sphere_descent(points, weights, q0, alpha, tau, max_iter):
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    q = np.array(q0, dtype=float)

    def grad_state(q):
        c = points @ q
        if np.any(c <= -1.0 + _ANTIPODAL_TOL):
            raise AntipodalError(
                "barycenter iterate became antipodal to a sample point"
            )
        w = points - c[:, None] * q[None, :]
        nw = np.linalg.norm(w, axis=1)
        ang = np.arctan2(nw, c)
        factor = np.where(nw > 1e-300, ang / np.where(nw > 1e-300, nw, 1.0), 1.0)
        logs = factor[:, None] * w
        s = weights @ logs  # minus the gradient
        objective = 0.5 * float(weights @ ang**2)
        return s, float(np.linalg.norm(s)), objective

    s, gnorm, objective = grad_state(q)
    prev = objective
    monotone = True
    iters = 0
    while gnorm > tau and iters < max_iter:
        step = alpha * s
        nv = float(np.linalg.norm(step))
        q = np.cos(nv) * q + (np.sin(nv) / nv) * step
        q /= np.linalg.norm(q)
        iters += 1
        s, gnorm, objective = grad_state(q)
        prev, monotone = _monotone_update(objective, prev, monotone)
    return q, iters, gnorm, monotone


def _rodrigues_batchless(s):
    theta = np.sqrt(s[2, 1] ** 2 + s[0, 2] ** 2 + s[1, 0] ** 2)
    if theta < 1e-4:
        c1 = 1.0 - theta**2 / 6.0 + theta**4 / 120.0
        c2 = 0.5 - theta**2 / 24.0 + theta**4 / 720.0
    else:
        c1 = np.sin(theta) / theta
        c2 = (1.0 - np.cos(theta)) / theta**2
    return np.eye(3) + c1 * s + c2 * (s @ s)


def so3_descent(points, weights, q0, alpha, tau, max_iter):
    k = points.shape[0]
    pts = np.asarray(points, dtype=float).reshape(k, 3, 3)
    weights = np.asarray(weights, dtype=float)
    q = np.array(q0, dtype=float).reshape(3, 3)

    def grad_state(q):
        rel = np.matmul(q.T[None, :, :], pts)  # Q^T P_j
        tr = rel[:, 0, 0] + rel[:, 1, 1] + rel[:, 2, 2]
        if np.any(tr + 1.0 <= 1e-10):
            raise DomainError(
                "barycenter iterate reached a rotation angle of pi to a sample"
            )
        c = np.clip(0.5 * (tr - 1.0), -1.0, 1.0)
        ang = np.arccos(c)
        w = 0.5 * (rel - np.transpose(rel, (0, 2, 1)))
        small = ang < 1e-4
        safe = np.where(small, 1.0, ang)
        factor = np.where(
            small, 1.0 + ang**2 / 6.0 + 7.0 * ang**4 / 360.0, ang / np.sin(safe)
        )
        gens = factor[:, None, None] * w  # log_m(Q^T P_j)
        s = np.tensordot(weights, gens, axes=1)  # skew, = Q^T (-grad)
        # Frobenius norms: |Q S|_F = |S|_F, geodesic distance = sqrt(2)*angle
        objective = 0.5 * float(weights @ (2.0 * ang**2))
        return s, float(np.linalg.norm(s)), objective

    s, gnorm, objective = grad_state(q)
    prev = objective
    monotone = True
    iters = 0
    while gnorm > tau and iters < max_iter:
        q = q @ _rodrigues_batchless(alpha * s)
        iters += 1
        s, gnorm, objective = grad_state(q)
        prev, monotone = _monotone_update(objective, prev, monotone)
    return q.reshape(9), iters, gnorm, monotone
