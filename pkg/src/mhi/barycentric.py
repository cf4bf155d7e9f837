"""Hermite interpolation via weighted Riemannian barycenters.

Offline, the partial derivatives of the k interpolation weight functions
are chosen so that the barycentric interpolant meets the sampled tangent
vectors: at each sample, the sampled derivative is expressed as a
combination of log images of the other samples, with the combination
coefficients summing to zero and having minimal 2-norm.  The weight
functions themselves are GEK models with unit-vector value data.

Online, a query evaluates the weight functions and runs a fixed-step
gradient descent for the weighted barycenter.
"""

from dataclasses import dataclass

import numpy as np

from . import backend, gek
from .errors import (
    DegenerateConstraintError,
    NonConvergenceError,
    SpanError,
)
from .gek import HermiteScalarData, SamplePlan


@dataclass(frozen=True)
class HermiteSampleSet:
    """Manifold-valued Hermite data.

    ``points`` holds one extrinsic coordinate row per sample location and
    ``derivatives[l, i]`` the sampled partial derivative along parameter
    axis i, tangent at ``points[l]``.
    """

    plan: SamplePlan
    points: np.ndarray
    derivatives: np.ndarray

    def __post_init__(self):
        points = np.ascontiguousarray(self.points, dtype=float)
        derivs = np.ascontiguousarray(self.derivatives, dtype=float)
        k, d = self.plan.k, self.plan.d
        if points.ndim != 2 or points.shape[0] != k:
            raise ValueError(f"points must be (k={k}, N)")
        if derivs.shape != (k, d, points.shape[1]):
            raise ValueError(f"derivatives must be (k={k}, d={d}, N={points.shape[1]})")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "derivatives", derivs)

    @property
    def k(self):
        return self.plan.k

    @property
    def ambient_dim(self):
        return self.points.shape[1]

    def validate(self, manifold, tol=1e-10):
        """Check the manifold constraint and tangency of every sample."""
        for l in range(self.k):
            manifold.check_point(self.points[l], tol)
            for i in range(self.plan.d):
                manifold.check_tangent(self.points[l], self.derivatives[l, i], tol)


@dataclass(frozen=True)
class DescentSettings:
    step_size: float = 1.0
    tolerance: float = 1e-8
    max_iterations: int = 500


@dataclass(frozen=True)
class QueryResult:
    point: np.ndarray
    iterations: int
    gradient_norm: float
    monotone: bool


def _min_norm_sum_zero(x_mat, v, span_context):
    """Minimum-2-norm c with x_mat @ c = v and sum(c) = 0.

    Solved through the reduced SVD of ``x_mat``: the particular solution
    is corrected along the null space so the coefficients sum to zero,
    which keeps the closed form free of any extra factorization.
    """
    n_cols = x_mat.shape[1]
    u, sigma, vt = np.linalg.svd(x_mat, full_matrices=False)
    cutoff = max(x_mat.shape) * np.finfo(float).eps * (sigma[0] if sigma.size else 0.0)
    rank = int(np.sum(sigma > cutoff))
    u_r = u[:, :rank]
    sigma_r = sigma[:rank]
    v_r = vt[:rank].T  # (n_cols, rank)

    v_tilde = u_r.T @ v
    residual = float(np.linalg.norm(v - u_r @ v_tilde))
    tol = max(1e-8 * float(np.linalg.norm(v)), 1e-12)
    if residual > tol:
        raise SpanError(span_context[0], span_context[1], residual, tol)

    ones = np.ones(n_cols)
    vt_ones = v_r.T @ ones
    s = n_cols - float(vt_ones @ vt_ones)
    if s <= 1e-12:
        raise DegenerateConstraintError(
            "the all-ones direction lies in the row space; cannot enforce a "
            "zero-sum correction"
        )
    x = v_r @ (v_tilde / sigma_r)
    return x + (float(ones @ x) / s) * (v_r @ vt_ones - ones)


def weight_derivatives(samples, manifold):
    """Partial derivatives of the weight functions at the sample locations.

    Returns w with shape (k, k, d): w[l, j, i] is the derivative along
    axis i of weight function j, evaluated at sample location l. Each
    row has w[l, l, i] = 0 and sums to zero over j.
    """
    k, d = samples.k, samples.plan.d
    if k < manifold.dim + 2:
        raise ValueError(
            f"need at least dim+2 = {manifold.dim + 2} samples on {manifold.name}, got {k}"
        )
    out = np.zeros((k, k, d))
    for l in range(k):
        base = samples.points[l]
        others = [j for j in range(k) if j != l]
        x_mat = np.column_stack([manifold.log(base, samples.points[j]) for j in others])
        for i in range(d):
            c = _min_norm_sum_zero(x_mat, samples.derivatives[l, i], (l, i))
            out[l, others, i] = c
    return out


def bary_gradient(manifold, points, weights, q):
    """Gradient of the weighted half-sum of squared distances at ``q``."""
    grad = np.zeros(manifold.ambient_dim)
    for j in range(points.shape[0]):
        grad -= weights[j] * manifold.log(q, points[j])
    return grad


_DESCENT_KERNELS = {
    "euclidean": backend.euclidean_descent,
    "sphere": backend.sphere_descent,
    "so3": backend.so3_descent,
}


def _generic_descent(manifold, points, weights, q0, alpha, tau, max_iter):
    # reference path for manifolds without a specialized kernel
    q = np.array(q0, dtype=float)
    monotone = True
    prev = None
    iters = 0
    while True:
        logs = np.stack([manifold.log(q, points[j]) for j in range(points.shape[0])])
        s = weights @ logs
        gnorm = float(np.linalg.norm(s))
        objective = 0.5 * float(weights @ np.sum(logs**2, axis=1))
        if prev is not None and objective > prev + 1e-13 * (1.0 + abs(prev)):
            monotone = False
        prev = objective
        if gnorm <= tau or iters >= max_iter:
            return q, iters, gnorm, monotone
        q = manifold.project_point(manifold.exp(q, alpha * s))
        iters += 1


def bary_descent(manifold, points, weights, q0, settings):
    """Fixed-step gradient descent for the weighted barycenter.

    Raises NonConvergenceError when the gradient norm is still above
    tolerance after the iteration cap.
    """
    points = np.ascontiguousarray(points, dtype=float)
    weights = np.ascontiguousarray(weights, dtype=float)
    q0 = np.ascontiguousarray(q0, dtype=float)
    kernel = _DESCENT_KERNELS.get(manifold.name, None)
    if kernel is None:
        kernel = lambda *args: _generic_descent(manifold, *args)  # noqa: E731
    q, iters, gnorm, monotone = kernel(
        points, weights, q0,
        settings.step_size, settings.tolerance, settings.max_iterations,
    )
    if gnorm > settings.tolerance:
        raise NonConvergenceError(gnorm, iters, settings.tolerance)
    return QueryResult(manifold.project_point(q), iters, gnorm, monotone)


class BarycentricModel:
    """Fitted barycentric Hermite interpolant.

    Queries are served from a warm start: each accepted minimizer seeds
    the next search, which matches evaluation on a coherently ordered
    grid. With ``stateless=True`` every query starts from the first
    sample point instead and queries become pure (safe to parallelize).
    """

    def __init__(self, samples, manifold, weight_models, settings, stateless=False):
        self.samples = samples
        self.manifold = manifold
        self.weight_models = weight_models
        self.settings = settings
        self.stateless = stateless
        self.theta = weight_models[0].theta
        self._trend = np.array([m.trend for m in weight_models])
        self._dual = np.column_stack([m.dual_weights for m in weight_models])
        self._warm_start = samples.points[0].copy()

    @property
    def k(self):
        return self.samples.k

    def weights_at(self, omega):
        """Evaluate all k weight functions at one location."""
        omega = np.ascontiguousarray(omega, dtype=float)
        r = backend.corr_vector(self.samples.plan.locations, self.theta, omega)
        return self._trend + r @ self._dual

    def query_detailed(self, omega):
        weights = self.weights_at(omega)
        start = self.samples.points[0] if self.stateless else self._warm_start
        result = bary_descent(
            self.manifold, self.samples.points, weights, start, self.settings
        )
        if not self.stateless:
            self._warm_start = result.point
        return result

    def query(self, omega):
        return self.query_detailed(omega).point

    def reset_warm_start(self):
        self._warm_start = self.samples.points[0].copy()


def fit(samples, manifold, theta, settings=DescentSettings(), stateless=False,
        nugget=gek.DEFAULT_NUGGET):
    """Build the barycentric Hermite interpolant.

    The k weight functions get unit-vector value data (weight j is 1 at
    sample j, 0 elsewhere) and the derivative data produced by
    ``weight_derivatives``, fitted as GEK models on the shared plan.
    """
    samples.validate(manifold)
    derivs = weight_derivatives(samples, manifold)
    models = []
    for j in range(samples.k):
        values = np.zeros(samples.k)
        values[j] = 1.0
        data = HermiteScalarData(values=values, gradients=derivs[:, j, :])
        models.append(gek.fit(samples.plan, data, theta, nugget=nugget))
    return BarycentricModel(samples, manifold, models, settings, stateless=stateless)
