"""Gradient-enhanced Kriging with the compactly supported cubic
correlation model at fixed hyperparameters.

One model interpolates a scalar function from values and gradients at k
sample locations.  The augmented correlation matrix couples value and
gradient observations through the kernel's first and second derivatives;
a constant trend is estimated by generalized least squares, which makes
the predictor reproduce constants exactly (and hence lets families of
models form exact partitions of unity).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from . import backend
from .errors import ConditioningError

DEFAULT_NUGGET = 1e-12
_REFINEMENT_STEPS = 2


@dataclass(frozen=True)
class SamplePlan:
    """Sample locations omega_1..omega_k in R^d."""

    locations: np.ndarray

    def __post_init__(self):
        loc = np.ascontiguousarray(self.locations, dtype=float)
        if loc.ndim != 2:
            raise ValueError("locations must be a (k, d) array")
        object.__setattr__(self, "locations", loc)
        if self.k >= 2:
            diffs = loc[:, None, :] - loc[None, :, :]
            gaps = np.abs(diffs).max(axis=2) + np.eye(self.k)
            if gaps.min() <= 1e-12:
                raise ValueError("sample locations must be pairwise distinct")

    @property
    def k(self):
        return self.locations.shape[0]

    @property
    def d(self):
        return self.locations.shape[1]


@dataclass(frozen=True)
class HermiteScalarData:
    """Scalar Hermite data: values y_j and gradients g_{j,i} at the plan."""

    values: np.ndarray
    gradients: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        gradients = np.asarray(self.gradients, dtype=float)
        if values.ndim != 1 or gradients.ndim != 2 or gradients.shape[0] != values.shape[0]:
            raise ValueError("values must be (k,) and gradients (k, d)")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(gradients))):
            raise ValueError("Hermite data must be finite")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "gradients", gradients)

    def stacked(self):
        """Augmented data vector: value pack, then one pack per axis."""
        return np.concatenate([self.values, self.gradients.T.reshape(-1)])


# -- cubic correlation and its derivatives --------------------------------


def _pieces(theta, t):
    """Per-axis kernel pieces rho, d rho/dt, d^2 rho/dt^2 at lag t."""
    theta = np.asarray(theta, dtype=float)
    t = np.asarray(t, dtype=float)
    u = theta * np.abs(t)
    inside = u < 1.0
    rho = np.where(inside, 1.0 - 3.0 * u**2 + 2.0 * u**3, 0.0)
    drho = np.where(inside, 6.0 * theta * np.sign(t) * u * (u - 1.0), 0.0)
    ddrho = np.where(inside, theta**2 * (12.0 * u - 6.0), 0.0)
    return rho, drho, ddrho


def cubic_corr(theta, a, b):
    """Product cubic correlation of two locations.

    Each axis contributes 1 - 3u^2 + 2u^3 with u = theta_l * |a_l - b_l|,
    cut to zero once u >= 1.
    """
    rho, _, _ = _pieces(theta, np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    return float(np.prod(rho))


def cubic_corr_d1(theta, a, b):
    """Gradient of ``cubic_corr`` with respect to ``b``."""
    t = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    rho, drho, _ = _pieces(theta, t)
    d = t.shape[0]
    out = np.empty(d)
    for i in range(d):
        others = np.prod(np.delete(rho, i))
        out[i] = -drho[i] * others
    return out


def cubic_corr_d2(theta, a, b):
    """Mixed second derivative matrix d^2/da db of ``cubic_corr``."""
    t = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    rho, drho, ddrho = _pieces(theta, t)
    d = t.shape[0]
    out = np.empty((d, d))
    for i in range(d):
        for j in range(d):
            if i == j:
                out[i, i] = -ddrho[i] * np.prod(np.delete(rho, i))
            else:
                mask = np.ones(d, dtype=bool)
                mask[[i, j]] = False
                out[i, j] = -drho[i] * drho[j] * np.prod(rho[mask])
    return out


def corr_vectors(plan, theta, omegas):
    """Correlation vectors of many query locations at once, shape (n, K)."""
    omegas = np.ascontiguousarray(omegas, dtype=float)
    theta = np.ascontiguousarray(theta, dtype=float)
    return backend.corr_vectors(plan.locations, theta, omegas)


def corr_matrix(plan, theta, nugget=0.0):
    """Augmented correlation matrix over value and gradient slots.

    Slot layout matches ``HermiteScalarData.stacked``: k value slots
    followed by k gradient slots per axis.
    """
    loc = plan.locations
    k, d = plan.k, plan.d
    t = loc[:, None, :] - loc[None, :, :]  # (k, k, d)
    rho, drho, ddrho = _pieces(theta, t)
    full = np.prod(rho, axis=2)  # (k, k)

    def excl(i):
        cols = [a for a in range(d) if a != i]
        return np.prod(rho[:, :, cols], axis=2) if cols else np.ones((k, k))

    m = np.empty((k * (d + 1), k * (d + 1)))
    m[:k, :k] = full
    for i in range(d):
        vg = -drho[:, :, i] * excl(i)  # value row, gradient column (axis i)
        m[:k, k * (i + 1) : k * (i + 2)] = vg
        m[k * (i + 1) : k * (i + 2), :k] = vg.T
    for i in range(d):
        for j in range(i, d):
            if i == j:
                gg = -ddrho[:, :, i] * excl(i)
            else:
                cols = [a for a in range(d) if a != i and a != j]
                rest = np.prod(rho[:, :, cols], axis=2) if cols else np.ones((k, k))
                gg = -drho[:, :, i] * drho[:, :, j] * rest
            m[k * (i + 1) : k * (i + 2), k * (j + 1) : k * (j + 2)] = gg
            if i != j:
                m[k * (j + 1) : k * (j + 2), k * (i + 1) : k * (i + 2)] = gg.T
    if nugget:
        m[np.diag_indices_from(m)] += nugget
    return m


# -- model -----------------------------------------------------------------


@dataclass(frozen=True)
class GekModel:
    """A fitted gradient-enhanced Kriging interpolant.

    ``dual_weights`` is the solve of the augmented correlation system
    against the de-trended data, so prediction is a dot product with the
    correlation vector of the query location.
    """

    plan: SamplePlan
    theta: np.ndarray
    trend: float
    dual_weights: np.ndarray
    factorization: tuple = field(repr=False)

    def predict(self, omega):
        omega = np.ascontiguousarray(omega, dtype=float)
        r = backend.corr_vector(self.plan.locations, self.theta, omega)
        return self.trend + float(r @ self.dual_weights)

    def predict_partial(self, omega, axis):
        omega = np.ascontiguousarray(omega, dtype=float)
        r = backend.corr_vector_partial(self.plan.locations, self.theta, omega, axis)
        return float(r @ self.dual_weights)


def _solve_refined(factorization, matrix, rhs):
    """Solve against the unshifted matrix, using the nugget-shifted
    Cholesky factor as a preconditioner with iterative refinement.

    Dense sample plans make the augmented matrix ill-conditioned; the
    refinement keeps the solve residual (and hence the Hermite-data
    reproduction error) at the double-precision floor instead of the
    nugget level.
    """
    x = cho_solve(factorization, rhs)
    for _ in range(_REFINEMENT_STEPS):
        x = x + cho_solve(factorization, rhs - matrix @ x)
    return x


def fit(plan, data, theta, nugget=DEFAULT_NUGGET):
    """Fit one GEK model to scalar Hermite data.

    Assembles the augmented correlation matrix, factors a
    nugget-shifted copy, and estimates the constant trend by generalized
    least squares against the augmented regressor (ones at value slots,
    zeros elsewhere).
    """
    theta = np.ascontiguousarray(theta, dtype=float)
    if theta.shape != (plan.d,) or np.any(theta <= 0.0):
        raise ValueError("theta must hold one positive scale per axis")
    if data.values.shape[0] != plan.k or data.gradients.shape != (plan.k, plan.d):
        raise ValueError("Hermite data does not match the sample plan")

    matrix = corr_matrix(plan, theta)
    if nugget:
        shifted = matrix.copy()
        shifted[np.diag_indices_from(shifted)] += nugget
    else:
        shifted = matrix
    try:
        factorization = cho_factor(shifted, lower=True)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(
            "augmented correlation matrix could not be factored",
            condition_estimate=float(np.linalg.cond(shifted)),
        ) from exc

    regressor = np.zeros(plan.k * (plan.d + 1))
    regressor[: plan.k] = 1.0
    y = data.stacked()
    ri_f = _solve_refined(factorization, matrix, regressor)
    trend = float(ri_f @ y) / float(ri_f @ regressor)
    dual = _solve_refined(factorization, matrix, y - trend * regressor)
    return GekModel(
        plan=plan,
        theta=theta,
        trend=trend,
        dual_weights=dual,
        factorization=factorization,
    )
