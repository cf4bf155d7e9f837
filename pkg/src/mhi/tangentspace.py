"""Hermite interpolation in a single tangent space.

All sampled locations are mapped into the tangent space at a chosen base
point and the sampled derivatives are carried over with a symmetric
finite-difference approximation of the differential of the log map.
Interpolation then happens coordinate-free in that vector space with one
scalar coefficient model per mapped point and per transported derivative;
the combined tangent vector is pushed back through the exponential.
"""

import numpy as np

from . import backend, gek
from .barycentric import DescentSettings, bary_descent
from .gek import HermiteScalarData
from .manifold import dlog_fd

#: Settings for the barycenter solve behind the default base-point rule.
_BASE_SETTINGS = DescentSettings(step_size=1.0, tolerance=1e-10, max_iterations=1000)


def choose_base(samples, manifold, rule="barycenter", settings=_BASE_SETTINGS):
    """Pick the tangent-space base point.

    ``rule`` is either an integer sample index or ``"barycenter"`` for
    the uniform-weight Riemannian barycenter of the sample points.
    """
    if isinstance(rule, (int, np.integer)):
        return samples.points[int(rule)].copy()
    if rule == "barycenter":
        k = samples.k
        weights = np.full(k, 1.0 / k)
        result = bary_descent(
            manifold, samples.points, weights, samples.points[0], settings
        )
        return result.point
    raise ValueError(f"unknown base rule {rule!r}; use an index or 'barycenter'")


class TangentModel:
    """Fitted tangent-space Hermite interpolant.

    Immutable after construction; queries are pure functions of omega.
    """

    def __init__(self, manifold, base, mapped_points, transported, models, theta, dt):
        self.manifold = manifold
        self.base = base
        self.mapped_points = mapped_points      # (k, N) log images
        self.transported = transported          # (k, d, N) carried derivatives
        self.models = models                    # k point models + k*d derivative models
        self.theta = theta
        self.dt = dt
        d = transported.shape[1]
        self._plan = models[0].plan
        self._trend = np.array([m.trend for m in models])
        self._dual = np.column_stack([m.dual_weights for m in models])
        # rows: the k mapped points, then the k derivative rows per axis
        self._tangents = np.vstack(
            [mapped_points] + [transported[:, i, :] for i in range(d)]
        )

    @property
    def k(self):
        return self.mapped_points.shape[0]

    def coefficients_at(self, omega):
        """All k(d+1) coefficient functions evaluated at one location."""
        omega = np.ascontiguousarray(omega, dtype=float)
        r = backend.corr_vector(self._plan.locations, self.theta, omega)
        return self._trend + r @ self._dual

    def query(self, omega):
        coeffs = self.coefficients_at(omega)
        tangent = coeffs @ self._tangents
        # a single exp leaves no drift to repair, so no projection here
        return self.manifold.exp(self.base, tangent)

    def query_many(self, omegas):
        """Evaluate at a batch of locations; rows are interpolated points."""
        r = gek.corr_vectors(self._plan, self.theta, omegas)
        coeffs = self._trend[None, :] + r @ self._dual
        return self.manifold.exp_many(self.base, coeffs @ self._tangents)


def fit(samples, manifold, theta, base_rule="barycenter", dt=1e-4,
        nugget=gek.DEFAULT_NUGGET):
    """Build the tangent-space Hermite interpolant.

    Fits k(d+1) scalar GEK models on the shared plan: the model for
    mapped point j interpolates value data e_j with zero gradients, and
    the model for derivative (axis i, sample l) interpolates zero values
    with gradient data e_l on axis i only.
    """
    samples.validate(manifold)
    k, d = samples.k, samples.plan.d
    base = choose_base(samples, manifold, base_rule)

    mapped = np.stack([manifold.log(base, samples.points[j]) for j in range(k)])
    transported = np.empty_like(samples.derivatives)
    for l in range(k):
        for i in range(d):
            transported[l, i] = dlog_fd(
                manifold, base, samples.points[l], samples.derivatives[l, i], dt
            )

    models = []
    zero_grad = np.zeros((k, d))
    for j in range(k):
        values = np.zeros(k)
        values[j] = 1.0
        data = HermiteScalarData(values=values, gradients=zero_grad)
        models.append(gek.fit(samples.plan, data, theta, nugget=nugget))
    zero_values = np.zeros(k)
    for i in range(d):
        for l in range(k):
            gradients = np.zeros((k, d))
            gradients[l, i] = 1.0
            data = HermiteScalarData(values=zero_values, gradients=gradients)
            models.append(gek.fit(samples.plan, data, theta, nugget=nugget))

    theta = np.ascontiguousarray(theta, dtype=float)
    return TangentModel(manifold, base, mapped, transported, models, theta, dt)
