"""Riemannian manifold contract in extrinsic coordinates.

Points and tangent vectors are plain 1-D float arrays of length
``ambient_dim``; tangent vectors are understood relative to an explicit
base point. Every operation is a pure function, so manifold objects can
be shared freely between threads.
"""

from abc import ABC, abstractmethod

import numpy as np

from .errors import TangencyError

#: Tolerance for the manifold's defining constraint and for tangency.
CONSTRAINT_TOL = 1e-10


class Manifold(ABC):
    """Abstract manifold: exponential/logarithm maps plus the metric.

    Subclasses fix ``name``, ``ambient_dim`` (length of the extrinsic
    coordinate vectors) and ``dim`` (intrinsic dimension).
    """

    name: str
    ambient_dim: int
    dim: int

    # -- metric ----------------------------------------------------------
    def inner(self, q, u, v):
        """Riemannian inner product at ``q`` (ambient dot product here)."""
        return float(np.dot(u, v))

    def norm(self, q, v):
        return float(np.sqrt(self.inner(q, v, v)))

    def dist(self, q, p):
        """Geodesic distance; equals the norm of ``log(q, p)``."""
        return self.norm(q, self.log(q, p))

    # -- maps ------------------------------------------------------------
    @abstractmethod
    def exp(self, q, v):
        """Point reached at time 1 along the geodesic from ``q`` with
        initial velocity ``v``."""

    @abstractmethod
    def log(self, q, p):
        """Initial velocity of the minimizing geodesic from ``q`` to ``p``."""

    def exp_many(self, q, vs):
        """exp at a fixed base for a batch of tangent vectors (rows)."""
        return np.stack([self.exp(q, v) for v in np.asarray(vs, dtype=float)])

    # -- constraint repair -------------------------------------------------
    @abstractmethod
    def project_point(self, x):
        """Metric projection of an ambient vector onto the manifold."""

    @abstractmethod
    def project_tangent(self, q, w):
        """Orthogonal projection of an ambient vector onto T_q."""

    # -- validation --------------------------------------------------------
    def constraint_violation(self, q):
        """Magnitude of the defining-constraint residual at ``q``."""
        return 0.0

    def check_point(self, q, tol=CONSTRAINT_TOL):
        err = self.constraint_violation(q)
        if err > tol:
            raise ValueError(
                f"point violates the {self.name} constraint by {err:.3e} (tol {tol:.1e})"
            )

    def tangency_violation(self, q, v):
        """Distance of ``v`` from T_q, measured in the ambient norm."""
        return float(np.linalg.norm(v - self.project_tangent(q, v)))

    def check_tangent(self, q, v, tol=CONSTRAINT_TOL):
        err = self.tangency_violation(q, v)
        if err > tol * max(1.0, float(np.linalg.norm(v))):
            raise TangencyError(
                f"vector is not tangent at the given {self.name} point "
                f"(violation {err:.3e}, tol {tol:.1e})"
            )

    # -- sampling (test and diagnostics support) ---------------------------
    @abstractmethod
    def random_point(self, rng):
        """Draw a random point (distribution is implementation-defined)."""

    def random_tangent(self, rng, q, scale=1.0):
        """Random tangent vector at ``q`` with norm ``scale``."""
        v = self.project_tangent(q, rng.standard_normal(self.ambient_dim))
        n = np.linalg.norm(v)
        if n < 1e-14:  # essentially impossible; retry once
            v = self.project_tangent(q, rng.standard_normal(self.ambient_dim))
            n = np.linalg.norm(v)
        return v * (scale / n)

    def __repr__(self):
        return f"{type(self).__name__}(name={self.name!r}, N={self.ambient_dim}, m={self.dim})"


def dlog_fd(manifold, q0, p, v, dt=1e-4):
    """Finite-difference approximation of the differential of log.

    Approximates d(log_{q0})_p applied to the tangent vector ``v`` at
    ``p`` by the symmetric difference

        [log_{q0}(exp_p(dt*v)) - log_{q0}(exp_p(-dt*v))] / (2*dt),

    a tangent vector at ``q0`` with O(dt^2) truncation error. Both
    displaced points must stay inside the log domain of ``q0``.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    fwd = manifold.log(q0, manifold.exp(p, dt * v))
    bwd = manifold.log(q0, manifold.exp(p, -dt * v))
    return manifold.project_tangent(q0, (fwd - bwd) / (2.0 * dt))


def fd_partial(g, omega, axis, step):
    """Central difference of a map R^d -> R^N along one parameter axis."""
    if step <= 0.0:
        raise ValueError("step must be positive")
    omega = np.asarray(omega, dtype=float)
    h = np.zeros_like(omega)
    h[axis] = step
    return (np.asarray(g(omega + h), dtype=float) - np.asarray(g(omega - h), dtype=float)) / (
        2.0 * step
    )
