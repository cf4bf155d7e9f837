"""Concrete manifolds: Euclidean space, the unit 2-sphere, and the
rotation group SO(3) in flattened 3x3 (row-major) coordinates."""

import numpy as np

from . import matfun
from .errors import AntipodalError, TangencyError
from .manifold import CONSTRAINT_TOL, Manifold

_ANTIPODAL_TOL = 1e-10


class Euclidean(Manifold):
    """Flat R^n: exp and log are affine."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("dimension must be positive")
        self.name = "euclidean"
        self.ambient_dim = n
        self.dim = n

    def exp(self, q, v):
        return np.asarray(q, dtype=float) + np.asarray(v, dtype=float)

    def log(self, q, p):
        return np.asarray(p, dtype=float) - np.asarray(q, dtype=float)

    def project_point(self, x):
        return np.asarray(x, dtype=float)

    def project_tangent(self, q, w):
        return np.asarray(w, dtype=float)

    def random_point(self, rng):
        return rng.standard_normal(self.ambient_dim)


class Sphere(Manifold):
    """Unit sphere S^2 embedded in R^3."""

    def __init__(self):
        self.name = "sphere"
        self.ambient_dim = 3
        self.dim = 2

    def constraint_violation(self, q):
        return abs(float(np.linalg.norm(q)) - 1.0)

    def exp(self, q, v):
        q = np.asarray(q, dtype=float)
        v = np.asarray(v, dtype=float)
        if abs(float(np.dot(q, v))) > CONSTRAINT_TOL * max(1.0, float(np.linalg.norm(v))):
            raise TangencyError("velocity is not tangent to the sphere at its base point")
        nv = float(np.linalg.norm(v))
        if nv < 1e-12:
            return q.copy()
        p = np.cos(nv) * q + (np.sin(nv) / nv) * v
        return p / np.linalg.norm(p)

    def log(self, q, p):
        q = np.asarray(q, dtype=float)
        p = np.asarray(p, dtype=float)
        c = float(np.dot(q, p))
        if c <= -1.0 + _ANTIPODAL_TOL:
            raise AntipodalError(
                "log undefined: points are (numerically) antipodal on the sphere"
            )
        w = p - c * q
        nw = float(np.linalg.norm(w))
        if nw < 1e-14:
            return w
        # atan2 form of arccos(<q,p>); better conditioned near 0
        return (np.arctan2(nw, c) / nw) * w

    def exp_many(self, q, vs):
        q = np.asarray(q, dtype=float)
        vs = np.asarray(vs, dtype=float)
        nv = np.linalg.norm(vs, axis=1)
        if np.any(np.abs(vs @ q) > CONSTRAINT_TOL * np.maximum(1.0, nv)):
            raise TangencyError("batch contains non-tangent velocities")
        tiny = nv < 1e-12
        safe = np.where(tiny, 1.0, nv)
        out = np.cos(nv)[:, None] * q[None, :] + (np.sin(safe) / safe)[:, None] * vs
        out[tiny] = q
        return out / np.linalg.norm(out, axis=1)[:, None]

    def project_point(self, x):
        x = np.asarray(x, dtype=float)
        return x / np.linalg.norm(x)

    def project_tangent(self, q, w):
        q = np.asarray(q, dtype=float)
        w = np.asarray(w, dtype=float)
        return w - float(np.dot(q, w)) * q

    def random_point(self, rng):
        return self.project_point(rng.standard_normal(3))


class Rotations3(Manifold):
    """SO(3) with points stored as flattened 3x3 row-major vectors.

    The metric is the Frobenius inner product of the ambient matrices,
    i.e. the bi-invariant metric inherited from R^{3x3}.
    """

    def __init__(self):
        self.name = "so3"
        self.ambient_dim = 9
        self.dim = 3

    @staticmethod
    def to_matrix(p):
        return np.asarray(p, dtype=float).reshape(3, 3)

    @staticmethod
    def from_matrix(m):
        return np.asarray(m, dtype=float).reshape(9)

    def constraint_violation(self, q):
        m = self.to_matrix(q)
        ortho = float(np.linalg.norm(m.T @ m - np.eye(3)))
        det = abs(float(np.linalg.det(m)) - 1.0)
        return max(ortho, det)

    def exp(self, q, v):
        qm = self.to_matrix(q)
        vm = self.to_matrix(v)
        gen = qm.T @ vm
        if float(np.linalg.norm(gen + gen.T)) > CONSTRAINT_TOL * max(
            1.0, float(np.linalg.norm(vm))
        ):
            raise TangencyError("velocity is not tangent to SO(3) at its base point")
        # closed-form matrix exponential of the skew generator
        return self.from_matrix(qm @ matfun.rodrigues(matfun.skew_part(gen)))

    def exp_many(self, q, vs):
        qm = self.to_matrix(q)
        vs = np.asarray(vs, dtype=float).reshape(-1, 3, 3)
        gens = np.matmul(qm.T[None, :, :], vs)
        skews = 0.5 * (gens - np.transpose(gens, (0, 2, 1)))
        sym = float(np.abs(gens + np.transpose(gens, (0, 2, 1))).max(initial=0.0))
        if sym > CONSTRAINT_TOL * max(1.0, float(np.abs(vs).max(initial=0.0)) * 3.0):
            raise TangencyError("batch contains non-tangent velocities")
        theta = np.sqrt(
            skews[:, 2, 1] ** 2 + skews[:, 0, 2] ** 2 + skews[:, 1, 0] ** 2
        )
        small = theta < 1e-4
        c1 = np.where(small, 1.0 - theta**2 / 6.0 + theta**4 / 120.0,
                      np.sin(theta) / np.where(small, 1.0, theta))
        c2 = np.where(small, 0.5 - theta**2 / 24.0 + theta**4 / 720.0,
                      (1.0 - np.cos(theta)) / np.where(small, 1.0, theta**2))
        rot = (
            np.eye(3)[None, :, :]
            + c1[:, None, None] * skews
            + c2[:, None, None] * np.matmul(skews, skews)
        )
        return np.matmul(qm[None, :, :], rot).reshape(-1, 9)

    def log(self, q, p):
        qm = self.to_matrix(q)
        pm = self.to_matrix(p)
        return self.from_matrix(qm @ matfun.logm_rotation(qm.T @ pm))

    def project_point(self, x):
        # polar factor via SVD, with a determinant fix for safety
        u, _, vt = np.linalg.svd(self.to_matrix(x))
        r = u @ vt
        if np.linalg.det(r) < 0.0:
            u[:, -1] = -u[:, -1]
            r = u @ vt
        return self.from_matrix(r)

    def project_tangent(self, q, w):
        qm = self.to_matrix(q)
        wm = self.to_matrix(w)
        return self.from_matrix(qm @ matfun.skew_part(qm.T @ wm))

    def random_point(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        if np.linalg.det(q) < 0.0:
            q[:, -1] = -q[:, -1]
        return self.from_matrix(q)


_REGISTRY = {
    "sphere": Sphere,
    "so3": Rotations3,
}


def make_manifold(name, dim=None):
    """Instantiate a manifold by registry name ('sphere', 'so3', 'euclidean')."""
    if name == "euclidean":
        return Euclidean(3 if dim is None else dim)
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise ValueError(f"unknown manifold {name!r}; available: euclidean, sphere, so3")


def manifold_names():
    return ["euclidean", "sphere", "so3"]
