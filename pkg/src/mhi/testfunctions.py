"""Reference test functions with analytic partial derivatives.

Each entry maps a 2-D parameter to a manifold point in extrinsic
coordinates. Partials of the rotation-valued function are evaluated
through the block upper-triangular exponential identity, which gives the
directional derivative of expm without differentiating the algorithm.
"""

import numpy as np

from . import matfun


def helicoid_gauss(omega):
    """Unit normal field of the helicoid, a map into S^2."""
    w1, w2 = float(omega[0]), float(omega[1])
    s = np.exp(2.0 * w1)
    e = np.exp(w1)
    return np.array([2.0 * e * np.cos(w2), 2.0 * e * np.sin(w2), s - 1.0]) / (s + 1.0)


def helicoid_gauss_partial(omega, axis):
    w1, w2 = float(omega[0]), float(omega[1])
    s = np.exp(2.0 * w1)
    e = np.exp(w1)
    if axis == 0:
        u = np.array([2.0 * e * np.cos(w2), 2.0 * e * np.sin(w2), s - 1.0])
        du = np.array([e * np.cos(w2), e * np.sin(w2), s])
        return (-2.0 * s / (s + 1.0) ** 2) * u + (2.0 / (s + 1.0)) * du
    if axis == 1:
        return np.array([-2.0 * e * np.sin(w2), 2.0 * e * np.cos(w2), 0.0]) / (s + 1.0)
    raise ValueError("axis must be 0 or 1")


def _rotation_generator(omega):
    w1, w2 = float(omega[0]), float(omega[1])
    a = w1**2 + 0.5 * w2
    b = np.sin(4.0 * np.pi * (w1**2 + w2**2))
    c = w1 + w2**2
    return np.array([[0.0, a, b], [-a, 0.0, c], [-b, -c, 0.0]])


def _rotation_generator_partial(omega, axis):
    w1, w2 = float(omega[0]), float(omega[1])
    cosine = np.cos(4.0 * np.pi * (w1**2 + w2**2))
    if axis == 0:
        da, db, dc = 2.0 * w1, cosine * 8.0 * np.pi * w1, 1.0
    elif axis == 1:
        da, db, dc = 0.5, cosine * 8.0 * np.pi * w2, 2.0 * w2
    else:
        raise ValueError("axis must be 0 or 1")
    return np.array([[0.0, da, db], [-da, 0.0, dc], [-db, -dc, 0.0]])


def so3_mixed_rotation(omega):
    """Rotation-valued test map: exponential of a skew generator whose
    entries mix polynomial and oscillatory terms."""
    return matfun.expm(_rotation_generator(omega)).reshape(9)


def so3_mixed_rotation_partial(omega, axis):
    x = _rotation_generator(omega)
    dx = _rotation_generator_partial(omega, axis)
    return matfun.expm_frechet(x, dx).reshape(9)


#: id -> (manifold name, function, partial)
TEST_FUNCTIONS = {
    "helicoid_gauss": ("sphere", helicoid_gauss, helicoid_gauss_partial),
    "so3_rotation": ("so3", so3_mixed_rotation, so3_mixed_rotation_partial),
}


def function_names():
    return sorted(TEST_FUNCTIONS)
