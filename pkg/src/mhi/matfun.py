"""Dense matrix-function kernel for small matrices.

Provides the matrix exponential (scaling and squaring with a degree-13
diagonal Pade approximant), the principal logarithm of a 3x3 rotation,
the Rodrigues closed form for skew generators, and the Frechet derivative
of the exponential via the block upper-triangular identity.
"""

import numpy as np

from .errors import DomainError

# Degree-13 diagonal Pade coefficients for exp.
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)
# 1-norm bound below which the degree-13 approximant is at machine accuracy.
_PADE13_THETA = 5.371920351148152


def expm(a):
    """Matrix exponential of a square real matrix.

    Scaling and squaring with the degree-13 diagonal Pade approximant;
    accurate to ~1e-15 relative for moderate norms (no degree selection,
    the target matrices here are 3x3 and 6x6).
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    norm = np.linalg.norm(a, 1)
    if norm == 0.0:
        return np.eye(a.shape[0])
    squarings = 0
    if norm > _PADE13_THETA:
        squarings = int(np.ceil(np.log2(norm / _PADE13_THETA)))
        a = a / 2.0**squarings

    b = _PADE13
    ident = np.eye(a.shape[0])
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6
        + b[5] * a4
        + b[3] * a2
        + b[1] * ident
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6
        + b[4] * a4
        + b[2] * a2
        + b[0] * ident
    )
    r = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        r = r @ r
    return r


def expm_frechet(x, e):
    """Directional derivative of expm at ``x`` in direction ``e``.

    Evaluates exp of the block matrix [[x, e], [0, x]]; the upper-right
    block is the derivative. Works for any square size, used here on 3x3.
    """
    x = np.asarray(x, dtype=float)
    e = np.asarray(e, dtype=float)
    n = x.shape[0]
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = x
    block[:n, n:] = e
    block[n:, n:] = x
    return expm(block)[:n, n:]


def skew_part(a):
    """Skew-symmetric part (a - a^T)/2."""
    return 0.5 * (a - a.T)


def rodrigues(s):
    """Closed-form exponential of a 3x3 skew-symmetric matrix.

    Uses the axis-angle formula with series branches below angle 1e-4
    to avoid 0/0.
    """
    s = np.asarray(s, dtype=float)
    # rotation angle = length of the axis vector
    theta = np.sqrt(s[2, 1] ** 2 + s[0, 2] ** 2 + s[1, 0] ** 2)
    if theta < 1e-4:
        c1 = 1.0 - theta**2 / 6.0 + theta**4 / 120.0
        c2 = 0.5 - theta**2 / 24.0 + theta**4 / 720.0
    else:
        c1 = np.sin(theta) / theta
        c2 = (1.0 - np.cos(theta)) / theta**2
    return np.eye(3) + c1 * s + c2 * (s @ s)


def logm_rotation(r):
    """Principal logarithm of a 3x3 rotation matrix.

    Trace/axis closed form with a series branch for small angles.
    Rotations by (numerically) pi are outside the domain: the axis is
    not recoverable from the skew part there.
    """
    r = np.asarray(r, dtype=float)
    trace = r[0, 0] + r[1, 1] + r[2, 2]
    if trace + 1.0 <= 1e-10:
        raise DomainError(
            f"rotation angle at or near pi (trace {trace:.6e}); principal log undefined"
        )
    cos_theta = min(1.0, max(-1.0, 0.5 * (trace - 1.0)))
    theta = np.arccos(cos_theta)
    w = skew_part(r)
    if theta < 1e-4:
        # theta/sin(theta) = 1 + t^2/6 + 7 t^4/360 + O(t^6)
        factor = 1.0 + theta**2 / 6.0 + 7.0 * theta**4 / 360.0
    else:
        factor = theta / np.sin(theta)
    return factor * w
