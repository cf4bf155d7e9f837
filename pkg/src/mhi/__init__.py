"""Multivariate Hermite interpolation of manifold-valued functions.

Two interpolation routes share one scalar engine (gradient-enhanced
Kriging with a cubic correlation model): a barycentric method driven by
weighted Riemannian barycenters with derivative-adjusted weight
functions, and interpolation in a single tangent space.
"""

from . import (
    backend,
    barycentric,
    gek,
    harness,
    manifold,
    manifolds,
    matfun,
    plans,
    tangentspace,
    testfunctions,
)
from .backend import BACKEND_NAME
from .barycentric import BarycentricModel, DescentSettings, HermiteSampleSet
from .gek import GekModel, HermiteScalarData, SamplePlan
from .manifold import Manifold, dlog_fd, fd_partial
from .manifolds import Euclidean, Rotations3, Sphere, make_manifold
from .tangentspace import TangentModel

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "BarycentricModel",
    "DescentSettings",
    "Euclidean",
    "GekModel",
    "HermiteSampleSet",
    "HermiteScalarData",
    "Manifold",
    "Rotations3",
    "SamplePlan",
    "Sphere",
    "TangentModel",
    "__version__",
    "backend",
    "barycentric",
    "dlog_fd",
    "fd_partial",
    "gek",
    "harness",
    "make_manifold",
    "manifold",
    "manifolds",
    "matfun",
    "plans",
    "tangentspace",
    "testfunctions",
]
