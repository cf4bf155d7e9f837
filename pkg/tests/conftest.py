import numpy as np
import pytest

from mhi.manifolds import Euclidean, Rotations3, Sphere


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=["euclidean", "sphere", "so3"])
def manifold(request):
    if request.param == "euclidean":
        return Euclidean(3)
    if request.param == "sphere":
        return Sphere()
    return Rotations3()


def random_pair(manifold, rng, max_dist=1.2):
    """A random point and a second point at controlled geodesic distance."""
    q = manifold.random_point(rng)
    v = manifold.random_tangent(rng, q, scale=rng.uniform(0.05, max_dist))
    return q, manifold.exp(q, v)
