"""Tensor-product sampling plans on a box [a, b]^d."""

import numpy as np

from .gek import SamplePlan


def _tensor(nodes_1d, d):
    grids = np.meshgrid(*([nodes_1d] * d), indexing="ij")
    return SamplePlan(np.column_stack([g.reshape(-1) for g in grids]))


def uniform_plan(a, b, per_axis, d=2):
    """Equispaced tensor grid including both endpoints per axis."""
    if per_axis < 1:
        raise ValueError("need at least one node per axis")
    if per_axis == 1:
        nodes = np.array([0.5 * (a + b)])
    else:
        nodes = np.linspace(a, b, per_axis)
    return _tensor(nodes, d)


def chebyshev_plan(a, b, per_axis, d=2):
    """Tensor grid of Chebyshev nodes per axis.

    Node j of n is 0.5*(b-a)*cos((2j-1)*pi/(2n)) + 0.5*(b+a), so the
    nodes cluster toward the interval ends and exclude them.
    """
    if per_axis < 1:
        raise ValueError("need at least one node per axis")
    j = np.arange(1, per_axis + 1)
    nodes = 0.5 * (b - a) * np.cos((2.0 * j - 1.0) * np.pi / (2.0 * per_axis)) + 0.5 * (a + b)
    return _tensor(nodes, d)


PLAN_TYPES = {"uniform": uniform_plan, "chebyshev": chebyshev_plan}
