"""Kernel backend selection.

The hot kernels (barycenter descent loops, correlation-vector assembly)
exist twice: a Cython extension ``mhi._kernels`` and a NumPy module
``mhi._kernels_py`` with identical signatures and semantics. The
extension is preferred when importable; set ``MHI_BACKEND=python`` or
``MHI_BACKEND=compiled`` to force a choice.
"""

import os

_requested = os.environ.get("MHI_BACKEND", "").strip().lower()

if _requested == "python":
    from . import _kernels_py as kernels
elif _requested == "compiled":
    from . import _kernels as kernels  # ImportError here is intentional
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _kernels_py as kernels

BACKEND_NAME = kernels.BACKEND_NAME

corr_vector = kernels.corr_vector
corr_vectors = kernels.corr_vectors
corr_vector_partial = kernels.corr_vector_partial
euclidean_descent = kernels.euclidean_descent
sphere_descent = kernels.sphere_descent
so3_descent = kernels.so3_descent
