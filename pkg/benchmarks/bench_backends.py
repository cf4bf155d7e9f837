#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the correlation-vector assembly and the barycenter descent loops
on workloads shaped like the two reference studies, then a small
end-to-end query batch through the public models with each backend
forced in a subprocess.

Run from the repository root:

    python3 benchmarks/bench_backends.py
"""

import os
import subprocess
import sys
import time

import numpy as np


def load_backends():
    backends = {}
    try:
        from mhi import _kernels

        backends["compiled"] = _kernels
    except ImportError:
        print("compiled extension not available; benchmarking fallback only")
    from mhi import _kernels_py

    backends["python"] = _kernels_py
    return backends


def time_call(fn, *args, repeat=5, inner=1):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            result = fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best, result


def bench_corr(backends, rng):
    plan = np.ascontiguousarray(rng.uniform(-0.5, 0.5, size=(49, 2)))
    theta = np.ascontiguousarray([0.5, 0.5])
    omega = np.ascontiguousarray([0.17, -0.31])
    omegas = np.ascontiguousarray(rng.uniform(-0.5, 0.5, size=(5776, 2)))
    rows = []
    for name, mod in backends.items():
        t_one, _ = time_call(mod.corr_vector, plan, theta, omega, repeat=20, inner=200)
        t_batch, _ = time_call(mod.corr_vectors, plan, theta, omegas, repeat=5)
        rows.append((f"corr_vector (k=49)        [{name}]", t_one))
        rows.append((f"corr_vectors (5776 x 49)  [{name}]", t_batch))
    return rows


def bench_descent(backends, rng):
    from mhi.manifolds import Rotations3, Sphere

    rows = []
    sphere = Sphere()
    center = sphere.random_point(rng)
    pts_s = np.ascontiguousarray(
        [sphere.exp(center, sphere.random_tangent(rng, center, 0.5)) for _ in range(9)]
    )
    w9 = np.full(9, 1.0 / 9.0)
    so3 = Rotations3()
    center_r = so3.random_point(rng)
    pts_r = np.ascontiguousarray(
        [so3.exp(center_r, so3.random_tangent(rng, center_r, 0.6)) for _ in range(49)]
    )
    w49 = np.full(49, 1.0 / 49.0)
    for name, mod in backends.items():
        t_s, out_s = time_call(
            mod.sphere_descent, pts_s, w9, np.ascontiguousarray(pts_s[0]),
            1.0, 1e-8, 500, repeat=10, inner=50,
        )
        t_r, out_r = time_call(
            mod.so3_descent, pts_r, w49, np.ascontiguousarray(pts_r[0]),
            1.0, 1e-6, 500, repeat=10, inner=20,
        )
        rows.append((f"sphere descent (k=9)      [{name}]", t_s))
        rows.append((f"rotation descent (k=49)   [{name}]", t_r))
    return rows


def bench_end_to_end():
    """Per-query model timings with each backend forced in a subprocess."""
    script = r"""
import time
import numpy as np
from mhi import backend, barycentric, tangentspace
from mhi.barycentric import DescentSettings
from mhi.harness import ExperimentConfig, sample_hermite_data, evaluation_grid

cfg = ExperimentConfig('so3','so3_rotation',-0.5,0.5,'chebyshev',7,30,tau=1e-6,fd_step=5e-5)
manifold, samples = sample_hermite_data(cfg)
omegas = evaluation_grid(cfg)
theta = np.array([0.5, 0.5])
bhi = barycentric.fit(samples, manifold, theta, DescentSettings(1.0, 1e-6, 500))
thi = tangentspace.fit(samples, manifold, theta)
t0 = time.perf_counter()
for w in omegas:
    bhi.query(w)
t_bhi = (time.perf_counter() - t0) / len(omegas)
t0 = time.perf_counter()
thi.query_many(omegas)
t_thi = (time.perf_counter() - t0) / len(omegas)
print(f"{backend.BACKEND_NAME} {t_bhi:.3e} {t_thi:.3e}")
"""
    rows = []
    for name in ("compiled", "python"):
        env = dict(os.environ, MHI_BACKEND=name)
        proc = subprocess.run(
            [sys.executable, "-c", script], env=env, capture_output=True, text=True
        )
        if proc.returncode != 0:
            print(f"  ({name} run failed: {proc.stderr.strip().splitlines()[-1]})")
            continue
        used, t_bhi, t_thi = proc.stdout.split()
        rows.append((f"barycentric query, 30x30  [{used}]", float(t_bhi)))
        rows.append((f"tangent-space query       [{used}]", float(t_thi)))
    return rows


def main():
    rng = np.random.default_rng(42)
    backends = load_backends()

    print("== kernel micro-benchmarks (best of several runs, seconds) ==")
    rows = bench_corr(backends, rng) + bench_descent(backends, rng)
    for label, seconds in rows:
        print(f"  {label:42s} {seconds:.3e}")

    if "compiled" in backends and "python" in backends:
        print("\n== agreement check ==")
        plan = np.ascontiguousarray(rng.uniform(-0.5, 0.5, size=(49, 2)))
        theta = np.ascontiguousarray([0.5, 0.5])
        omega = np.ascontiguousarray([0.2, 0.1])
        a = backends["compiled"].corr_vector(plan, theta, omega)
        b = backends["python"].corr_vector(plan, theta, omega)
        print(f"  corr_vector max abs gap: {np.max(np.abs(a - b)):.3e}")

    print("\n== end-to-end per-query timings (subprocess per backend) ==")
    for label, seconds in bench_end_to_end():
        print(f"  {label:42s} {seconds:.3e}")


if __name__ == "__main__":
    main()
