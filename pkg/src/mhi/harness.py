"""Experiment driver: sampling, model building, grid evaluation, error
metrics, derivative checks and timing."""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import barycentric, tangentspace
from .barycentric import DescentSettings, HermiteSampleSet
from .errors import ConfigError
from .manifolds import make_manifold
from .plans import PLAN_TYPES
from .testfunctions import TEST_FUNCTIONS

METHODS = ("bhi", "thi")

#: Relative box coordinates of the rotation showcase trial locations.
_TRIAL_FRACTIONS = [(u, v) for u in (0.2, 0.5, 0.8) for v in (0.25, 0.75)]


@dataclass(frozen=True)
class ExperimentConfig:
    manifold: str
    function: str
    domain_min: float
    domain_max: float
    plan: str = "uniform"
    plan_size: int = 3
    grid_size: int = 101
    methods: tuple = METHODS
    theta: tuple = (0.5, 0.5)
    tau: float = 1e-8
    alpha: float = 1.0
    max_iter: int = 500
    dt: float = 1e-4
    fd_step: float = 1e-5
    thi_base: str = "barycenter"
    threads: int = 1
    stateless_bhi: bool = False

    def validate(self):
        if self.function not in TEST_FUNCTIONS:
            raise ConfigError(
                f"unknown function {self.function!r}; available: "
                f"{sorted(TEST_FUNCTIONS)}"
            )
        required_manifold = TEST_FUNCTIONS[self.function][0]
        if self.manifold != required_manifold:
            raise ConfigError(
                f"function {self.function!r} lives on {required_manifold!r}, "
                f"not {self.manifold!r}"
            )
        if not self.domain_max > self.domain_min:
            raise ConfigError("degenerate domain: domain_max must exceed domain_min")
        if self.plan not in PLAN_TYPES:
            raise ConfigError(f"unknown plan type {self.plan!r}")
        if self.plan_size < 1:
            raise ConfigError("plan_size must be positive")
        if self.grid_size < 2:
            raise ConfigError("grid_size must be at least 2")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}")
        if not self.methods:
            raise ConfigError("no methods selected")
        if len(self.theta) != 2 or any(t <= 0 for t in self.theta):
            raise ConfigError("theta must be two positive values")
        if self.tau < 0:
            raise ConfigError("tau must be non-negative")
        if self.alpha <= 0 or self.dt <= 0 or self.fd_step <= 0:
            raise ConfigError("alpha, dt and fd_step must be positive")
        if self.max_iter < 1:
            raise ConfigError("max_iter must be positive")
        if self.threads < 1:
            raise ConfigError("threads must be positive")
        if self.thi_base != "barycenter" and not self.thi_base.startswith("sample:"):
            raise ConfigError("thi_base must be 'barycenter' or 'sample:<index>'")

    def base_rule(self):
        if self.thi_base == "barycenter":
            return "barycenter"
        return int(self.thi_base.split(":", 1)[1])


@dataclass
class MethodResult:
    offline_seconds: float
    online_seconds_avg: float
    errors: np.ndarray              # per grid point
    fd_errors: np.ndarray           # (k, d) derivative-check table
    iterations: np.ndarray = None   # per grid point, barycentric only
    monotone: bool = True

    @property
    def err_max(self):
        return float(self.errors.max())

    @property
    def err_avg(self):
        return float(self.errors.mean())

    @property
    def fd_err_axis_avg(self):
        return [float(x) for x in self.fd_errors.mean(axis=0)]


@dataclass
class ErrorReport:
    config: ExperimentConfig
    omegas: np.ndarray
    results: dict = field(default_factory=dict)   # method id -> MethodResult
    trial_rotations: list = None

    def bhi_iteration_stats(self):
        r = self.results.get("bhi")
        if r is None or r.iterations is None:
            return None
        return {"avg": float(r.iterations.mean()), "max": int(r.iterations.max())}


def sample_hermite_data(cfg):
    """Evaluate the test function and its partials on the sampling plan."""
    manifold = make_manifold(cfg.manifold)
    _, func, partial = TEST_FUNCTIONS[cfg.function]
    plan = PLAN_TYPES[cfg.plan](cfg.domain_min, cfg.domain_max, cfg.plan_size, d=2)
    points = np.stack([func(w) for w in plan.locations])
    derivs = np.stack(
        [[partial(w, i) for i in range(2)] for w in plan.locations]
    )
    return manifold, HermiteSampleSet(plan=plan, points=points, derivatives=derivs)


def evaluation_grid(cfg):
    """Uniform row-major evaluation grid including the box endpoints."""
    nodes = np.linspace(cfg.domain_min, cfg.domain_max, cfg.grid_size)
    g1, g2 = np.meshgrid(nodes, nodes, indexing="ij")
    return np.column_stack([g1.reshape(-1), g2.reshape(-1)])


def _pointwise_error(manifold_name, reference, predicted):
    err = np.linalg.norm(reference - predicted)
    if manifold_name == "so3":
        return float(err / np.sqrt(3.0))  # relative Frobenius error for rotations
    return float(err)


def fd_derivative_check(query, samples, step):
    """Central-difference partials of a fitted model versus the sampled
    tangent vectors; returns a (k, d) table of ambient-norm errors."""
    k, d = samples.k, samples.plan.d
    table = np.empty((k, d))
    for l in range(k):
        omega = samples.plan.locations[l]
        for i in range(d):
            h = np.zeros(d)
            h[i] = step
            fd = (query(omega + h) - query(omega - h)) / (2.0 * step)
            table[l, i] = np.linalg.norm(fd - samples.derivatives[l, i])
    return table


def _evaluate_grid(query, omegas, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(query, omegas))
    return [query(w) for w in omegas]


def run_experiment(cfg):
    """Run one full interpolation study and return its report."""
    cfg.validate()
    manifold, samples = sample_hermite_data(cfg)
    omegas = evaluation_grid(cfg)
    _, func, _ = TEST_FUNCTIONS[cfg.function]
    reference = np.stack([func(w) for w in omegas])
    settings = DescentSettings(
        step_size=cfg.alpha, tolerance=cfg.tau, max_iterations=cfg.max_iter
    )
    theta = np.asarray(cfg.theta, dtype=float)

    report = ErrorReport(config=cfg, omegas=omegas)

    if "bhi" in cfg.methods:
        t0 = time.perf_counter()
        model = barycentric.fit(
            samples, manifold, theta, settings, stateless=cfg.stateless_bhi
        )
        offline = time.perf_counter() - t0

        parallel_ok = cfg.stateless_bhi and cfg.threads > 1
        t0 = time.perf_counter()
        if parallel_ok:
            detailed = _evaluate_grid(model.query_detailed, omegas, cfg.threads)
        else:
            detailed = [model.query_detailed(w) for w in omegas]
        online = (time.perf_counter() - t0) / len(omegas)

        errors = np.array(
            [
                _pointwise_error(cfg.manifold, reference[i], detailed[i].point)
                for i in range(len(omegas))
            ]
        )
        iterations = np.array([r.iterations for r in detailed])
        monotone = all(r.monotone for r in detailed)
        fd_table = fd_derivative_check(model.query, samples, cfg.fd_step)
        report.results["bhi"] = MethodResult(
            offline_seconds=offline,
            online_seconds_avg=online,
            errors=errors,
            fd_errors=fd_table,
            iterations=iterations,
            monotone=monotone,
        )
        bhi_model = model

    if "thi" in cfg.methods:
        t0 = time.perf_counter()
        model = tangentspace.fit(
            samples, manifold, theta, base_rule=cfg.base_rule(), dt=cfg.dt
        )
        offline = time.perf_counter() - t0

        t0 = time.perf_counter()
        if cfg.threads > 1:
            chunks = np.array_split(omegas, cfg.threads)
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                parts = list(pool.map(model.query_many, chunks))
            predicted = np.vstack(parts)
        else:
            predicted = model.query_many(omegas)
        online = (time.perf_counter() - t0) / len(omegas)

        errors = np.array(
            [
                _pointwise_error(cfg.manifold, reference[i], predicted[i])
                for i in range(len(omegas))
            ]
        )
        fd_table = fd_derivative_check(model.query, samples, cfg.fd_step)
        report.results["thi"] = MethodResult(
            offline_seconds=offline,
            online_seconds_avg=online,
            errors=errors,
            fd_errors=fd_table,
        )
        thi_model = model

    if cfg.manifold == "so3":
        span = cfg.domain_max - cfg.domain_min
        trials = []
        for u, v in _TRIAL_FRACTIONS:
            omega = np.array([cfg.domain_min + u * span, cfg.domain_min + v * span])
            entry = {
                "omega": [float(x) for x in omega],
                "reference": func(omega).reshape(3, 3).tolist(),
            }
            if "bhi" in cfg.methods:
                entry["bhi"] = bhi_model.query(omega).reshape(3, 3).tolist()
            if "thi" in cfg.methods:
                entry["thi"] = thi_model.query(omega).reshape(3, 3).tolist()
            trials.append(entry)
        report.trial_rotations = trials

    return report


# -- serialization -----------------------------------------------------------


def write_errors_csv(report, path):
    """One row per evaluation-grid point, row-major, 17 significant digits."""
    methods = report.results
    with open(path, "w") as fh:
        fh.write("omega_1,omega_2,err_bhi,err_thi,iters_bhi\n")
        n = report.omegas.shape[0]
        for i in range(n):
            w1, w2 = report.omegas[i]
            err_b = f"{methods['bhi'].errors[i]:.17g}" if "bhi" in methods else ""
            err_t = f"{methods['thi'].errors[i]:.17g}" if "thi" in methods else ""
            iters = f"{methods['bhi'].iterations[i]:d}" if "bhi" in methods else ""
            fh.write(f"{w1:.17g},{w2:.17g},{err_b},{err_t},{iters}\n")


def report_payload(report):
    payload = {}
    for name, res in report.results.items():
        payload[name] = {
            "offline_seconds": res.offline_seconds,
            "online_seconds_avg": res.online_seconds_avg,
            "err_max": res.err_max,
            "err_avg": res.err_avg,
            "fd_err_axis_avg": res.fd_err_axis_avg,
        }
        if res.iterations is not None:
            payload[name]["descent_monotone"] = res.monotone
    stats = report.bhi_iteration_stats()
    if stats is not None:
        payload["bhi_iterations"] = stats
    if report.trial_rotations is not None:
        payload["trial_rotations"] = report.trial_rotations
    return payload


def write_report_json(report, path):
    with open(path, "w") as fh:
        json.dump(report_payload(report), fh, indent=2)
        fh.write("\n")
