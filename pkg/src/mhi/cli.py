"""Command-line front end.

Subcommands:
  run    execute an experiment described by a flat key=value config file
  check  run the fast numerical invariant suite
  list   show available manifolds, test functions, plan types and the
         config schema with defaults

Exit codes: 0 success, 1 configuration/validation error, 2 numerical
failure.
"""

import argparse
import datetime
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, harness
from .barycentric import HermiteSampleSet, weight_derivatives
from .errors import (
    ConditioningError,
    ConfigError,
    DegenerateConstraintError,
    DomainError,
    NonConvergenceError,
    SpanError,
)
from .gek import SamplePlan
from .manifolds import make_manifold, manifold_names
from .plans import PLAN_TYPES
from .testfunctions import function_names

_NUMERICAL_FAILURES = (
    NonConvergenceError,
    ConditioningError,
    SpanError,
    DegenerateConstraintError,
    DomainError,
)

# key -> (parser, default); None default means the key is required
_SCHEMA = {
    "manifold": (str, None),
    "function": (str, None),
    "domain_min": (float, None),
    "domain_max": (float, None),
    "plan": (str, "uniform"),
    "plan_size": (int, 3),
    "grid_size": (int, 101),
    "methods": ("str_list", "bhi,thi"),
    "theta": ("float_list", "0.5,0.5"),
    "tau": (float, 1e-8),
    "alpha": (float, 1.0),
    "max_iter": (int, 500),
    "dt": (float, 1e-4),
    "fd_step": (float, 1e-5),
    "thi_base": (str, "barycenter"),
    "threads": (int, 1),
}


def _convert(key, kind, raw):
    try:
        if kind == "str_list":
            return tuple(part.strip() for part in raw.split(",") if part.strip())
        if kind == "float_list":
            return tuple(float(part) for part in raw.split(","))
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: cannot parse value {raw!r}") from exc


def parse_config_text(text):
    """Parse the flat key=value format; unknown keys are errors."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate config key {key!r}")
        values[key] = _convert(key, _SCHEMA[key][0], raw)
    for key, (kind, default) in _SCHEMA.items():
        if key in values:
            continue
        if default is None:
            raise ConfigError(f"missing required config key {key!r}")
        values[key] = _convert(key, kind, default) if isinstance(default, str) else default
    return values


def load_config(path):
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_config_text(path.read_text())


def config_from_values(values, threads=None, stateless_bhi=False):
    cfg = harness.ExperimentConfig(
        manifold=values["manifold"],
        function=values["function"],
        domain_min=values["domain_min"],
        domain_max=values["domain_max"],
        plan=values["plan"],
        plan_size=values["plan_size"],
        grid_size=values["grid_size"],
        methods=tuple(values["methods"]),
        theta=tuple(values["theta"]),
        tau=values["tau"],
        alpha=values["alpha"],
        max_iter=values["max_iter"],
        dt=values["dt"],
        fd_step=values["fd_step"],
        thi_base=values["thi_base"],
        threads=values["threads"] if threads is None else threads,
        stateless_bhi=stateless_bhi,
    )
    cfg.validate()
    return cfg


def _timestamp():
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def cmd_run(args):
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "tool_version": __version__,
        "started_at": _timestamp(),
        "config": None,
        "outputs": [],
        "status": "failed",
        "error": None,
    }
    status = 0
    try:
        values = load_config(args.config)
        manifest["config"] = {k: list(v) if isinstance(v, tuple) else v
                              for k, v in values.items()}
        cfg = config_from_values(
            values, threads=args.threads, stateless_bhi=args.stateless_bhi
        )
        report = harness.run_experiment(cfg)
        errors_path = out_dir / "errors.csv"
        report_path = out_dir / "report.json"
        harness.write_errors_csv(report, errors_path)
        harness.write_report_json(report, report_path)
        manifest["outputs"] = [str(errors_path), str(report_path)]
        manifest["status"] = "ok"
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        manifest["status"] = "validation-error"
        manifest["error"] = str(exc)
        status = 1
    except _NUMERICAL_FAILURES as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        manifest["status"] = "numerical-failure"
        manifest["error"] = str(exc)
        status = 2
    finally:
        manifest["finished_at"] = _timestamp()
        manifest["exit_status"] = status
        with open(out_dir / "manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    return status


def _check_round_trips(rng):
    worst = 0.0
    for name in manifold_names():
        m = make_manifold(name)
        for _ in range(200):
            q = m.random_point(rng)
            v = m.random_tangent(rng, q, scale=rng.uniform(0.05, 1.4))
            p = m.exp(q, v)
            worst = max(worst, float(np.linalg.norm(m.exp(q, m.log(q, p)) - p)))
    return worst, 1e-9


def _check_distance_gradient(rng):
    # directional derivative of 0.5*dist(.,p)^2 equals <-log_q(p), v>
    worst = 0.0
    h = 1e-5
    for name in manifold_names():
        m = make_manifold(name)
        for _ in range(40):
            q = m.random_point(rng)
            p = m.exp(q, m.random_tangent(rng, q, scale=rng.uniform(0.1, 1.0)))
            v = m.random_tangent(rng, q, scale=1.0)
            fd = (
                0.5 * m.dist(m.exp(q, h * v), p) ** 2
                - 0.5 * m.dist(m.exp(q, -h * v), p) ** 2
            ) / (2.0 * h)
            worst = max(worst, abs(fd - m.inner(q, -m.log(q, p), v)))
    return worst, 1e-6


def _check_distance_hessian(rng):
    # second difference of 0.5*dist(.,p)^2 along a geodesic from p is |v|^2
    worst = 0.0
    h = 1e-3
    for name in manifold_names():
        m = make_manifold(name)
        for _ in range(40):
            p = m.random_point(rng)
            v = m.random_tangent(rng, p, scale=rng.uniform(0.2, 1.0))
            fd = (
                0.5 * m.dist(m.exp(p, h * v), p) ** 2
                + 0.5 * m.dist(m.exp(p, -h * v), p) ** 2
            ) / h**2
            worst = max(worst, abs(fd - m.inner(p, v, v)))
    return worst, 1e-5


def _check_weight_derivative_oracle(rng):
    # closed-form constrained min-norm solve against a dense KKT solve
    from .manifolds import Euclidean

    m = Euclidean(2)
    k, d = 6, 2
    plan = SamplePlan(rng.uniform(-1.0, 1.0, size=(k, d)))
    points = rng.standard_normal((k, m.ambient_dim))
    derivs = rng.standard_normal((k, d, m.ambient_dim))
    samples = HermiteSampleSet(plan=plan, points=points, derivatives=derivs)
    w = weight_derivatives(samples, m)
    worst = 0.0
    for l in range(k):
        others = [j for j in range(k) if j != l]
        x_mat = np.column_stack([points[j] - points[l] for j in others])
        a = np.vstack([x_mat, np.ones(k - 1)])
        for i in range(d):
            rhs = np.concatenate([derivs[l, i], [0.0]])
            oracle = np.linalg.lstsq(a, rhs, rcond=None)[0]
            worst = max(worst, float(np.max(np.abs(w[l, others, i] - oracle))))
    return worst, 1e-10


def cmd_check(args):
    rng = np.random.default_rng(20240817)
    checks = [
        ("exp/log round trips", _check_round_trips),
        ("squared-distance gradient vs finite differences", _check_distance_gradient),
        ("squared-distance Hessian identity", _check_distance_hessian),
        ("constrained min-norm weight derivatives vs KKT", _check_weight_derivative_oracle),
    ]
    failed = False
    for name, fn in checks:
        worst, tol = fn(rng)
        if args.inject_failure:
            worst, tol = tol * 10.0, tol
        ok = worst <= tol
        failed = failed or not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: worst {worst:.3e} (tol {tol:.1e})")
    return 2 if failed else 0


def cmd_list(args):
    print("manifolds:")
    for name in manifold_names():
        print(f"  {name}")
    print("test functions:")
    for name in function_names():
        print(f"  {name}")
    print("plan types:")
    for name in sorted(PLAN_TYPES):
        print(f"  {name}")
    print("config schema (key = default, '<required>' when none):")
    for key, (kind, default) in _SCHEMA.items():
        shown = "<required>" if default is None else default
        kind_name = kind if isinstance(kind, str) else kind.__name__
        print(f"  {key} = {shown}  # {kind_name}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mhi", description="Hermite interpolation of manifold-valued data"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a config file")
    p_run.add_argument("--config", required=True, help="path to a key=value config file")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--threads", type=int, default=None,
                       help="override the config's threads key")
    p_run.add_argument("--stateless-bhi", action="store_true",
                       help="disable the barycentric warm start (pure queries)")
    p_run.set_defaults(fn=cmd_run)

    p_check = sub.add_parser("check", help="run the fast invariant suite")
    p_check.add_argument("--inject-failure", action="store_true",
                         help=argparse.SUPPRESS)
    p_check.set_defaults(fn=cmd_check)

    p_list = sub.add_parser("list", help="list components and the config schema")
    p_list.set_defaults(fn=cmd_list)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
