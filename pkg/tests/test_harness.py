import csv
import json

import numpy as np
import pytest

from mhi.errors import ConfigError
from mhi.harness import (
    ExperimentConfig,
    evaluation_grid,
    fd_derivative_check,
    run_experiment,
    sample_hermite_data,
    write_errors_csv,
    write_report_json,
)
from mhi.manifolds import Rotations3, Sphere
from mhi.plans import chebyshev_plan, uniform_plan
from mhi.testfunctions import (
    helicoid_gauss,
    helicoid_gauss_partial,
    so3_mixed_rotation,
    so3_mixed_rotation_partial,
)


def small_sphere_cfg(**kw):
    args = dict(
        manifold="sphere",
        function="helicoid_gauss",
        domain_min=-np.pi / 4,
        domain_max=np.pi / 4,
        plan="uniform",
        plan_size=3,
        grid_size=9,
        tau=1e-8,
        fd_step=1e-5,
    )
    args.update(kw)
    return ExperimentConfig(**args)


def small_so3_cfg(**kw):
    args = dict(
        manifold="so3",
        function="so3_rotation",
        domain_min=-0.5,
        domain_max=0.5,
        plan="chebyshev",
        plan_size=7,
        grid_size=8,
        tau=1e-6,
        fd_step=5e-5,
    )
    args.update(kw)
    return ExperimentConfig(**args)


class TestTestFunctions:
    def test_gauss_map_at_origin(self):
        np.testing.assert_allclose(helicoid_gauss(np.zeros(2)), [1.0, 0.0, 0.0],
                                   atol=1e-15)

    def test_gauss_map_on_sphere(self, rng):
        for _ in range(100):
            w = rng.uniform(-2.0, 2.0, size=2)
            assert abs(np.linalg.norm(helicoid_gauss(w)) - 1.0) < 1e-12

    def test_gauss_partials_tangent_and_match_fd(self, rng):
        m = Sphere()
        from mhi.manifold import fd_partial

        for _ in range(20):
            w = rng.uniform(-0.8, 0.8, size=2)
            p = helicoid_gauss(w)
            for i in range(2):
                v = helicoid_gauss_partial(w, i)
                assert abs(np.dot(p, v)) < 1e-12
                fd = fd_partial(helicoid_gauss, w, i, 1e-5)
                assert np.linalg.norm(v - fd) < 1e-8

    def test_rotation_function_at_origin(self):
        np.testing.assert_allclose(
            so3_mixed_rotation(np.zeros(2)).reshape(3, 3), np.eye(3), atol=1e-15
        )

    def test_rotation_function_in_group(self, rng):
        m = Rotations3()
        for _ in range(100):
            w = rng.uniform(-0.5, 0.5, size=2)
            assert m.constraint_violation(so3_mixed_rotation(w)) < 1e-10

    def test_rotation_partials_tangent_and_match_fd(self, rng):
        m = Rotations3()
        from mhi.manifold import fd_partial

        for _ in range(20):
            w = rng.uniform(-0.5, 0.5, size=2)
            p = so3_mixed_rotation(w)
            for i in range(2):
                v = so3_mixed_rotation_partial(w, i)
                assert m.tangency_violation(p, v) < 1e-10
                fd = fd_partial(so3_mixed_rotation, w, i, 1e-5)
                assert np.linalg.norm(v - fd) < 1e-7


class TestPlans:
    def test_chebyshev_single_node_is_midpoint(self):
        plan = chebyshev_plan(-1.0, 3.0, 1, d=2)
        np.testing.assert_allclose(plan.locations, [[1.0, 1.0]], atol=1e-15)

    def test_chebyshev_largest_node(self):
        plan = chebyshev_plan(-0.5, 0.5, 7, d=1)
        assert plan.locations.max() == pytest.approx(0.5 * np.cos(np.pi / 14), abs=1e-15)

    def test_chebyshev_symmetric_about_midpoint(self):
        plan = chebyshev_plan(0.0, 2.0, 7, d=1)
        nodes = np.sort(plan.locations[:, 0])
        np.testing.assert_allclose(nodes + nodes[::-1], 2.0, atol=1e-14)

    def test_chebyshev_tensor_count(self):
        assert chebyshev_plan(-0.5, 0.5, 7, d=2).k == 49

    def test_uniform_includes_endpoints(self):
        plan = uniform_plan(-np.pi / 4, np.pi / 4, 3, d=2)
        nodes = np.unique(plan.locations[:, 0])
        np.testing.assert_allclose(nodes, [-np.pi / 4, 0.0, np.pi / 4], atol=1e-15)
        assert plan.k == 9


class TestFdDerivativeCheck:
    def test_exact_function_truncation_level(self):
        cfg = small_sphere_cfg()
        _, samples = sample_hermite_data(cfg)
        table = fd_derivative_check(helicoid_gauss, samples, 1e-3)
        assert table.max() < 2e-6  # pure O(h^2) truncation on a smooth map


class TestRunExperiment:
    def test_validation_rejects_degenerate_configs(self):
        with pytest.raises(ConfigError):
            small_sphere_cfg(grid_size=1).validate()
        with pytest.raises(ConfigError):
            small_sphere_cfg(domain_min=1.0, domain_max=1.0).validate()
        with pytest.raises(ConfigError):
            small_sphere_cfg(manifold="so3").validate()
        with pytest.raises(ConfigError):
            small_sphere_cfg(methods=("bhi", "nope")).validate()

    def test_grid_is_row_major_with_endpoints(self):
        grid = evaluation_grid(small_sphere_cfg(grid_size=3))
        assert grid.shape == (9, 2)
        np.testing.assert_allclose(grid[0], [-np.pi / 4, -np.pi / 4])
        np.testing.assert_allclose(grid[1], [-np.pi / 4, 0.0])
        np.testing.assert_allclose(grid[-1], [np.pi / 4, np.pi / 4])

    def test_summary_recomputes_from_records(self):
        rep = run_experiment(small_sphere_cfg())
        for res in rep.results.values():
            assert res.err_max == float(res.errors.max())
            assert res.err_avg == float(res.errors.mean())
            assert res.fd_err_axis_avg == [float(x) for x in res.fd_errors.mean(axis=0)]

    def test_sphere_run_monotone_and_iterations_recorded(self):
        rep = run_experiment(small_sphere_cfg())
        bhi = rep.results["bhi"]
        assert bhi.monotone
        assert bhi.iterations.shape == (81,)
        stats = rep.bhi_iteration_stats()
        assert stats["max"] >= stats["avg"] > 0

    def test_so3_outputs_stay_in_group(self):
        cfg = small_so3_cfg()
        rep = run_experiment(cfg)
        manifold, _ = sample_hermite_data(cfg)
        assert rep.trial_rotations is not None and len(rep.trial_rotations) == 6
        for entry in rep.trial_rotations:
            for key in ("reference", "bhi", "thi"):
                mat = np.array(entry[key])
                assert mat.shape == (3, 3)
                assert manifold.constraint_violation(mat.reshape(9)) < 1e-9

    def test_so3_interpolants_pass_constraint_on_grid(self):
        cfg = small_so3_cfg(grid_size=6)
        manifold, samples = sample_hermite_data(cfg)
        from mhi import barycentric, tangentspace
        from mhi.barycentric import DescentSettings

        theta = np.asarray(cfg.theta)
        bhi = barycentric.fit(samples, manifold, theta,
                              DescentSettings(1.0, cfg.tau, cfg.max_iter))
        thi = tangentspace.fit(samples, manifold, theta)
        for w in evaluation_grid(cfg):
            assert manifold.constraint_violation(bhi.query(w)) < 1e-9
            assert manifold.constraint_violation(thi.query(w)) < 1e-10

    def test_threads_give_same_errors(self):
        a = run_experiment(small_sphere_cfg(methods=("thi",)))
        b = run_experiment(small_sphere_cfg(methods=("thi",), threads=2))
        c = run_experiment(small_sphere_cfg(methods=("thi",), threads=2))
        # chunked evaluation may differ in the last ulp from one batch,
        # but a fixed config reproduces itself bit for bit
        np.testing.assert_allclose(a.results["thi"].errors, b.results["thi"].errors,
                                   atol=1e-12)
        np.testing.assert_array_equal(b.results["thi"].errors, c.results["thi"].errors)

    def test_sphere_trial_rotations_absent(self):
        rep = run_experiment(small_sphere_cfg())
        assert rep.trial_rotations is None

    def test_thi_base_rule_from_config(self):
        cfg = small_sphere_cfg(thi_base="sample:3", methods=("thi",))
        assert cfg.base_rule() == 3
        rep = run_experiment(cfg)
        assert "thi" in rep.results
        with pytest.raises(ConfigError):
            small_sphere_cfg(thi_base="median").validate()


class TestSerialization:
    def test_csv_layout_and_precision(self, tmp_path):
        rep = run_experiment(small_sphere_cfg(grid_size=4))
        path = tmp_path / "errors.csv"
        write_errors_csv(rep, path)
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["omega_1", "omega_2", "err_bhi", "err_thi", "iters_bhi"]
        assert len(rows) == 1 + 16
        # 17 significant digits round-trip exactly
        for text, value in zip(rows[1][:2], rep.omegas[0]):
            assert float(text) == value
        assert float(rows[1][2]) == rep.results["bhi"].errors[0]
        assert rows[1][4] == str(rep.results["bhi"].iterations[0])

    def test_csv_missing_method_columns_empty(self, tmp_path):
        rep = run_experiment(small_sphere_cfg(grid_size=4, methods=("thi",)))
        path = tmp_path / "errors.csv"
        write_errors_csv(rep, path)
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[1][2] == "" and rows[1][4] == ""
        assert rows[1][3] != ""

    def test_report_json_keys(self, tmp_path):
        rep = run_experiment(small_so3_cfg(grid_size=5))
        path = tmp_path / "report.json"
        write_report_json(rep, path)
        payload = json.loads(path.read_text())
        for method in ("bhi", "thi"):
            for key in ("offline_seconds", "online_seconds_avg", "err_max",
                        "err_avg", "fd_err_axis_avg"):
                assert key in payload[method]
            assert len(payload[method]["fd_err_axis_avg"]) == 2
        assert set(payload["bhi_iterations"]) == {"avg", "max"}
        assert len(payload["trial_rotations"]) == 6
