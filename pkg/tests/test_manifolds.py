import numpy as np
import pytest

from conftest import random_pair
from mhi import matfun
from mhi.errors import AntipodalError, DomainError, TangencyError
from mhi.manifold import dlog_fd, fd_partial
from mhi.manifolds import Euclidean, Rotations3, Sphere, make_manifold
from mhi.testfunctions import helicoid_gauss, helicoid_gauss_partial


class TestSphere:
    def setup_method(self):
        self.m = Sphere()

    def test_exp_zero_velocity(self):
        q = np.array([0.0, 0.0, 1.0])
        assert np.array_equal(self.m.exp(q, np.zeros(3)), q)

    def test_exp_quarter_great_circle(self):
        q = np.array([1.0, 0.0, 0.0])
        v = np.array([0.0, np.pi / 2, 0.0])
        np.testing.assert_allclose(self.m.exp(q, v), [0.0, 1.0, 0.0], atol=1e-15)

    def test_exp_stays_on_sphere(self, rng):
        for _ in range(100):
            q = self.m.random_point(rng)
            v = self.m.random_tangent(rng, q, scale=rng.uniform(0.0, 2.5) + 1e-6)
            assert abs(np.linalg.norm(self.m.exp(q, v)) - 1.0) < 1e-12

    def test_exp_rejects_non_tangent(self):
        q = np.array([1.0, 0.0, 0.0])
        with pytest.raises(TangencyError):
            self.m.exp(q, np.array([0.5, 1.0, 0.0]))

    def test_log_coincident(self):
        q = self.m.project_point(np.array([1.0, 2.0, -1.0]))
        assert np.allclose(self.m.log(q, q), 0.0, atol=1e-12)

    def test_log_quarter_great_circle(self):
        q = np.array([1.0, 0.0, 0.0])
        p = np.array([0.0, 1.0, 0.0])
        np.testing.assert_allclose(self.m.log(q, p), [0.0, np.pi / 2, 0.0], atol=1e-15)

    def test_log_antipodal_rejected(self):
        q = np.array([0.0, 0.0, 1.0])
        with pytest.raises(AntipodalError):
            self.m.log(q, -q)

    def test_log_norm_is_arc_length(self, rng):
        for _ in range(50):
            q, p = random_pair(self.m, rng, max_dist=1.5)
            expected = np.arccos(np.clip(np.dot(q, p), -1.0, 1.0))
            assert abs(np.linalg.norm(self.m.log(q, p)) - expected) < 1e-12

    def test_exp_many_matches_scalar(self, rng):
        q = self.m.random_point(rng)
        vs = np.stack([self.m.random_tangent(rng, q, s) for s in [1e-14, 0.3, 1.0, 2.0]])
        batch = self.m.exp_many(q, vs)
        single = np.stack([self.m.exp(q, v) for v in vs])
        np.testing.assert_allclose(batch, single, atol=1e-15)


class TestRotations:
    def setup_method(self):
        self.m = Rotations3()

    def test_exp_zero_velocity(self, rng):
        q = self.m.random_point(rng)
        np.testing.assert_allclose(self.m.exp(q, np.zeros(9)), q, atol=1e-15)

    def test_exp_at_identity_is_expm(self, rng):
        gen = matfun.skew_part(rng.standard_normal((3, 3)))
        got = self.m.exp(np.eye(3).reshape(9), gen.reshape(9))
        np.testing.assert_allclose(got.reshape(3, 3), matfun.expm(gen), atol=1e-13)

    def test_exp_rejects_non_tangent(self, rng):
        q = self.m.random_point(rng)
        with pytest.raises(TangencyError):
            self.m.exp(q, rng.standard_normal(9))

    def test_log_of_base_is_zero(self, rng):
        q = self.m.random_point(rng)
        assert np.allclose(self.m.log(q, q), 0.0, atol=1e-12)

    def test_log_rejects_angle_pi(self):
        q = np.eye(3).reshape(9)
        half_turn = np.diag([1.0, -1.0, -1.0]).reshape(9)
        with pytest.raises(DomainError):
            self.m.log(q, half_turn)

    def test_round_trip(self, rng):
        for _ in range(50):
            q, p = random_pair(self.m, rng, max_dist=2.0)
            assert np.linalg.norm(self.m.exp(q, self.m.log(q, p)) - p) < 1e-9

    def test_exp_result_in_group(self, rng):
        for _ in range(50):
            q = self.m.random_point(rng)
            v = self.m.random_tangent(rng, q, scale=rng.uniform(0.1, 2.0))
            assert self.m.constraint_violation(self.m.exp(q, v)) < 1e-10

    def test_project_point_polar(self, rng):
        q = self.m.random_point(rng).reshape(3, 3)
        noisy = q + 1e-8 * rng.standard_normal((3, 3))
        repaired = self.m.project_point(noisy.reshape(9))
        assert self.m.constraint_violation(repaired) < 1e-12
        assert np.linalg.norm(repaired - q.reshape(9)) < 1e-7

    def test_exp_many_matches_scalar(self, rng):
        q = self.m.random_point(rng)
        vs = np.stack([self.m.random_tangent(rng, q, s) for s in [1e-9, 0.5, 1.5]])
        batch = self.m.exp_many(q, vs)
        single = np.stack([self.m.exp(q, v) for v in vs])
        np.testing.assert_allclose(batch, single, atol=1e-13)


class TestEuclidean:
    def test_exp_log_exact(self, rng):
        m = Euclidean(4)
        q = rng.standard_normal(4)
        p = rng.standard_normal(4)
        v = rng.standard_normal(4)
        assert np.array_equal(m.exp(q, v), q + v)
        assert np.array_equal(m.log(q, p), p - q)


class TestSharedInvariants:
    def test_round_trip(self, manifold, rng):
        for _ in range(200):
            q, p = random_pair(manifold, rng)
            assert np.linalg.norm(manifold.exp(q, manifold.log(q, p)) - p) < 1e-9

    def test_dist_matches_log_norm(self, manifold, rng):
        for _ in range(50):
            q, p = random_pair(manifold, rng)
            v = manifold.log(q, p)
            assert abs(manifold.dist(q, p) - manifold.norm(q, v)) < 1e-9

    def test_zero_vector(self, manifold, rng):
        q = manifold.random_point(rng)
        assert np.array_equal(manifold.exp(q, np.zeros(manifold.ambient_dim)), q)
        assert np.linalg.norm(manifold.log(q, q)) < 1e-12

    def test_squared_distance_gradient(self, manifold, rng):
        # slope of t -> dist(exp_q(tv), p)^2 / 2 against the log formula
        h = 1e-5
        for _ in range(25):
            q, p = random_pair(manifold, rng, max_dist=1.0)
            v = manifold.random_tangent(rng, q, scale=1.0)
            fd = (
                0.5 * manifold.dist(manifold.exp(q, h * v), p) ** 2
                - 0.5 * manifold.dist(manifold.exp(q, -h * v), p) ** 2
            ) / (2.0 * h)
            expected = manifold.inner(q, -manifold.log(q, p), v)
            assert abs(fd - expected) < 1e-6

    def test_squared_distance_hessian_identity(self, manifold, rng):
        h = 1e-3
        for _ in range(25):
            p = manifold.random_point(rng)
            v = manifold.random_tangent(rng, p, scale=rng.uniform(0.2, 1.2))
            fd = (
                0.5 * manifold.dist(manifold.exp(p, h * v), p) ** 2
                + 0.5 * manifold.dist(manifold.exp(p, -h * v), p) ** 2
            ) / h**2
            assert abs(fd - manifold.inner(p, v, v)) < 1e-5


class TestMakeManifold:
    def test_registry(self):
        assert make_manifold("sphere").name == "sphere"
        assert make_manifold("so3").ambient_dim == 9
        assert make_manifold("euclidean", dim=5).dim == 5
        with pytest.raises(ValueError):
            make_manifold("torus")


class TestDlogFd:
    def test_identity_at_base(self, manifold, rng):
        q = manifold.random_point(rng)
        v = manifold.random_tangent(rng, q, scale=0.7)
        got = dlog_fd(manifold, q, q, v, dt=1e-4)
        assert np.linalg.norm(got - v) < 1e-7

    def test_euclidean_exact(self, rng):
        m = Euclidean(3)
        q0, p = rng.standard_normal(3), rng.standard_normal(3)
        v = rng.standard_normal(3)
        np.testing.assert_allclose(dlog_fd(m, q0, p, v, dt=1e-4), v, atol=1e-11)

    def test_sphere_against_fine_step_oracle(self):
        m = Sphere()
        q0 = np.array([1.0, 0.0, 0.0])
        p = np.array([0.0, 1.0, 0.0])
        v = np.array([0.0, 0.0, 0.1])
        coarse = dlog_fd(m, q0, p, v, dt=1e-4)
        fine = dlog_fd(m, q0, p, v, dt=1e-6)  # step-halving oracle
        assert np.linalg.norm(coarse - fine) < 1e-7

    def test_rejects_bad_step(self, rng):
        m = Sphere()
        q = m.random_point(rng)
        with pytest.raises(ValueError):
            dlog_fd(m, q, q, m.random_tangent(rng, q), dt=0.0)


class TestFdPartial:
    def test_constant_map(self):
        got = fd_partial(lambda w: np.array([2.0, -1.0]), np.zeros(2), 0, 1e-3)
        assert np.allclose(got, 0.0, atol=1e-12)

    def test_affine_exact(self, rng):
        a = rng.standard_normal((3, 2))
        b = rng.standard_normal(3)
        omega = rng.standard_normal(2)
        for i in range(2):
            got = fd_partial(lambda w: a @ w + b, omega, i, 1e-3)
            assert np.linalg.norm(got - a[:, i]) < 1e-10

    def test_gauss_map_partial(self):
        got = fd_partial(helicoid_gauss, np.zeros(2), 1, 1e-3)
        expected = helicoid_gauss_partial(np.zeros(2), 1)
        np.testing.assert_allclose(expected, [0.0, 1.0, 0.0], atol=1e-15)
        assert np.linalg.norm(got - expected) < 1e-6
