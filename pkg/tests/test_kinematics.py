import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feedsim import kinematics as K
from feedsim.model import DHRow, ModelError

from .conftest import random_q
from .oracles import fk_oracle, fk_position_oracle, jacobian_forward_oracle

angle = st.floats(min_value=-360, max_value=360, allow_nan=False)


class TestLinkTransform:
    def test_all_zero_row_is_identity(self):
        T = K.link_transform(DHRow(0, 0, 0), 0.0)
        assert np.array_equal(T, np.eye(4))

    def test_table_row_one_is_pure_z_offset(self, model):
        T = K.link_transform(model.dh_rows[0], 0.0)
        assert np.array_equal(T[:3, :3], np.eye(3))
        assert np.array_equal(T[:3, 3], [0.0, 0.0, 3.0])

    def test_quarter_twist_quarter_turn(self):
        # Hand-evaluated entries for alpha=90, theta=90.
        T = K.link_transform(DHRow(90, 0, 0), 90.0)
        np.testing.assert_allclose(T[:3, 0], [0, 0, 1], atol=1e-15)
        np.testing.assert_allclose(T[:3, 1], [-1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(T[:3, 2], [0, -1, 0], atol=1e-15)
        np.testing.assert_allclose(T[:3, 3], [0, 0, 0], atol=1e-15)

    def test_home_offset_is_added(self):
        row = DHRow(0, 2, 0, theta_home=30.0)
        assert np.allclose(K.link_transform(row, 15.0), K.link_transform(DHRow(0, 2, 0), 45.0))

    def test_non_finite_theta_rejected(self):
        with pytest.raises(ModelError):
            K.link_transform(DHRow(0, 0, 0), float("nan"))

    @given(alpha=st.floats(-180, 180), a=st.floats(0, 20), d=st.floats(-5, 5), theta=angle)
    def test_matches_entrywise_oracle(self, alpha, a, d, theta):
        T = K.link_transform(DHRow(alpha, a, d), theta)
        expect = np.array(fk_oracle([(alpha, a, d, 0.0)], [theta]))
        np.testing.assert_allclose(T, expect, atol=1e-12)


class TestForwardKinematics:
    def test_zeros_reaches_straight_out(self, model):
        T, pos = K.forward_kinematics(model, [0, 0, 0, 0, 0])
        np.testing.assert_allclose(pos, [22.0, 0.0, 3.0], atol=1e-9)
        oracle = fk_position_oracle(model.dh_array.tolist(), [0] * 5)
        np.testing.assert_allclose(pos, oracle, atol=1e-12)

    def test_base_yaw_maps_x_to_y(self, model):
        _, pos = K.forward_kinematics(model, [90, 0, 0, 0, 0])
        np.testing.assert_allclose(pos, [0.0, 22.0, 3.0], atol=1e-9)

    def test_shoulder_up_stacks_vertically(self, model):
        _, pos = K.forward_kinematics(model, [0, 90, 0, 0, 0])
        np.testing.assert_allclose(pos, [0.0, 0.0, 25.0], atol=1e-9)

    def test_matches_oracle_on_random_configs(self, model):
        rng = np.random.default_rng(7)
        dh = model.dh_array.tolist()
        for _ in range(100):
            q = random_q(model, rng)
            T, _ = K.forward_kinematics(model, q)
            np.testing.assert_allclose(T, fk_oracle(dh, q), atol=1e-12)

    def test_rigid_transform_invariants_hold(self, model):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            T, _ = K.forward_kinematics(model, random_q(model, rng))
            assert K.is_rigid_transform(T, tol=1e-9)

    def test_chain_associativity(self, model):
        rng = np.random.default_rng(3)
        for _ in range(50):
            q = random_q(model, rng)
            Ts = [K.link_transform(r, q[i]) for i, r in enumerate(model.dh_rows)]
            left = ((Ts[0] @ Ts[1]) @ Ts[2]) @ (Ts[3] @ Ts[4])
            right = Ts[0] @ (Ts[1] @ (Ts[2] @ (Ts[3] @ Ts[4])))
            np.testing.assert_allclose(left, right, atol=1e-12)

    def test_reach_never_exceeds_link_sum(self, model):
        rng = np.random.default_rng(19)
        shoulder = np.array([0.0, 0.0, model.base_height])
        for _ in range(500):
            _, pos = K.forward_kinematics(model, random_q(model, rng))
            assert np.linalg.norm(pos - shoulder) <= model.total_reach + 1e-9

    def test_base_yaw_equivariance(self, model):
        rng = np.random.default_rng(23)
        for _ in range(100):
            q = random_q(model, rng)
            delta = rng.uniform(-60, 60)
            q2 = q.copy()
            q2[0] += delta
            _, p = K.forward_kinematics(model, q)
            _, p2 = K.forward_kinematics(model, q2)
            np.testing.assert_allclose(p2, K.rot_z(delta) @ p, atol=1e-9)


class TestNumericalJacobian:
    def test_base_column_is_analytic_yaw_derivative(self, model):
        J = K.numerical_jacobian(model, [0, 0, 0, 0, 0])
        np.testing.assert_allclose(J[:, 0], [0.0, 22.0 * math.pi / 180.0, 0.0], atol=1e-6)

    def test_matches_forward_difference_oracle(self, model):
        rng = np.random.default_rng(31)
        dh = model.dh_array.tolist()
        for _ in range(100):
            q = random_q(model, rng)
            J = K.numerical_jacobian(model, q)
            J_fd = np.array(jacobian_forward_oracle(dh, list(q)))
            np.testing.assert_allclose(J, J_fd, atol=1e-5)

    def test_matches_definition_exactly(self, model):
        rng = np.random.default_rng(37)
        h = 1e-4
        for _ in range(20):
            q = random_q(model, rng)
            J = K.numerical_jacobian(model, q, h)
            for j in range(5):
                e = np.zeros(5)
                e[j] = h
                col = (
                    K.fk_position_only(model, q + e) - K.fk_position_only(model, q - e)
                ) / (2 * h)
                np.testing.assert_allclose(J[:, j], col, atol=1e-12)

    def test_rejects_bad_step(self, model):
        with pytest.raises(ModelError):
            K.numerical_jacobian(model, [0] * 5, h=0.0)


class TestWorkspaceSample:
    def test_grid_size_and_bounds(self, model):
        pts = K.workspace_sample(model, 2)
        assert pts.shape == (32, 3)
        radius = np.hypot(pts[:, 0], pts[:, 1])
        assert np.all(radius <= model.total_reach + 1e-9)
        assert np.all(pts[:, 2] >= model.base_height - model.total_reach - 1e-9)

    def test_degenerate_limits_collapse(self):
        m = _collapsed_model()
        pts = K.workspace_sample(m, 3)
        assert pts.shape == (243, 3)
        assert np.allclose(pts, pts[0])

    def test_each_point_is_fk_of_its_grid_vector(self, model):
        import itertools

        pts = K.workspace_sample(model, 3)
        axes = [np.linspace(lo, hi, 3) for lo, hi in model.joint_limits]
        for pt, q in zip(pts, itertools.product(*axes)):
            np.testing.assert_allclose(pt, K.fk_position_only(model, np.array(q)), atol=1e-12)

    def test_overflow_guard(self, model):
        with pytest.raises(ModelError):
            K.workspace_sample(model, 26)  # 26^5 > 1e7


def _collapsed_model():
    from feedsim.model import RobotModel

    rows = [DHRow(0, 0, 3), DHRow(90, 0, 0), DHRow(0, 5, 0), DHRow(0, 5, 0), DHRow(0, 12, 0)]
    eps = 1e-9
    return RobotModel(rows, [(45.0, 45.0 + eps)] * 5, [30.0] * 5)
