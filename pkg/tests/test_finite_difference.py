"""有限差分验证单元测试"""
import numpy as np
import pytest

from src.domain import NormalVelocity, VelocityMode, velocity_from_modes
from src.shape import (
    FiniteDifferenceRow,
    convergence_order,
    extrapolate_quotients,
    finite_difference_check,
    hadamard_derivative,
    project_zero_mean_discrete,
)


def cos2_velocity(pack):
    raw = velocity_from_modes([VelocityMode(kind="cos", mode=2)], pack.boundary_angles)
    return project_zero_mean_discrete(pack, raw)

FIVE_VELOCITIES = (
    [VelocityMode(kind="cos", mode=2)],
    [VelocityMode(kind="cos", mode=2), VelocityMode(kind="sin", mode=2)],
    [VelocityMode(kind="cos", mode=2), VelocityMode(kind="cos", mode=3, amplitude=0.5)],
    [VelocityMode(kind="cos", mode=2), VelocityMode(kind="sin", mode=3, amplitude=0.5)],
    [VelocityMode(kind="cos", mode=2), VelocityMode(kind="cos", mode=4, amplitude=0.5)],
)

EPS_DECADES = [1e-2, 1e-3, 1e-4]


class TestConvergenceOrder:
    """测试双对数斜率"""

    def test_quadratic(self):
        eps = np.array([1e-1, 1e-2, 1e-3])
        assert convergence_order(eps, 3.0 * eps ** 2) == pytest.approx(2.0)

    def test_not_enough_points(self):
        assert convergence_order([1e-2, 1e-3], [0.0, 1e-4]) is None

    def test_row_one_sided_errors(self):
        row = FiniteDifferenceRow(
            eps=1e-3, forward=-1.1, backward=0.8, central=-0.15,
            predicted_right=-1.0, predicted_left=1.0,
        )
        assert row.forward_error == pytest.approx(0.1)
        assert row.backward_error == pytest.approx(0.2)


class TestExtrapolateQuotients:
    """测试扣除误差底后的极限与阶"""

    def test_floor_removed(self):
        """测试差商带固定误差底时：原始阶偏低，外推得到离散极限与一阶"""
        eps = np.array(EPS_DECADES)
        predicted, floor = 3.0, 3e-3
        quotients = predicted + floor + 13.0 * eps
        assert convergence_order(eps, np.abs(quotients - predicted)) < 0.9
        limit, order = extrapolate_quotients(eps, quotients)
        assert order == pytest.approx(1.0, abs=1e-8)
        assert limit == pytest.approx(predicted + floor, rel=1e-10)

    def test_second_order(self):
        eps = np.array([4e-2, 2e-2, 1e-2, 5e-3])
        limit, order = extrapolate_quotients(eps, -2.0 + 7.0 * eps ** 2)
        assert order == pytest.approx(2.0, abs=1e-8)
        assert limit == pytest.approx(-2.0, rel=1e-10)

    def test_unsorted_two_points(self):
        """测试两个 ε 时阶未知，按一阶线性外推"""
        limit, order = extrapolate_quotients([1e-3, 1e-2], [1.0 + 1e-3, 1.0 + 1e-2])
        assert order is None
        assert limit == pytest.approx(1.0, rel=1e-10)

    def test_single_point(self):
        assert extrapolate_quotients([1e-3], [1.0]) == (None, None)

class TestFiniteDifferenceCheck:
    """测试 ±ε 变形后的差商"""

    def test_rejects_non_zero_mean(self, unit_disk, disk_pack):
        v = velocity_from_modes([VelocityMode(kind="const")], disk_pack.boundary_angles)
        with pytest.raises(ValueError):
            finite_difference_check(unit_disk, 1, v, [1e-3], 16, pack=disk_pack)

    def test_rejects_non_positive_eps(self, unit_disk, disk_pack):
        with pytest.raises(ValueError):
            finite_difference_check(unit_disk, 1, cos2_velocity(disk_pack), [0.0], 16, pack=disk_pack)

    def test_rejects_wrong_sampling(self, unit_disk, disk_pack):
        angles = np.linspace(0, 2 * np.pi, 40, endpoint=False)
        v = NormalVelocity(values=np.cos(2 * angles), node_angles=angles)
        with pytest.raises(ValueError):
            finite_difference_check(unit_disk, 1, v, [1e-3], 16, pack=disk_pack)

    def test_disk_pair_one_sided(self, unit_disk, disk_pack):
        """测试圆盘 λ2 沿 cos 2θ：前向差商 ≈ −λ2，后向差商 ≈ +λ2"""
        table = finite_difference_check(
            unit_disk, 2, cos2_velocity(disk_pack), [1e-3], 16, pack=disk_pack
        )
        mu = disk_pack.eigenvalue(2)
        row = table.rows[0]
        assert row.forward < 0 < row.backward
        assert row.forward == pytest.approx(-mu, rel=1e-1)
        assert row.backward == pytest.approx(mu, rel=1e-1)
        assert row.forward == pytest.approx(row.predicted_right, rel=1e-1)
        assert row.backward == pytest.approx(row.predicted_left, rel=1e-1)
        # 两个分支关于 ε 对称，中心差商远小于单侧差商
        assert abs(row.central) < 0.05 * mu
        assert table.predicted.position == 1
        assert table.predicted.cluster_size == 2

    def test_concurrent_matches_sequential(self, ellipse_like, ellipse_pack):
        """测试并发求解与顺序求解结果一致"""
        v = cos2_velocity(ellipse_pack)
        kwargs = dict(pack=ellipse_pack)
        a = finite_difference_check(ellipse_like, 1, v, [1e-2, 1e-3], 16, concurrent=True, **kwargs)
        b = finite_difference_check(ellipse_like, 1, v, [1e-2, 1e-3], 16, concurrent=False, **kwargs)
        assert np.allclose(a.csv_rows(), b.csv_rows(), rtol=1e-10, atol=0.0)

    def test_ellipse_simple(self, ellipse_like, ellipse_pack):
        """测试单特征值：前后向差商趋于一致，并接近 Hadamard 导数"""
        v = cos2_velocity(ellipse_pack)
        table = finite_difference_check(ellipse_like, 1, v, [1e-2, 1e-3], 16, pack=ellipse_pack)
        predicted = hadamard_derivative(ellipse_pack, 1, v)
        assert table.predicted.left == table.predicted.right == predicted
        gaps = [abs(r.forward - r.backward) for r in table.rows]
        assert gaps[1] < gaps[0]
        assert table.rows[1].central == pytest.approx(predicted, rel=1.5e-1)

    def test_table_layout(self, ellipse_like, ellipse_pack):
        """测试 CSV 行与摘要"""
        v = cos2_velocity(ellipse_pack)
        table = finite_difference_check(ellipse_like, 1, v, [1e-3], 16, pack=ellipse_pack)
        assert len(table.csv_rows()[0]) == 5
        assert table.csv_rows()[0][0] == 1e-3
        summary = table.summary()
        assert summary["k"] == 1
        assert summary["extended_rule"] is False
        assert len(summary["central"]) == 1
        assert len(summary["forward_error"]) == len(summary["backward_error"]) == 1
        # 单个 ε 求不出阶
        assert summary["convergence_order"] == {"forward": None, "backward": None}
        assert summary["convergence_order_above_floor"] == {"forward": None, "backward": None}

    def test_quadrature_nodes_reach_deform(self, ellipse_like, ellipse_pack, monkeypatch):
        from src.shape import finite_difference

        seen = []
        real_deform = finite_difference.deform

        def recording_deform(*args, **kwargs):
            seen.append(kwargs["quadrature_nodes"])
            return real_deform(*args, **kwargs)

        monkeypatch.setattr(finite_difference, "deform", recording_deform)
        v = cos2_velocity(ellipse_pack)
        finite_difference_check(
            ellipse_like, 1, v, [1e-3], 16, pack=ellipse_pack, concurrent=False, quadrature_nodes=64
        )
        assert seen == [64, 64]

    def test_ellipse_order_above_floor(self, ellipse_like, ellipse_pack):
        """测试 ε 每降一个量级：扣除网格误差底后单侧差商一阶收敛"""
        v = cos2_velocity(ellipse_pack)
        table = finite_difference_check(ellipse_like, 1, v, EPS_DECADES, 16, pack=ellipse_pack)
        summary = table.summary()
        predicted = hadamard_derivative(ellipse_pack, 1, v)
        for branch in ("forward", "backward"):
            assert summary["convergence_order_above_floor"][branch] >= 0.9
            assert summary["mesh_floor"][branch] <= 0.15 * abs(predicted)
        # 两个分支外推到同一个离散导数
        limits = summary["extrapolated"]
        assert limits["forward"] == pytest.approx(limits["backward"], rel=1e-2)

    @pytest.mark.slow
    def test_ellipse_order_above_floor_fine(self, ellipse_like):
        from src.eig import spectrum_of_shape

        pack = spectrum_of_shape(ellipse_like, 1, 32)
        v = cos2_velocity(pack)
        summary = finite_difference_check(ellipse_like, 1, v, EPS_DECADES, 32, pack=pack).summary()
        for branch in ("forward", "backward"):
            assert summary["convergence_order_above_floor"][branch] >= 0.9

    @pytest.mark.slow
    @pytest.mark.parametrize("modes", FIVE_VELOCITIES)
    def test_ellipse_fine(self, ellipse_like, modes):
        """测试 n=32、ε=1e-3 时中心差商与 Hadamard 导数相差不超过 2%"""
        from src.eig import spectrum_of_shape

        pack = spectrum_of_shape(ellipse_like, 1, 32)
        v = project_zero_mean_discrete(pack, velocity_from_modes(modes, pack.boundary_angles))
        table = finite_difference_check(ellipse_like, 1, v, [1e-3], 32, pack=pack)
        assert table.rows[0].central == pytest.approx(hadamard_derivative(pack, 1, v), rel=2e-2)

    @pytest.mark.slow
    def test_disk_pair_fine(self, unit_disk, disk_pack_fine):
        table = finite_difference_check(
            unit_disk, 2, cos2_velocity(disk_pack_fine), [1e-3], 32, pack=disk_pack_fine
        )
        mu = disk_pack_fine.eigenvalue(2)
        assert table.rows[0].forward == pytest.approx(-mu, rel=5e-2)
        assert table.rows[0].backward == pytest.approx(mu, rel=5e-2)
