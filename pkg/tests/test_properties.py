"""随机星形区域上的性质测试（固定种子）"""
import math

import numpy as np
import pytest

from src.domain import BoundaryShape, geometry_report
from src.eig import spectrum_of_shape
from src.heat import asymptotic_coeffs, heat_trace_derivative
from src.shape import boundary_velocity, derivatives_of, hadamard_derivative, project_zero_mean_discrete

SEEDS = list(range(20))


def random_shape(seed: int) -> BoundaryShape:
    """r0 = 1，模态 2..4 的系数在 [−0.05, 0.05] 内均匀采样"""
    rng = np.random.default_rng(seed)
    cos = {m: rng.uniform(-0.05, 0.05) for m in (2, 3, 4)}
    sin = {m: rng.uniform(-0.05, 0.05) for m in (2, 3, 4)}
    return BoundaryShape.from_modes(1.0, cos=cos, sin=sin, n_modes=4)


@pytest.fixture(scope="module")
def packs():
    return {seed: spectrum_of_shape(random_shape(seed), 2, 10) for seed in SEEDS}


@pytest.mark.parametrize("seed", SEEDS)
class TestRandomShapes:
    """测试随机区域上的恒等式"""

    def test_geometry(self, seed):
        """测试面积公式与 a2 = 2π/3"""
        shape = random_shape(seed)
        geometry = geometry_report(shape)
        squares = sum(a * a for a in shape.cos_coeffs) + sum(b * b for b in shape.sin_coeffs)
        assert geometry.area == pytest.approx(math.pi + 0.5 * math.pi * squares, rel=1e-12)
        assert asymptotic_coeffs(shape).a2 == pytest.approx(2 * math.pi / 3, abs=1e-6)

    def test_mesh_and_flux(self, packs, seed):
        """测试网格面积为正且 Green 恒等式成立"""
        pack = packs[seed]
        assert np.all(pack.mesh.signed_areas() > 0)
        flux, mass = pack.flux_balance(1)
        assert flux == pytest.approx(mass, rel=1e-8)

    def test_dilation_identity(self, packs, seed):
        """测试 v = x·ν 时 dλ1/dε ≈ −2λ1"""
        pack = packs[seed]
        shape = random_shape(seed)
        angles = pack.boundary_angles
        points = pack.mesh.nodes[pack.mesh.boundary_nodes]
        support = np.einsum("ij,ij->i", points, shape.outward_normal(angles))
        d = hadamard_derivative(pack, 1, boundary_velocity(pack, support))
        assert d == pytest.approx(-2.0 * pack.eigenvalue(1), rel=1e-1)

    def test_one_sided_order(self, packs, seed):
        """测试簇首的右导数不大于左导数"""
        pack = packs[seed]
        rng = np.random.default_rng(1000 + seed)
        v = project_zero_mean_discrete(
            pack, boundary_velocity(pack, rng.standard_normal(pack.mesh.n_boundary))
        )
        cluster = pack.cluster_of(2)
        q, osd = derivatives_of(pack, cluster.start, v)
        assert osd.right <= osd.left
        assert np.allclose(q.matrix, q.matrix.T)

    def test_heat_derivative_first_term(self, packs, seed):
        """测试 N=1 时 dY/dε = −t e^{−λ1 t} dλ1/dε"""
        pack = packs[seed]
        v = project_zero_mean_discrete(
            pack, boundary_velocity(pack, np.cos(2 * pack.boundary_angles))
        )
        t = 0.3
        expected = -t * math.exp(-pack.eigenvalue(1) * t) * hadamard_derivative(pack, 1, v)
        assert heat_trace_derivative(pack, v, t, n_terms=1) == pytest.approx(expected, rel=1e-12, abs=1e-14)
