"""Pytest configuration and fixtures

网格和频谱的计算代价较高，按会话缓存。
"""
import math

import numpy as np
import pytest
from scipy.special import jn_zeros

from src.domain import BoundaryShape
from src.eig import solve_spectrum, spectrum_of_shape
from src.fem import assemble
from src.mesh import structured_rectangle

J01_SQ = float(jn_zeros(0, 1)[0] ** 2)  # ≈ 5.78319
J11_SQ = float(jn_zeros(1, 1)[0] ** 2)  # ≈ 14.68197
J21_SQ = float(jn_zeros(2, 1)[0] ** 2)  # ≈ 26.37462


def disk_eigenvalues(count: int, max_order: int = 30, zeros: int = 30) -> np.ndarray:
    """单位圆盘的前 count 个特征值（计重数），由 Bessel 零点得到"""
    values = []
    for m in range(max_order + 1):
        multiplicity = 1 if m == 0 else 2
        for z in jn_zeros(m, zeros):
            values.extend([z * z] * multiplicity)
    return np.sort(values)[:count]


@pytest.fixture(scope="session")
def unit_disk():
    return BoundaryShape.disk()


@pytest.fixture(scope="session")
def ellipse_like():
    """r(θ) = 1 + 0.15 cos 2θ"""
    return BoundaryShape.ellipse_like(0.15)


@pytest.fixture(scope="session")
def disk_pack(unit_disk):
    """n=16，前 6 个特征对（含 {2,3}、{4,5} 两个二重簇）"""
    return spectrum_of_shape(unit_disk, 6, 16)


@pytest.fixture(scope="session")
def ellipse_pack(ellipse_like):
    return spectrum_of_shape(ellipse_like, 6, 16)


@pytest.fixture(scope="session")
def disk_pack_fine(unit_disk):
    """n=32（稀疏 shift-invert 路径）"""
    return spectrum_of_shape(unit_disk, 6, 32)


@pytest.fixture(scope="session")
def square_pack():
    """π×π 正方形，48×48 结构网格"""
    mesh = structured_rectangle(math.pi, math.pi, 48, 48)
    return solve_spectrum(assemble(mesh), 6)
