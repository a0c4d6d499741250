"""热迹的小时间渐近展开（平直二维）

Y(t) ≈ (4πt)^{-1} (a0 + a1 t^{1/2} + a2 t + a3 t^{3/2})

一般公式在平直二维中 scal = 0、ρ = 0、tr A = κ、|A|² = (tr A)² = κ²，
a3 中的 −7|A|² + 10(tr A)² 化为 3κ²，得到
    a0 = 面积
    a1 = −(√π/2) · 周长
    a2 = (1/3) ∫ κ ds   （Gauss-Bonnet：简单闭曲线上恒为 2π/3）
    a3 = (√π/64) ∫ κ² ds
"""
import math
from dataclasses import dataclass

import numpy as np

from ..config import defaults
from ..domain import BoundaryShape, geometry_report
from ..shape.criticality import relative_spread

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class AsymptoticCoeffs:
    a0: float
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        if self.a0 <= 0:
            raise ValueError(f"a0 (面积) 必须为正: {self.a0}")
        if self.a1 >= 0:
            raise ValueError(f"a1 必须为负: {self.a1}")

    def to_dict(self) -> dict:
        return {"a0": self.a0, "a1": self.a1, "a2": self.a2, "a3": self.a3}


def asymptotic_coeffs(
    shape: BoundaryShape,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> AsymptoticCoeffs:
    """星形区域的 a0..a3"""
    geometry = geometry_report(shape, quadrature_nodes)
    return AsymptoticCoeffs(
        a0=geometry.area,
        a1=-0.5 * SQRT_PI * geometry.perimeter,
        a2=geometry.total_curvature / 3.0,
        a3=SQRT_PI / 64.0 * geometry.total_squared_curvature,
    )


def rectangle_coeffs(width: float, height: float) -> AsymptoticCoeffs:
    """矩形：四个直角各贡献 (π² − α²)/(24πα) = 1/16 到常数项，边界光滑部分曲率为零"""
    if width <= 0 or height <= 0:
        raise ValueError(f"矩形边长必须为正: {width} x {height}")
    return AsymptoticCoeffs(
        a0=width * height,
        a1=-0.5 * SQRT_PI * 2.0 * (width + height),
        a2=4.0 * math.pi * 4.0 / 16.0,
        a3=0.0,
    )


def expansion_eval(coeffs: AsymptoticCoeffs, t):
    """Y_asym(t)，t 可以是数组"""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t 必须为正")
    sqrt_t = np.sqrt(t)
    series = coeffs.a0 + coeffs.a1 * sqrt_t + coeffs.a2 * t + coeffs.a3 * t * sqrt_t
    value = series / (4.0 * math.pi * t)
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class CurvatureReport:
    constant: bool
    spread: float
    mean: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "constant": self.constant,
            "spread": self.spread,
            "mean_curvature": self.mean,
            "tol": self.tol,
        }


def mean_curvature_report(
    shape: BoundaryShape,
    tol: float = 1e-2,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> CurvatureReport:
    """曲率 κ(θ) 的相对离差；对所有 t 热迹临界的必要条件是曲率为常数"""
    curvature = geometry_report(shape, quadrature_nodes).curvature
    spread = relative_spread(curvature)
    return CurvatureReport(
        constant=spread <= tol,
        spread=spread,
        mean=float(np.mean(curvature)),
        tol=tol,
    )
