"""区域几何运算

所有边界积分使用均匀 θ 网格上的复合梯形公式，对周期被积函数谱精度收敛。
"""
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from ..config import defaults
from ..errors import FitResidualTooLarge, NonStarShaped
from .models import BoundaryShape, GeometryReport, NormalVelocity, uniform_angles


def boundary_point(shape: BoundaryShape, theta: float) -> Tuple[float, float]:
    """边界点 (r(θ)cosθ, r(θ)sinθ)"""
    x, y = shape.point(theta)
    return float(x), float(y)


def check_star_shaped(
    shape: BoundaryShape,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> None:
    """在 star_check_factor * Q 个点上检查 r(θ) > 0"""
    theta = uniform_angles(defaults.star_check_factor * quadrature_nodes)
    r = shape.radius(theta)
    i = int(np.argmin(r))
    if r[i] <= 0.0:
        raise NonStarShaped(f"r(θ) 在 θ={theta[i]:.6f} 处为 {r[i]:.6e}，区域不是星形")


def geometry_report(
    shape: BoundaryShape,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> GeometryReport:
    """面积、周长和求积节点上的曲率"""
    check_star_shaped(shape, quadrature_nodes)
    theta = uniform_angles(quadrature_nodes)
    r = shape.radius(theta)
    dr = shape.radius_derivative(theta, 1)
    ddr = shape.radius_derivative(theta, 2)
    speed = np.hypot(r, dr)
    h = 2.0 * np.pi / quadrature_nodes

    area = 0.5 * float(np.sum(r * r)) * h
    perimeter = float(np.sum(speed)) * h
    curvature = (r * r + 2.0 * dr * dr - r * ddr) / speed ** 3
    return GeometryReport(
        area=area,
        perimeter=perimeter,
        node_angles=theta,
        curvature=curvature,
        speed=speed,
    )


def arc_weights(shape: BoundaryShape, angles: np.ndarray) -> np.ndarray:
    """周期梯形公式在（可能非等距的）角度节点上的弧长权重"""
    angles = np.asarray(angles, dtype=float)
    if len(angles) == 0:
        return np.zeros(0)
    nxt = np.roll(angles, -1)
    prv = np.roll(angles, 1)
    gap_next = np.mod(nxt - angles, 2.0 * np.pi)
    gap_prev = np.mod(angles - prv, 2.0 * np.pi)
    if len(angles) == 1:
        gap_next = gap_prev = np.array([2.0 * np.pi])
    return shape.speed(angles) * 0.5 * (gap_next + gap_prev)


def integrate_on_shape(shape: BoundaryShape, v: NormalVelocity) -> float:
    """∫_{∂Ω} v ds"""
    return float(np.dot(v.values, arc_weights(shape, v.node_angles)))


def project_zero_mean(v: NormalVelocity, shape: BoundaryShape) -> NormalVelocity:
    """v − (∫v ds)/周长，投影到保体积变形类"""
    weights = arc_weights(shape, v.node_angles)
    mean = float(np.dot(v.values, weights) / weights.sum())
    return v.with_values(v.values - mean)


def _fourier_design(angles: np.ndarray, max_mode: int) -> np.ndarray:
    """列为 1, cos mθ, sin mθ (m = 1..max_mode)"""
    m = np.arange(1, max_mode + 1)
    phase = np.multiply.outer(angles, m)
    return np.hstack([np.ones((len(angles), 1)), np.cos(phase), np.sin(phase)])


def deformation_fit(
    shape: BoundaryShape,
    v: NormalVelocity,
    eps: float,
    n_modes: Optional[int] = None,
    fit_tolerance: float = defaults.fit_tolerance,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> Tuple[BoundaryShape, float]:
    """边界点沿法向移动 ε v 后，射线求交恢复 r 并最小二乘投影到 N 个模态

    Returns:
        (新区域, 拟合的相对 RMS 残差)
    """
    if eps == 0.0:
        return shape, 0.0

    n_modes = n_modes or shape.n_modes
    theta = np.asarray(v.node_angles)
    if len(theta) < 2 * n_modes + 1:
        raise ValueError(
            f"速度采样点 {len(theta)} 个，不足以拟合 {n_modes} 个模态 (需要 >= {2 * n_modes + 1})"
        )
    order = np.argsort(theta)
    theta = theta[order]
    values = np.asarray(v.values)[order]

    moved = shape.point(theta) + eps * values[:, None] * shape.outward_normal(theta)
    rho = np.hypot(moved[:, 0], moved[:, 1])
    if np.any(rho <= 0.0):
        raise NonStarShaped("变形后的边界经过原点")
    phi = np.arctan2(moved[:, 1], moved[:, 0])

    # 每条射线恰好命中一次 <=> 极角严格递增且总共绕一圈
    gaps = np.mod(np.diff(np.append(phi, phi[0])), 2.0 * np.pi)
    winding = gaps.sum() / (2.0 * np.pi)
    if np.any(gaps <= 0.0) or np.any(gaps >= np.pi) or abs(winding - 1.0) > 1e-9:
        raise NonStarShaped("变形后的边界不是关于原点的星形：射线未命中或多次命中")

    design = _fourier_design(phi, n_modes)
    coeffs, *_ = np.linalg.lstsq(design, rho, rcond=None)
    fitted = design @ coeffs
    residual = float(np.sqrt(np.mean((fitted - rho) ** 2)) / np.mean(rho))
    logger.debug(f"变形拟合 | eps={eps:.3e} | modes={n_modes} | residual={residual:.3e}")
    if residual > fit_tolerance:
        raise FitResidualTooLarge(residual, fit_tolerance)

    deformed = BoundaryShape(
        r0=coeffs[0],
        cos_coeffs=tuple(coeffs[1:n_modes + 1]),
        sin_coeffs=tuple(coeffs[n_modes + 1:]),
    )
    check_star_shaped(deformed, quadrature_nodes)
    return deformed, residual


def deform(
    shape: BoundaryShape,
    v: NormalVelocity,
    eps: float,
    n_modes: Optional[int] = None,
    fit_tolerance: float = defaults.fit_tolerance,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> BoundaryShape:
    """Ω_ε：边界沿法向以速度 v 移动 ε"""
    deformed, _ = deformation_fit(shape, v, eps, n_modes, fit_tolerance, quadrature_nodes)
    return deformed


def rescale_to_area(
    shape: BoundaryShape,
    target_area: float,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> BoundaryShape:
    """关于原点位似，使面积恰为 target_area"""
    area = geometry_report(shape, quadrature_nodes).area
    return shape.scaled(float(np.sqrt(target_area / area)))


def filter_velocity(
    v: NormalVelocity,
    weights: np.ndarray,
    max_mode: int,
) -> NormalVelocity:
    """加权最小二乘投影到 Fourier 模态 0..max_mode

    投影在 w 加权内积下正交，常数在子空间内，因此零均值速度投影后仍零均值。
    """
    weights = np.asarray(weights, dtype=float)
    if len(v) < 2 * max_mode + 1:
        raise ValueError(f"采样点 {len(v)} 个，不足以保留 {max_mode} 个模态")
    design = _fourier_design(np.asarray(v.node_angles), max_mode)
    sqrt_w = np.sqrt(weights)
    coeffs, *_ = np.linalg.lstsq(design * sqrt_w[:, None], v.values * sqrt_w, rcond=None)
    return v.with_values(design @ coeffs)
