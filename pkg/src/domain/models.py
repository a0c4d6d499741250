"""星形区域模型"""
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..config import defaults


@dataclass(frozen=True)
class BoundaryShape:
    """星形区域，边界为 r(θ) = r0 + Σ (a_m cos mθ + b_m sin mθ)"""

    r0: float
    cos_coeffs: Tuple[float, ...]
    sin_coeffs: Tuple[float, ...]

    def __post_init__(self):
        cos_coeffs = tuple(float(a) for a in self.cos_coeffs)
        sin_coeffs = tuple(float(b) for b in self.sin_coeffs)
        if len(cos_coeffs) != len(sin_coeffs):
            raise ValueError(
                f"cos/sin 系数数量不一致: {len(cos_coeffs)} != {len(sin_coeffs)}"
            )
        if len(cos_coeffs) < 1:
            raise ValueError("Fourier 截断 N 必须 >= 1")
        values = (float(self.r0),) + cos_coeffs + sin_coeffs
        if not all(math.isfinite(x) for x in values):
            raise ValueError("Fourier 系数必须是有限值")
        object.__setattr__(self, "r0", float(self.r0))
        object.__setattr__(self, "cos_coeffs", cos_coeffs)
        object.__setattr__(self, "sin_coeffs", sin_coeffs)

    @classmethod
    def disk(cls, radius: float = 1.0, n_modes: int = defaults.fourier_modes) -> "BoundaryShape":
        """圆盘"""
        return cls(r0=radius, cos_coeffs=(0.0,) * n_modes, sin_coeffs=(0.0,) * n_modes)

    @classmethod
    def from_modes(
        cls,
        r0: float,
        cos: dict = None,
        sin: dict = None,
        n_modes: int = defaults.fourier_modes,
    ) -> "BoundaryShape":
        """按模态号给出系数，如 from_modes(1.0, cos={2: 0.15})"""
        a = [0.0] * n_modes
        b = [0.0] * n_modes
        for m, amp in (cos or {}).items():
            a[m - 1] = amp
        for m, amp in (sin or {}).items():
            b[m - 1] = amp
        return cls(r0=r0, cos_coeffs=tuple(a), sin_coeffs=tuple(b))

    @classmethod
    def ellipse_like(
        cls,
        a2: float = 0.15,
        r0: float = 1.0,
        n_modes: int = defaults.fourier_modes,
    ) -> "BoundaryShape":
        """r(θ) = r0 + a2 cos 2θ"""
        return cls.from_modes(r0, cos={2: a2}, n_modes=n_modes)

    @property
    def n_modes(self) -> int:
        return len(self.cos_coeffs)

    @property
    def modes(self) -> np.ndarray:
        return np.arange(1, self.n_modes + 1, dtype=float)

    def radius(self, theta) -> np.ndarray:
        """r(θ)"""
        return self.radius_derivative(theta, order=0)

    def radius_derivative(self, theta, order: int = 1) -> np.ndarray:
        """r 对 θ 的 order 阶导数"""
        theta = np.asarray(theta, dtype=float)
        m = self.modes
        a = np.asarray(self.cos_coeffs)
        b = np.asarray(self.sin_coeffs)
        phase = np.multiply.outer(theta, m)
        c, s = np.cos(phase), np.sin(phase)
        # d^k/dθ^k 作用在 (a cos + b sin) 上按 k mod 4 循环
        k = order % 4
        if k == 0:
            series = c * a + s * b
        elif k == 1:
            series = -s * a + c * b
        elif k == 2:
            series = -c * a - s * b
        else:
            series = s * a - c * b
        value = (series * m ** order).sum(axis=-1)
        if order == 0:
            value = value + self.r0
        return value

    def point(self, theta) -> np.ndarray:
        """边界点 (r cosθ, r sinθ)，形状 (..., 2)"""
        theta = np.asarray(theta, dtype=float)
        r = self.radius(theta)
        return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)

    def speed(self, theta) -> np.ndarray:
        """|p'(θ)| = sqrt(r² + r'²)"""
        return np.hypot(self.radius(theta), self.radius_derivative(theta, 1))

    def outward_normal(self, theta) -> np.ndarray:
        """单位外法向 (r cosθ + r' sinθ, r sinθ − r' cosθ) / |p'|"""
        theta = np.asarray(theta, dtype=float)
        r = self.radius(theta)
        dr = self.radius_derivative(theta, 1)
        norm = np.hypot(r, dr)
        nx = (r * np.cos(theta) + dr * np.sin(theta)) / norm
        ny = (r * np.sin(theta) - dr * np.cos(theta)) / norm
        return np.stack([nx, ny], axis=-1)

    def scaled(self, factor: float) -> "BoundaryShape":
        """所有系数乘以 factor（关于原点的位似）"""
        return BoundaryShape(
            r0=self.r0 * factor,
            cos_coeffs=tuple(a * factor for a in self.cos_coeffs),
            sin_coeffs=tuple(b * factor for b in self.sin_coeffs),
        )

    def max_relative_amplitude(self) -> float:
        """max(|a_m|, |b_m|) / r0"""
        amps = np.abs(np.concatenate([self.cos_coeffs, self.sin_coeffs]))
        return float(amps.max() / self.r0) if amps.size else 0.0


def uniform_angles(count: int) -> np.ndarray:
    """[0, 2π) 上的等距角度 2πj/count"""
    return 2.0 * np.pi * np.arange(count) / count


@dataclass(frozen=True, eq=False)
class NormalVelocity:
    """边界上的法向速度 v，在一组角度节点上采样"""

    values: np.ndarray
    node_angles: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).copy()
        angles = np.asarray(self.node_angles, dtype=float).copy()
        if values.shape != angles.shape or values.ndim != 1:
            raise ValueError(
                f"速度采样与角度节点长度不一致: {values.shape} != {angles.shape}"
            )
        values.setflags(write=False)
        angles.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "node_angles", angles)

    def __len__(self) -> int:
        return len(self.values)

    def with_values(self, values) -> "NormalVelocity":
        return NormalVelocity(values=values, node_angles=self.node_angles)

    def scaled(self, factor: float) -> "NormalVelocity":
        return self.with_values(self.values * factor)

    @property
    def max_abs(self) -> float:
        return float(np.abs(self.values).max()) if len(self) else 0.0


@dataclass(frozen=True, eq=False)
class VelocityMode:
    """速度的一个 Fourier 模态: kind 为 const / cos / sin"""

    kind: str
    mode: int = 0
    amplitude: float = 1.0

    def evaluate(self, theta: np.ndarray) -> np.ndarray:
        if self.kind == "const":
            return np.full_like(theta, self.amplitude, dtype=float)
        if self.kind == "cos":
            return self.amplitude * np.cos(self.mode * theta)
        if self.kind == "sin":
            return self.amplitude * np.sin(self.mode * theta)
        raise ValueError(f"未知的模态类型: {self.kind}")


def velocity_from_modes(modes: Sequence[VelocityMode], angles) -> NormalVelocity:
    """按 Fourier 模态列表在给定角度上采样速度"""
    angles = np.asarray(angles, dtype=float)
    values = np.zeros_like(angles)
    for mode in modes:
        values = values + mode.evaluate(angles)
    return NormalVelocity(values=values, node_angles=angles)


@dataclass(frozen=True, eq=False)
class GeometryReport:
    """几何量：面积、周长、求积节点上的曲率"""

    area: float
    perimeter: float
    node_angles: np.ndarray
    curvature: np.ndarray
    speed: np.ndarray  # |p'(θ)|，与 2π/Q 相乘即弧长权重

    @property
    def arc_weights(self) -> np.ndarray:
        return self.speed * (2.0 * np.pi / len(self.node_angles))

    @property
    def total_curvature(self) -> float:
        """∫ κ ds"""
        return float(np.dot(self.curvature, self.arc_weights))

    @property
    def total_squared_curvature(self) -> float:
        """∫ κ² ds"""
        return float(np.dot(self.curvature ** 2, self.arc_weights))
