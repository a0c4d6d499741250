"""热迹 Y(t) = Σ e^{−λ_k t} 及其形状导数"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..domain import NormalVelocity
from ..eig import SpectralPack
from ..errors import TailTooLarge
from ..shape import check_velocity, relative_spread
from .asymptotics import AsymptoticCoeffs, expansion_eval


@dataclass(frozen=True)
class HeatTraceSample:
    t: float
    value: float
    tail_bound: float
    n_used: int


def weyl_tail(area: float, t: float, n_terms: int) -> float:
    """按 λ_k ≳ 4πk/面积 估计截断误差: ∫_N^∞ e^{−4πkt/A} dk"""
    rate = 4.0 * math.pi * t / area
    return math.exp(-rate * n_terms) / rate


def _domain_area(pack: SpectralPack) -> float:
    return float(pack.mesh.signed_areas().sum())


def _resolve_terms(pack: SpectralPack, n_terms: Optional[int], t: float) -> int:
    if t <= 0:
        raise ValueError(f"t 必须为正: {t}")
    if n_terms is None:
        return pack.count
    if not 1 <= n_terms <= pack.count:
        raise ValueError(f"求和项数 N={n_terms} 必须在 1..{pack.count} 之间")
    return n_terms


def _check_tail(tail: float, accuracy: Optional[float]) -> None:
    if accuracy is not None and tail > accuracy:
        raise TailTooLarge(tail, accuracy)


def heat_trace(
    pack: SpectralPack,
    t: float,
    n_terms: Optional[int] = None,
    accuracy: Optional[float] = None,
) -> HeatTraceSample:
    """前 N 项部分和，默认使用全部已求特征值"""
    n_terms = _resolve_terms(pack, n_terms, t)
    value = float(np.exp(-pack.eigenvalues[:n_terms] * t).sum())
    tail = weyl_tail(_domain_area(pack), t, n_terms)
    _check_tail(tail, accuracy)
    return HeatTraceSample(t=float(t), value=value, tail_bound=tail, n_used=n_terms)


def _whole_clusters(pack: SpectralPack, n_terms: int) -> List:
    """前 N 项涉及的簇；被截断的簇补全"""
    clusters = [c for c in pack.clusters if c.start <= n_terms]
    if clusters and clusters[-1].end > n_terms:
        logger.debug(f"N={n_terms} 截断了簇 {list(clusters[-1].indices)}，按整簇求和")
    return clusters


def heat_trace_derivative(
    pack: SpectralPack,
    v: NormalVelocity,
    t: float,
    n_terms: Optional[int] = None,
    accuracy: Optional[float] = None,
) -> float:
    """dY/dε = −t Σ e^{−λ t} dλ/dε = t Σ e^{−λ t} ∫ v Σ_{i∈簇} (∂φ_i/∂ν)² ds

    每个簇用簇内特征值的平均值作权重，对簇内正交基的选取不变。
    """
    check_velocity(pack, v)
    n_terms = _resolve_terms(pack, n_terms, t)
    w = pack.boundary_weights
    mean = float(np.dot(v.values, w) / w.sum())
    if abs(mean) > 1e-8 * max(v.max_abs, 1.0):
        logger.warning(f"热迹导数的速度不是零均值: mean={mean:.3e}")

    total = 0.0
    for cluster in _whole_clusters(pack, n_terms):
        rows = np.arange(cluster.start - 1, cluster.end)
        density = (pack.normal_derivatives[rows] ** 2).sum(axis=0)
        weight = math.exp(-float(pack.eigenvalues[rows].mean()) * t)
        total += weight * float(np.dot(w * v.values, density))
    _check_tail(weyl_tail(_domain_area(pack), t, n_terms), accuracy)
    return t * total


def boundary_heat_density(pack: SpectralPack, t: float, n_terms: Optional[int] = None) -> np.ndarray:
    """Σ e^{−λ_k t} (∂φ_k/∂ν)²，边界节点上"""
    n_terms = _resolve_terms(pack, n_terms, t)
    weights = np.exp(-pack.eigenvalues[:n_terms] * t)
    return weights @ pack.normal_derivatives[:n_terms] ** 2


@dataclass(frozen=True)
class TraceSweepRow:
    t: float
    y_spec: float
    tail_bound: float
    y_asym: float

    @property
    def rel_gap(self) -> float:
        return abs(self.y_spec - self.y_asym) / self.y_spec

    def as_tuple(self) -> tuple:
        return (self.t, self.y_spec, self.tail_bound, self.y_asym, self.rel_gap)


def trace_sweep(
    pack: SpectralPack,
    coeffs: AsymptoticCoeffs,
    t_list: Sequence[float],
    n_terms: Optional[int] = None,
    accuracy: Optional[float] = None,
) -> List[TraceSweepRow]:
    """谱和与渐近展开的对比: t, Y_spec, tail_bound, Y_asym, rel_gap"""
    rows = []
    for t in t_list:
        sample = heat_trace(pack, t, n_terms, accuracy)
        rows.append(TraceSweepRow(
            t=sample.t,
            y_spec=sample.value,
            tail_bound=sample.tail_bound,
            y_asym=expansion_eval(coeffs, t),
        ))
    return rows


@dataclass(frozen=True)
class HeatCriticalityReport:
    t: float
    density_spread: float
    cluster_spreads: Tuple[Tuple[Tuple[int, ...], float], ...]
    is_critical: bool
    clusters_critical: bool
    tol: float

    def to_dict(self) -> dict:
        return {
            "kind": "heat",
            "t": self.t,
            "density_spread": self.density_spread,
            "clusters": [
                {"cluster": list(indices), "spread": spread}
                for indices, spread in self.cluster_spreads
            ],
            "is_critical": self.is_critical,
            "clusters_critical": self.clusters_critical,
            "tol": self.tol,
        }


def heat_criticality(
    pack: SpectralPack,
    t: float,
    tol: float = 1e-2,
    n_terms: Optional[int] = None,
) -> HeatCriticalityReport:
    """时刻 t 的热迹临界性

    边界密度 Σ e^{−λ t}(∂φ/∂ν)² 为常数 ⟺ 临界；
    等价地，每个特征空间的 Σ_i (∂φ_i/∂ν)² 为常数（逐簇报告）。
    """
    n_terms = _resolve_terms(pack, n_terms, t)
    density_spread = relative_spread(boundary_heat_density(pack, t, n_terms))
    spreads = []
    for cluster in _whole_clusters(pack, n_terms):
        rows = np.arange(cluster.start - 1, cluster.end)
        spreads.append((cluster.indices, relative_spread((pack.normal_derivatives[rows] ** 2).sum(axis=0))))
    return HeatCriticalityReport(
        t=float(t),
        density_spread=density_spread,
        cluster_spreads=tuple(spreads),
        is_critical=density_spread <= tol,
        clusters_critical=all(s <= tol for _, s in spreads),
        tol=tol,
    )


@dataclass(frozen=True)
class IsoperimetricEntry:
    label: str
    area: float
    perimeter: float
    trace: float


@dataclass(frozen=True)
class IsoperimetricOrder:
    by_trace: Tuple[str, ...]  # Y(t) 从大到小
    by_perimeter: Tuple[str, ...]  # 周长从小到大
    consistent: bool


def isoperimetric_order(entries: Sequence[IsoperimetricEntry], area_tol: float = 1e-6) -> IsoperimetricOrder:
    """等面积区域按 Y(t) 与周长分别排序；小 t 时两者应一致"""
    if not entries:
        return IsoperimetricOrder(by_trace=(), by_perimeter=(), consistent=True)
    areas = np.array([e.area for e in entries])
    if np.ptp(areas) > area_tol * areas.max():
        logger.warning(f"比较的区域面积不相等: {areas.min():.10g} .. {areas.max():.10g}")
    by_trace = tuple(e.label for e in sorted(entries, key=lambda e: -e.trace))
    by_perimeter = tuple(e.label for e in sorted(entries, key=lambda e: e.perimeter))
    return IsoperimetricOrder(
        by_trace=by_trace,
        by_perimeter=by_perimeter,
        consistent=by_trace == by_perimeter,
    )
