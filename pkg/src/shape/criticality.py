"""临界性检验

单特征值：|∂φ/∂ν| 在边界上为常数。
简并簇：存在半正定 G 使 Σ G_ij (∂φ_i/∂ν)(∂φ_j/∂ν) 在边界上为常数。
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..domain import NormalVelocity, VelocityMode, velocity_from_modes
from ..eig import Cluster, SpectralPack
from ..errors import DegenerateEigenvalue
from .calculus import project_zero_mean_discrete, qform_matrix


def relative_spread(values: np.ndarray) -> float:
    """(max − min) / mean"""
    mean = float(np.mean(values))
    if mean == 0.0:
        return float("inf")
    return float((values.max() - values.min()) / mean)


@dataclass(frozen=True)
class SimpleCriticalityReport:
    k: int
    is_critical: bool
    spread: float
    tol: float
    cluster_tol: float

    def to_dict(self) -> dict:
        return {
            "kind": "simple",
            "k": self.k,
            "is_critical": self.is_critical,
            "spread": self.spread,
            "tol": self.tol,
            "cluster_tol": self.cluster_tol,
        }


@dataclass(frozen=True)
class ClusterCriticalityReport:
    cluster: Tuple[int, ...]
    is_critical: bool
    residual: float
    psd_certificate: float  # G 的最小特征值 / 最大绝对特征值
    gram: np.ndarray = field(repr=False)
    identity_spread: float  # G = I 时 Σ(∂φ_i/∂ν)² 的相对离差
    identity_critical: bool
    tol: float
    cluster_tol: float

    def to_dict(self) -> dict:
        return {
            "kind": "cluster",
            "cluster": list(self.cluster),
            "is_critical": self.is_critical,
            "residual": self.residual,
            "psd_certificate": self.psd_certificate,
            "gram": self.gram.tolist(),
            "identity_spread": self.identity_spread,
            "identity_critical": self.identity_critical,
            "tol": self.tol,
            "cluster_tol": self.cluster_tol,
        }


def criticality_simple(pack: SpectralPack, k: int, tol: float = 1e-2) -> SimpleCriticalityReport:
    """单特征值的临界性：|∂φ_k/∂ν| 的相对离差不超过 tol"""
    cluster = pack.cluster_of(k)
    if cluster.size > 1:
        raise DegenerateEigenvalue(k, cluster.indices)
    spread = relative_spread(np.abs(pack.trace(k)))
    logger.debug(f"临界性 | k={k} | spread={spread:.3e} | tol={tol:.1e}")
    return SimpleCriticalityReport(
        k=k,
        is_critical=spread <= tol,
        spread=spread,
        tol=tol,
        cluster_tol=pack.cluster_tol,
    )


def _fit_gram(traces: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """加权最小二乘求对称 G，使 Σ G_ij D_i D_j ≈ 1"""
    p = traces.shape[0]
    pairs = [(i, j) for i in range(p) for j in range(i, p)]
    design = np.stack(
        [traces[i] * traces[j] * (1.0 if i == j else 2.0) for i, j in pairs], axis=1
    )
    sqrt_w = np.sqrt(weights)
    coeffs, *_ = np.linalg.lstsq(design * sqrt_w[:, None], sqrt_w, rcond=None)
    gram = np.zeros((p, p))
    for (i, j), g in zip(pairs, coeffs):
        gram[i, j] = gram[j, i] = g
    return gram


def criticality_cluster(
    pack: SpectralPack,
    cluster: Cluster,
    tol: float = 1e-2,
) -> "SimpleCriticalityReport | ClusterCriticalityReport":
    """簇的临界性：最小二乘求 G，投影到半正定锥后检查残差

    单元素簇直接返回 criticality_simple 的结果。
    """
    if cluster.size == 1:
        return criticality_simple(pack, cluster.start, tol)

    rows = np.arange(cluster.start - 1, cluster.end)
    traces = pack.normal_derivatives[rows]
    weights = pack.boundary_weights

    gram = _fit_gram(traces, weights)
    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    scale = max(float(np.abs(eigenvalues).max()), 1e-300)
    certificate = float(eigenvalues[0] / scale)
    psd_gram = (eigenvectors * np.clip(eigenvalues, 0.0, None)) @ eigenvectors.T

    fitted = np.einsum("ij,in,jn->n", psd_gram, traces, traces)
    residual = float(np.sqrt(np.dot(weights, (fitted - 1.0) ** 2) / weights.sum()))
    identity_spread = relative_spread((traces ** 2).sum(axis=0))

    is_critical = certificate >= -tol and residual <= tol
    logger.debug(
        f"簇临界性 | cluster={list(cluster.indices)} | residual={residual:.3e} | "
        f"psd={certificate:.3e} | identity_spread={identity_spread:.3e}"
    )
    return ClusterCriticalityReport(
        cluster=cluster.indices,
        is_critical=is_critical,
        residual=residual,
        psd_certificate=certificate,
        gram=psd_gram,
        identity_spread=identity_spread,
        identity_critical=identity_spread <= tol,
        tol=tol,
        cluster_tol=pack.cluster_tol,
    )


def default_test_velocities(pack: SpectralPack, max_mode: int) -> List[Tuple[str, NormalVelocity]]:
    """cos mθ, sin mθ (m = 1..max_mode)，按边界质量投影为零均值"""
    velocities = []
    for m in range(1, max_mode + 1):
        for kind in ("cos", "sin"):
            raw = velocity_from_modes([VelocityMode(kind=kind, mode=m)], pack.boundary_angles)
            velocities.append((f"{kind}{m}", project_zero_mean_discrete(pack, raw)))
    return velocities


@dataclass(frozen=True)
class DefinitenessRow:
    label: str
    min_eigenvalue: float
    max_eigenvalue: float
    definite: bool

    @property
    def product(self) -> float:
        return self.min_eigenvalue * self.max_eigenvalue


def definiteness_scan(
    pack: SpectralPack,
    cluster: Cluster,
    velocities: Optional[Sequence[Tuple[str, NormalVelocity]]] = None,
    max_mode: int = 6,
    tol: float = 1e-8,
) -> List[DefinitenessRow]:
    """对一族零均值速度检查 q_v 是否定号

    临界 ⟺ 对所有保体积 v，q_v 不定号；这里只能检验有限族。
    """
    if velocities is None:
        velocities = default_test_velocities(pack, max_mode)
    rows = []
    for label, v in velocities:
        q = qform_matrix(pack, cluster, v)
        rows.append(DefinitenessRow(
            label=label,
            min_eigenvalue=float(q.eigenvalues[0]),
            max_eigenvalue=float(q.eigenvalues[-1]),
            definite=q.is_definite(tol) if cluster.size > 1 else abs(q.eigenvalues[0]) > tol,
        ))
    return rows


@dataclass(frozen=True)
class LocalExtremumReport:
    k: int
    applicable: bool  # λ_k 与一侧相邻特征值分离
    simple: bool
    spread: Optional[float]
    condition_holds: bool
    tol: float

    def to_dict(self) -> dict:
        return {
            "kind": "local_extremum",
            "k": self.k,
            "applicable": self.applicable,
            "simple": self.simple,
            "spread": self.spread,
            "condition_holds": self.condition_holds,
            "tol": self.tol,
        }


def local_extremum_test(pack: SpectralPack, k: int, tol: float = 1e-2) -> LocalExtremumReport:
    """局部极值的必要条件

    若 λ_k > λ_{k-1} 或 λ_k < λ_{k+1}，λ_k 在保体积变形下取局部极值时
    必须是单特征值且 |∂φ_k/∂ν| 为常数。
    """
    cluster = pack.cluster_of(k)
    # 簇首或簇尾意味着至少一侧分离
    applicable = k == cluster.start or k == cluster.end
    simple = cluster.size == 1
    spread = relative_spread(np.abs(pack.trace(k))) if simple else None
    holds = simple and spread is not None and spread <= tol
    return LocalExtremumReport(
        k=k,
        applicable=applicable,
        simple=simple,
        spread=spread,
        condition_holds=bool(holds),
        tol=tol,
    )
