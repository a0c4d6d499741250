"""形状演算：Hadamard 导数、简并特征空间上的 q_v 二次型、单侧导数

所有边界积分用集中边界质量 w_i 求积，速度在网格边界节点上采样。
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..domain import NormalVelocity
from ..eig import Cluster, SpectralPack
from ..errors import DegenerateEigenvalue


def check_velocity(pack: SpectralPack, v: NormalVelocity) -> None:
    """速度必须在网格边界节点上采样"""
    if len(v) != pack.mesh.n_boundary:
        raise ValueError(
            f"速度采样点 {len(v)} 个，与边界节点数 {pack.mesh.n_boundary} 不一致"
        )


def boundary_velocity(pack: SpectralPack, values) -> NormalVelocity:
    """在边界节点角度上构造速度"""
    return NormalVelocity(values=values, node_angles=pack.boundary_angles)


def project_zero_mean_discrete(pack: SpectralPack, v: NormalVelocity) -> NormalVelocity:
    """按集中边界质量去掉均值，使 Σ w_i v_i = 0"""
    check_velocity(pack, v)
    w = pack.boundary_weights
    return v.with_values(v.values - np.dot(v.values, w) / w.sum())


@dataclass(frozen=True, eq=False)
class QFormMatrix:
    """q_v 在簇基底上的矩阵 Q_ij = −∫ v (∂φ_i/∂ν)(∂φ_j/∂ν) ds"""

    cluster: Cluster
    matrix: np.ndarray
    eigenvalues: np.ndarray  # 升序，即各解析分支的导数
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return self.cluster.size

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def is_definite(self, tol: float = 0.0) -> bool:
        """二次型正定或负定（特征值严格同号）"""
        scale = max(float(np.abs(self.eigenvalues).max()), 1e-300)
        return bool(
            np.all(self.eigenvalues > tol * scale) or np.all(self.eigenvalues < -tol * scale)
        )


@dataclass(frozen=True)
class OneSidedDerivatives:
    """λ_k 在 ε=0 处的左右导数"""

    k: int
    left: float
    right: float
    position: int  # k 在簇内的位置（从 1 开始）
    cluster_size: int

    @property
    def extended(self) -> bool:
        """簇内部位置使用的是顺序统计量推广规则"""
        return 1 < self.position < self.cluster_size

    @property
    def product(self) -> float:
        return self.left * self.right

    @property
    def opposite_signs(self) -> bool:
        return self.product <= 0.0


def qform_matrix(pack: SpectralPack, cluster: Cluster, v: NormalVelocity) -> QFormMatrix:
    """q_v 在簇上的矩阵及其特征分解"""
    check_velocity(pack, v)
    rows = np.arange(cluster.start - 1, cluster.end)
    traces = pack.normal_derivatives[rows]
    weighted = traces * (pack.boundary_weights * v.values)
    matrix = -(weighted @ traces.T)
    matrix = 0.5 * (matrix + matrix.T)
    if cluster.size == 1:
        eigenvalues = matrix.diagonal().copy()
        eigenvectors = np.ones((1, 1))
    else:
        eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    return QFormMatrix(
        cluster=cluster,
        matrix=matrix,
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
    )


def hadamard_derivative(pack: SpectralPack, k: int, v: NormalVelocity) -> float:
    """dλ_k/dε = −∫ v (∂φ_k/∂ν)² ds，要求 λ_k 为单特征值"""
    cluster = pack.cluster_of(k)
    if cluster.size > 1:
        raise DegenerateEigenvalue(k, cluster.indices)
    return float(qform_matrix(pack, cluster, v).matrix[0, 0])


def one_sided_derivatives(q: QFormMatrix, k: int) -> OneSidedDerivatives:
    """k 在簇中排第 pos 位时，右导数取 Q 的第 pos 小特征值，左导数取第 pos 大特征值

    簇首/簇尾对应 min/max 公式；簇内部位置是按一阶分支排序得到的推广。
    """
    position = q.cluster.position(k)
    ascending = q.eigenvalues
    return OneSidedDerivatives(
        k=k,
        left=float(ascending[q.size - position]),
        right=float(ascending[position - 1]),
        position=position,
        cluster_size=q.size,
    )


def derivatives_of(pack: SpectralPack, k: int, v: NormalVelocity) -> Tuple[QFormMatrix, OneSidedDerivatives]:
    """λ_k 所在簇的 Q 矩阵和 λ_k 的单侧导数"""
    q = qform_matrix(pack, pack.cluster_of(k), v)
    return q, one_sided_derivatives(q, k)
