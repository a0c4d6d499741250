"""特征对数据模型"""
from dataclasses import dataclass, replace
from typing import Iterator, Tuple

import numpy as np

from ..fem import DirichletSystem


@dataclass(frozen=True)
class Cluster:
    """数值简并簇：连续编号 start .. start+size-1（从 1 开始计数）"""

    start: int
    size: int

    @property
    def end(self) -> int:
        return self.start + self.size - 1

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(range(self.start, self.end + 1))

    def contains(self, k: int) -> bool:
        return self.start <= k <= self.end

    def position(self, k: int) -> int:
        """k 在簇内的位置，从 1 开始"""
        if not self.contains(k):
            raise ValueError(f"λ_{k} 不在簇 {list(self.indices)} 中")
        return k - self.start + 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return self.size


def partition_clusters(eigenvalues: np.ndarray, cluster_tol: float) -> Tuple[Cluster, ...]:
    """λ_i 与 λ_{i+1} 归为一簇当且仅当 λ_{i+1} − λ_i <= cluster_tol · λ_{i+1}"""
    clusters = []
    start = 1
    for i in range(1, len(eigenvalues)):
        lo, hi = eigenvalues[i - 1], eigenvalues[i]
        if hi - lo > cluster_tol * hi:
            clusters.append(Cluster(start=start, size=i + 1 - start))
            start = i + 1
    if len(eigenvalues):
        clusters.append(Cluster(start=start, size=len(eigenvalues) + 1 - start))
    return tuple(clusters)


@dataclass(frozen=True, eq=False)
class SpectralPack:
    """求得的特征对：M 正交归一，附边界法向导数"""

    system: DirichletSystem
    eigenvalues: np.ndarray  # (count,) 升序
    eigenvectors: np.ndarray  # (n_interior, count)
    normal_derivatives: np.ndarray  # (count, n_boundary)，∂φ/∂ν
    residuals: np.ndarray  # (count,)
    clusters: Tuple[Cluster, ...]
    cluster_tol: float

    @property
    def count(self) -> int:
        return len(self.eigenvalues)

    @property
    def mesh(self):
        return self.system.mesh

    @property
    def boundary_weights(self) -> np.ndarray:
        return self.system.boundary_weights

    @property
    def boundary_angles(self) -> np.ndarray:
        return self.system.mesh.boundary_angles

    @property
    def boundary_length(self) -> float:
        return float(self.boundary_weights.sum())

    def _check_index(self, k: int) -> None:
        if not 1 <= k <= self.count:
            raise ValueError(f"特征值编号 {k} 超出范围 1..{self.count}")

    def eigenvalue(self, k: int) -> float:
        self._check_index(k)
        return float(self.eigenvalues[k - 1])

    def trace(self, k: int) -> np.ndarray:
        """第 k 个特征函数在边界节点上的 ∂φ/∂ν"""
        self._check_index(k)
        return self.normal_derivatives[k - 1]

    def cluster_of(self, k: int) -> Cluster:
        self._check_index(k)
        for cluster in self.clusters:
            if cluster.contains(k):
                return cluster
        raise ValueError(f"λ_{k} 没有所属簇")

    def is_simple(self, k: int) -> bool:
        return self.cluster_of(k).size == 1

    def boundary_integral(self, values: np.ndarray) -> float:
        """∫_{∂Ω} f ds，集中边界质量求积"""
        return float(np.dot(values, self.boundary_weights))

    def flux_balance(self, k: int) -> Tuple[float, float]:
        """Green 公式检查: (Σ ∂φ/∂ν · w_i, −λ ∫φ)"""
        phi = self.system.expand(self.eigenvectors[:, k - 1])
        total_flux = self.boundary_integral(self.trace(k))
        mass = float(np.ones(self.mesh.n_nodes) @ (self.system.M_full @ phi))
        return total_flux, -self.eigenvalue(k) * mass

    def remix_cluster(self, cluster: Cluster, rotation: np.ndarray) -> "SpectralPack":
        """用正交矩阵重新混合簇内基底（特征向量与法向导数同步变换）"""
        rotation = np.asarray(rotation, dtype=float)
        if rotation.shape != (cluster.size, cluster.size):
            raise ValueError(f"混合矩阵形状应为 {(cluster.size, cluster.size)}")
        cols = np.arange(cluster.start - 1, cluster.end)
        vectors = self.eigenvectors.copy()
        traces = self.normal_derivatives.copy()
        vectors[:, cols] = vectors[:, cols] @ rotation
        traces[cols] = rotation.T @ traces[cols]
        return replace(self, eigenvectors=vectors, normal_derivatives=traces)
