"""广义对称特征问题求解

小规模系统用稠密 eigh；否则用 ARPACK 的 shift-invert 模式 (σ = 0)，
起始向量由固定种子生成，结果对相同输入确定。
"""
from typing import List

import numpy as np
import scipy.linalg as la
from loguru import logger
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..config import defaults
from ..domain import BoundaryShape
from ..errors import NotConverged
from ..fem import DirichletSystem, assemble
from ..logging import log_operation
from ..mesh import generate_mesh
from .flux import normal_derivative_trace
from .models import SpectralPack, partition_clusters


def _orthonormalize_clusters(vectors: np.ndarray, M, clusters) -> np.ndarray:
    """簇内做 M-正交归一化 (Cholesky)，簇间本来就 M-正交"""
    vectors = vectors.copy()
    for cluster in clusters:
        cols = np.arange(cluster.start - 1, cluster.end)
        block = vectors[:, cols]
        gram = block.T @ (M @ block)
        chol = la.cholesky(gram, lower=True)
        vectors[:, cols] = la.solve_triangular(chol, block.T, lower=True).T
    return vectors


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """令每个特征向量绝对值最大的分量为正"""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def relative_residuals(K, M, eigenvalues: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """‖K u − λ M u‖ / (λ ‖M u‖)"""
    Mu = M @ vectors
    R = K @ vectors - Mu * eigenvalues
    return np.linalg.norm(R, axis=0) / (np.abs(eigenvalues) * np.linalg.norm(Mu, axis=0))


def _solve_dense(system: DirichletSystem, count: int):
    K = system.K_int.toarray()
    M = system.M_int.toarray()
    return la.eigh(K, M, subset_by_index=[0, count - 1])


def _solve_sparse(system: DirichletSystem, count: int, seed: int):
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(system.n_interior)
    try:
        values, vectors = eigsh(
            system.K_int.tocsc(),
            k=count,
            M=system.M_int.tocsc(),
            sigma=0.0,
            which="LM",
            v0=v0,
            tol=0.0,
        )
    except ArpackNoConvergence as e:
        residuals: List[float] = []
        if len(e.eigenvalues):
            residuals = list(relative_residuals(
                system.K_int, system.M_int, e.eigenvalues, e.eigenvectors
            ))
        raise NotConverged(
            f"ARPACK 迭代次数耗尽，收敛 {len(e.eigenvalues)}/{count} 个特征对", residuals
        ) from e
    order = np.argsort(values)
    return values[order], vectors[:, order]


@log_operation("solve_spectrum")
def solve_spectrum(
    system: DirichletSystem,
    k: int,
    cluster_tol: float = defaults.cluster_tol,
    seed: int = defaults.seed,
    residual_tol: float = defaults.residual_tol,
    dense_limit: int = defaults.dense_limit,
    extra_pairs: int = defaults.extra_pairs,
) -> SpectralPack:
    """求最小的 k 个特征对

    多求 extra_pairs 个特征对以识别跨越 k 的簇；若第 k 个特征值所在簇延续到 k 之后，
    结果扩展到整个簇，保证不截断任何简并特征空间。
    """
    n_int = system.n_interior
    if k < 1 or k >= n_int:
        raise ValueError(f"特征值个数 k={k} 必须满足 1 <= k < 内部节点数 {n_int}")

    count = min(k + extra_pairs, n_int - 1)
    if n_int < dense_limit:
        values, vectors = _solve_dense(system, count)
        method = "dense"
    else:
        values, vectors = _solve_sparse(system, count, seed)
        method = "shift-invert"

    clusters = partition_clusters(values, cluster_tol)
    keep = k
    for cluster in clusters:
        if cluster.contains(k):
            keep = max(k, cluster.end)
            if cluster.end == count and count < n_int - 1:
                logger.warning(f"λ_{k} 所在簇延伸到最后一个求得的特征值，簇可能不完整")
    if keep > k:
        logger.info(f"λ_{k} 属于簇 {cluster_range(clusters, k)}，结果扩展到 {keep} 个特征对")

    values = values[:keep]
    clusters = partition_clusters(values, cluster_tol)
    vectors = _orthonormalize_clusters(vectors[:, :keep], system.M_int, clusters)
    vectors = _fix_signs(vectors)

    residuals = relative_residuals(system.K_int, system.M_int, values, vectors)
    worst = float(residuals.max())
    logger.debug(
        f"求解特征值 | method={method} | n={n_int} | k={keep} | "
        f"λ1={values[0]:.10g} | max_residual={worst:.3e}"
    )
    if worst > residual_tol:
        raise NotConverged(f"特征对残差超过 {residual_tol:.1e}", residuals)

    traces = normal_derivative_trace(system, values, vectors)
    return SpectralPack(
        system=system,
        eigenvalues=values,
        eigenvectors=vectors,
        normal_derivatives=np.atleast_2d(traces),
        residuals=residuals,
        clusters=clusters,
        cluster_tol=cluster_tol,
    )


def cluster_range(clusters, k: int) -> list:
    for cluster in clusters:
        if cluster.contains(k):
            return list(cluster.indices)
    return [k]


def spectrum_rows(pack: SpectralPack) -> list:
    """频谱表行: index, eigenvalue, cluster, residual"""
    rows = []
    for cluster_id, cluster in enumerate(pack.clusters, start=1):
        for k in cluster:
            rows.append((k, pack.eigenvalue(k), cluster_id, float(pack.residuals[k - 1])))
    return rows


def spectrum_of_shape(
    shape: BoundaryShape,
    k: int,
    refinement_level: int,
    cluster_tol: float = defaults.cluster_tol,
    seed: int = defaults.seed,
    residual_tol: float = defaults.residual_tol,
) -> SpectralPack:
    """网格 -> 组装 -> 求解"""
    system = assemble(generate_mesh(shape, refinement_level))
    return solve_spectrum(
        system, k, cluster_tol=cluster_tol, seed=seed, residual_tol=residual_tol
    )
