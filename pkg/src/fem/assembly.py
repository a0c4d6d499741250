"""P1 有限元组装

Dirichlet Laplace 的刚度矩阵与质量矩阵，单元积分全部取闭式。
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp
from loguru import logger

from ..config import defaults
from ..errors import DegenerateTriangle
from ..mesh import TriangleMesh

# 线性元质量矩阵模式，乘以 面积/12
MASS_PATTERN = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]])


def element_matrices(vertices: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """批量计算单元刚度和质量矩阵

    Args:
        vertices: (m, 3, 2) 每个三角形的顶点坐标（逆时针）

    Returns:
        (K_loc (m,3,3), M_loc (m,3,3), 有向面积 (m,))
    """
    x = vertices[..., 0]
    y = vertices[..., 1]
    # 重心坐标梯度 ∇ψ_i = (b_i, c_i) / (2A)
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    area = 0.5 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])

    K_loc = (b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :]) / (4.0 * area[:, None, None])
    M_loc = MASS_PATTERN[None, :, :] * (area / 12.0)[:, None, None]
    return K_loc, M_loc, area


@dataclass(frozen=True, eq=False)
class DirichletSystem:
    """离散 Dirichlet 特征问题 K u = λ M u

    K_int/M_int 去掉边界行列；K_full/M_full 保留全部节点，供通量恢复使用。
    """

    mesh: TriangleMesh
    K_full: sp.csr_matrix
    M_full: sp.csr_matrix
    K_int: sp.csr_matrix
    M_int: sp.csr_matrix
    interior: np.ndarray  # 内部节点编号，interior[j] 是 K_int 第 j 行对应的全局节点
    boundary_weights: np.ndarray  # w_i，与 mesh.boundary_nodes 同序

    @property
    def n_interior(self) -> int:
        return len(self.interior)

    def expand(self, u_int: np.ndarray) -> np.ndarray:
        """内部系数补零扩展到全部节点（按列处理多个向量）"""
        u_int = np.asarray(u_int)
        shape = (self.mesh.n_nodes,) + u_int.shape[1:]
        full = np.zeros(shape, dtype=float)
        full[self.interior] = u_int
        return full


def assemble(
    mesh: TriangleMesh,
    degenerate_factor: float = defaults.degenerate_area_factor,
) -> DirichletSystem:
    """组装刚度和质量矩阵，并去掉 Dirichlet 边界行列"""
    vertices = mesh.nodes[mesh.triangles]
    K_loc, M_loc, area = element_matrices(vertices)

    threshold = degenerate_factor * mesh.scale() ** 2
    bad = np.flatnonzero(area <= threshold)
    if bad.size:
        raise DegenerateTriangle(int(bad[0]), float(area[bad[0]]))

    rows = np.repeat(mesh.triangles, 3, axis=1).ravel()
    cols = np.tile(mesh.triangles, (1, 3)).ravel()
    n = mesh.n_nodes
    # COO -> CSR 按输入顺序累加重复项，结果对给定网格逐位可复现
    K_full = sp.coo_matrix((K_loc.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    M_full = sp.coo_matrix((M_loc.ravel(), (rows, cols)), shape=(n, n)).tocsr()

    is_boundary = np.zeros(n, dtype=bool)
    is_boundary[mesh.boundary_nodes] = True
    interior = np.flatnonzero(~is_boundary)

    K_int = K_full[interior][:, interior].tocsr()
    M_int = M_full[interior][:, interior].tocsr()
    logger.debug(f"组装完成 | nodes={n} | interior={len(interior)} | nnz={K_full.nnz}")

    return DirichletSystem(
        mesh=mesh,
        K_full=K_full,
        M_full=M_full,
        K_int=K_int,
        M_int=M_int,
        interior=interior,
        boundary_weights=mesh.boundary_weights(),
    )
