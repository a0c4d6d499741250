"""三角网格模型"""
from dataclasses import dataclass

import numpy as np


def _frozen(array, dtype) -> np.ndarray:
    out = np.ascontiguousarray(array, dtype=dtype).copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TriangleMesh:
    """协调三角剖分

    triangles 逆时针排列；boundary_nodes 按 θ 递增绕边界恰好一周。
    """

    nodes: np.ndarray  # (n_nodes, 2)
    triangles: np.ndarray  # (n_triangles, 3)
    boundary_nodes: np.ndarray  # (n_boundary,)
    boundary_angles: np.ndarray  # (n_boundary,)
    refinement_level: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(self.nodes, float))
        object.__setattr__(self, "triangles", _frozen(self.triangles, np.int64))
        object.__setattr__(self, "boundary_nodes", _frozen(self.boundary_nodes, np.int64))
        object.__setattr__(self, "boundary_angles", _frozen(self.boundary_angles, float))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary_nodes)

    def signed_areas(self) -> np.ndarray:
        """每个三角形的有向面积"""
        p = self.nodes[self.triangles]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def scale(self) -> float:
        """包围盒对角线长度"""
        extent = self.nodes.max(axis=0) - self.nodes.min(axis=0)
        return float(np.hypot(*extent))

    def boundary_edge_lengths(self) -> np.ndarray:
        """相邻边界节点 i -> i+1（循环）之间的边长"""
        p = self.nodes[self.boundary_nodes]
        return np.linalg.norm(np.roll(p, -1, axis=0) - p, axis=1)

    def boundary_weights(self) -> np.ndarray:
        """集中边界质量 w_i = ∫_{∂Ω} ψ_i ds，即相邻两条边界边长度之半的和"""
        lengths = self.boundary_edge_lengths()
        return 0.5 * (lengths + np.roll(lengths, 1))


@dataclass(frozen=True)
class MeshStatistics:
    """网格统计量"""

    h_max: float  # 最长边
    total_area: float
    min_angle: float  # 弧度
