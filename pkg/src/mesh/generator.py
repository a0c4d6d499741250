"""网格生成

参考单位圆盘网格经径向映射 (s, θ) -> s·r(θ)·(cosθ, sinθ) 得到区域网格。拓扑只依赖
refinement_level，区域系数改变时节点坐标光滑变化，不会重新剖分。
"""
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from loguru import logger

from ..config import defaults
from ..domain import BoundaryShape, check_star_shaped
from ..errors import DegenerateTriangle
from .models import MeshStatistics, TriangleMesh

TWO_PI = 2.0 * np.pi


def _ring_offset(i: int) -> int:
    """第 i 环第一个节点的编号（前面共有 1 + 3i(i-1) 个节点）"""
    return 1 + 3 * i * (i - 1) if i > 0 else 0


def _zip_rings(
    inner: np.ndarray,
    inner_angles: np.ndarray,
    outer: np.ndarray,
    outer_angles: np.ndarray,
) -> List[Tuple[int, int, int]]:
    """按角度交替推进，在相邻两环之间铺三角形"""
    na, nb = len(inner), len(outer)
    triangles = []
    a = b = 0
    while a < na or b < nb:
        next_a = inner_angles[a + 1] if a + 1 < na else TWO_PI + inner_angles[0]
        next_b = outer_angles[b + 1] if b + 1 < nb else TWO_PI + outer_angles[0]
        # 扇区角点上两环角度相同，先推进外环
        if b < nb and (a >= na or next_b <= next_a + 1e-12):
            triangles.append((inner[a % na], outer[b % nb], outer[(b + 1) % nb]))
            b += 1
        else:
            triangles.append((inner[a % na], outer[b % nb], inner[(a + 1) % na]))
            a += 1
    return triangles


@lru_cache(maxsize=32)
def _reference_disk(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """参考圆盘：返回 (s, θ, triangles)，第 i 环有 max(1, 6i) 个节点"""
    s = [0.0]
    theta = [0.0]
    for i in range(1, n + 1):
        count = 6 * i
        s.extend([i / n] * count)
        theta.extend(TWO_PI * np.arange(count) / count)

    triangles: List[Tuple[int, int, int]] = []
    ring1 = np.arange(1, 7)
    triangles.extend((0, ring1[b], ring1[(b + 1) % 6]) for b in range(6))
    for i in range(2, n + 1):
        inner = np.arange(_ring_offset(i - 1), _ring_offset(i))
        outer = np.arange(_ring_offset(i), _ring_offset(i + 1))
        triangles.extend(_zip_rings(
            inner, TWO_PI * np.arange(len(inner)) / len(inner),
            outer, TWO_PI * np.arange(len(outer)) / len(outer),
        ))

    out = (np.asarray(s), np.asarray(theta), np.asarray(triangles, dtype=np.int64))
    for array in out:
        array.setflags(write=False)
    return out


def _check_areas(mesh: TriangleMesh, factor: float) -> None:
    areas = mesh.signed_areas()
    threshold = factor * mesh.scale() ** 2
    bad = np.flatnonzero(areas <= threshold)
    if bad.size:
        raise DegenerateTriangle(int(bad[0]), float(areas[bad[0]]))


def generate_mesh(
    shape: BoundaryShape,
    refinement_level: int,
    degenerate_factor: float = defaults.degenerate_area_factor,
) -> TriangleMesh:
    """在星形区域上生成固定拓扑网格，节点数 1 + 3n(n+1)"""
    if refinement_level < 1:
        raise ValueError(f"加密层数必须 >= 1: {refinement_level}")
    check_star_shaped(shape)

    n = refinement_level
    s, theta, triangles = _reference_disk(n)
    r = shape.radius(theta)
    nodes = np.stack([s * r * np.cos(theta), s * r * np.sin(theta)], axis=1)

    boundary = np.arange(_ring_offset(n), _ring_offset(n + 1))
    mesh = TriangleMesh(
        nodes=nodes,
        triangles=triangles,
        boundary_nodes=boundary,
        boundary_angles=theta[boundary],
        refinement_level=n,
    )
    _check_areas(mesh, degenerate_factor)
    logger.debug(f"生成网格 | n={n} | nodes={mesh.n_nodes} | triangles={mesh.n_triangles}")
    return mesh


def structured_rectangle(
    width: float,
    height: float,
    nx: int,
    ny: int,
    degenerate_factor: float = defaults.degenerate_area_factor,
) -> TriangleMesh:
    """[0, width] x [0, height] 上的结构网格，所有对角线同向（正方形关于 x=y 对称）"""
    if nx < 1 or ny < 1:
        raise ValueError(f"网格划分数必须 >= 1: nx={nx}, ny={ny}")
    xs = np.linspace(0.0, width, nx + 1)
    ys = np.linspace(0.0, height, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    nodes = np.stack([X.ravel(), Y.ravel()], axis=1)

    def idx(i, j):
        return i * (ny + 1) + j

    triangles = []
    for i in range(nx):
        for j in range(ny):
            triangles.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            triangles.append((idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))

    on_edge = (
        np.isclose(nodes[:, 0], 0.0) | np.isclose(nodes[:, 0], width)
        | np.isclose(nodes[:, 1], 0.0) | np.isclose(nodes[:, 1], height)
    )
    boundary = np.flatnonzero(on_edge)
    centred = nodes[boundary] - np.array([0.5 * width, 0.5 * height])
    angles = np.mod(np.arctan2(centred[:, 1], centred[:, 0]), TWO_PI)
    order = np.argsort(angles, kind="stable")

    mesh = TriangleMesh(
        nodes=nodes,
        triangles=np.asarray(triangles, dtype=np.int64),
        boundary_nodes=boundary[order],
        boundary_angles=angles[order],
        refinement_level=nx,
    )
    _check_areas(mesh, degenerate_factor)
    return mesh


def mesh_statistics(mesh: TriangleMesh) -> MeshStatistics:
    """最长边、总面积、最小内角"""
    p = mesh.nodes[mesh.triangles]
    # 对边长度: edge k 与顶点 k 相对
    edges = np.stack([
        np.linalg.norm(p[:, 2] - p[:, 1], axis=1),
        np.linalg.norm(p[:, 0] - p[:, 2], axis=1),
        np.linalg.norm(p[:, 1] - p[:, 0], axis=1),
    ], axis=1)
    angles = []
    for k in range(3):
        a = edges[:, k]
        b = edges[:, (k + 1) % 3]
        c = edges[:, (k + 2) % 3]
        cos_angle = np.clip((b * b + c * c - a * a) / (2.0 * b * c), -1.0, 1.0)
        angles.append(np.arccos(cos_angle))
    return MeshStatistics(
        h_max=float(edges.max()),
        total_area=float(mesh.signed_areas().sum()),
        min_angle=float(np.min(angles)),
    )


def dump_mesh_json(mesh: TriangleMesh) -> dict:
    """导出网格供外部可视化"""
    return {
        "refinement_level": mesh.refinement_level,
        "nodes": mesh.nodes.tolist(),
        "triangles": mesh.triangles.tolist(),
        "boundary": mesh.boundary_nodes.tolist(),
        "boundary_angles": mesh.boundary_angles.tolist(),
    }
