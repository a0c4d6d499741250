"""有限差分验证

在 deform(shape, v, ±ε) 上重新求 λ_k（同一加密层数、同一网格拓扑），
变形后的区域先位似回原面积，再与单侧导数预测值比较。
"""
import asyncio
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..config import defaults
from ..domain import BoundaryShape, NormalVelocity, deform, geometry_report, rescale_to_area
from ..eig import SpectralPack, spectrum_of_shape
from .calculus import OneSidedDerivatives, check_velocity, derivatives_of

ZERO_MEAN_TOL = 1e-8


@dataclass(frozen=True)
class FiniteDifferenceRow:
    eps: float
    forward: float
    backward: float
    central: float
    predicted_right: float
    predicted_left: float

    @property
    def forward_error(self) -> float:
        return abs(self.forward - self.predicted_right)

    @property
    def backward_error(self) -> float:
        return abs(self.backward - self.predicted_left)


@dataclass(frozen=True)
class FiniteDifferenceTable:
    k: int
    eigenvalue: float
    predicted: OneSidedDerivatives
    rows: Tuple[FiniteDifferenceRow, ...]

    def csv_rows(self) -> List[tuple]:
        """列: eps, fwd, bwd, pred_right, pred_left"""
        return [
            (r.eps, r.forward, r.backward, r.predicted_right, r.predicted_left)
            for r in self.rows
        ]

    def summary(self) -> dict:
        """误差、原始收敛阶，以及扣除网格误差底后的阶

        固定网格上差商收敛到离散导数而不是连续导数，两者之差即网格误差底；
        原始误差在 ε 足够小时停在误差底上，阶趋于 0。
        """
        eps = [r.eps for r in self.rows]
        branches = {
            "forward": ([r.forward for r in self.rows], self.predicted.right),
            "backward": ([r.backward for r in self.rows], self.predicted.left),
        }
        orders, limits, floors, orders_above = {}, {}, {}, {}
        for name, (quotients, predicted) in branches.items():
            orders[name] = convergence_order(eps, np.abs(np.asarray(quotients) - predicted))
            limit, order = extrapolate_quotients(eps, quotients)
            limits[name] = limit
            floors[name] = None if limit is None else abs(limit - predicted)
            orders_above[name] = order
        return {
            "k": self.k,
            "eigenvalue": self.eigenvalue,
            "predicted_left": self.predicted.left,
            "predicted_right": self.predicted.right,
            "position": self.predicted.position,
            "cluster_size": self.predicted.cluster_size,
            "extended_rule": self.predicted.extended,
            "central": [r.central for r in self.rows],
            "forward_error": [r.forward_error for r in self.rows],
            "backward_error": [r.backward_error for r in self.rows],
            "convergence_order": orders,
            "extrapolated": limits,
            "mesh_floor": floors,
            "convergence_order_above_floor": orders_above,
        }


def convergence_order(eps: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """误差对 ε 的双对数最小二乘斜率；点数不足或误差为零时返回 None"""
    eps = np.asarray(eps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    mask = (eps > 0) & (errors > 0)
    if mask.sum() < 2:
        return None
    slope, _ = np.polyfit(np.log(eps[mask]), np.log(errors[mask]), 1)
    return float(slope)


def extrapolate_quotients(
    eps: Sequence[float],
    quotients: Sequence[float],
) -> Tuple[Optional[float], Optional[float]]:
    """差商 q(ε) = d + Cε^p 的极限 d 与阶 p

    相邻差商之差与误差底无关，p 取其对 ε 的双对数斜率（至少三个 ε）；
    d 由最小的两个 ε 按该阶外推，阶未知时按 p=1。
    """
    order_idx = np.argsort(np.asarray(eps, dtype=float))[::-1]
    eps = np.asarray(eps, dtype=float)[order_idx]
    q = np.asarray(quotients, dtype=float)[order_idx]
    if len(eps) < 2:
        return None, None
    order = convergence_order(eps[:-1], np.abs(np.diff(q)))
    p = order if order is not None and order > 0 else 1.0
    scale = (q[-2] - q[-1]) / (eps[-2] ** p - eps[-1] ** p)
    return float(q[-1] - scale * eps[-1] ** p), order


def check_zero_mean(pack: SpectralPack, v: NormalVelocity) -> None:
    check_velocity(pack, v)
    mean = pack.boundary_integral(v.values) / pack.boundary_length
    if abs(mean) > ZERO_MEAN_TOL * max(v.max_abs, 1.0):
        raise ValueError(f"速度不是零均值: ∫v ds / |∂Ω| = {mean:.3e}")


async def _gather_solves(solve: Callable[[BoundaryShape], float], shapes: Sequence[BoundaryShape]):
    return await asyncio.gather(*(asyncio.to_thread(solve, s) for s in shapes))


def finite_difference_check(
    shape: BoundaryShape,
    k: int,
    v: NormalVelocity,
    eps_list: Sequence[float],
    refinement_level: int,
    cluster_tol: float = defaults.cluster_tol,
    seed: int = defaults.seed,
    fit_tolerance: float = defaults.fit_tolerance,
    concurrent: bool = True,
    pack: Optional[SpectralPack] = None,
    quadrature_nodes: int = defaults.quadrature_nodes,
) -> FiniteDifferenceTable:
    """对每个 ε 计算前向、后向、中心差商，并与单侧导数比较

    Args:
        v: 在 refinement_level 网格边界节点上采样的零均值速度
        pack: 已求好的原区域频谱（可省去一次求解）
        concurrent: ±ε 的求解是否并发执行，结果按 ε 顺序合并
    """
    if any(e <= 0 for e in eps_list):
        raise ValueError("ε 必须为正")

    def solve(target: BoundaryShape) -> float:
        return spectrum_of_shape(
            target, k, refinement_level, cluster_tol=cluster_tol, seed=seed
        ).eigenvalue(k)

    if pack is None:
        pack = spectrum_of_shape(shape, k, refinement_level, cluster_tol=cluster_tol, seed=seed)
    check_zero_mean(pack, v)
    _, predicted = derivatives_of(pack, k, v)
    base = pack.eigenvalue(k)

    area = geometry_report(shape, quadrature_nodes).area
    shapes = []
    for eps in eps_list:
        for signed in (eps, -eps):
            moved = deform(shape, v, signed, fit_tolerance=fit_tolerance, quadrature_nodes=quadrature_nodes)
            shapes.append(rescale_to_area(moved, area, quadrature_nodes))

    if concurrent:
        values = asyncio.run(_gather_solves(solve, shapes))
    else:
        values = [solve(s) for s in shapes]

    rows = []
    for i, eps in enumerate(eps_list):
        plus, minus = values[2 * i], values[2 * i + 1]
        row = FiniteDifferenceRow(
            eps=float(eps),
            forward=(plus - base) / eps,
            backward=(base - minus) / eps,
            central=(plus - minus) / (2.0 * eps),
            predicted_right=predicted.right,
            predicted_left=predicted.left,
        )
        logger.debug(
            f"有限差分 | k={k} | eps={eps:.1e} | fwd={row.forward:.6g} | "
            f"bwd={row.backward:.6g} | pred=({predicted.left:.6g}, {predicted.right:.6g})"
        )
        rows.append(row)
    return FiniteDifferenceTable(k=k, eigenvalue=base, predicted=predicted, rows=tuple(rows))
