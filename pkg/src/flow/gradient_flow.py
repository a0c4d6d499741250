"""保面积梯度流：沿 Hadamard 梯度降低 λ_k

每步：速度 v = (∂φ_k/∂ν)² − 均值，投影到区域自身的 Fourier 截断（或更低的 velocity_modes），
边界移动 η v 后位似回初始面积；λ_k 不下降时步长减半。
"""
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from ..config import defaults
from ..domain import (
    BoundaryShape,
    NormalVelocity,
    deform,
    filter_velocity,
    geometry_report,
    rescale_to_area,
)
from ..eig import SpectralPack, spectrum_of_shape
from ..errors import (
    AmplitudeCapExceeded,
    DegenerateEigenvalue,
    FitResidualTooLarge,
    NonStarShaped,
    StepTooSmall,
)

STATIONARY_TOL = 1e-12


@dataclass(frozen=True)
class FlowConfig:
    k: int = 1
    refinement_level: int = 16
    eta0: float = 0.1
    max_steps: int = 200
    stop_tol: float = 1e-8  # ∫ v² ds = −dλ_k/dη 低于此值即停止
    velocity_modes: Optional[int] = None  # None 表示取区域的模态数 N
    eta_min: float = defaults.eta_min
    amplitude_cap: float = defaults.amplitude_cap
    cluster_tol: float = defaults.cluster_tol
    seed: int = defaults.seed
    fit_tolerance: float = defaults.fit_tolerance
    quadrature_nodes: int = defaults.quadrature_nodes  # 面积、周长与变形拟合的求积点数

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k 必须 >= 1: {self.k}")
        if self.eta0 < 0 or self.eta_min <= 0:
            raise ValueError("步长必须非负，步长下限必须为正")
        if self.max_steps < 0:
            raise ValueError(f"最大步数不能为负: {self.max_steps}")
        if self.velocity_modes is not None and self.velocity_modes < 1:
            raise ValueError(f"速度模态数必须 >= 1: {self.velocity_modes}")
        if self.quadrature_nodes < 16:
            raise ValueError(f"求积点数必须 >= 16: {self.quadrature_nodes}")


@dataclass(frozen=True)
class FlowState:
    shape: BoundaryShape
    k: int
    target_area: float
    history: Tuple[float, ...]  # λ_k，每个接受的步一个
    steps: int = 0
    step_size: float = 0.0  # 上一个接受的步长
    stop_reason: Optional[str] = None
    pack: Optional[SpectralPack] = field(default=None, repr=False, compare=False)

    @property
    def eigenvalue(self) -> float:
        return self.history[-1]


@dataclass(frozen=True)
class TrajectoryRow:
    step: int
    lambda_k: float
    area: float
    perimeter: float
    grad_norm: float
    step_size: float

    def as_tuple(self) -> tuple:
        return (self.step, self.lambda_k, self.area, self.perimeter, self.grad_norm, self.step_size)


@dataclass
class FlowResult:
    state: FlowState
    trajectory: List[TrajectoryRow]


def descent_direction(
    pack: SpectralPack,
    k: int,
    max_mode: Optional[int] = None,
) -> NormalVelocity:
    """v = (∂φ_k/∂ν)² − 加权均值，可选投影到 ≤ max_mode 的模态

    dλ_k/dη = −Σ w v (∂φ_k/∂ν)² = −Σ w v² ≤ 0。
    """
    cluster = pack.cluster_of(k)
    if cluster.size > 1:
        raise DegenerateEigenvalue(k, cluster.indices)
    w = pack.boundary_weights
    density = pack.trace(k) ** 2
    values = density - np.dot(density, w) / w.sum()
    v = NormalVelocity(values=values, node_angles=pack.boundary_angles)
    if max_mode is not None:
        v = filter_velocity(v, w, max_mode)
        v = v.with_values(v.values - np.dot(v.values, w) / w.sum())
    return v


def velocity_modes_for(state: FlowState, config: FlowConfig) -> int:
    """滤波保留的最高模态：默认与区域的 N 相同，且不超过边界节点能分辨的模态"""
    modes = config.velocity_modes or state.shape.n_modes
    return min(modes, (state.pack.mesh.n_boundary - 1) // 2)


def descent_rate(pack: SpectralPack, v: NormalVelocity) -> float:
    """∫ v² ds"""
    return pack.boundary_integral(v.values ** 2)


def initial_state(shape: BoundaryShape, config: FlowConfig, target_area: Optional[float] = None) -> FlowState:
    if target_area is not None:
        shape = rescale_to_area(shape, target_area, config.quadrature_nodes)
    area = geometry_report(shape, config.quadrature_nodes).area
    pack = spectrum_of_shape(
        shape, config.k, config.refinement_level, cluster_tol=config.cluster_tol, seed=config.seed
    )
    return FlowState(
        shape=shape,
        k=config.k,
        target_area=area,
        history=(pack.eigenvalue(config.k),),
        pack=pack,
    )


def _check_cap(shape: BoundaryShape, cap: float) -> None:
    amplitude = shape.max_relative_amplitude()
    if amplitude > cap:
        raise AmplitudeCapExceeded(f"Fourier 振幅 {amplitude:.3f}·r0 超过上限 {cap}·r0")


def flow_step(
    state: FlowState,
    eta: float,
    config: FlowConfig,
    velocity: Optional[NormalVelocity] = None,
) -> FlowState:
    """一次回溯线搜索步：η 减半直到 λ_k 下降或 η < η_min"""
    if eta == 0.0:
        return state
    pack = state.pack
    if velocity is None:
        velocity = descent_direction(pack, state.k, velocity_modes_for(state, config))
    if velocity.max_abs <= STATIONARY_TOL * float(np.mean(pack.trace(state.k) ** 2)):
        logger.debug("下降方向为零，区域已是驻点")
        return state

    current = state.eigenvalue
    while eta >= config.eta_min:
        try:
            trial = rescale_to_area(
                deform(
                    state.shape, velocity, eta,
                    fit_tolerance=config.fit_tolerance, quadrature_nodes=config.quadrature_nodes,
                ),
                state.target_area,
                config.quadrature_nodes,
            )
        except (FitResidualTooLarge, NonStarShaped) as e:
            logger.debug(f"线搜索 | eta={eta:.3e} | 变形失败: {e}")
            eta *= 0.5
            continue
        _check_cap(trial, config.amplitude_cap)
        trial_pack = spectrum_of_shape(
            trial, state.k, config.refinement_level,
            cluster_tol=config.cluster_tol, seed=config.seed,
        )
        value = trial_pack.eigenvalue(state.k)
        logger.debug(f"线搜索 | eta={eta:.3e} | λ={value:.12g} | 当前={current:.12g}")
        if value < current:
            return replace(
                state,
                shape=trial,
                history=state.history + (value,),
                steps=state.steps + 1,
                step_size=eta,
                pack=trial_pack,
            )
        eta *= 0.5
    raise StepTooSmall(eta)


def _cluster_grad_norm(pack: SpectralPack, k: int) -> float:
    """简并时用整簇 Σ(∂φ_i/∂ν)² 去均值后的范数，与簇内基底无关"""
    cluster = pack.cluster_of(k)
    rows = np.arange(cluster.start - 1, cluster.end)
    density = (pack.normal_derivatives[rows] ** 2).sum(axis=0)
    w = pack.boundary_weights
    centred = density - np.dot(density, w) / w.sum()
    return float(np.sqrt(pack.boundary_integral(centred ** 2)))


def _row(state: FlowState, grad_norm: float, quadrature_nodes: int) -> TrajectoryRow:
    geometry = geometry_report(state.shape, quadrature_nodes)
    return TrajectoryRow(
        step=state.steps,
        lambda_k=state.eigenvalue,
        area=geometry.area,
        perimeter=geometry.perimeter,
        grad_norm=grad_norm,
        step_size=state.step_size,
    )


def run_flow(
    shape: BoundaryShape,
    config: FlowConfig,
    target_area: Optional[float] = None,
) -> FlowResult:
    """迭代 flow_step 直到 ∫v² ds < stop_tol、步长过小、振幅越界或步数用尽

    停止原因: converged / step_too_small / amplitude_cap / degenerate / max_steps
    """
    state = initial_state(shape, config, target_area)
    trajectory: List[TrajectoryRow] = []
    eta = config.eta0
    logger.info(
        f"梯度流开始 | k={config.k} | n={config.refinement_level} | "
        f"λ={state.eigenvalue:.10g} | area={state.target_area:.10g}"
    )

    while True:
        try:
            v = descent_direction(state.pack, config.k, velocity_modes_for(state, config))
        except DegenerateEigenvalue as e:
            logger.warning(f"梯度流停止: {e}")
            trajectory.append(_row(state, _cluster_grad_norm(state.pack, config.k), config.quadrature_nodes))
            state = replace(state, stop_reason="degenerate")
            break
        rate = descent_rate(state.pack, v)
        trajectory.append(_row(state, float(np.sqrt(rate)), config.quadrature_nodes))
        if rate < config.stop_tol:
            state = replace(state, stop_reason="converged")
            break
        if state.steps >= config.max_steps:
            state = replace(state, stop_reason="max_steps")
            break
        try:
            moved = flow_step(state, eta, config, velocity=v)
        except StepTooSmall as e:
            logger.info(f"梯度流停止: {e}")
            state = replace(state, stop_reason="step_too_small")
            break
        except AmplitudeCapExceeded as e:
            logger.warning(f"梯度流停止: {e}")
            state = replace(state, stop_reason="amplitude_cap")
            break
        if moved is state:
            # 零步长或驻点
            state = replace(state, stop_reason="converged")
            break
        state = moved
        # 接受后尝试放大步长，不超过 eta0
        eta = min(2.0 * state.step_size, config.eta0)
        if state.steps % 10 == 0:
            logger.info(f"梯度流 | step={state.steps} | λ={state.eigenvalue:.10g} | |v|²={rate:.3e}")

    logger.info(
        f"梯度流结束 | reason={state.stop_reason} | steps={state.steps} | λ={state.eigenvalue:.10g}"
    )
    return FlowResult(state=state, trajectory=trajectory)
