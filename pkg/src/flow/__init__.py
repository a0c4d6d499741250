"""梯度流模块"""
from .gradient_flow import (
    FlowConfig,
    FlowResult,
    FlowState,
    TrajectoryRow,
    descent_direction,
    descent_rate,
    flow_step,
    initial_state,
    run_flow,
    velocity_modes_for,
)

__all__ = [
    "FlowConfig", "FlowResult", "FlowState", "TrajectoryRow",
    "descent_direction", "descent_rate", "flow_step", "initial_state", "run_flow",
    "velocity_modes_for",
]
