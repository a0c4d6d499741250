"""梯度流命令"""
from ...domain import shape_to_dict
from ...flow import FlowConfig, run_flow
from ...heat import mean_curvature_report
from ...shape import criticality_simple
from ..base import BaseCommand, CommandResult
from ..registry import command

TRAJECTORY_HEADER = ("step", "lambda_k", "area", "perimeter", "grad_norm", "step_size")


@command("flow")
class FlowCommand(BaseCommand):
    """保面积梯度流"""

    description = "沿 Hadamard 梯度降低 λ_k，输出 flow.csv 与 final_shape.json"

    def execute(self) -> CommandResult:
        block = self.config.flow
        config = FlowConfig(
            k=block.k,
            refinement_level=self.config.refinement,
            eta0=block.eta0,
            max_steps=block.max_steps,
            stop_tol=block.stop_tol,
            velocity_modes=block.velocity_modes,
            eta_min=block.eta_min,
            amplitude_cap=block.amplitude_cap,
            cluster_tol=self.config.cluster_tol,
            seed=self.config.seed,
            fit_tolerance=self.config.fit_tolerance,
            quadrature_nodes=self.config.quadrature_nodes,
        )
        result = run_flow(self.shape(), config, target_area=block.target_area)
        state = result.state

        self.writer.write_csv(
            "flow.csv", TRAJECTORY_HEADER, [row.as_tuple() for row in result.trajectory]
        )
        self.writer.write_json("final_shape.json", shape_to_dict(state.shape))

        summary = {
            "stop_reason": state.stop_reason,
            "steps": state.steps,
            "eigenvalue": state.eigenvalue,
            "area": state.target_area,
            "curvature": mean_curvature_report(
                state.shape, self.config.critical.tol, self.config.quadrature_nodes
            ).to_dict(),
        }
        if state.pack.is_simple(block.k):
            summary["criticality"] = criticality_simple(
                state.pack, block.k, self.config.critical.tol
            ).to_dict()
        self.writer.write_json("flow_summary.json", summary)
        return CommandResult.ok(self.writer.written)
