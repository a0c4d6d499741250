"""热迹命令"""
from ...heat import asymptotic_coeffs, heat_trace_derivative, rectangle_coeffs, trace_sweep
from ...shape import project_zero_mean_discrete
from ..base import BaseCommand, CommandResult
from ..registry import command

TRACE_HEADER = ("t", "Y_spec", "tail_bound", "Y_asym", "rel_gap")
DERIVATIVE_HEADER = ("t", "dY")


@command("heat", aliases=["trace"])
class HeatCommand(BaseCommand):
    """热迹扫描与渐近展开对比"""

    description = "热迹 Y(t) 与小时间渐近展开对比，输出 heat.csv"

    def execute(self) -> CommandResult:
        block = self.config.heat
        if self.config.is_rectangle:
            r = self.config.rectangle
            coeffs = rectangle_coeffs(r.width, r.height)
        else:
            coeffs = asymptotic_coeffs(self.shape(), self.config.quadrature_nodes)

        pack = self.solve(self.config.k)
        rows = trace_sweep(pack, coeffs, block.t, block.n_terms, block.accuracy)
        self.writer.write_csv("heat.csv", TRACE_HEADER, [row.as_tuple() for row in rows])

        if block.velocity:
            v = project_zero_mean_discrete(pack, self.velocity(pack, block.velocity))
            derivatives = [
                (t, heat_trace_derivative(pack, v, t, block.n_terms, block.accuracy))
                for t in block.t
            ]
            self.writer.write_csv("heat_derivative.csv", DERIVATIVE_HEADER, derivatives)

        self.writer.write_json("heat_coeffs.json", {"n_eigs": pack.count, **coeffs.to_dict()})
        return CommandResult.ok(self.writer.written)
