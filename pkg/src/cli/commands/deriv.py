"""有限差分验证命令"""
from ...shape import finite_difference_check, project_zero_mean_discrete
from ..base import BaseCommand, CommandResult
from ..registry import command

FD_HEADER = ("eps", "fwd", "bwd", "pred_right", "pred_left")


@command("deriv", aliases=["fd"])
class DerivCommand(BaseCommand):
    """单侧导数预测与差商对比"""

    description = "λ_k 的单侧导数与 ±ε 差商对比，输出 fd.csv"

    def execute(self) -> CommandResult:
        block = self.config.deriv
        shape = self.shape()
        pack = self.solve(block.k)
        v = self.velocity(pack, block.velocity)
        if block.project_zero_mean:
            v = project_zero_mean_discrete(pack, v)

        table = finite_difference_check(
            shape,
            block.k,
            v,
            block.eps,
            self.config.refinement,
            cluster_tol=self.config.cluster_tol,
            seed=self.config.seed,
            fit_tolerance=self.config.fit_tolerance,
            concurrent=block.concurrent,
            pack=pack,
            quadrature_nodes=self.config.quadrature_nodes,
        )
        self.writer.write_csv("fd.csv", FD_HEADER, table.csv_rows())
        self.writer.write_json("deriv_summary.json", table.summary())
        return CommandResult.ok(self.writer.written)
