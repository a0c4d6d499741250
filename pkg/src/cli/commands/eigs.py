"""频谱命令"""
from ...eig import spectrum_rows
from ..base import BaseCommand, CommandResult
from ..registry import command

SPECTRUM_HEADER = ("index", "eigenvalue", "cluster", "residual")


@command("eigs", aliases=["eig"])
class EigsCommand(BaseCommand):
    """求最小的 k 个特征值"""

    description = "求最小的 k 个 Dirichlet 特征值，输出 spectrum.csv"

    def execute(self) -> CommandResult:
        pack = self.solve(self.config.k)
        self.writer.write_csv("spectrum.csv", SPECTRUM_HEADER, spectrum_rows(pack))
        return CommandResult.ok(self.writer.written)
