"""临界性命令"""
from typing import List

from ...eig import Cluster, SpectralPack
from ...errors import ConfigError
from ...heat import heat_criticality, mean_curvature_report
from ...shape import criticality_cluster, definiteness_scan, local_extremum_test
from ..base import BaseCommand, CommandResult
from ..registry import command


def _requested_clusters(pack: SpectralPack, requested) -> List[Cluster]:
    """配置中的簇必须是连续编号，且与求得的簇一致"""
    if requested is None:
        return list(pack.clusters)
    clusters = []
    for indices in requested:
        if not indices:
            raise ConfigError("簇不能为空")
        start, size = min(indices), len(indices)
        if sorted(indices) != list(range(start, start + size)):
            raise ConfigError(f"簇必须是连续编号: {indices}")
        if start + size - 1 > pack.count:
            raise ConfigError(f"簇 {indices} 超出已求特征值个数 {pack.count}")
        cluster = Cluster(start=start, size=size)
        if cluster not in pack.clusters:
            raise ConfigError(
                f"簇 {indices} 与数值簇划分不一致: {[list(c.indices) for c in pack.clusters]}"
            )
        clusters.append(cluster)
    return clusters


@command("critical", aliases=["crit"])
class CriticalCommand(BaseCommand):
    """逐簇临界性报告"""

    description = "检查各特征值（簇）的临界性，输出 critical.json"

    def execute(self) -> CommandResult:
        block = self.config.critical
        pack = self.solve(self.config.k)
        clusters = _requested_clusters(pack, block.clusters)

        report = {
            "cluster_tol": pack.cluster_tol,
            "clusters": [criticality_cluster(pack, c, block.tol).to_dict() for c in clusters],
            "definiteness": [
                {
                    "cluster": list(c.indices),
                    "rows": [
                        {
                            "velocity": row.label,
                            "min_eigenvalue": row.min_eigenvalue,
                            "max_eigenvalue": row.max_eigenvalue,
                            "definite": row.definite,
                        }
                        for row in definiteness_scan(pack, c, max_mode=block.scan_modes)
                    ],
                }
                for c in clusters
            ],
            "local_extremum": [
                local_extremum_test(pack, k, block.tol).to_dict()
                for c in clusters for k in c
            ],
            "heat": [heat_criticality(pack, t, block.tol).to_dict() for t in block.heat_times],
        }
        if not self.config.is_rectangle:
            report["curvature"] = mean_curvature_report(
                self.shape(), block.tol, self.config.quadrature_nodes
            ).to_dict()
        self.writer.write_json("critical.json", report)
        return CommandResult.ok(self.writer.written)
