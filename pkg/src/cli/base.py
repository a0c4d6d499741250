"""命令基础类"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from ..domain import BoundaryShape, NormalVelocity, velocity_from_modes
from ..eig import SpectralPack, solve_spectrum
from ..errors import ConfigError
from ..fem import DirichletSystem, assemble
from ..mesh import TriangleMesh, dump_mesh_json, generate_mesh, structured_rectangle
from ..storage import OutputWriter
from .run_config import RunConfig, VelocityModeSpec


@dataclass
class CommandContext:
    """命令执行上下文"""
    config: RunConfig
    out_dir: Path
    writer: OutputWriter
    config_path: Optional[str] = None


@dataclass
class CommandResult:
    """命令执行结果"""
    exit_code: int = 0
    outputs: List[str] = field(default_factory=list)
    message: Optional[str] = None

    @classmethod
    def ok(cls, outputs: Sequence[str]) -> "CommandResult":
        return cls(exit_code=0, outputs=list(outputs))

    @classmethod
    def failure(cls, exit_code: int, message: str) -> "CommandResult":
        return cls(exit_code=exit_code, message=message)

    @property
    def success(self) -> bool:
        return self.exit_code == 0


class BaseCommand(ABC):
    """命令基类 - 所有批处理命令的父类"""

    name: str = ""  # 命令名称
    aliases: list[str] = []  # 命令别名
    description: str = ""  # 命令描述

    def __init__(self, ctx: CommandContext):
        self.ctx = ctx
        self.config = ctx.config
        self.writer = ctx.writer

    @abstractmethod
    def execute(self) -> CommandResult:
        """执行命令，返回结果"""

    def help(self) -> str:
        lines = [f"{self.name} - {self.description}"]
        if self.aliases:
            lines.append(f"别名: {', '.join(self.aliases)}")
        return "\n".join(lines)

    # 以下为各命令共用的流水线步骤

    def shape(self) -> BoundaryShape:
        if self.config.is_rectangle:
            raise ConfigError(f"命令 {self.name} 需要星形区域 (shape)，不支持 rectangle")
        return self.config.boundary_shape()

    def mesh(self) -> TriangleMesh:
        if self.config.is_rectangle:
            r = self.config.rectangle
            mesh = structured_rectangle(r.width, r.height, r.nx, r.ny)
        else:
            mesh = generate_mesh(self.config.boundary_shape(), self.config.refinement)
        if self.config.dump_mesh:
            self.writer.write_json("mesh.json", dump_mesh_json(mesh))
        return mesh

    def system(self) -> DirichletSystem:
        return assemble(self.mesh())

    def solve(self, k: int, system: Optional[DirichletSystem] = None) -> SpectralPack:
        return solve_spectrum(
            system or self.system(),
            k,
            cluster_tol=self.config.cluster_tol,
            seed=self.config.seed,
        )

    @staticmethod
    def velocity(pack: SpectralPack, modes: Sequence[VelocityModeSpec]) -> NormalVelocity:
        return velocity_from_modes([m.to_mode() for m in modes], pack.boundary_angles)
