"""运行配置

JSON 格式，严格校验：未知字段报错，所有默认值在计算前填好。
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..config import defaults
from ..domain import BoundaryShape, ShapeImporter, VelocityMode
from ..errors import ConfigError


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RectangleSpec(StrictModel):
    """[0, width] x [0, height] 结构网格"""

    width: float = Field(gt=0)
    height: float = Field(gt=0)
    nx: int = Field(ge=2)
    ny: int = Field(ge=2)


class VelocityModeSpec(StrictModel):
    kind: Literal["const", "cos", "sin"]
    mode: int = Field(default=0, ge=0)
    amplitude: float = 1.0

    def to_mode(self) -> VelocityMode:
        return VelocityMode(kind=self.kind, mode=self.mode, amplitude=self.amplitude)


def _cos2() -> List[VelocityModeSpec]:
    return [VelocityModeSpec(kind="cos", mode=2)]


class DerivBlock(StrictModel):
    k: int = Field(default=1, ge=1)
    velocity: List[VelocityModeSpec] = Field(default_factory=_cos2)
    eps: List[float] = Field(default_factory=lambda: [1e-2, 1e-3, 1e-4])
    project_zero_mean: bool = True
    concurrent: bool = True

    @field_validator("eps")
    @classmethod
    def _positive_eps(cls, value: List[float]) -> List[float]:
        if not value or any(e <= 0 for e in value):
            raise ValueError("eps 列表必须非空且全为正数")
        return value


class CriticalBlock(StrictModel):
    tol: float = Field(default=1e-2, gt=0)
    clusters: Optional[List[List[int]]] = None  # None 表示检查全部已求簇
    scan_modes: int = Field(default=6, ge=1)
    heat_times: List[float] = Field(default_factory=list)


class HeatBlock(StrictModel):
    t: List[float] = Field(default_factory=lambda: [0.02, 0.04, 0.06, 0.08, 0.1, 0.2, 0.5, 1.0])
    n_terms: Optional[int] = Field(default=None, ge=1)
    accuracy: Optional[float] = Field(default=None, gt=0)
    velocity: Optional[List[VelocityModeSpec]] = None  # 给出时同时输出 dY/dε

    @field_validator("t")
    @classmethod
    def _positive_times(cls, value: List[float]) -> List[float]:
        if not value or any(t <= 0 for t in value):
            raise ValueError("t 列表必须非空且全为正数")
        return value


class FlowBlock(StrictModel):
    k: int = Field(default=1, ge=1)
    eta0: float = Field(default=0.1, ge=0)
    max_steps: int = Field(default=200, ge=0)
    stop_tol: float = Field(default=1e-8, ge=0)
    velocity_modes: Optional[int] = Field(default=None, ge=1)  # 缺省取区域的模态数
    target_area: Optional[float] = Field(default=None, gt=0)
    eta_min: float = Field(default=defaults.eta_min, gt=0)
    amplitude_cap: float = Field(default=defaults.amplitude_cap, gt=0)


class RunConfig(StrictModel):
    """一次命令运行的全部参数"""

    shape: Optional[Union[str, Dict[str, Any]]] = None  # 内联系数或区域 JSON 文件路径
    rectangle: Optional[RectangleSpec] = None
    refinement: int = Field(default=16, ge=1)
    k: int = Field(default=10, ge=1)
    cluster_tol: float = Field(default=defaults.cluster_tol, gt=0)
    quadrature_nodes: int = Field(default=defaults.quadrature_nodes, ge=16)  # 几何量与变形拟合的求积点数，梯度流与差分同样使用
    seed: int = Field(default=defaults.seed, ge=0)
    fit_tolerance: float = Field(default=defaults.fit_tolerance, gt=0)
    dump_mesh: bool = False
    deriv: DerivBlock = Field(default_factory=DerivBlock)
    critical: CriticalBlock = Field(default_factory=CriticalBlock)
    heat: HeatBlock = Field(default_factory=HeatBlock)
    flow: FlowBlock = Field(default_factory=FlowBlock)

    @field_validator("shape")
    @classmethod
    def _check_inline_shape(cls, value):
        if isinstance(value, dict):
            _, error = ShapeImporter.from_dict(value)
            if error:
                raise ValueError(error)
        return value

    @model_validator(mode="after")
    def _one_domain(self) -> "RunConfig":
        if (self.shape is None) == (self.rectangle is None):
            raise ValueError("shape 与 rectangle 必须恰好给出一个")
        return self

    @property
    def is_rectangle(self) -> bool:
        return self.rectangle is not None

    def boundary_shape(self) -> BoundaryShape:
        """内联区域；路径在 load_run_config 中已解析为内联"""
        if not isinstance(self.shape, dict):
            raise ConfigError("区域未给出星形系数")
        shape, error = ShapeImporter.from_dict(self.shape)
        if error:
            raise ConfigError(error)
        return shape

    def resolved(self) -> dict:
        return self.model_dump(mode="json")


def _resolve_shape_path(data: dict, base_dir: Path) -> None:
    """shape 为字符串时按配置文件所在目录解析，读入后内联"""
    shape = data.get("shape")
    if not isinstance(shape, str):
        return
    path = Path(shape)
    if not path.is_absolute():
        path = base_dir / path
    loaded, error = ShapeImporter.from_file(path)
    if error:
        raise ConfigError(error)
    data["shape"] = {
        "r0": loaded.r0,
        "cos": list(loaded.cos_coeffs),
        "sin": list(loaded.sin_coeffs),
    }


def parse_run_config(data: Any, base_dir: Path = Path("."), **overrides) -> RunConfig:
    """校验配置字典；overrides 中非 None 的值覆盖同名字段"""
    if not isinstance(data, dict):
        raise ConfigError("配置必须是 JSON 对象")
    data = dict(data)
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    _resolve_shape_path(data, base_dir)
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"配置无效: {e}") from e


def load_run_config(path: Union[str, Path], **overrides) -> RunConfig:
    """读取并校验配置文件"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"无法读取配置文件 {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"配置文件 JSON 解析错误: {e}") from e
    return parse_run_config(data, base_dir=path.parent, **overrides)
