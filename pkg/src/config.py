"""配置管理模块"""
from pydantic import BaseModel, ConfigDict
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """进程级配置

    只从环境变量读取日志级别，数值参数一律走运行配置文件。
    """
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # 日志配置
    log_level: str = "INFO"  # 环境变量 LOG_LEVEL

    def __repr__(self) -> str:
        return f"Settings(log_level={self.log_level!r})"

    def __str__(self) -> str:
        return self.__repr__()


class NumericDefaults(BaseModel):
    """数值参数默认值"""
    model_config = ConfigDict(frozen=True)

    # 边界求积与 Fourier 截断
    quadrature_nodes: int = 512
    fourier_modes: int = 16
    star_check_factor: int = 4  # 星形检查网格 = factor * Q
    fit_tolerance: float = 1e-3  # 变形后 Fourier 拟合的相对 RMS 残差上限

    # 网格
    degenerate_area_factor: float = 1e-14

    # 特征值求解
    cluster_tol: float = 1e-4
    residual_tol: float = 1e-8
    dense_limit: int = 2000  # 内部节点少于此值时用稠密求解
    extra_pairs: int = 2  # 多求的特征对数量，用于识别跨越 k 的简并簇
    seed: int = 0

    # 梯度流
    amplitude_cap: float = 0.5  # |a_m|, |b_m| <= cap * r0
    eta_min: float = 1e-6


settings = Settings()
defaults = NumericDefaults()
