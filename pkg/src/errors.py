"""异常定义

ConfigError 对应退出码 2，NumericalError 及其子类对应退出码 1。
"""
from typing import Optional, Sequence


class ToolkitError(Exception):
    """工具箱异常基类"""

    exit_code: int = 1


class ConfigError(ToolkitError):
    """运行配置无效"""

    exit_code = 2


class NumericalError(ToolkitError):
    """数值计算失败"""

    exit_code = 1


class NonStarShaped(NumericalError):
    """区域不是关于原点的星形区域"""


class AmplitudeCapExceeded(NonStarShaped):
    """Fourier 振幅超过上限（保护网格质量）"""


class FitResidualTooLarge(NumericalError):
    """变形后边界的 Fourier 拟合残差过大"""

    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(f"Fourier 拟合残差 {residual:.3e} 超过容差 {tolerance:.3e}")


class DegenerateTriangle(NumericalError):
    """网格中存在退化三角形"""

    def __init__(self, triangle: int, area: float):
        self.triangle = triangle
        self.area = area
        super().__init__(f"三角形 {triangle} 面积 {area:.3e} 过小")


class NotConverged(NumericalError):
    """特征值求解未收敛"""

    def __init__(self, message: str, residuals: Optional[Sequence[float]] = None):
        self.residuals = list(residuals) if residuals is not None else []
        if self.residuals:
            message = f"{message} (最大残差 {max(self.residuals):.3e})"
        super().__init__(message)


class DegenerateEigenvalue(NumericalError):
    """特征值简并，需要走 q_v 二次型路径"""

    def __init__(self, k: int, cluster: Sequence[int]):
        self.k = k
        self.cluster = tuple(cluster)
        super().__init__(f"λ_{k} 属于简并簇 {list(self.cluster)}")


class TailTooLarge(NumericalError):
    """热迹截断误差超过要求精度"""

    def __init__(self, tail_bound: float, accuracy: float):
        self.tail_bound = tail_bound
        self.accuracy = accuracy
        super().__init__(f"截断误差上界 {tail_bound:.3e} 超过要求 {accuracy:.3e}")


class StepTooSmall(NumericalError):
    """线搜索步长低于下限"""

    def __init__(self, step: float):
        self.step = step
        super().__init__(f"步长 {step:.3e} 低于下限，已收敛或停滞")
