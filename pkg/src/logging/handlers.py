"""日志处理器和装饰器

命令日志记录器和数值操作计时装饰器。
"""
import time
from functools import wraps
from typing import Any, Callable
from loguru import logger


def log_operation(name: str) -> Callable:
    """数值操作计时装饰器

    日志格式:
    - 成功: OP_OK | op=xxx | duration=xxxms
    - 失败: OP_ERR | op=xxx | duration=xxxms | error=xxx
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                duration = (time.perf_counter() - start_time) * 1000
                logger.debug(
                    f"OP_ERR | op={name} | duration={duration:.2f}ms | "
                    f"error={type(e).__name__}: {e}"
                )
                raise
            duration = (time.perf_counter() - start_time) * 1000
            logger.debug(f"OP_OK | op={name} | duration={duration:.2f}ms")
            return result

        return wrapper
    return decorator


class CommandLogger:
    """命令日志记录器"""

    def __init__(self, name: str = "command"):
        self._logger = logger.bind(name=name)

    def log_start(self, command: str, config_path: str, out_dir: str) -> None:
        """记录命令开始"""
        self._logger.info(f"CMD | cmd={command} | config={config_path} | out={out_dir}")

    def log_success(self, command: str, duration_ms: float, outputs: list) -> None:
        """记录命令成功"""
        self._logger.info(
            f"CMD_OK | cmd={command} | duration={duration_ms:.2f}ms | "
            f"outputs={','.join(outputs)}"
        )

    def log_error(self, command: str, error: Exception, duration_ms: float) -> None:
        """记录命令错误（包含完整堆栈）"""
        self._logger.opt(exception=error).error(
            f"CMD_ERR | cmd={command} | duration={duration_ms:.2f}ms | "
            f"error={type(error).__name__}: {error}"
        )


# 全局命令日志记录器实例
command_logger = CommandLogger()
