"""日志配置模块

一次运行的日志写到输出目录：run.log 记录全部 DEBUG 以上消息，error.log 只记录错误。
"""
import sys
import warnings
from pathlib import Path
from typing import Optional, Union

from loguru import logger

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | "
    "<level>{level:<8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)

FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level:<8} | {name}:{function}:{line} | {message}"

# 文件名 -> 最低级别
RUN_FILES = (("run.log", "DEBUG"), ("error.log", "ERROR"))


def _warning_to_loguru(message, category, filename, lineno, file=None, line=None):
    """numpy/scipy 的 RuntimeWarning、SparseEfficiencyWarning 等转进 loguru"""
    source = Path(filename).name if filename else "?"
    logger.warning(f"{category.__name__} | {source}:{lineno} | {str(message).strip()}")


def setup_logging(
    level: str = "INFO",
    log_path: Optional[Union[str, Path]] = None,
    enable_console: bool = True,
) -> None:
    """配置日志

    Args:
        level: 控制台级别，由调用方按 --debug / LOG_LEVEL 决定
        log_path: 本次运行的输出目录，给出时写 run.log 与 error.log
        enable_console: 是否输出到 stderr
    """
    logger.remove()
    warnings.showwarning = _warning_to_loguru

    if enable_console:
        logger.add(sys.stderr, level=level.upper(), format=CONSOLE_FORMAT, colorize=True, diagnose=False)

    if log_path is None:
        return

    out_dir = Path(log_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    for filename, file_level in RUN_FILES:
        logger.add(
            out_dir / filename,
            level=file_level,
            format=FILE_FORMAT,
            mode="w",
            encoding="utf-8",
            backtrace=True,
            diagnose=False,
        )
