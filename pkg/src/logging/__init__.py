"""日志模块"""
from .config import setup_logging
from .handlers import CommandLogger, command_logger, log_operation

__all__ = ["setup_logging", "log_operation", "CommandLogger", "command_logger"]
