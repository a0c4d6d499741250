"""命令行模块"""
from .registry import CommandRegistry, command, get_registry
from .base import BaseCommand, CommandContext, CommandResult
from .run_config import RunConfig, load_run_config, parse_run_config

# 导入所有命令模块以触发注册
from . import commands

__all__ = [
    "CommandRegistry",
    "command",
    "get_registry",
    "BaseCommand",
    "CommandContext",
    "CommandResult",
    "RunConfig",
    "load_run_config",
    "parse_run_config",
]
