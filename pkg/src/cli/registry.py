"""批处理命令注册与分发"""
import time
from typing import Callable, Dict, List, Optional, Type

from loguru import logger

from ..errors import ConfigError, NumericalError, ToolkitError
from ..logging import command_logger
from .base import BaseCommand, CommandContext, CommandResult

CommandClass = Type[BaseCommand]


def exit_code_for(error: Exception) -> int:
    """异常 -> 退出码：ToolkitError 自带，参数错误视为配置错误，其余按数值失败"""
    if isinstance(error, ToolkitError):
        return error.exit_code
    if isinstance(error, ValueError):
        return ConfigError.exit_code
    return NumericalError.exit_code


class CommandRegistry:
    """命令名 / 别名到命令类的路由表"""

    def __init__(self):
        self._commands: Dict[str, CommandClass] = {}
        self._aliases: Dict[str, str] = {}

    def _add(self, cls: CommandClass, name: str, aliases: List[str]) -> None:
        cls.name = name
        cls.aliases = aliases
        self._commands[name] = cls
        self._aliases.update({alias: name for alias in aliases})
        logger.debug(f"注册命令: {name} 别名={aliases}")

    def register(
        self,
        name: str,
        aliases: Optional[List[str]] = None,
    ) -> Callable[[CommandClass], CommandClass]:
        """装饰器：以 name 和 aliases 注册命令类"""
        def decorator(cls: CommandClass) -> CommandClass:
            self._add(cls, name, list(aliases or []))
            return cls
        return decorator

    def register_class(
        self,
        cls: CommandClass,
        name: Optional[str] = None,
        aliases: Optional[List[str]] = None,
    ) -> None:
        """显式注册；缺省名称取类属性 name"""
        cmd_name = name or cls.name
        if not cmd_name:
            raise ValueError(f"命令类 {cls.__name__} 缺少名称")
        self._add(cls, cmd_name, list(aliases if aliases is not None else cls.aliases))

    def get_handler(self, command: str) -> Optional[CommandClass]:
        key = command.lower()
        return self._commands.get(self._aliases.get(key, key))

    def list_commands(self) -> List[str]:
        return list(self._commands)

    def all_names(self) -> List[str]:
        return [*self._commands, *self._aliases]

    def execute(self, command: str, ctx: CommandContext) -> CommandResult:
        """写出 config.resolved.json 后运行命令；异常转为失败结果"""
        handler_cls = self.get_handler(command)
        if handler_cls is None:
            logger.error(f"未知命令: {command}")
            return CommandResult.failure(ConfigError.exit_code, f"未知命令: {command}")

        started = time.perf_counter()
        command_logger.log_start(handler_cls.name, str(ctx.config_path), str(ctx.out_dir))
        try:
            ctx.writer.write_json("config.resolved.json", ctx.config.resolved())
            result = handler_cls(ctx).execute()
        except Exception as e:
            elapsed_ms = (time.perf_counter() - started) * 1000
            command_logger.log_error(handler_cls.name, e, elapsed_ms)
            return CommandResult.failure(exit_code_for(e), f"{type(e).__name__}: {e}")

        elapsed_ms = (time.perf_counter() - started) * 1000
        command_logger.log_success(handler_cls.name, elapsed_ms, ctx.writer.written)
        return result


_registry = CommandRegistry()


def command(
    name: str,
    aliases: Optional[List[str]] = None,
) -> Callable[[CommandClass], CommandClass]:
    """全局注册器上的命令装饰器，如 @command("eigs", aliases=["eig"])"""
    return _registry.register(name, aliases)


def get_registry() -> CommandRegistry:
    return _registry
