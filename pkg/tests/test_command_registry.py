"""命令注册器单元测试"""
import json

import pytest

from src.cli import BaseCommand, CommandContext, CommandRegistry, CommandResult, get_registry, parse_run_config
from src.errors import NumericalError
from src.storage import OutputWriter


def make_context(tmp_path):
    config = parse_run_config({"shape": {"r0": 1.0, "cos": [0.0], "sin": [0.0]}, "k": 2})
    out_dir = tmp_path / "out"
    return CommandContext(config=config, out_dir=out_dir, writer=OutputWriter(out_dir), config_path="run.json")


class TestCommandRegistry:
    """测试命令注册器"""

    def test_register_decorator(self):
        """测试装饰器注册"""
        registry = CommandRegistry()

        @registry.register("test", aliases=["t", "tst"])
        class TestCommand(BaseCommand):
            def execute(self):
                return CommandResult.ok([])

        assert registry.get_handler("test") == TestCommand
        assert registry.get_handler("t") == TestCommand
        assert registry.get_handler("tst") == TestCommand
        assert TestCommand.name == "test"
        assert TestCommand.aliases == ["t", "tst"]

    def test_case_insensitive(self):
        """测试命令名大小写不敏感"""
        registry = CommandRegistry()

        @registry.register("eigs")
        class EigsCommand(BaseCommand):
            def execute(self):
                return CommandResult.ok([])

        assert registry.get_handler("EIGS") == EigsCommand
        assert registry.get_handler("Eigs") == EigsCommand

    def test_unknown_command(self):
        """测试未知命令"""
        assert CommandRegistry().get_handler("unknown") is None

    def test_register_class(self):
        """测试显式注册类"""
        registry = CommandRegistry()

        class ManualCommand(BaseCommand):
            def execute(self):
                return CommandResult.ok([])

        registry.register_class(ManualCommand, name="manual", aliases=["m"])
        assert registry.get_handler("manual") == ManualCommand
        assert registry.get_handler("m") == ManualCommand

    def test_register_class_without_name(self):
        """测试未指定名称"""
        class Nameless(BaseCommand):
            def execute(self):
                return CommandResult.ok([])

        with pytest.raises(ValueError):
            CommandRegistry().register_class(Nameless)

    def test_list_commands(self):
        """测试列出命令与别名"""
        registry = CommandRegistry()

        @registry.register("a", aliases=["x"])
        class A(BaseCommand):
            def execute(self):
                return CommandResult.ok([])

        @registry.register("b")
        class B(BaseCommand):
            def execute(self):
                return CommandResult.ok([])

        assert set(registry.list_commands()) == {"a", "b"}
        assert set(registry.all_names()) == {"a", "b", "x"}

    def test_help(self, tmp_path):
        registry = CommandRegistry()

        @registry.register("helpful", aliases=["h"])
        class Helpful(BaseCommand):
            description = "说明"

            def execute(self):
                return CommandResult.ok([])

        text = Helpful(make_context(tmp_path)).help()
        assert "helpful - 说明" in text
        assert "h" in text


class TestExecute:
    """测试命令执行与退出码"""

    def _registry_with(self, exc=None):
        registry = CommandRegistry()

        @registry.register("run")
        class RunCommand(BaseCommand):
            def execute(self):
                if exc is not None:
                    raise exc
                self.writer.write_json("result.json", {"ok": True})
                return CommandResult.ok(self.writer.written)

        return registry

    def test_success_writes_resolved_config(self, tmp_path):
        """测试执行前写出 config.resolved.json"""
        ctx = make_context(tmp_path)
        result = self._registry_with().execute("run", ctx)
        assert result.success
        assert result.outputs == ["config.resolved.json", "result.json"]
        resolved = json.loads((ctx.out_dir / "config.resolved.json").read_text(encoding="utf-8"))
        assert resolved["k"] == 2
        assert resolved["refinement"] == 16
        assert resolved["deriv"]["eps"] == [1e-2, 1e-3, 1e-4]

    @pytest.mark.parametrize("exc,code", [
        (NumericalError("失败"), 1),
        (ValueError("参数错误"), 2),
        (RuntimeError("意外"), 1),
    ])
    def test_exit_codes(self, tmp_path, exc, code):
        result = self._registry_with(exc).execute("run", make_context(tmp_path))
        assert result.exit_code == code
        assert not result.success
        assert type(exc).__name__ in result.message

    def test_unknown(self, tmp_path):
        result = CommandRegistry().execute("nothing", make_context(tmp_path))
        assert result.exit_code == 2


class TestGlobalRegistry:
    """测试全局注册器中的批处理命令"""

    def test_commands_registered(self):
        registry = get_registry()
        assert set(registry.list_commands()) >= {"eigs", "deriv", "critical", "heat", "flow"}
        assert registry.get_handler("fd").name == "deriv"
        assert registry.get_handler("crit").name == "critical"
        assert registry.get_handler("trace").name == "heat"
