"""主入口

用法: python -m src.main <command> --config run.json --out out/ [--refine n] [--seed s] [--debug]
退出码: 0 成功，1 数值失败，2 配置错误。
"""
import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from loguru import logger

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import CommandContext, get_registry, load_run_config
from src.config import settings
from src.errors import ConfigError
from src.logging import setup_logging as configure_logging
from src.storage import OutputWriter


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """解析命令行参数"""
    registry = get_registry()
    parser = argparse.ArgumentParser(description="Dirichlet 特征值形状演算工具")
    parser.add_argument("command", choices=sorted(registry.all_names()), help="要运行的命令")
    parser.add_argument("--config", required=True, help="运行配置 JSON 文件")
    parser.add_argument("--out", default="out", help="输出目录")
    parser.add_argument("--refine", type=int, default=None, help="覆盖网格加密层数 n")
    parser.add_argument("--seed", type=int, default=None, help="特征值求解起始向量种子")
    parser.add_argument(
        "--debug", "-d",
        action="store_true",
        help="启用 DEBUG 日志级别"
    )
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数，返回退出码"""
    args = parse_args(argv)
    out_dir = Path(args.out)

    # 命令行 --debug 优先于环境变量 LOG_LEVEL
    log_level = "DEBUG" if args.debug else settings.log_level
    configure_logging(level=log_level, log_path=out_dir)

    try:
        config = load_run_config(args.config, refinement=args.refine, seed=args.seed)
    except ConfigError as e:
        logger.error(f"配置错误: {e}")
        return e.exit_code

    ctx = CommandContext(
        config=config,
        out_dir=out_dir,
        writer=OutputWriter(out_dir),
        config_path=args.config,
    )
    result = get_registry().execute(args.command, ctx)
    if not result.success:
        logger.error(f"命令失败 (exit {result.exit_code}): {result.message}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
