"""结果文件写入

CSV：固定表头，',' 分隔，浮点数 17 位有效数字。
JSON：indent=2、键排序，浮点数按 repr 输出（最短可逆表示）。
"""
import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Iterable, List, Sequence

import numpy as np
from loguru import logger


def format_cell(value: Any) -> str:
    """单元格格式化：整数原样，浮点数 .17g，布尔值 true/false"""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"CSV 中不允许非有限值: {value}")
        return format(value, ".17g")
    return str(value)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"行长度 {len(row)} 与表头 {len(header)} 不一致")
        writer.writerow([format_cell(x) for x in row])
    return buffer.getvalue()


def _to_plain(data: Any) -> Any:
    """numpy 类型和 dataclass 转为可 JSON 序列化的 Python 对象"""
    if is_dataclass(data) and not isinstance(data, type):
        return _to_plain(asdict(data))
    if isinstance(data, dict):
        return {str(k): _to_plain(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [_to_plain(v) for v in data]
    if isinstance(data, np.ndarray):
        return _to_plain(data.tolist())
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, (float, np.floating)):
        value = float(data)
        if not math.isfinite(value):
            raise ValueError(f"JSON 中不允许非有限值: {value}")
        return value
    return data


def to_json(data: Any) -> str:
    return json.dumps(_to_plain(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class OutputWriter:
    """输出目录下的结果文件"""

    def __init__(self, out_dir: Path):
        self.out_dir = Path(out_dir)
        self.written: List[str] = []

    def _path(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir / name

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self._path(name)
        path.write_text(to_csv(header, rows), encoding="utf-8")
        self._record(path)
        return path

    def write_json(self, name: str, data: Any) -> Path:
        path = self._path(name)
        path.write_text(to_json(data), encoding="utf-8")
        self._record(path)
        return path

    def _record(self, path: Path) -> None:
        self.written.append(path.name)
        logger.debug(f"写入 {path}")


def read_csv(path: Path) -> List[dict]:
    """读回 CSV（测试与后处理用），值保持字符串"""
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))
