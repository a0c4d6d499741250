"""区域 JSON 导入导出

格式: {"r0": float, "cos": [..], "sin": [..]}，浮点数按最短往返表示写出，可逐位还原。
"""
import json
from pathlib import Path
from typing import Optional, Tuple

from .models import BoundaryShape


class ShapeImporter:
    """区域导入器"""

    @staticmethod
    def from_dict(data: dict) -> Tuple[Optional[BoundaryShape], Optional[str]]:
        """从字典导入区域"""
        missing = [key for key in ("r0", "cos", "sin") if key not in data]
        if missing:
            return None, f"缺少必要字段: {', '.join(missing)}"
        unknown = set(data) - {"r0", "cos", "sin"}
        if unknown:
            return None, f"未知字段: {', '.join(sorted(unknown))}"
        try:
            shape = BoundaryShape(
                r0=float(data["r0"]),
                cos_coeffs=tuple(float(a) for a in data["cos"]),
                sin_coeffs=tuple(float(b) for b in data["sin"]),
            )
        except (TypeError, ValueError) as e:
            return None, f"区域参数无效: {e}"
        return shape, None

    @classmethod
    def from_json(cls, json_str: str) -> Tuple[Optional[BoundaryShape], Optional[str]]:
        """从 JSON 字符串导入区域"""
        try:
            data = json.loads(json_str)
        except json.JSONDecodeError as e:
            return None, f"JSON 解析错误: {e}"
        if not isinstance(data, dict):
            return None, "区域 JSON 必须是对象"
        return cls.from_dict(data)

    @classmethod
    def from_file(cls, path: Path) -> Tuple[Optional[BoundaryShape], Optional[str]]:
        """从文件导入区域"""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            return None, f"无法读取区域文件 {path}: {e}"
        return cls.from_json(text)


def shape_to_dict(shape: BoundaryShape) -> dict:
    """转换为字典"""
    return {
        "r0": shape.r0,
        "cos": list(shape.cos_coeffs),
        "sin": list(shape.sin_coeffs),
    }


def shape_to_json(shape: BoundaryShape) -> str:
    return json.dumps(shape_to_dict(shape), indent=2, sort_keys=True)
