"""结果存储模块"""
from .writer import OutputWriter, format_cell, read_csv, to_csv, to_json

__all__ = ["OutputWriter", "format_cell", "read_csv", "to_csv", "to_json"]
