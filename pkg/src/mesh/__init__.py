"""网格模块"""
from .models import MeshStatistics, TriangleMesh
from .generator import dump_mesh_json, generate_mesh, mesh_statistics, structured_rectangle

__all__ = [
    "MeshStatistics", "TriangleMesh",
    "dump_mesh_json", "generate_mesh", "mesh_statistics", "structured_rectangle",
]
