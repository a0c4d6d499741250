"""有限元模块"""
from .assembly import MASS_PATTERN, DirichletSystem, assemble, element_matrices

__all__ = ["MASS_PATTERN", "DirichletSystem", "assemble", "element_matrices"]
