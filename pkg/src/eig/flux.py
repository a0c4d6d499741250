"""变分通量恢复

对未约化的边界行应用 Green 公式:
    (K_full φ − λ M_full φ)_i = ∫_{∂Ω} ∂φ/∂ν ψ_i ds ≈ ∂φ/∂ν(i) · w_i
"""
import numpy as np

from ..fem import DirichletSystem


def normal_derivative_trace(
    system: DirichletSystem,
    eigenvalue: float,
    eigenvector: np.ndarray,
) -> np.ndarray:
    """边界节点上的 ∂φ/∂ν，与 mesh.boundary_nodes 同序

    eigenvector 可以是 (n_interior,) 或 (n_interior, count)，后者返回 (count, n_boundary)。
    """
    phi = system.expand(eigenvector)
    eigenvalue = np.asarray(eigenvalue, dtype=float)
    residual = system.K_full @ phi - (system.M_full @ phi) * eigenvalue
    boundary = system.mesh.boundary_nodes
    values = residual[boundary]
    if values.ndim == 1:
        return values / system.boundary_weights
    return (values / system.boundary_weights[:, None]).T
