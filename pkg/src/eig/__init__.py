"""特征值求解模块"""
from .models import Cluster, SpectralPack, partition_clusters
from .flux import normal_derivative_trace
from .solver import relative_residuals, solve_spectrum, spectrum_of_shape, spectrum_rows

__all__ = [
    "Cluster", "SpectralPack", "partition_clusters",
    "normal_derivative_trace",
    "relative_residuals", "solve_spectrum", "spectrum_of_shape", "spectrum_rows",
]
