"""形状演算模块"""
from .calculus import (
    OneSidedDerivatives,
    QFormMatrix,
    boundary_velocity,
    check_velocity,
    derivatives_of,
    hadamard_derivative,
    one_sided_derivatives,
    project_zero_mean_discrete,
    qform_matrix,
)
from .criticality import (
    ClusterCriticalityReport,
    DefinitenessRow,
    LocalExtremumReport,
    SimpleCriticalityReport,
    criticality_cluster,
    criticality_simple,
    default_test_velocities,
    definiteness_scan,
    local_extremum_test,
    relative_spread,
)
from .finite_difference import (
    FiniteDifferenceRow,
    FiniteDifferenceTable,
    convergence_order,
    extrapolate_quotients,
    finite_difference_check,
)

__all__ = [
    "OneSidedDerivatives", "QFormMatrix", "boundary_velocity", "check_velocity",
    "derivatives_of", "hadamard_derivative", "one_sided_derivatives",
    "project_zero_mean_discrete", "qform_matrix",
    "ClusterCriticalityReport", "DefinitenessRow", "LocalExtremumReport",
    "SimpleCriticalityReport", "criticality_cluster", "criticality_simple",
    "default_test_velocities", "definiteness_scan", "local_extremum_test", "relative_spread",
    "FiniteDifferenceRow", "FiniteDifferenceTable", "convergence_order",
    "extrapolate_quotients", "finite_difference_check",
]
