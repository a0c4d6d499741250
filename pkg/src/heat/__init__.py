"""热迹模块"""
from .asymptotics import (
    AsymptoticCoeffs,
    CurvatureReport,
    asymptotic_coeffs,
    expansion_eval,
    mean_curvature_report,
    rectangle_coeffs,
)
from .trace import (
    HeatCriticalityReport,
    HeatTraceSample,
    IsoperimetricEntry,
    IsoperimetricOrder,
    TraceSweepRow,
    boundary_heat_density,
    heat_criticality,
    heat_trace,
    heat_trace_derivative,
    isoperimetric_order,
    trace_sweep,
    weyl_tail,
)

__all__ = [
    "AsymptoticCoeffs", "CurvatureReport", "asymptotic_coeffs", "expansion_eval",
    "mean_curvature_report", "rectangle_coeffs",
    "HeatCriticalityReport", "HeatTraceSample", "IsoperimetricEntry", "IsoperimetricOrder",
    "TraceSweepRow", "boundary_heat_density", "heat_criticality", "heat_trace",
    "heat_trace_derivative", "isoperimetric_order", "trace_sweep", "weyl_tail",
]
