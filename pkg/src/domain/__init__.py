"""星形区域模块"""
from .models import (
    BoundaryShape,
    GeometryReport,
    NormalVelocity,
    VelocityMode,
    uniform_angles,
    velocity_from_modes,
)
from .geometry import (
    arc_weights,
    boundary_point,
    check_star_shaped,
    deform,
    deformation_fit,
    filter_velocity,
    geometry_report,
    integrate_on_shape,
    project_zero_mean,
    rescale_to_area,
)
from .importer import ShapeImporter, shape_to_dict, shape_to_json

__all__ = [
    "BoundaryShape", "GeometryReport", "NormalVelocity", "VelocityMode",
    "uniform_angles", "velocity_from_modes",
    "arc_weights", "boundary_point", "check_star_shaped", "deform", "deformation_fit",
    "filter_velocity", "geometry_report", "integrate_on_shape", "project_zero_mean",
    "rescale_to_area",
    "ShapeImporter", "shape_to_dict", "shape_to_json",
]
