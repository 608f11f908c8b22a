from .maslov import (MaslovError, concatenate, det_squared_phase, lagrangian_defect, line_rotation,
                     maslov_index_loop, reverse, section_index, sqrt_z_frame)
from .profile import AngleProfile
from .twist import (CotangentPoint, FiberedPoint, IntersectionResult, TwistError, antipodal_defect,
                    count_twisted_intersections, equivariance_check, fiber_scale, fibered_twist,
                    inverse_model_twist, model_twist, model_twist_arrays, random_point, random_points,
                    support_defect, symplectic_check, symplectic_defect, threshold_delta)

__all__ = [
    "AngleProfile", "CotangentPoint", "FiberedPoint", "IntersectionResult", "MaslovError",
    "TwistError", "antipodal_defect", "concatenate", "count_twisted_intersections",
    "det_squared_phase", "equivariance_check", "fiber_scale", "fibered_twist",
    "inverse_model_twist", "lagrangian_defect", "line_rotation", "maslov_index_loop",
    "model_twist", "model_twist_arrays", "random_point", "random_points", "reverse",
    "section_index", "sqrt_z_frame", "support_defect", "symplectic_check", "symplectic_defect",
    "threshold_delta",
]
