from .io import InstanceError, instance_to_json, parse_instance, solution_from_json, solution_to_json
from .repvar import (HolonomyTuple, NoSolutionError, ReducibleError, reducibility_margin,
                     solve_rep_variety, stabilizer_dimension, tangent_dimension)
from .su2 import I, MINUS_I, N, SU2Element, SU2Error, adjoint, alcove, class_element, sample_class
from .twists import (SingularSquareRootError, braid_word, coisotropic_fiber_dim, enclosed_holonomy,
                     full_twist, h_Y, half_twist, half_twist_ad_sqrt_check, inverse_half_twist, rho_Y)
from .weights import (WeightVector, alcove_point, class_square_distance, class_square_endpoints,
                      class_square_segment_check, exp_weight, kr_labels, simple_root, sur_weights)

__all__ = [
    "HolonomyTuple", "I", "InstanceError", "MINUS_I", "N", "NoSolutionError", "ReducibleError",
    "SU2Element", "SU2Error", "SingularSquareRootError", "WeightVector", "adjoint", "alcove",
    "alcove_point", "braid_word", "class_element", "class_square_distance",
    "class_square_endpoints", "class_square_segment_check", "coisotropic_fiber_dim",
    "enclosed_holonomy", "exp_weight", "full_twist", "h_Y", "half_twist",
    "half_twist_ad_sqrt_check", "instance_to_json", "inverse_half_twist", "kr_labels",
    "parse_instance", "reducibility_margin", "rho_Y", "sample_class", "simple_root",
    "solution_from_json", "solution_to_json", "solve_rep_variety", "stabilizer_dimension",
    "sur_weights", "tangent_dimension",
]
