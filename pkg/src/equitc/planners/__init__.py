from .common import DomainIndex
from .euclid import (
    RadialData, farber_counterexample, farber_planner_F2, in_farber_domain, on_radial,
    plan_euclidean_pair, plan_euclidean_symmetrized, radial_count, radial_data, radial_offset,
    rotation_legs, segment_hits,
)
from .sphere import (
    antipodal_domain, beta, plan_sphere_antipodal_effective, plan_sphere_reflection_effective,
    plan_sphere_standard, reflection_domain, standard_domain,
)
from .torus import CharTuple, char_tuple, plan_torus_effectual, torus_representatives

__all__ = [
    "DomainIndex", "RadialData", "farber_counterexample", "farber_planner_F2", "in_farber_domain",
    "on_radial", "plan_euclidean_pair", "plan_euclidean_symmetrized", "radial_count", "radial_data",
    "radial_offset", "rotation_legs", "segment_hits",
    "antipodal_domain", "beta", "plan_sphere_antipodal_effective", "plan_sphere_reflection_effective",
    "plan_sphere_standard", "reflection_domain", "standard_domain", "CharTuple", "char_tuple",
    "plan_torus_effectual", "torus_representatives",
]
