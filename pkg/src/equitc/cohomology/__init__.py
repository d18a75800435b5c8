"""Graded-commutative cohomology rings, induced maps and cup-length certificates."""
from .algebra import (
    F2, Z, AlgebraMap, Element, GradedAlgebra, RingTable, diagonal_pullback, identity_map,
    ring_table, tensor_maps, tensor_power, tensor_product,
)
from .linalg import gf2_nullspace, in_span, integer_kernel, kernel_of_maps
from .rings import (
    action_map, build_ring, effective_kernel, effectual_pullback, map_from_generators,
    orbital_pullback, parse_preset, quotient_pullback, twisted_diagonals,
)
