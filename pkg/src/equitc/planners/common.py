from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BadParams, ShapeMismatch

# U, V: effective sphere planners; D: torus effectual; F: Euclidean;
# S: the ordinary planner on odd spheres (index = number of antipodal targets).
FAMILIES = ("U", "V", "D", "F", "S")


@dataclass(frozen=True, order=True)
class DomainIndex:
    family: str
    index: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParams(f"unknown domain family {self.family!r}")
        if self.index < 0:
            raise BadParams("domain indices are non-negative")

    def __str__(self):
        return f"{self.family}_{self.index}"


def point_array(points, n_min: int = 2) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    if x.ndim != 2:
        raise ShapeMismatch("expected a list of points")
    if x.shape[0] < n_min:
        raise BadParams(f"need at least {n_min} points, got {x.shape[0]}")
    return x


def close(p, q, tol: float) -> bool:
    return float(np.linalg.norm(np.asarray(p) - np.asarray(q))) <= tol
