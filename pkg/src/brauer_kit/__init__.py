"""Exact algebra for Azumaya algebras, Severi-Brauer points and conics over small rings."""

from .algebras import (AlgebraMap, StructureAlgebra, azumaya_check, hom_check, matrix_algebra,
                       quaternion_algebra, quaternion_split_iso)
from .conics import find_point, parametrize
from .errors import BrauerKitError
from .linalg import Matrix
from .projective import ProjPoint, Subspace, enumerate_points, make_point, right_ideal_check
from .rings import parse_ring_spec
from .severi_brauer import (automorphism_to_pgl, chatelet_point_map, delta, delta_inv,
                            find_right_ideal, matrix_units_conjugator, split_by_ideal)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMap", "BrauerKitError", "Matrix", "ProjPoint", "StructureAlgebra", "Subspace",
    "automorphism_to_pgl", "azumaya_check", "chatelet_point_map", "delta", "delta_inv",
    "enumerate_points", "find_point", "find_right_ideal", "hom_check", "make_point",
    "matrix_algebra", "matrix_units_conjugator", "parametrize", "parse_ring_spec",
    "quaternion_algebra", "quaternion_split_iso", "right_ideal_check", "split_by_ideal",
]
