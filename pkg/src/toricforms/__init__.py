"""Exact cohomology of twisted differential forms on complete simplicial
toric varieties, with vanishing audits and explicit Čech cocycles."""

from .chow import chow_basis, chow_dim, presentation
from .cocycles import CechCocycle, CocycleGenerator, emit_cech_cocycle, generators
from .divisor import class_key, classify, contraction, shift_by_character, support_function
from .engine import (
    AuditReport,
    HodgeTable,
    Route,
    full_table,
    h_dims_chow,
    h_dims_counting,
    h_dims_direct,
    vanishing_audit,
)
from .errors import ToricError
from .examples import BUILTINS, builtin, hirzebruch, product_fan, projective_space, stellar_subdivision
from .ishida import build_ishida, cohomology_dims, star_split
from .lattice import Fan, FanSubset, fan_from_mapping, fan_to_mapping, fan_validate
from .polytope import divisor_polytope, face_lattice, lattice_points, normal_fan

__all__ = [
    "AuditReport", "BUILTINS", "CechCocycle", "CocycleGenerator", "Fan", "FanSubset",
    "HodgeTable", "Route", "ToricError", "build_ishida", "builtin", "chow_basis", "chow_dim",
    "class_key", "classify", "cohomology_dims", "contraction", "divisor_polytope",
    "emit_cech_cocycle", "face_lattice", "fan_from_mapping", "fan_to_mapping", "fan_validate",
    "full_table", "generators", "h_dims_chow", "h_dims_counting", "h_dims_direct",
    "hirzebruch", "lattice_points", "normal_fan", "presentation", "product_fan",
    "projective_space", "shift_by_character", "star_split", "stellar_subdivision",
    "support_function", "vanishing_audit",
]
