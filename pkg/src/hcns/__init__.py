"""Finite-dimensional hypercomplex number systems.

Exact symbolic arithmetic over Cayley tables given by structure
constants: number representations and conversions, the full set of
algebraic operations, algebra transformations (basis changes, direct
sums, dimension products, isomorphism systems), a persistent algebra
registry, and the quaternion rotation application.
"""

from .algebra import AlgebraDef, CayleyCell, in_convert_hns, natural_table, validate, viz_hns
from .errors import HcnsError
from .hcnumber import (
    HNumber,
    NaturalForm,
    convert_a,
    hns_number,
    list_hns,
    name_bas,
    parse_natural,
    refill,
    renam_a,
    viz_in_a,
)
from .ops import (
    MulMatrix,
    add_natural,
    conjug,
    divis,
    in_add,
    in_multi,
    in_neg,
    in_sub,
    mul_matrix,
    nat_multi,
    norma,
    rad2,
    scalar_mul,
    sqrt_eq,
    subtr,
    unit,
)
from .registry import Registry, add_hns, lib_hns, refill_hns, search_hns, viz_lib_hns
from .rotation import (
    RotationSpec,
    quat_from_rotation,
    rotate,
    rotate2,
    rotation_matrix_oracle,
)
from .scalar import Scalar, Symbol, parse_scalar
from .transforms import (
    BasisTransform,
    IsoSystem,
    dir_sum2,
    dir_sum_n,
    export_iso_system,
    gen_iso,
    iso_matrix_satisfies,
    iso_substitute,
    multi_dim,
    sys_izo,
    trans,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraDef",
    "BasisTransform",
    "CayleyCell",
    "HNumber",
    "HcnsError",
    "IsoSystem",
    "MulMatrix",
    "NaturalForm",
    "Registry",
    "RotationSpec",
    "Scalar",
    "Symbol",
    "add_hns",
    "add_natural",
    "conjug",
    "convert_a",
    "dir_sum2",
    "dir_sum_n",
    "divis",
    "export_iso_system",
    "gen_iso",
    "hns_number",
    "in_add",
    "in_convert_hns",
    "in_multi",
    "in_neg",
    "in_sub",
    "iso_matrix_satisfies",
    "iso_substitute",
    "lib_hns",
    "list_hns",
    "mul_matrix",
    "multi_dim",
    "name_bas",
    "nat_multi",
    "natural_table",
    "norma",
    "parse_natural",
    "parse_scalar",
    "quat_from_rotation",
    "rad2",
    "refill",
    "refill_hns",
    "renam_a",
    "rotate",
    "rotate2",
    "rotation_matrix_oracle",
    "scalar_mul",
    "search_hns",
    "sqrt_eq",
    "subtr",
    "sys_izo",
    "trans",
    "unit",
    "validate",
    "viz_hns",
    "viz_in_a",
    "viz_lib_hns",
]
