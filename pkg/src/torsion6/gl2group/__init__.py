"""Finite subgroups of GL2(Z/NZ): closure, orbits, enumeration, labels."""

from .abstract import (
    AbstractGroup,
    closure_quotient,
    from_matrix_group,
    from_permutations,
    is_generalized_s3_type,
)
from .forms import conjugate_into, in_standard_form, standard_group
from .group import (
    DEFAULT_CEILING,
    CeilingExceeded,
    FiniteMatrixGroup,
    are_conjugate,
    borel,
    contains_complex_conjugation,
    det_image,
    det_surjective,
    gl2,
    group_closure,
    orbit,
    orbits_of_order,
    preimage_full,
    reduction,
    stabilizer,
    vector_orbit,
)
from .labels import GroupLabel, label_group, label_registry, verify_label
from .lifts import LiftFamily, lifts_of
from .matrix import MatrixModN, TorsionVector, parse_matrix, to_rows
from .subgroups import is_solvable, subgroups_up_to_conjugacy

__all__ = [
    "AbstractGroup",
    "CeilingExceeded",
    "DEFAULT_CEILING",
    "FiniteMatrixGroup",
    "GroupLabel",
    "LiftFamily",
    "MatrixModN",
    "TorsionVector",
    "are_conjugate",
    "borel",
    "closure_quotient",
    "conjugate_into",
    "contains_complex_conjugation",
    "det_image",
    "det_surjective",
    "from_matrix_group",
    "from_permutations",
    "gl2",
    "group_closure",
    "in_standard_form",
    "is_generalized_s3_type",
    "is_solvable",
    "label_group",
    "label_registry",
    "lifts_of",
    "orbit",
    "orbits_of_order",
    "parse_matrix",
    "preimage_full",
    "reduction",
    "stabilizer",
    "standard_group",
    "subgroups_up_to_conjugacy",
    "to_rows",
    "verify_label",
    "vector_orbit",
]
