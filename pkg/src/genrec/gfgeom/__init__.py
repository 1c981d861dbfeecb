"""Finite fields, projective spaces PG(n, q) and builtin group families."""

from .families import (
    FAMILIES,
    BuiltinGroup,
    builtin_group,
    gl_order,
    matrix_permutation,
    pg_point_count,
    pgl_order,
    psl_order,
)
from .field import Field, gf_construct, is_prime_power, prime_power
from .projective import ProjectiveSpace, normalize, pg_line, pg_points, projective_space

__all__ = [
    "FAMILIES", "BuiltinGroup", "Field", "ProjectiveSpace", "builtin_group",
    "gf_construct", "gl_order", "is_prime_power", "matrix_permutation",
    "normalize", "pg_line", "pg_point_count", "pg_points", "pgl_order",
    "prime_power", "projective_space", "psl_order",
]
