"""Permutations, permutation groups and stabilizer chains."""

from .chain import StabilizerChain, schreier_sims
from .group import (
    OrbitClass,
    PermGroup,
    build_chain,
    centralizer_small,
    fixed_points,
    is_block_system,
    minimal_block_systems,
    orbit,
    orbit_of_tuple,
    pointwise_stabilizer,
    same_tuple_orbit,
)
from .perm import Permutation, compose, inverse, parse_permutation

__all__ = [
    "OrbitClass", "PermGroup", "Permutation", "StabilizerChain",
    "build_chain", "centralizer_small", "compose", "fixed_points", "inverse",
    "is_block_system", "minimal_block_systems", "orbit", "orbit_of_tuple",
    "parse_permutation", "pointwise_stabilizer", "same_tuple_orbit",
    "schreier_sims",
]
