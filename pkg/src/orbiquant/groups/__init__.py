"""Finite groups: abstract multiplication tables and symplectic matrix groups."""

from .abstract import FiniteGroup, cyclic_group, symmetric_group, trivial_group
from .matrix_group import (
    FiniteSymplecticGroup,
    GroupExplosionError,
    close_group,
    group_from_json,
    group_to_json,
    is_symplectic_reflection,
)
from .standard import (
    cyclic_sl2,
    diag_reflection_c4,
    minus_identity,
    plane_swap,
    symmetric_double,
)

__all__ = [
    "FiniteGroup",
    "FiniteSymplecticGroup",
    "GroupExplosionError",
    "close_group",
    "cyclic_group",
    "cyclic_sl2",
    "diag_reflection_c4",
    "group_from_json",
    "group_to_json",
    "is_symplectic_reflection",
    "minus_identity",
    "plane_swap",
    "symmetric_double",
    "symmetric_group",
    "trivial_group",
]
