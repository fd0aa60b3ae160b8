"""Finite group backends behind one interface."""

from __future__ import annotations

from ..freeword import Word
from .base import Group, GroupError, IndexedGroup, as_indexed, describe
from .matrix import KINDS, MatrixGroup, ProjectiveGroup, classical_order
from .parse import derived_subgroup, parse_group
from .small import (AlternatingGroup, CyclicGroup, PermutationGroup, ProductGroup,
                    SymmetricGroup, cycles_to_perm, dihedral_group, frobenius_group,
                    wreath_cyclic)


def evaluate(w: Word, group: Group, g, h):
    """Image of ``w`` under ``x -> g, y -> h``."""
    result = group.identity()
    for gen, exp in w.blocks:
        result = group.mul(result, group.power(g if gen == 0 else h, exp))
    return result


__all__ = [
    "AlternatingGroup", "CyclicGroup", "Group", "GroupError", "IndexedGroup", "KINDS",
    "MatrixGroup", "PermutationGroup", "ProductGroup", "ProjectiveGroup", "SymmetricGroup",
    "as_indexed", "classical_order", "cycles_to_perm", "derived_subgroup", "describe",
    "dihedral_group", "evaluate", "frobenius_group", "parse_group", "wreath_cyclic",
]
