"""Compact string descriptors such as ``"PSL(2,7)"`` or ``"PSL(2,4)xC(3)"``."""

from __future__ import annotations

import re

from .base import Group, GroupError, IndexedGroup
from .matrix import KINDS, MatrixGroup, ProjectiveGroup
from .small import (AlternatingGroup, CyclicGroup, ProductGroup, SymmetricGroup,
                    dihedral_group, frobenius_group, wreath_cyclic)

_ATOM = re.compile(r"^([A-Za-z]+)\(([\d,\s]*)\)$")


def _split_product(text: str) -> list[str]:
    # 'x' separates factors only at parenthesis depth zero.
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def derived_subgroup(group: Group, name: str | None = None) -> IndexedGroup:
    """Commutator subgroup by closure of all commutators (small groups only)."""
    ig = group.indexed()
    t, inv = ig.table, ig.inverse
    comms = set()
    for a in range(ig.n):
        # [a, b] = a b a^-1 b^-1 for every b at once.
        ab = t[a]
        comms.update(int(c) for c in t[t[ab, inv[a]], inv])
    members = ig.closure(comms)
    return ig.subgroup(members, name=name or f"[{group.name},{group.name}]")


def parse_group(text: str) -> Group:
    """Build a group from its descriptor string.

    Families: ``C(n)``, ``Sym(n)``, ``Alt(n)``, ``D(2n)``, ``Frob(p,k)``,
    ``Wr(n,k)``, matrix kinds ``GL SL GU SU Sp SOplus SOminus SOcircle`` as
    ``KIND(n,q)``, their projective versions with a leading ``P``, and
    ``Omega*`` (derived subgroup of the matching SO).  Factors of a direct
    product are joined with ``x``.  For ``GU``/``SU`` the second argument is
    the fixed-field order ``q``; matrices live over GF(q^2).
    """
    text = text.replace(" ", "")
    parts = _split_product(text)
    if len(parts) > 1:
        return ProductGroup([parse_group(p) for p in parts])
    m = _ATOM.match(text)
    if not m:
        raise GroupError(f"cannot parse group descriptor {text!r}")
    fam = m.group(1)
    try:
        args = [int(a) for a in m.group(2).split(",") if a]
    except ValueError:
        raise GroupError(f"bad arguments in {text!r}") from None

    def need(k):
        if len(args) != k:
            raise GroupError(f"{fam} takes {k} argument(s), got {len(args)}")

    if fam == "C":
        need(1)
        return CyclicGroup(args[0])
    if fam == "Sym":
        need(1)
        return SymmetricGroup(args[0])
    if fam == "Alt":
        need(1)
        return AlternatingGroup(args[0])
    if fam == "D":
        need(1)
        if args[0] % 2 or args[0] < 6:
            raise GroupError("D(m) needs even m >= 6 (the group of order m)")
        return dihedral_group(args[0] // 2)
    if fam == "Frob":
        need(2)
        return frobenius_group(*args)
    if fam == "Wr":
        need(2)
        return wreath_cyclic(*args)
    if fam in KINDS:
        need(2)
        return MatrixGroup(fam, *args)
    if fam.startswith("P") and fam[1:] in KINDS:
        need(2)
        return ProjectiveGroup(MatrixGroup(fam[1:], *args))
    if fam.startswith("Omega") and "SO" + fam[5:] in KINDS:
        need(2)
        return derived_subgroup(MatrixGroup("SO" + fam[5:], *args), name=text)
    raise GroupError(f"unknown group family {fam!r}")
