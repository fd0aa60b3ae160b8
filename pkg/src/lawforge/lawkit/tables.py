"""Static data for finite simple groups of Lie type.

Family tags are strings like ``"A3"``, ``"2A2"``, ``"B4"``, ``"3D4"``, ``"E6"``
or ``"2B2"``.  ``law_degree`` is the polynomial degree of shortest-law lengths,
``projective_dim`` the least dimension of a faithful projective
representation in defining characteristic, and ``max_order_degree`` the
exponent ``d`` in the bound ``max o(g) = O(q^d)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd

# Family symbol without rank -> does it carry a rank parameter?
CLASSICAL = ("A", "2A", "B", "C", "D", "2D")
EXCEPTIONAL = ("3D4", "E6", "2E6", "E7", "E8", "F4", "G2", "2B2", "2F4", "2G2")
FAMILIES = CLASSICAL + EXCEPTIONAL

# Least rank after removing small-rank coincidences with other families.
MIN_RANK = {"A": 1, "2A": 2, "B": 3, "C": 2, "D": 4, "2D": 4}
# Some tables also carry rows below those ranks.
MIN_RANK_LOOSE = {"A": 1, "2A": 1, "B": 1, "C": 1, "D": 2, "2D": 2}

_TAG = re.compile(r"^(2|3)?([A-G])_?(\d+)$")


class TagError(ValueError):
    pass


@dataclass(frozen=True)
class LieTypeTag:
    family: str
    rank: int

    @classmethod
    def parse(cls, text: str, strict: bool = True) -> "LieTypeTag":
        t = text.strip().replace("^", "").replace("_", "")
        m = _TAG.match(t)
        if not m:
            raise TagError(f"cannot parse Lie type tag {text!r}")
        twist, letter, rank = m.group(1) or "", m.group(2), int(m.group(3))
        fam = twist + letter
        if fam in CLASSICAL:
            return cls.make(fam, rank, strict=strict)
        full = fam + str(rank)
        if full not in EXCEPTIONAL:
            raise TagError(f"unknown Lie type {text!r}")
        return cls(full, rank)

    @classmethod
    def make(cls, family: str, rank: int | None = None, strict: bool = True) -> "LieTypeTag":
        if family in EXCEPTIONAL:
            return cls(family, int(family[-1]))
        if family not in CLASSICAL:
            raise TagError(f"unknown family {family!r}")
        if rank is None:
            raise TagError(f"{family} needs a rank")
        floor = (MIN_RANK if strict else MIN_RANK_LOOSE)[family]
        if rank < floor:
            raise TagError(f"{family}{rank}: rank must be at least {floor}")
        return cls(family, rank)

    @property
    def classical(self) -> bool:
        return self.family in CLASSICAL

    def __str__(self) -> str:
        return f"{self.family}{self.rank}" if self.classical else self.family


def _tag(x) -> LieTypeTag:
    return x if isinstance(x, LieTypeTag) else LieTypeTag.parse(x)


def law_degree(X, p: int) -> int:
    """``a(X, p)``; ``p`` only matters through its parity."""
    X = _tag(X)
    f, l = X.family, X.rank
    odd = p % 2 == 1
    if f in ("A", "2A"):
        return (l + 1) // 2
    if f == "B":
        return 2 * (l // 2) if (l >= 3 and odd) else l
    if f == "C":
        return l
    if f == "D":
        return l - 2 if (l >= 4 and l % 2 == 0 and odd) else l - 1
    if f == "2D":
        return 2 * (l // 2)
    return {"E6": 4, "2E6": 4, "E7": 7, "E8": 7, "F4": 4, "G2": 1,
            "3D4": 3, "2B2": 1, "2F4": 2, "2G2": 1}[f]


def projective_dim(X, p: int) -> int:
    """``n(X, p)``.

    The table lists ``B_l`` for odd ``p`` only; in characteristic 2 we return
    ``2l`` because ``B_l(2^k)`` and ``C_l(2^k)`` are isomorphic.
    """
    X = _tag(X)
    f, l = X.family, X.rank
    if f in ("A", "2A"):
        return l + 1
    if f == "B":
        if p == 2:
            return 2 * l
        return {1: 2, 2: 4}.get(l, 2 * l + 1)
    if f == "C":
        return 2 * l
    if f == "D":
        return 4 if l in (2, 3) else 2 * l
    if f == "2D":
        return {2: 2, 3: 4}.get(l, 2 * l)
    if f == "F4":
        return 25 if p == 3 else 26
    if f == "G2":
        return 6 if p == 2 else 7
    return {"E6": 27, "2E6": 27, "E7": 56, "E8": 248, "3D4": 8,
            "2B2": 4, "2F4": 26, "2G2": 7}[f]


def max_order_degree(X) -> int:
    """``d(X)``."""
    X = _tag(X)
    if X.classical:
        return X.rank
    return {"E6": 6, "2E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2,
            "3D4": 4, "2B2": 1, "2F4": 2, "2G2": 1}[X.family]


def torus_exponent(X, q: int) -> int:
    """``b(X, q)``: ``q+1`` for 2A and 2E6, ``q^3-1`` for 3D4, else ``q-1``."""
    X = _tag(X)
    if X.family in ("2A", "2E6"):
        return q + 1
    if X.family == "3D4":
        return q**3 - 1
    return q - 1


def field_degree_factor(X) -> int:
    """``c(X)``: 3 for 3D4, else 1."""
    return 3 if _tag(X).family == "3D4" else 1


# Short aliases matching the usual table names.
table_a = law_degree
table_n = projective_dim
table_d = max_order_degree
table_b = torus_exponent
table_c = field_degree_factor


# -- root systems ---------------------------------------------------------------


def root_system(kind: str, rank: int) -> list[tuple[Fraction, ...]]:
    """Roots of a classical root system in the usual Euclidean coordinates."""
    if kind == "A":
        n = rank + 1
        out = []
        for i, j in product(range(n), repeat=2):
            if i != j:
                v = [0] * n
                v[i], v[j] = 1, -1
                out.append(tuple(Fraction(x) for x in v))
        return out
    n = rank
    out = set()
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0] * n
            v[i], v[j] = si, sj
            out.add(tuple(Fraction(x) for x in v))
    for i in range(n):
        for s in (1, -1):
            if kind == "B":
                v = [0] * n
                v[i] = s
                out.add(tuple(Fraction(x) for x in v))
            elif kind == "C":
                v = [0] * n
                v[i] = 2 * s
                out.add(tuple(Fraction(x) for x in v))
    if kind not in ("B", "C", "D"):
        raise TagError(f"no root system for {kind}")
    return sorted(out)


def cartan_integer(alpha, beta) -> int:
    """Exponent of ``beta`` on the coroot of ``alpha``: ``2(a,b)/(a,a)``."""
    dot = sum(a * b for a, b in zip(alpha, beta))
    norm = sum(a * a for a in alpha)
    val = 2 * dot / norm
    assert val.denominator == 1
    return int(val)


def root_gcd(roots, beta) -> int:
    """``M(Phi, beta)``: gcd of the Cartan integers against every root."""
    g = 0
    for alpha in roots:
        g = gcd(g, cartan_integer(alpha, beta))
    return g


def root_gcd_sum(kind: str, rank: int) -> int:
    roots = root_system(kind, rank)
    return sum(root_gcd(roots, b) for b in roots)


# -- measured maximal-order constants ----------------------------------------------

# Smallest integer K with max o(g) <= K q^d(X) on every enumerated simple
# group X(q) listed in the note.  Regenerated by tests/test_lawkit.py.
MAX_ORDER_CONSTANT = {
    "A1": (2, "PSL(2,q), q in 2..13: worst ratio 3/2 at q=2"),
    "A2": (2, "PSL(3,q), q in 2..4: worst ratio 7/4 at q=2"),
    "2A2": (2, "PSU(3,q), q in 2..3: worst ratio 4/3 at q=3"),
    "C2": (2, "PSp(4,q), q in 2..3: worst ratio 3/2 at q=2"),
}


def max_order_constant(X) -> int:
    key = str(_tag(X))
    if key not in MAX_ORDER_CONSTANT:
        raise TagError(f"no measured maximal-order constant for {key}")
    return MAX_ORDER_CONSTANT[key][0]
