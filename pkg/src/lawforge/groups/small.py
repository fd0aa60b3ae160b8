"""Cyclic, permutation and direct-product backends."""

from __future__ import annotations

from itertools import permutations
from math import factorial, gcd, prod

import numpy as np

from ..config import CapExceeded, get_caps
from .base import Group, GroupError


class CyclicGroup(Group):
    """``C_n`` written additively on residues ``0..n-1``."""

    has_batch = True

    def __init__(self, n: int):
        if n < 1:
            raise GroupError(f"cyclic group order must be positive, got {n}")
        self.n = n
        self.name = f"C({n})"

    def identity(self) -> int:
        return 0

    def mul(self, a, b) -> int:
        return (a + b) % self.n

    def inv(self, a) -> int:
        return (-a) % self.n

    def power(self, g, e: int) -> int:
        return (g * e) % self.n

    def order(self) -> int:
        return self.n

    def _declared_order(self) -> int:
        return self.n

    def _enumerate(self):
        return range(self.n)

    def contains(self, g) -> bool:
        return isinstance(g, (int, np.integer)) and 0 <= g < self.n

    def element_order(self, g) -> int:
        return self.n // gcd(g, self.n)

    def random_element(self, rng) -> int:
        return int(rng.integers(self.n))

    def cayley_table(self) -> np.ndarray:
        r = np.arange(self.n, dtype=np.int32)
        return ((r[:, None] + r[None, :]) % self.n).astype(np.int32)

    def elements_array(self):
        return np.arange(self.n, dtype=np.int64)

    def batch_mul(self, a, b):
        return (a + b) % self.n

    def batch_is_identity(self, a):
        return a == 0

    def batch_identity(self, count):
        return np.zeros(count, dtype=np.int64)


def _compose(a: tuple, b: tuple) -> tuple:
    # Right action: i^(ab) = (i^a)^b.
    return tuple(b[i] for i in a)


def cycles_to_perm(degree: int, cycles) -> tuple[int, ...]:
    """Build an image tuple from 0-based cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
    img = list(range(degree))
    for cyc in cycles:
        for i, a in enumerate(cyc):
            img[a] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def perm_cycles(p: tuple) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def perm_sign(p: tuple) -> int:
    return -1 if sum(len(c) - 1 for c in perm_cycles(p)) % 2 else 1


class PermutationGroup(Group):
    """A permutation group on ``0..degree-1`` with elements as image tuples.

    Products act on the right: ``(a*b)[i] = b[a[i]]``, so ``(0 1)*(1 2)``
    maps 0 to 2.
    """

    has_batch = True

    def __init__(self, degree: int, gens=None, name: str | None = None):
        self.degree = degree
        self.gens = [tuple(g) for g in (gens or [])]
        for g in self.gens:
            if sorted(g) != list(range(degree)):
                raise GroupError(f"{g} is not a permutation of {degree} points")
        self.name = name or f"Perm({degree})"

    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        return _compose(a, b)

    def inv(self, a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def _enumerate(self):
        return self.closure(self.gens)

    def contains(self, g) -> bool:
        return g in self.element_index

    def element_order(self, g) -> int:
        from math import lcm

        return lcm(*(len(c) for c in perm_cycles(g))) if perm_cycles(g) else 1

    def format_element(self, g) -> str:
        cycles = perm_cycles(g)
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i) for i in c) + ")" for c in cycles)

    def cayley_table(self) -> np.ndarray:
        arr = self.elements_array()
        n = len(arr)
        codes = self._codes(arr)
        order = np.argsort(codes)
        sorted_codes = codes[order]
        table = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            prod_ = self.batch_mul(np.broadcast_to(arr[i], arr.shape), arr)
            table[i] = order[np.searchsorted(sorted_codes, self._codes(prod_))]
        return table

    def _codes(self, arr: np.ndarray) -> np.ndarray:
        d = self.degree
        if d ** d >= 2**62:
            raise CapExceeded("permutation degree too large for integer codes")
        weights = d ** np.arange(d, dtype=np.int64)
        return arr.astype(np.int64) @ weights

    def elements_array(self) -> np.ndarray:
        arr = self.__dict__.get("_arr")
        if arr is None:
            arr = np.array(self.elements(), dtype=np.int64).reshape(-1, self.degree)
            self.__dict__["_arr"] = arr
        return arr

    def batch_mul(self, a, b):
        return np.take_along_axis(b, a, axis=1)

    def batch_is_identity(self, a):
        return (a == np.arange(self.degree)).all(axis=1)

    def batch_identity(self, count):
        return np.broadcast_to(np.arange(self.degree), (count, self.degree)).copy()


class SymmetricGroup(PermutationGroup):
    def __init__(self, n: int):
        if n < 1:
            raise GroupError("degree must be positive")
        gens = []
        if n > 1:
            gens = [cycles_to_perm(n, [(0, 1)]), cycles_to_perm(n, [tuple(range(n))])]
        super().__init__(n, gens, name=f"Sym({n})")

    def _declared_order(self) -> int:
        return factorial(self.degree)

    def order(self) -> int:
        return factorial(self.degree)

    def _enumerate(self):
        return permutations(range(self.degree))

    def contains(self, g) -> bool:
        return sorted(g) == list(range(self.degree))

    def random_element(self, rng):
        # numpy's permutation is a Fisher-Yates shuffle.
        return tuple(int(i) for i in rng.permutation(self.degree))


class AlternatingGroup(PermutationGroup):
    def __init__(self, n: int):
        if n < 1:
            raise GroupError("degree must be positive")
        gens = [cycles_to_perm(n, [(0, i, i + 1)]) for i in range(1, n - 1)]
        super().__init__(n, gens, name=f"Alt({n})")

    def _declared_order(self) -> int:
        return max(1, factorial(self.degree) // 2)

    def order(self) -> int:
        return self._declared_order()

    def _enumerate(self):
        return (p for p in permutations(range(self.degree)) if perm_sign(p) == 1)

    def contains(self, g) -> bool:
        return sorted(g) == list(range(self.degree)) and perm_sign(g) == 1

    def random_element(self, rng):
        while True:
            p = tuple(int(i) for i in rng.permutation(self.degree))
            if perm_sign(p) == 1:
                return p


def dihedral_group(n: int) -> PermutationGroup:
    """Symmetries of an ``n``-gon, order ``2n`` (``n >= 3``)."""
    rot = cycles_to_perm(n, [tuple(range(n))])
    ref = tuple((-i) % n for i in range(n))
    return PermutationGroup(n, [rot, ref], name=f"D({2 * n})")


def frobenius_group(p: int, k: int) -> PermutationGroup:
    """``C_p`` semidirect ``C_k`` acting by ``x -> a x + b`` on ``Z/p``, ``k | p-1``."""
    if (p - 1) % k:
        raise GroupError(f"{k} does not divide {p}-1")
    # Generator of the order-k subgroup of (Z/p)^*.
    a = next(a for a in range(2, p) if pow(a, k, p) == 1 and all(pow(a, j, p) != 1 for j in range(1, k)))
    shift = tuple((i + 1) % p for i in range(p))
    scale = tuple((a * i) % p for i in range(p))
    return PermutationGroup(p, [shift, scale], name=f"Frob({p},{k})")


def wreath_cyclic(n: int, k: int) -> PermutationGroup:
    """``C_n wr C_k`` in its imprimitive action on ``n*k`` points."""
    deg = n * k
    base = cycles_to_perm(deg, [tuple(range(n))])
    blocks = cycles_to_perm(deg, [tuple(i + j * n for j in range(k)) for i in range(n)])
    return PermutationGroup(deg, [base, blocks], name=f"Wr({n},{k})")


class ProductGroup(Group):
    """Direct product; elements are tuples of component elements."""

    def __init__(self, factors):
        factors = list(factors)
        if not factors:
            raise GroupError("a product needs at least one factor")
        self.factors = factors
        self.name = "x".join(f.name for f in factors)

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def power(self, g, e):
        return tuple(f.power(x, e) for f, x in zip(self.factors, g))

    def order(self) -> int:
        return prod(f.order() for f in self.factors)

    def _declared_order(self) -> int:
        return self.order()

    def _enumerate(self):
        from itertools import product

        return product(*(f.elements() for f in self.factors))

    def contains(self, g) -> bool:
        return len(g) == len(self.factors) and all(f.contains(x) for f, x in zip(self.factors, g))

    def element_order(self, g) -> int:
        from math import lcm

        return lcm(*(f.element_order(x) for f, x in zip(self.factors, g)))

    def random_element(self, rng):
        return tuple(f.random_element(rng) for f in self.factors)

    def format_element(self, g) -> str:
        return "(" + ", ".join(f.format_element(x) for f, x in zip(self.factors, g)) + ")"

    def cayley_table(self) -> np.ndarray:
        n = self.order()
        if n > get_caps().table:
            raise CapExceeded(f"|{self.name}| = {n} exceeds Cayley table cap")
        # elements() is the lexicographic product of factor enumerations, so
        # the index of (i1, ..., ik) is mixed radix.
        table = np.zeros((1, 1), dtype=np.int64)
        for f in self.factors:
            ft = f.indexed().table.astype(np.int64)
            m = ft.shape[0]
            table = (table[:, None, :, None] * m + ft[None, :, None, :]).reshape(
                table.shape[0] * m, table.shape[1] * m
            )
        return table.astype(np.int32)
