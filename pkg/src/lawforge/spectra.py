"""Element-order statistics and torus-density counts."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .config import CapExceeded, get_caps
from .groups import Group, MatrixGroup
from .lawkit.tables import torus_exponent


@dataclass
class SpectrumReport:
    group: str
    order: int
    census: dict[int, int]
    exponent_b: int | None = None
    e_g_count: int | None = None
    regular_count: int | None = None

    @property
    def max_order(self) -> int:
        return max(self.census)

    @property
    def e_g_density(self) -> Fraction | None:
        if self.e_g_count is None:
            return None
        return Fraction(self.e_g_count, self.order)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["order", "count"])
        for o in sorted(self.census):
            writer.writerow([o, self.census[o]])
        return buf.getvalue()

    def summary(self) -> dict:
        d = {
            "group": self.group,
            "order": self.order,
            "census": {str(k): v for k, v in sorted(self.census.items())},
            "max_order": self.max_order,
        }
        if self.exponent_b is not None:
            d["b"] = self.exponent_b
            d["e_g_count"] = self.e_g_count
            dens = self.e_g_density
            d["e_g_density"] = f"{dens.numerator}/{dens.denominator}"
        if self.regular_count is not None:
            d["regular_count"] = self.regular_count
        return d

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)


def element_orders(group: Group) -> np.ndarray:
    """Order of every element, in ``elements()`` order."""
    n = group.order()
    if n > get_caps().enumeration:
        raise CapExceeded(f"|{group.name}| = {n} exceeds enumeration cap")
    if group.has_batch:
        return group.batch_orders(group.elements_array())
    return np.array([group.element_order(g) for g in group.elements()], dtype=np.int64)


def order_census(group: Group, family=None, q: int | None = None, regular: bool = False) -> SpectrumReport:
    """Exact order census; with ``family`` and ``q`` also ``|E_G|`` for ``b(X, q)``."""
    orders = element_orders(group)
    census = {int(k): int(v) for k, v in sorted(Counter(orders.tolist()).items())}
    rep = SpectrumReport(group.name, group.order(), census)
    if family is not None:
        if q is None:
            raise ValueError("q is required with a family tag")
        b = torus_exponent(family, q)
        rep.exponent_b = b
        rep.e_g_count = sum(c for o, c in census.items() if b % o == 0)
    if regular:
        rep.regular_count = regular_diagonalizable_census(group)
    return rep


def e_g_density(group: Group, family, q: int) -> Fraction:
    """Exact fraction of elements whose order divides ``b(X, q)``."""
    return order_census(group, family, q).e_g_density


def _eigen_candidates(group: MatrixGroup) -> list[int]:
    F = group.field
    if group.unitary:
        # (q+1)-th roots of unity inside GF(q^2)^*.
        return [a for a in range(1, F.q) if F.pow(a, group.q + 1) == 1]
    return list(range(1, F.q))


def regular_diagonalizable_census(group: Group) -> int:
    """Elements with ``n`` pairwise distinct eigenvalues in the torus field.

    Eigenvalues are searched in GF(q)^* for linear kinds and among the
    (q+1)-th roots of unity in GF(q^2) for unitary kinds.  A degree ``n``
    characteristic polynomial with ``n`` distinct roots there means the
    element is diagonalizable with distinct diagonal entries.
    """
    if not isinstance(group, MatrixGroup):
        raise TypeError("regular census needs a matrix backend")
    if group.n > 4:
        raise ValueError("regular census is limited to n <= 4")
    arr = group.elements_array()
    A = group.field.arrays
    n = group.n
    eye = np.eye(n, dtype=np.int64)
    roots = np.zeros(len(arr), dtype=np.int64)
    for lam in _eigen_candidates(group):
        shifted = A.sub(arr, lam * eye)
        roots += A.det(shifted) == 0
    return int((roots == n).sum())


def diagonal_regular_elements(group: MatrixGroup) -> list[tuple]:
    """Diagonal elements of ``group`` with pairwise distinct diagonal entries."""
    n = group.n
    out = []
    for diag in product(_eigen_candidates(group), repeat=n):
        if len(set(diag)) != n:
            continue
        m = tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n))
        if group.contains(m):
            out.append(m)
    return out


def centralizer_census(group: Group, g) -> int:
    """``|C_G(g)|`` by brute force."""
    if group.has_batch:
        arr = group.elements_array()
        gb = np.broadcast_to(np.asarray(g).reshape(arr.shape[1:]), arr.shape)
        left = group.batch_mul(gb, arr)
        right = group.batch_mul(arr, gb)
        same = (left == right).reshape(len(arr), -1).all(axis=1)
        return int(same.sum())
    return sum(1 for h in group.elements() if group.mul(g, h) == group.mul(h, g))


def cyclic_tuple_count(n: int, d: int, budget: int = 50_000_000) -> tuple[int, int]:
    """Tuples of ``d`` distinct residues mod ``n`` summing to zero.

    Returns ``(exact, bound)`` with ``bound = (n - d(d-1)/2) n^(d-2)``.  The
    exact count is a brute-force scan of ``(Z/n)^(d-1)``; the last entry is
    forced by the sum.
    """
    if d < 3:
        raise ValueError("d must be at least 3")
    if n ** (d - 1) > budget:
        raise CapExceeded(f"{n}^{d - 1} tuples exceed the budget")
    grids = np.meshgrid(*[np.arange(n)] * (d - 1), indexing="ij")
    cols = [g.ravel() for g in grids]
    cols.append((-sum(cols)) % n)
    distinct = np.ones(len(cols[0]), dtype=bool)
    for i in range(d):
        for j in range(i + 1, d):
            distinct &= cols[i] != cols[j]
    exact = int(distinct.sum())
    bound = (n - d * (d - 1) // 2) * n ** (d - 2)
    if bound >= 0 and exact < bound:
        raise AssertionError(f"count {exact} below bound {bound} for n={n}, d={d}")
    return exact, bound


def torus_density_bound(n: int) -> Fraction:
    """``1 / (2 n!)``: the density floor for SL(n, q) once ``q`` is large enough."""
    from math import factorial

    return Fraction(1, 2 * factorial(n))


def density_hypothesis_holds(n: int, q: int) -> bool:
    """``q - 1 >= 2 * sum over roots of M(Phi, beta)`` for the A_{n-1} system."""
    from .lawkit.tables import root_gcd_sum

    return q - 1 >= 2 * root_gcd_sum("A", n - 1)


__all__ = [
    "SpectrumReport", "centralizer_census", "cyclic_tuple_count", "density_hypothesis_holds",
    "diagonal_regular_elements", "e_g_density", "element_orders", "order_census",
    "regular_diagonalizable_census", "torus_density_bound",
]
