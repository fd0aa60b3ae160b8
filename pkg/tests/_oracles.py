"""Independent brute-force oracles used to freeze expected values.

Nothing here imports the package: fields are rebuilt from explicit moduli and
matrix groups are found by scanning every n x n matrix.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

import numpy as np

# Explicit irreducible moduli, low degree first: coefficients of 1, t, t^2, ...
MODULI = {
    4: (2, [1, 1, 1]),
    8: (2, [1, 1, 0, 1]),
    9: (3, [1, 0, 1]),
    16: (2, [1, 1, 0, 0, 1]),
    25: (5, [2, 0, 1]),
}


def field_tables(q: int):
    """``(add, mul)`` tables for GF(q), elements encoded in base ``p``."""
    if q in MODULI:
        p, mod = MODULI[q]
        k = len(mod) - 1
    else:
        p, k, mod = q, 1, None

    def digits(a):
        return [(a // p**i) % p for i in range(k)]

    def undigits(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    def mul(a, b):
        if k == 1:
            return a * b % p
        prod_ = [0] * (2 * k - 1)
        for i, x in enumerate(digits(a)):
            for j, y in enumerate(digits(b)):
                prod_[i + j] = (prod_[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod_[d]
            if c:
                for i in range(k + 1):
                    prod_[d - k + i] = (prod_[d - k + i] - c * mod[i]) % p
        return undigits(prod_[:k])

    add = np.array([[undigits([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)]
                    for a in range(q)], dtype=np.int64)
    mult = np.array([[mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    return add, mult


class _Arith:
    def __init__(self, q):
        self.q = q
        self.add_t, self.mul_t = field_tables(q)
        self.neg_t = np.array([int(np.flatnonzero(self.add_t[a] == 0)[0]) for a in range(q)])

    def add(self, a, b):
        return self.add_t[a, b]

    def mul(self, a, b):
        return self.mul_t[a, b]

    def matmul(self, A, B):
        n = A.shape[-1]
        out = np.zeros_like(A)
        for i in range(n):
            for j in range(n):
                acc = np.zeros(A.shape[0], dtype=np.int64)
                for k in range(n):
                    acc = self.add(acc, self.mul(A[:, i, k], B[:, k, j]))
                out[:, i, j] = acc
        return out

    def det(self, A):
        n = A.shape[-1]
        total = np.zeros(A.shape[0], dtype=np.int64)
        for perm in permutations(range(n)):
            term = np.ones(A.shape[0], dtype=np.int64)
            for i in range(n):
                term = self.mul(term, A[:, i, perm[i]])
            inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            if inversions % 2:
                term = self.neg_t[term]
            total = self.add(total, term)
        return total


def special_linear_brute(n: int, q: int) -> np.ndarray:
    """Every matrix of determinant 1, found by scanning all ``q^(n^2)`` matrices."""
    ar = _Arith(q)
    chunks = []
    total = q ** (n * n)
    step = 1 << 18
    for s in range(0, total, step):
        idx = np.arange(s, min(total, s + step), dtype=np.int64)
        mats = np.stack([(idx // q**k) % q for k in range(n * n)], axis=1).reshape(-1, n, n)
        chunks.append(mats[ar.det(mats) == 1])
    return np.concatenate(chunks)


def sl_power_density(n: int, q: int, b: int) -> Fraction:
    """Fraction of SL(n, q) elements with ``g^b = I``, by brute force."""
    ar = _Arith(q)
    mats = special_linear_brute(n, q)
    acc = np.broadcast_to(np.eye(n, dtype=np.int64), mats.shape).copy()
    for _ in range(b):
        acc = ar.matmul(acc, mats)
    hits = int((acc == np.eye(n, dtype=np.int64)).all(axis=(1, 2)).sum())
    return Fraction(hits, len(mats))


def cyclic_tuple_inclusion_exclusion(n: int) -> int:
    """Closed form for ``d = 3``: ``n^2 - 3n + 2 #{c : 3c = 0 mod n}``."""
    return n * n - 3 * n + 2 * sum(1 for c in range(n) if (3 * c) % n == 0)


def cyclic_tuple_python(n: int, d: int) -> int:
    return sum(1 for t in product(range(n), repeat=d) if sum(t) % n == 0 and len(set(t)) == d)
