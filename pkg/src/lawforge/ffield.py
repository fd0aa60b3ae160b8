"""Finite fields GF(p^k) with integer-encoded elements.

An element is the integer ``c0 + c1*p + ... + c_{k-1}*p^(k-1)`` encoding the
residue polynomial ``c0 + c1 t + ...`` modulo the field's defining polynomial.
Multiplication goes through discrete log / exp tables built once per field,
and :class:`FieldArrays` gives the same arithmetic on numpy arrays.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np
import sympy

from .config import CapExceeded, get_caps

# -- polynomials over GF(p), coefficient lists low degree first -----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_mulmod(a, b, m, p):
    return _poly_mod(_poly_mul(a, b, p), m, p)


def _poly_powmod(a, e, m, p):
    result = [1]
    base = _poly_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Rabin-style test: ``gcd(f, t^(p^i) - t) = 1`` for ``1 <= i <= deg/2``."""
    poly = _trim([c % p for c in poly])
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    # A root in GF(p) means a linear factor.
    for a in range(p):
        if sum(c * pow(a, i, p) for i, c in enumerate(poly)) % p == 0:
            return False
    t = [0, 1]
    power = t
    for _ in range(1, k // 2 + 1):
        power = _poly_powmod(power, p, poly, p)
        if len(_poly_gcd(poly, _poly_sub(power, t, p), p)) > 1:
            return False
    return True


def lex_smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``k``, least when compared ``(c0, c1, ...)``."""
    # For k > 1 a zero constant term means t divides the polynomial.
    first = range(1, p) if k > 1 else range(p)
    for c0 in first:
        for rest in product(range(p), repeat=k - 1):
            poly = [c0, *rest, 1]
            if is_irreducible(poly, p):
                return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- the field --------------------------------------------------------------


class Field:
    """GF(p^k) defined by the lexicographically least monic irreducible."""

    def __init__(self, p: int, k: int = 1):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        q = p**k
        if q > get_caps().field_order:
            raise CapExceeded(f"field order {q} exceeds cap {get_caps().field_order}")
        self.p, self.k, self.q = p, k, q
        self.modulus = lex_smallest_irreducible(p, k)
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k}; modulus={self.modulus_str()})"

    __str__ = __repr__

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.k, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
        return "+".join(terms)

    # -- encoding -----------------------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.k:
            cs = _poly_mod(cs, list(self.modulus), self.p)
        v = 0
        for c in reversed(cs):
            v = v * self.p + c % self.p
        return v

    def lex_key(self, a: int) -> tuple[int, ...]:
        """Sort key comparing coefficients low degree first."""
        return tuple(self.coeffs(a))

    def format(self, a: int) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs(a)) + "]"

    def elements(self) -> range:
        return range(self.q)

    def elements_lex(self) -> list[int]:
        return [self.from_coeffs(c) for c in product(range(self.p), repeat=self.k)]

    # -- tables -------------------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        m = list(self.modulus)
        return self.from_coeffs(_poly_mulmod(self.coeffs(a), self.coeffs(b), m, self.p))

    def _slow_pow(self, a: int, e: int) -> int:
        if self.k == 1:
            return pow(a, e, self.p)
        m = list(self.modulus)
        return self.from_coeffs(_poly_powmod(self.coeffs(a), e, m, self.p))

    def _mul_const_vec(self, xs: np.ndarray, c: int) -> np.ndarray:
        """Multiply an array of elements by the constant ``c`` (a linear map)."""
        p, k = self.p, self.k
        if k == 1:
            return xs * c % p
        place = p ** np.arange(k, dtype=np.int64)
        digits = (xs[:, None] // place) % p
        basis = np.array(
            [self.coeffs(self._slow_mul(p**i, c)) for i in range(k)], dtype=np.int64
        )
        return ((digits @ basis) % p) @ place

    def _build_tables(self) -> None:
        q = self.q
        if q == 2:
            self.primitive = 1
        else:
            primes = list(sympy.factorint(q - 1))
            for a in self.elements_lex():
                if a == 0:
                    continue
                if all(self._slow_pow(a, (q - 1) // r) != 1 for r in primes):
                    self.primitive = a
                    break
        # Powers of the primitive element by doubling: g^[n, 2n) = g^[0, n) * g^n.
        powers = np.ones(1, dtype=np.int64)
        step = self.primitive
        while len(powers) < q - 1:
            powers = np.concatenate([powers, self._mul_const_vec(powers, step)])
            step = self._slow_mul(step, step)
        powers = powers[: q - 1]
        log_arr = np.zeros(q, dtype=np.int64)
        log_arr[powers] = np.arange(q - 1)
        exp = powers.tolist() * 2
        log = log_arr.tolist()
        self._exp = exp
        self._log = log
        self._arrays: FieldArrays | None = None

    # -- scalar arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        if p == 2:
            return a
        out, place = 0, 1
        while a:
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, r: int = 1) -> int:
        """``a^(p^r)``."""
        return self.pow(a, self.p ** (r % self.k))

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def mult_order(self, a: int) -> int:
        from math import gcd

        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def least_nonsquare(self) -> int:
        for a in self.elements_lex():
            if not self.is_square(a):
                return a
        raise ValueError(f"every element of {self} is a square")

    def subfield_elements(self, d: int) -> list[int]:
        """Elements of the subfield GF(p^d), ``d`` dividing ``k``."""
        if self.k % d:
            raise ValueError(f"GF({self.p}^{d}) is not a subfield of {self}")
        return [a for a in range(self.q) if self.frobenius(a, d) == a]

    @property
    def arrays(self) -> "FieldArrays":
        if self._arrays is None:
            self._arrays = FieldArrays(self)
        return self._arrays


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> Field:
    """Cached constructor; the same ``(p, k)`` always yields the same field."""
    return Field(p, k)


def field_of_order(q: int) -> Field:
    f = sympy.factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, k),) = f.items()
    return field_make(p, k)


def primitive_element(f: Field) -> int:
    return f.primitive


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(sympy.factorint(q)) == 1


class FieldArrays:
    """Vectorised arithmetic on integer arrays of field elements."""

    def __init__(self, field: Field):
        self.field = field
        q, p = field.q, field.p
        self.prime = field.k == 1
        self.dtype = np.int64
        log = np.array(field._log, dtype=np.int64)
        exp = np.array(field._exp, dtype=np.int64)
        self.log_table = log
        self.exp_table = exp
        if not self.prime:
            elems = np.arange(q)
            if q * q > 1 << 22:
                raise CapExceeded(f"array tables for GF({q}) would be too large")
            digits = np.stack([(elems // p**i) % p for i in range(field.k)], axis=1)
            place = p ** np.arange(field.k)
            s = (digits[:, None, :] + digits[None, :, :]) % p
            self.add_table = (s * place).sum(axis=2).astype(np.int64)
            self.neg_table = ((-digits % p) * place).sum(axis=1).astype(np.int64)
            a = elems[:, None]
            b = elems[None, :]
            la, lb = log[a], log[b]
            prod = exp[(la + lb) % (q - 1)]
            self.mul_table = np.where((a == 0) | (b == 0), 0, prod).astype(np.int64)
        self.inv_table = np.array([0] + [field.inv(a) for a in range(1, q)], dtype=np.int64)

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.field.p
        if self.field.p == 2:
            return np.bitwise_xor(a, b)
        return self.add_table[a, b]

    def neg(self, a):
        if self.prime:
            return (-a) % self.field.p
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.field.p
        return self.mul_table[a, b]

    def pow_scalar(self, a, e: int):
        """Elementwise ``a^e`` for a fixed integer ``e >= 0``."""
        q = self.field.q
        a = np.asarray(a)
        out = self.exp_table[(self.log_table[a] * e) % (q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def frobenius(self, a, r: int = 1):
        return self.pow_scalar(a, self.field.p ** (r % self.field.k))

    def sum(self, a, axis: int):
        """Field sum along an axis."""
        if self.prime:
            return a.sum(axis=axis) % self.field.p
        if self.field.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        acc = a[0]
        for i in range(1, a.shape[0]):
            acc = self.add_table[acc, a[i]]
        return acc

    def matmul(self, A, B):
        """Batched matrix product over the field for arrays ``(..., n, n)``."""
        if self.prime:
            return np.matmul(A, B) % self.field.p
        prod = self.mul_table[A[..., :, :, None], B[..., None, :, :]]
        return self.sum(prod, axis=-2)

    def det(self, A):
        """Batched determinant by the Leibniz formula (small ``n`` only)."""
        from itertools import permutations

        n = A.shape[-1]
        if n == 0:
            return np.ones(A.shape[:-2], dtype=np.int64)
        total = None
        for perm in permutations(range(n)):
            term = A[..., 0, perm[0]]
            for i in range(1, n):
                term = self.mul(term, A[..., i, perm[i]])
            if _perm_sign(perm) < 0:
                term = self.neg(term)
            total = term if total is None else self.add(total, term)
        return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
