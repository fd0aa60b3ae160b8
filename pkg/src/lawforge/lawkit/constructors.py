"""Law constructors: combining words so that vanishing sets only grow."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, islice
from typing import Any

from ..config import CapExceeded, get_caps
from ..freeword import (X, Y, Word, commutator, commute, cyclic_permutation, cyclic_reduce,
                        enumerate_reduced, power, substitute)
from .tables import LieTypeTag, max_order_constant, max_order_degree


class TrivialWordError(ValueError):
    """A constructor received the empty word."""


@dataclass(frozen=True)
class LawRecipe:
    constructor: str
    params: dict
    word: Word
    claimed_bound: int
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def length(self) -> int:
        return self.word.length

    def to_dict(self) -> dict[str, Any]:
        return {
            "constructor": self.constructor,
            "params": dict(self.params),
            "word": str(self.word),
            "length": self.length,
            "claimed_bound": self.claimed_bound,
            "notes": list(self.notes),
        }


def _conjugators():
    first = [X, Y, X * Y, Y * X, ~X * Y]
    seen = set(first)
    rest = (w for w in enumerate_reduced(64) if w not in seen)
    return chain(first, rest)


def _combine_pair(u: Word, v: Word) -> Word:
    # [u, t v t^-1] is trivial at (g, h) whenever u or v is; pick the first
    # conjugator that keeps it non-trivial in the free group.
    for t in islice(_conjugators(), 10_000):
        w = commutator(u, t * v * ~t)
        if w:
            return w
    raise AssertionError(f"no conjugator separates {u} and {v}")


def union_combine(ws) -> Word:
    """One word whose vanishing set contains that of every input.

    Inputs are folded pairwise along a balanced binary tree, left half first,
    so three inputs combine as ``c(c(w1, w2), w3)``.  The result is at most
    ``16 m^2 max|w_i|`` long; exceeding that raises ``AssertionError``.
    """
    ws = list(ws)
    if not ws:
        raise ValueError("union_combine needs at least one word")
    for w in ws:
        if not isinstance(w, Word):
            raise TypeError(f"expected Word, got {type(w).__name__}")
        if not w:
            raise TrivialWordError("input words must be non-trivial")

    def fold(items):
        if len(items) == 1:
            return items[0]
        mid = (len(items) + 1) // 2
        return _combine_pair(fold(items[:mid]), fold(items[mid:]))

    out = fold(ws)
    m = len(ws)
    bound = 16 * m * m * max(w.length for w in ws)
    if out.length > bound:
        raise AssertionError(f"combined length {out.length} exceeds 16 m^2 max|w_i| = {bound}")
    return out


def product_law(ws) -> Word:
    """Law for a direct product from laws of the factors (same construction)."""
    return union_combine(ws)


def extension_combine(w_kernel: Word, w_quotient: Word) -> Word:
    """Law for an extension N.Q from a law of N and a law of Q.

    Both inputs are cyclically reduced first.  If the quotient law is a
    power ``x^k`` or ``y^k``, substitute ``x -> x^k, y -> y^k`` into the
    kernel law.  Otherwise substitute ``x -> w_Q, y -> w_Q'`` where ``w_Q'``
    is the first rotation of ``w_Q`` that does not commute with it.
    """
    if not w_kernel or not w_quotient:
        raise TrivialWordError("input words must be non-trivial")
    wn, _ = cyclic_reduce(w_kernel)
    wq, _ = cyclic_reduce(w_quotient)
    if wq.is_basis_power():
        k = wq.blocks[0][1]
        out = substitute(wn, X ** k, Y ** k)
    else:
        rotated = next(
            (r for r in (cyclic_permutation(wq, k) for k in range(1, wq.length)) if not commute(wq, r)),
            None,
        )
        if rotated is None:
            raise AssertionError(f"every rotation of {wq} commutes with it")
        out = substitute(wn, wq, rotated)
    if not out:
        raise AssertionError("extension word reduced to the identity")
    if out.length > wn.length * wq.length:
        raise AssertionError("extension word exceeds the product length bound")
    return out


def solvable_law(d: int) -> Word:
    """Law for soluble groups of derived length at most ``d``; length ``4^d``."""
    if d < 1:
        raise ValueError("derived length must be at least 1")
    w = commutator(X, Y)
    for _ in range(d - 1):
        w = extension_combine(commutator(X, Y), w)
    return w


def max_order_law(m: int) -> Word:
    """Law for every group whose element orders are all at most ``m``."""
    if m < 1:
        raise ValueError("m must be positive")
    return union_combine([X ** i for i in range(1, m + 1)])


def small_field_law(X_type, N: int) -> LawRecipe:
    """Law for ``X(q)`` at every prime power ``q <= N``.

    Uses the maximal-order law at ``K N^d(X)`` with ``K`` the measured
    constant from :data:`lawkit.tables.MAX_ORDER_CONSTANT`.
    """
    tag = X_type if isinstance(X_type, LieTypeTag) else LieTypeTag.parse(X_type)
    K = max_order_constant(tag)
    m = K * N ** max_order_degree(tag)
    bound = 16 * m**3
    cap = get_caps().word_length
    if bound > cap:
        raise CapExceeded(f"claimed length {bound} exceeds word-length cap {cap}")
    w = max_order_law(m)
    return LawRecipe("small_field_law", {"family": str(tag), "N": N, "K": K, "m": m}, w, bound,
                     (f"max_order_law({m})",))


def psl2_law(q: int) -> LawRecipe:
    """Union of ``x^(q-1)``, ``x^q`` and ``x^(q+1)``: a law for PSL(2, q)."""
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    w = union_combine([power(X, q - 1), power(X, q), power(X, q + 1)])
    if w.length > get_caps().word_length:
        raise CapExceeded("psl2 law exceeds word-length cap")
    return LawRecipe("psl2_law", {"q": q}, w, 144 * (q + 1),
                     ("union of x^(q-1), x^q, x^(q+1)",))


def solvable_recipe(d: int) -> LawRecipe:
    return LawRecipe("solvable_law", {"d": d}, solvable_law(d), 4**d)


def max_order_recipe(m: int) -> LawRecipe:
    return LawRecipe("max_order_law", {"m": m}, max_order_law(m), 16 * m**3)
