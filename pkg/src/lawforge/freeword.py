"""Reduced words in the free group F(x, y).

Words are stored as run-length blocks ``(gen, exp)`` with ``gen`` in ``{0, 1}``
(``0`` is ``x``, ``1`` is ``y``) and ``exp`` a nonzero integer; adjacent blocks
always have different generators.  A power such as ``x^(q+1)`` therefore costs
one block no matter how large ``q`` is.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

GENERATORS = ("x", "y")

# Letter alphabet in enumeration order: x, x^-1, y, y^-1.
ALPHABET = ((0, 1), (0, -1), (1, 1), (1, -1))

_TOKEN = re.compile(r"^([xyXY])(?:\^(-?\d+))?$")


class Word:
    """An immutable freely reduced word in F(x, y)."""

    __slots__ = ("_blocks", "_length", "_hash")

    def __init__(self, blocks: Iterable[tuple[int, int]] = ()):
        out: list[list[int]] = []
        for gen, exp in blocks:
            gen, exp = int(gen), int(exp)
            if gen not in (0, 1):
                raise ValueError(f"generator index must be 0 or 1, got {gen}")
            if exp == 0:
                continue
            if out and out[-1][0] == gen:
                out[-1][1] += exp
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([gen, exp])
        self._blocks = tuple((g, e) for g, e in out)
        self._length = sum(abs(e) for _, e in self._blocks)
        self._hash = hash(self._blocks)

    # -- basic protocol -------------------------------------------------

    @property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        return self._blocks

    def __len__(self) -> int:
        return self._length

    @property
    def length(self) -> int:
        return self._length

    def is_identity(self) -> bool:
        return not self._blocks

    def __bool__(self) -> bool:
        return bool(self._blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        if not self._blocks:
            return "1"
        parts = []
        for g, e in self._blocks:
            name = GENERATORS[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, e: int) -> "Word":
        if e < 0:
            return power(invert(self), -e)
        return power(self, e)

    def letters(self) -> Iterator[tuple[int, int]]:
        """Yield the flat letter sequence as ``(gen, +-1)`` pairs."""
        for g, e in self._blocks:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s

    def letter_string(self) -> str:
        """Compact form with capitals for inverses, e.g. ``xyXY``."""
        return "".join(
            (GENERATORS[g] if s > 0 else GENERATORS[g].upper()) for g, s in self.letters()
        )

    def is_cyclically_reduced(self) -> bool:
        b = self._blocks
        if len(b) < 2 or b[0][0] != b[-1][0]:
            return True
        return (b[0][1] > 0) == (b[-1][1] > 0)

    def is_basis_power(self) -> bool:
        """True for a nontrivial power of a single generator."""
        return len(self._blocks) == 1

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse the serialization ``"x^3 y^-1 x"``; ``"1"`` or ``""`` is the identity.

        Capital letters are accepted as inverses (``X`` is ``x^-1``), so the
        compact ``"xyXY"`` form also parses.
        """
        text = text.strip()
        if text in ("", "1"):
            return IDENTITY
        blocks = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if m is None:
                if re.fullmatch(r"[xyXY]+", tok):
                    blocks.extend(_letter_blocks(tok))
                    continue
                raise ValueError(f"cannot parse word token {tok!r}")
            letter, exp = m.group(1), m.group(2)
            e = int(exp) if exp is not None else 1
            if letter.isupper():
                e = -e
            blocks.append((GENERATORS.index(letter.lower()), e))
        return cls(blocks)


def _letter_blocks(letters: str) -> list[tuple[int, int]]:
    return [(GENERATORS.index(c.lower()), -1 if c.isupper() else 1) for c in letters]


IDENTITY = Word()
X = Word([(0, 1)])
Y = Word([(1, 1)])


def _coerce_letter(letter) -> tuple[int, int]:
    if isinstance(letter, str):
        if letter in ("x", "y"):
            return GENERATORS.index(letter), 1
        if letter in ("X", "Y"):
            return GENERATORS.index(letter.lower()), -1
        m = _TOKEN.match(letter)
        if m and m.group(2) in ("1", "-1"):
            e = int(m.group(2))
            g = GENERATORS.index(m.group(1).lower())
            return g, -e if m.group(1).isupper() else e
        raise ValueError(f"not a letter: {letter!r}")
    g, s = letter
    if s not in (1, -1):
        raise ValueError(f"letter exponent must be +-1, got {s}")
    return int(g), int(s)


def reduce(raw: Iterable) -> Word:
    """Freely reduce a sequence of signed letters.

    Letters may be ``(gen, +-1)`` pairs or strings: ``"x"``, ``"X"``,
    ``"x^-1"`` and so on.  A plain string such as ``"xyXY"`` is read letter
    by letter.
    """
    if isinstance(raw, Word):
        return raw
    if isinstance(raw, str):
        raw = list(raw)
    return Word(_coerce_letter(c) for c in raw)


def concat(u: Word, v: Word) -> Word:
    return Word(u.blocks + v.blocks)


def invert(w: Word) -> Word:
    return Word((g, -e) for g, e in reversed(w.blocks))


def power(w: Word, e: int) -> Word:
    """``w^e`` for ``e >= 0``, built in O(|w|) blocks via cyclic reduction."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if e == 0 or not w:
        return IDENTITY
    if e == 1:
        return w
    core, conj = cyclic_reduce(w)
    if len(core.blocks) == 1:
        g, k = core.blocks[0]
        body = Word([(g, k * e)])
    else:
        body = Word(core.blocks * e)
    return Word(conj.blocks + body.blocks + invert(conj).blocks)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return Word(u.blocks + v.blocks + invert(u).blocks + invert(v).blocks)


def substitute(w: Word, u: Word, v: Word) -> Word:
    """Image of ``w`` under the endomorphism ``x -> u``, ``y -> v``."""
    images = (u, v)
    blocks: list[tuple[int, int]] = []
    for g, e in w.blocks:
        base = images[g]
        blocks.extend((base ** e).blocks)
    return Word(blocks)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator core conjugator^-1``."""
    blocks = list(w.blocks)
    conj: list[tuple[int, int]] = []
    while len(blocks) >= 2 and blocks[0][0] == blocks[-1][0]:
        g, a = blocks[0]
        _, b = blocks[-1]
        if (a > 0) == (b > 0):
            break
        # First and last blocks partially cancel: a x^a ... x^b with a, b of opposite signs.
        k = min(abs(a), abs(b))
        s = 1 if a > 0 else -1
        conj.append((g, s * k))
        blocks[0] = (g, a - s * k)
        blocks[-1] = (g, b + s * k)
        if blocks[-1][1] == 0:
            blocks.pop()
        if blocks and blocks[0][1] == 0:
            blocks.pop(0)
        # Removing a block may make its neighbours equal-generator; renormalise.
        blocks = list(Word(blocks).blocks)
    return Word(blocks), Word(conj)


def cyclic_permutation(w: Word, k: int) -> Word:
    """Rotate the letters of a cyclically reduced word left by ``k``."""
    if not w.is_cyclically_reduced():
        raise ValueError(f"{w} is not cyclically reduced")
    n = len(w)
    if n == 0:
        return w
    k %= n
    if k == 0:
        return w
    head: list[tuple[int, int]] = []
    tail: list[tuple[int, int]] = []
    seen = 0
    for g, e in w.blocks:
        a = abs(e)
        s = 1 if e > 0 else -1
        if seen + a <= k:
            head.append((g, e))
        elif seen >= k:
            tail.append((g, e))
        else:
            cut = k - seen
            head.append((g, s * cut))
            tail.append((g, s * (a - cut)))
        seen += a
    return Word(tail + head)


def enumerate_reduced(max_length: int) -> Iterator[Word]:
    """Every reduced word of length 1..max_length, shortest first, once each.

    Within a length the order is lexicographic over the alphabet
    ``x, x^-1, y, y^-1``.
    """
    if max_length < 0:
        raise ValueError("max_length must be nonnegative")
    for length in range(1, max_length + 1):
        yield from _reduced_of_length(length)


def _reduced_of_length(length: int) -> Iterator[Word]:
    def extend(prefix: list[tuple[int, int]], remaining: int):
        if remaining == 0:
            yield Word(prefix)
            return
        for letter in ALPHABET:
            if prefix and prefix[-1][0] == letter[0] and prefix[-1][1] == -letter[1]:
                continue
            prefix.append(letter)
            yield from extend(prefix, remaining - 1)
            prefix.pop()

    yield from extend([], length)


def count_reduced(length: int) -> int:
    """Number of reduced words of exactly this length."""
    return 1 if length == 0 else 4 * 3 ** (length - 1)


def commute(u: Word, v: Word) -> bool:
    return not commutator(u, v)
