from hypothesis import given
from hypothesis import strategies as st

from lawforge.freeword import (ALPHABET, IDENTITY, X, Y, Word, commutator, commute, concat,
                               count_reduced, cyclic_permutation, cyclic_reduce,
                               enumerate_reduced, invert, power, reduce, substitute)
import pytest

letters = st.lists(st.sampled_from(ALPHABET), max_size=14)
words = letters.map(Word)


def naive_reduce(seq):
    out = []
    for g, e in seq:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return out


def test_reduce_examples():
    assert reduce("xyYx") == Word.parse("x^2")
    assert reduce("xX") == IDENTITY
    assert str(IDENTITY) == "1"
    assert str(Word.parse("x^3 y^-1 x")) == "x^3 y^-1 x"


def test_parse_forms_agree():
    assert Word.parse("xyXY") == commutator(X, Y)
    assert Word.parse("x y x^-1 y^-1") == commutator(X, Y)


def test_cyclic_reduce_examples():
    core, conj = cyclic_reduce(Word.parse("x y x^-1"))
    assert (core, conj) == (Y, X)
    core, conj = cyclic_reduce(Word.parse("x^-1 y^2 x"))
    assert (core, conj) == (Word.parse("y^2"), Word.parse("x^-1"))


def test_cyclic_permutation_example():
    assert str(cyclic_permutation(Word.parse("x y x y^-1"), 1)) == "y x y^-1 x"
    with pytest.raises(ValueError):
        cyclic_permutation(Word.parse("x y x^-1"), 1)


def test_enumeration_counts():
    ws = list(enumerate_reduced(3))
    assert len(ws) == 4 + 12 + 36
    assert len(set(ws)) == len(ws)
    assert [str(w) for w in ws[:4]] == ["x", "x^-1", "y", "y^-1"]
    for length in range(1, 6):
        assert sum(1 for w in enumerate_reduced(length) if w.length == length) == count_reduced(length)


def test_identity_rejected_nowhere_but_falsy():
    assert not IDENTITY
    assert X and Y


@given(letters)
def test_reduction_matches_stack_reduction(seq):
    w = Word(seq)
    assert list(w.letters()) == naive_reduce(seq)


@given(words, words)
def test_concat_inverse(u, v):
    assert concat(u, invert(u)) == IDENTITY
    assert invert(concat(u, v)) == concat(invert(v), invert(u))
    assert (u * v).length <= u.length + v.length


@given(words)
def test_cyclic_reduce_is_conjugation(w):
    core, conj = cyclic_reduce(w)
    assert conj * core * ~conj == w
    assert core.is_cyclically_reduced()


@given(words, st.integers(0, 5))
def test_power_is_repeated_product(w, e):
    expected = IDENTITY
    for _ in range(e):
        expected = expected * w
    assert power(w, e) == expected


@given(words, words, words)
def test_substitute_is_homomorphism(w1, u, v):
    w2 = Word.parse("y x^-1")
    assert substitute(w1 * w2, u, v) == substitute(w1, u, v) * substitute(w2, u, v)
    assert substitute(w1, X, Y) == w1


@given(words.filter(lambda w: w.is_cyclically_reduced() and w.length > 0), st.integers(0, 20))
def test_rotation_is_conjugate(w, k):
    r = cyclic_permutation(w, k)
    assert r.length == w.length
    # A rotation of a cyclically reduced word is cyclically reduced and conjugate.
    assert cyclic_reduce(r)[0].length == w.length


@given(words, words)
def test_commute_symmetric(u, v):
    assert commute(u, v) == commute(v, u)
    assert commute(u, power(u, 3))
