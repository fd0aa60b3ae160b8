import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lawforge.freeword import power
from lawforge.groups import parse_group
from lawforge.lawkit import union_combine
from lawforge.verify import COVERS, check_on_generating_pairs
from lawforge.walks import (almost_law_search, cayley_diameter, coverage_union_bound_report, default_parameters,
                            empirical_mixing_check, mixing_length, sample_walk_word, torus_mask)


def generating_set(ig, seed):
    """A seeded random generating pair, closed under inverses."""
    gs, hs = np.nonzero(ig.generating_pair_mask)
    k = np.random.default_rng(seed).integers(len(gs))
    g, h = int(gs[k]), int(hs[k])
    return sorted({g, h, int(ig.inverse[g]), int(ig.inverse[h])})


def test_walk_word_basics():
    assert not sample_walk_word(0, 1)
    assert sample_walk_word(50, 7) == sample_walk_word(50, 7)
    assert sample_walk_word(50, 7) != sample_walk_word(50, 8)
    with pytest.raises(ValueError):
        sample_walk_word(-1)


@given(st.integers(0, 300), st.integers(0, 2 ** 32))
def test_walk_word_length_bounded(L, seed):
    assert sample_walk_word(L, seed).length <= L


def test_walk_length_grows_linearly():
    rng = np.random.default_rng(11)
    means = {L: np.mean([sample_walk_word(L, rng).length for _ in range(1500)]) for L in (200, 400)}
    # Half the steps move; a non-backtracking drift of 1/2 gives slope near 1/4.
    for L, m in means.items():
        assert 0.2 * L < m < 0.3 * L
    assert 1.8 < means[400] / means[200] < 2.2


def test_diameter_examples():
    C12 = parse_group("C(12)")
    assert cayley_diameter(C12, [1]) == 6
    S3 = parse_group("Sym(3)")
    assert cayley_diameter(S3, [(1, 0, 2), (1, 2, 0)]) <= 3
    with pytest.raises(ValueError):
        cayley_diameter(C12, [2])


@pytest.mark.parametrize("desc", ["Sym(4)", "PSL(2,7)", "D(10)", "Alt(5)"])
def test_diameter_symmetrization_and_growth(desc):
    ig = parse_group(desc).indexed()
    for seed in range(3):
        S = generating_set(ig, seed)
        half = S[:2] if ig.is_generating_pair(S[0], S[1]) else S
        d = cayley_diameter(ig, half)
        assert d == cayley_diameter(ig, S)
        assert d >= math.log(ig.n) / math.log(2 * len(S) + 1)


def test_mixing_trivial_targets():
    ig = parse_group("Sym(3)").indexed()
    S = generating_set(ig, 0)
    full = empirical_mixing_check(ig, S, np.ones(ig.n, bool), trials=500)
    assert full.hit_rate == 1.0 and full.passed
    empty = empirical_mixing_check(ig, S, np.zeros(ig.n, bool), trials=500)
    assert empty.threshold == 0 and empty.passed


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_mixing_at_bound_length(q):
    G = parse_group(f"PSL(2,{q})")
    ig = G.indexed()
    S = generating_set(ig, q)
    rep = empirical_mixing_check(ig, S, torus_mask(G, "A1", q), trials=10_000, seed=q)
    assert rep.L == mixing_length(ig.n, len(S), rep.diameter)
    assert rep.passed, rep


def test_almost_law_degenerate():
    res = almost_law_search(parse_group("C(2)xC(2)xC(2)"), "A1", 5, m=0)
    assert res.success and res.verdict == COVERS
    res = almost_law_search(parse_group("Sym(3)"), "A1", 5, m=0)
    assert not res.success


def test_default_parameters():
    assert default_parameters(60) == (17, 17)
    assert default_parameters(168) == (21, 27)


@pytest.mark.parametrize("q,seed", [(5, 1), (7, 0)])
def test_almost_law_search(q, seed):
    G = parse_group(f"PSL(2,{q})")
    res = almost_law_search(G, "A1", q, seed=seed)
    assert res.success and res.b == q - 1
    assert res.attempts_used <= 32
    again = almost_law_search(G, "A1", q, seed=seed)
    assert res.to_dict(with_time=False) == again.to_dict(with_time=False)
    from lawforge.freeword import Word

    words = [Word.parse(u) for u in res.words]
    combined = union_combine([power(u, res.b) for u in words])
    assert str(combined) == res.combined
    assert check_on_generating_pairs(combined, G).verdict == COVERS


def test_almost_law_budget_exhaustion_is_reported():
    res = almost_law_search(parse_group("PSL(2,5)"), "A1", 5, m=1, L=2, seed=0, attempts=2)
    assert not res.success and res.attempts_used == 2


def test_coverage_report():
    G = parse_group("PSL(2,5)")
    rep = coverage_union_bound_report(G, 0, 10, family="A1", q=5, samples=50)
    assert rep.bound == 60 ** 2
    rep = coverage_union_bound_report(G, 17, 17, seed=2, family="A1", q=5, samples=100)
    assert 0 <= rep.c2_hat <= 1 and math.isfinite(rep.bound)
    assert rep.bound == pytest.approx((1 - rep.c2_hat) ** 17 * 3600)
    triv = coverage_union_bound_report(parse_group("C(2)"), 3, 5, family="A1", q=3, samples=20)
    assert triv.c2_hat == 1.0 and triv.bound == 0
    with pytest.raises(ValueError):
        coverage_union_bound_report(G, 1, 1)
