import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lawforge.config import CapExceeded, Caps, set_caps
from lawforge.freeword import ALPHABET, X, Y, Word, commutator, enumerate_reduced
from lawforge.groups import evaluate, parse_group
from lawforge.lawkit import psl2_law
from lawforge.verify import (COUNTEREXAMPLE, COVERS, LAW, LAW_SAMPLED, check_law, check_on_generating_pairs,
                             shortest_law_search, vanishing_mask, vanishing_set)

XY = commutator(X, Y)


def test_commutator_on_abelian():
    cert = check_law(XY, parse_group("C(6)"))
    assert cert.verdict == LAW and cert.pairs_checked == 36


def test_commutator_on_sym3_counterexample_reevaluates():
    G = parse_group("Sym(3)")
    cert = check_law(XY, G)
    assert cert.verdict == COUNTEREXAMPLE
    g, h = cert.counterexample
    assert not G.is_identity(evaluate(XY, G, g, h))
    assert cert.to_dict()["counterexample"] == list(cert.counterexample_labels)


def test_psl2_5_exhaustive():
    cert = check_law(psl2_law(5).word, parse_group("PSL(2,5)"))
    assert cert.verdict == LAW and cert.pairs_checked == 3600


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        check_law(Word(), parse_group("C(2)"))
    with pytest.raises(ValueError):
        vanishing_set(Word(), parse_group("C(2)"))


def test_vanishing_set_examples():
    C2 = parse_group("C(2)")
    assert len(vanishing_set(X, C2)) == 2
    S3 = parse_group("Sym(3)")
    # Identity plus the two 3-cycles: 3 choices of g, 6 of h.
    assert len(vanishing_set(X ** 3, S3)) == 18
    census = np.bincount(S3.indexed().orders)
    assert len(vanishing_set(X ** 3, S3)) == (census[1] + census[3]) * 6
    for desc in ["Sym(4)", "D(10)", "SL(2,3)"]:
        G = parse_group(desc)
        assert vanishing_mask(X ** G.order(), G).all()


def test_generating_pairs_examples():
    cert = check_on_generating_pairs(XY, parse_group("C(2)xC(2)xC(2)"))
    assert cert.verdict == COVERS and cert.extra["generating_pairs"] == 0
    for desc in ["Sym(3)", "Alt(5)", "C(5)"]:
        G = parse_group(desc)
        assert check_on_generating_pairs(X ** G.order(), G).verdict == COVERS
    cert = check_on_generating_pairs(XY, parse_group("Sym(3)"))
    assert cert.verdict == COUNTEREXAMPLE


def test_shortest_law_examples():
    res = shortest_law_search(parse_group("C(2)"), 2)
    assert res.found == X ** 2
    res = shortest_law_search(parse_group("C(3)"), 3)
    assert res.found == X ** 3 and res.frontier == 2
    res = shortest_law_search(parse_group("PSL(2,7)"), 2)
    assert res.found is None and res.words_checked == 16
    res = shortest_law_search(parse_group("PSL(2,13)"), 4)
    assert res.found is None and res.words_checked == 160 and res.frontier == 4


def test_shortest_law_deterministic():
    G = parse_group("Sym(3)")
    a = shortest_law_search(G, 6, seed=3)
    b = shortest_law_search(G, 6, seed=99)
    assert a.found == b.found
    assert a.to_dict(with_time=False) == b.to_dict(with_time=False)
    # The first law in enumeration order really is first.
    for w in enumerate_reduced(a.found.length):
        if w == a.found:
            break
        assert check_law(w, G).verdict == COUNTEREXAMPLE


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_lower_bound_psl2(q):
    bound = -(-(q - 1) // 3)
    res = shortest_law_search(parse_group(f"PSL(2,{q})"), bound - 1)
    assert res.found is None


def test_sampled_mode():
    G = parse_group("PSL(2,7)")
    cert = check_law(psl2_law(7).word, G, mode="sampled", samples=2000, seed=5)
    assert cert.verdict == LAW_SAMPLED and cert.verdict != LAW
    bad = check_law(XY, G, mode="sampled", samples=500, seed=5)
    assert bad.verdict == COUNTEREXAMPLE
    again = check_law(XY, G, mode="sampled", samples=500, seed=5)
    assert bad.to_dict(with_time=False) == again.to_dict(with_time=False)


def test_cap_exceeded_and_fallback():
    G = parse_group("PSL(2,7)")
    set_caps(Caps(pairs=100))
    try:
        with pytest.raises(CapExceeded):
            check_law(XY, G)
        cert = check_law(XY, G, fallback=True, samples=200)
        assert cert.mode == "sampled"
    finally:
        set_caps(None)


def test_product_checked_factorwise():
    set_caps(Caps(pairs=50))
    try:
        cert = check_law(X ** 6, parse_group("Sym(3)xC(6)xC(2)"))
        assert cert.verdict == LAW and cert.extra.get("factorwise")
        cert = check_law(X ** 3, parse_group("C(3)xSym(3)"))
        assert cert.verdict == COUNTEREXAMPLE
        G = cert.counterexample
    finally:
        set_caps(None)
    P = parse_group("C(3)xSym(3)")
    assert not P.is_identity(evaluate(X ** 3, P, *G))


short_words = st.lists(st.sampled_from(ALPHABET), min_size=1, max_size=10).map(Word).filter(bool)
GROUPS = ["C(6)", "Sym(3)", "D(8)", "Alt(4)", "SL(2,3)", "Frob(7,3)", "Sym(4)"]


@given(short_words, st.sampled_from(GROUPS))
def test_law_iff_full_vanishing_set(w, desc):
    G = parse_group(desc)
    cert = check_law(w, G)
    mask = vanishing_mask(w, G)
    assert (cert.verdict == LAW) == bool(mask.all())
    if cert.verdict == COUNTEREXAMPLE:
        ig = G.indexed()
        g, h = (ig.index_of(e) for e in cert.counterexample)
        assert not mask[g, h]
        # The reported pair is the first failing pair in g-major order.
        assert cert.pairs_checked == int(np.argmax(~mask.ravel())) + 1


@settings(max_examples=30)
@given(st.sampled_from(["Sym(4)", "SL(2,3)", "Alt(5)", "D(12)"]),
       st.lists(st.integers(0, 10_000), min_size=1, max_size=2), short_words)
def test_laws_pass_to_subgroups(desc, picks, w):
    G = parse_group(desc)
    ig = G.indexed()
    members = ig.closure([p % ig.n for p in picks])
    H = ig.subgroup(members)
    if check_law(w, G).verdict == LAW:
        assert check_law(w, H).verdict == LAW
    assert check_law(X ** ig.exponent, H).verdict == LAW
    # Z(H, w) is Z(G, w) restricted to H x H.
    assert (vanishing_mask(w, G)[np.ix_(members, members)] == vanishing_mask(w, H)).all()
