import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import cyclic_tuple_inclusion_exclusion, cyclic_tuple_python
from lawforge.config import CapExceeded
from lawforge.groups import MatrixGroup, parse_group
from lawforge.spectra import (centralizer_census, cyclic_tuple_count, density_hypothesis_holds,
                              diagonal_regular_elements, e_g_density, order_census,
                              regular_diagonalizable_census, torus_density_bound)

# Frozen from the brute-force oracle in _oracles.sl_power_density (scan of all q^(n^2) matrices).
ORACLE_DENSITY = {
    (2, 7): Fraction(19, 56), (2, 8): Fraction(31, 72), (2, 9): Fraction(17, 45),
    (2, 11): Fraction(53, 132), (2, 13): Fraction(38, 91), (2, 16): Fraction(127, 272),
    (3, 4): Fraction(249, 2240), (3, 5): Fraction(3197, 46500),
}


def test_alt5_census():
    rep = order_census(parse_group("Alt(5)"))
    assert rep.census == {1: 1, 2: 15, 3: 20, 5: 24}
    assert sum(rep.census.values()) == 60
    assert rep.to_csv().splitlines() == ["order,count", "1,1", "2,15", "3,20", "5,24"]


def test_sl2_5_max_order():
    assert order_census(parse_group("SL(2,5)")).max_order == 10


@pytest.mark.parametrize("n", [1, 6, 12, 17, 30])
def test_cyclic_census(n):
    census = order_census(parse_group(f"C({n})")).census
    phi = {d: sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1) for d in range(1, n + 1) if n % d == 0}
    assert census == phi


@given(st.sampled_from(["Sym(4)", "D(12)", "SL(2,3)", "Frob(7,3)", "GL(2,3)", "Wr(2,3)", "PSU(3,2)"]))
def test_census_invariants(desc):
    G = parse_group(desc)
    rep = order_census(G)
    assert sum(rep.census.values()) == G.order()
    assert all(G.order() % o == 0 for o in rep.census)


def test_density_examples():
    assert e_g_density(parse_group("PSL(2,5)"), "A1", 5) == Fraction(16, 60)
    # SU(3,2) is 3^(1+2):Q8; the 27 elements of the exponent-3 normal subgroup are
    # exactly those of order dividing 3.
    assert e_g_density(parse_group("SU(3,2)"), "2A2", 2) == Fraction(27, 216)
    assert e_g_density(parse_group("C(1)"), "A1", 5) == 1
    rep = order_census(parse_group("PSL(2,5)"), "A1", 5)
    summary = json.loads(rep.to_json())
    assert summary["e_g_density"] == "4/15" and summary["b"] == 4


@pytest.mark.parametrize("n,q", sorted(ORACLE_DENSITY))
def test_density_matches_oracle_and_bound(n, q):
    dens = e_g_density(parse_group(f"SL({n},{q})"), "A" + str(n - 1), q)
    assert dens == ORACLE_DENSITY[(n, q)]
    if density_hypothesis_holds(n, q):
        assert dens >= torus_density_bound(n)


def test_density_bound_where_q_large_relative_to_rank():
    # Weaker hypothesis q - 1 > n(n - 1), at every enumerable q.
    for q in [4, 5, 7, 8, 9, 11, 13, 16]:
        assert e_g_density(parse_group(f"SL(2,{q})"), "A1", q) >= Fraction(1, 4)


def test_density_hypothesis():
    assert not density_hypothesis_holds(2, 8)
    assert density_hypothesis_holds(2, 9)
    assert not density_hypothesis_holds(3, 12)
    assert density_hypothesis_holds(3, 13)
    assert torus_density_bound(3) == Fraction(1, 12)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13])
def test_psl2_orders_divide(q):
    census = order_census(parse_group(f"PSL(2,{q})")).census
    assert all((q - 1) % o == 0 or q % o == 0 or (q + 1) % o == 0 for o in census)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_regular_census_sl2(q):
    G = parse_group(f"SL(2,{q})")
    count = regular_diagonalizable_census(G)
    # lambda != lambda^-1 choices, two diagonal elements per class, class size q(q+1).
    choices = sum(1 for lam in range(1, q) if G.field.mul(lam, lam) != 1)
    assert count == choices // 2 * q * (q + 1)
    if q == 5:
        assert count == 30
    if q == 3:
        assert count == 0


def test_regular_census_excludes_identity():
    G = parse_group("GL(2,3)")
    assert regular_diagonalizable_census(G) == 12
    assert (1, 0, 0, 1) not in diagonal_regular_elements(G)


def test_regular_census_unitary():
    # Every conjugate of a regular diagonal element is counted.
    G = parse_group("SU(2,3)")
    diag = diagonal_regular_elements(G)
    ig = G.indexed()
    members = set()
    for d in diag:
        cls_ = next(c for c in ig.conjugacy_classes if ig.index_of(d) in c)
        members.update(cls_.tolist())
    assert regular_diagonalizable_census(G) >= len(members)


def test_centralizers():
    assert centralizer_census(parse_group("GL(2,3)"), (1, 0, 0, 2)) == 4
    assert centralizer_census(parse_group("SL(2,5)"), (2, 0, 0, 3)) == 4
    G = parse_group("SL(2,3)")
    assert centralizer_census(G, (1, 0, 0, 1)) == G.order()
    assert centralizer_census(parse_group("Sym(4)"), (1, 0, 2, 3)) == 4
    assert centralizer_census(parse_group("Sym(4)"), (1, 0, 3, 2)) == 8


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_covering_consistency(q):
    G = parse_group(f"SL(2,{q})")
    ig = G.indexed()
    diag = diagonal_regular_elements(G)
    idx = {ig.index_of(d) for d in diag}
    union = sum(len(c) for c in ig.conjugacy_classes if idx & set(c.tolist()))
    assert union * math.factorial(2) * (q - 1) >= G.order() * len(diag)
    assert union == regular_diagonalizable_census(G)


def test_cyclic_tuple_examples():
    assert cyclic_tuple_count(7, 3) == (30, 28)
    assert cyclic_tuple_count(6, 3) == (24, 18)
    assert cyclic_tuple_inclusion_exclusion(7) == 30
    assert cyclic_tuple_inclusion_exclusion(6) == 24
    exact, bound = cyclic_tuple_count(2, 3)
    assert bound < 0 and exact == 0
    with pytest.raises(ValueError):
        cyclic_tuple_count(5, 2)
    with pytest.raises(CapExceeded):
        cyclic_tuple_count(1000, 4, budget=10 ** 6)


@pytest.mark.parametrize("d", [3, 4])
def test_cyclic_tuple_bound_all_n(d):
    for n in range(1, 31):
        exact, bound = cyclic_tuple_count(n, d)
        if bound >= 0:
            assert exact >= bound
        if d == 3:
            assert exact == cyclic_tuple_inclusion_exclusion(n)
        elif n <= 12:
            assert exact == cyclic_tuple_python(n, d)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_exceptional_isomorphism_spectra(q):
    spectra = [order_census(parse_group(f"{k}(2,{q})")).census for k in ("PSL", "PSp", "PSU")]
    assert spectra[0] == spectra[1] == spectra[2]


def test_regular_census_requires_matrix_backend():
    with pytest.raises(TypeError):
        regular_diagonalizable_census(parse_group("Sym(3)"))
    assert isinstance(parse_group("SL(2,3)"), MatrixGroup)
