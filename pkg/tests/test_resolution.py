from collections import defaultdict
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wtreelab.linalg import GF32003, RATIONALS
from wtreelab.monomials import ResourceLimitError, depth_at_least_one, ideal_power, minimalize
from wtreelab.resolution import (BettiTable, EngineMismatchError, betti, betti_koszul, betti_taylor,
                                 depth_profile, lcm_degree, lcm_lattice, reduced_homology, taylor_is_minimal,
                                 upper_koszul_faces)
from wtreelab.tree import WeightedTree, edge_ideal

EX = edge_ideal(WeightedTree.path([6, 5, 5]))
AB_BC = minimalize([(1, 1, 0), (0, 1, 1)], 3)


def test_taylor_two_edge_path():
    T = betti_taylor(AB_BC)
    assert T.entries == ((0, (0, 0, 0), 1), (1, (0, 1, 1), 1), (1, (1, 1, 0), 1), (2, (1, 1, 1), 1))
    assert T.pd() == 2 and T.depth() == 1 and T.reg_quotient() == 1 and T.reg_ideal() == 2


def test_principal_ideal_one_variable():
    I = minimalize([(2,)], 1)
    for T in (betti_taylor(I), betti_koszul(I)):
        assert T.entries == ((0, (0,), 1), (1, (2,), 1))
        assert T.pd() == 1 and T.depth() == 0 and T.reg_quotient() == 1


def test_upper_koszul_complexes():
    assert upper_koszul_faces(minimalize([(2,)], 1).as_array(), (2,)) == [0]
    faces = upper_koszul_faces(AB_BC.as_array(), (1, 1, 1))
    assert sorted(faces) == [0b000, 0b001, 0b100]
    assert reduced_homology(faces) == {0: 1}
    assert reduced_homology([0]) == {-1: 1}
    assert reduced_homology([]) == {}


def test_weighted_path_tables():
    T1 = betti(EX, "both")
    assert T1.reg_ideal() == 16 and T1.depth() == 2 and T1.totals() == [1, 3, 2]
    T2 = betti(ideal_power(EX, 2), "both")
    assert T2.reg_ideal() == 30 and T2.depth() == 1 and T2.totals() == [1, 6, 6, 1]
    T3 = betti(ideal_power(EX, 3), "koszul")
    assert T3.reg_ideal() == 42 and T3.totals() == [1, 10, 12, 3]


def test_fields_agree_on_weighted_path():
    for t in (1, 2):
        It = ideal_power(EX, t)
        assert betti_koszul(It, RATIONALS) == betti_koszul(It, GF32003)


def test_taylor_minimality():
    # lcm of the outer generators already equals the full lcm
    assert not taylor_is_minimal(EX)
    assert not taylor_is_minimal(minimalize([(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)], 4))
    assert taylor_is_minimal(minimalize([(3, 1)], 2))
    strict = edge_ideal(WeightedTree.path([1, 2, 3]))
    assert taylor_is_minimal(strict) and betti(strict).totals() == [1, 3, 3, 1]


def test_lcm_degree_examples():
    assert lcm_degree(EX) == 22
    assert lcm_degree(edge_ideal(WeightedTree.path([4]))) == 8
    assert lcm_degree(edge_ideal(WeightedTree.star([1] * 5))) == 6


def test_depth_profiles():
    p4 = depth_profile(WeightedTree.path([1, 1, 1]), 3)
    assert p4.depths == (2, 1, 1) and p4.stable_from() == 2
    assert depth_profile(WeightedTree.path([1, 2, 3]), 3).depths == (1, 1, 1)
    assert depth_profile(WeightedTree.path([5]), 4).depths == (1, 1, 1, 1)


def test_depth_profile_truncates_at_cap():
    G = WeightedTree.path([1] * 7)
    prof = depth_profile(G, 6, power_cap=50)
    assert prof.truncated_at == 3 and len(prof.depths) == 2


def test_caps_raise():
    many = minimalize([tuple(1 if j in (i, i + 1) else 0 for j in range(16)) for i in range(15)], 16)
    with pytest.raises(ResourceLimitError):
        betti_taylor(many)
    with pytest.raises(ResourceLimitError):
        lcm_lattice(many, cap=100)


def test_engine_mismatch_error_carries_tables():
    a, b = betti_taylor(AB_BC), BettiTable(3, ((0, (0, 0, 0), 1),))
    e = EngineMismatchError(a, b)
    assert e.taylor == a and e.koszul == b


# --- properties ---------------------------------------------------------------

exps = st.integers(0, 3)


@st.composite
def small_ideals(draw):
    n = draw(st.integers(1, 4))
    gens = draw(st.lists(st.tuples(*[exps] * n), min_size=1, max_size=6))
    I = minimalize(gens, n)
    return I


def _euler(I):
    """Alternating Taylor count per multidegree, which equals sum_i (-1)^i beta_{i,b}."""
    out = defaultdict(int)
    g = I.gens
    for k in range(len(g) + 1):
        for U in combinations(g, k):
            b = tuple(max((m[v] for m in U), default=0) for v in range(I.ring_dim))
            out[b] += (-1) ** k
    return {b: c for b, c in out.items() if c}


@given(small_ideals())
def test_engines_agree_and_match_euler_characteristic(I):
    if I.unit:
        return
    T = betti_taylor(I)
    assert betti_koszul(I) == T
    chi = defaultdict(int)
    for i, b, r in T.entries:
        chi[b] += (-1) ** i * r
    assert {b: c for b, c in chi.items() if c} == _euler(I)


@given(small_ideals())
def test_table_invariants(I):
    if I.unit:
        return
    T = betti_koszul(I)
    zero = (0,) * I.ring_dim
    assert [e for e in T.entries if e[0] == 0] == [(0, zero, 1)]
    assert T.pd() <= I.ring_dim
    lattice = {tuple(int(x) for x in row) for row in lcm_lattice(I)}
    assert all(b in lattice for _, b, _ in T.entries)
    if taylor_is_minimal(I):
        m = len(I.gens)
        assert T.totals() == [len(list(combinations(range(m), i))) for i in range(m + 1)]
    assert (T.depth() >= 1) == depth_at_least_one(I)


@given(small_ideals())
def test_fields_agree_on_small_ideals(I):
    if I.unit:
        return
    assert betti_koszul(I, RATIONALS) == betti_koszul(I, GF32003)


def test_parallel_koszul_matches_serial(monkeypatch):
    It = ideal_power(edge_ideal(WeightedTree.path([2, 1, 2, 1, 2])), 4)
    monkeypatch.setenv("WTREELAB_THREADS", "1")
    serial = betti_koszul(It)
    monkeypatch.setenv("WTREELAB_THREADS", "2")
    assert betti_koszul(It) == serial
