import pytest
from hypothesis import given
from hypothesis import strategies as st

from wtreelab.monomials import ideal_power
from wtreelab.resolution import betti
from wtreelab.tree import (InfeasibleWeightsError, TreeError, WeightedTree, a_set, analyze, analyze_root,
                           complete_bipartite_ideal, edge_ideal, generate_random, leaf_special_vertices,
                           longest_path_pendant, pendant_for_colon, witness_monomial)

EX = WeightedTree.path([6, 5, 5])
X1, X2, X3, X4 = range(4)


def test_rejects_cycles_loops_and_bad_weights():
    with pytest.raises(TreeError):
        WeightedTree.from_edges("abc", [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    with pytest.raises(TreeError):
        WeightedTree.from_edges("ab", [("a", "a", 1)])
    with pytest.raises(TreeError):
        WeightedTree.from_edges("ab", [("a", "b", 0)])
    with pytest.raises(TreeError):
        WeightedTree.from_edges("abcd", [("a", "b", 1), ("c", "d", 1), ("a", "c", 1), ("b", "c", 2)])
    with pytest.raises(TreeError):
        WeightedTree.from_edges("abcd", [("a", "b", 1), ("c", "d", 1), ("a", "b", 1)])


def test_analyze_root_on_weighted_path():
    r1 = analyze_root(EX, X1)
    assert r1.increasing and not r1.strictly_increasing
    assert r1.special_vertices == {X3} and r1.s == 1
    assert r1.special_edges == {(X3, X2)}
    assert not analyze_root(EX, X4).increasing


def test_unit_star_center_is_strict():
    G = WeightedTree.star([1, 1, 1])
    r = analyze_root(G, 0)
    assert r.increasing and r.strictly_increasing and r.s == 0


def test_analyze_weighted_path():
    A = analyze(EX)
    assert A.roots == (X1, X2)
    assert A.s_min == 1 and A.d_max == 6
    assert not A.is_strictly_increasing
    assert A.mu == (6, 6, 5, 5)
    assert A.a_set == {X3}
    assert A.bipartition == ({X1, X3}, {X2, X4})
    assert A.best_root() == X1


def test_unit_paths():
    p3 = analyze(WeightedTree.path([1, 1]))
    assert 1 in p3.roots and p3.is_strictly_increasing
    p4 = analyze(WeightedTree.path([1, 1, 1]))
    assert p4.is_increasing and not p4.is_strictly_increasing and p4.s_min == 1
    assert p4.strict_roots == ()


def test_single_edge_is_degenerate():
    A = analyze(WeightedTree.path([4]))
    assert A.roots == (0, 1) and A.strict_roots == (0, 1)
    assert A.s_min == 0 and A.a_set == frozenset()


def test_a_set_examples():
    assert a_set(WeightedTree.path([3])) == frozenset()
    star = WeightedTree.star([1, 2, 3])
    assert a_set(star) == {star.index("l1"), star.index("l2")}


def test_witness_monomial():
    assert witness_monomial(EX, X1) == (5, 10, 9, 4)
    assert witness_monomial(WeightedTree.path([4]), 0) == (3, 3)
    assert witness_monomial(WeightedTree.star([1, 1, 1]), 0) == (0, 0, 0, 0)
    with pytest.raises(TreeError):
        witness_monomial(EX, X4)


def test_edge_and_bipartite_ideals():
    assert edge_ideal(EX).gens == ((0, 0, 5, 5), (0, 5, 5, 0), (6, 6, 0, 0))
    assert edge_ideal(WeightedTree.path([1])).gens == ((1, 1),)
    assert edge_ideal(WeightedTree.path([1, 1])).gens == ((0, 1, 1), (1, 1, 0))
    assert complete_bipartite_ideal([0], [1], 2).gens == ((1, 1),)
    assert complete_bipartite_ideal([0], [1, 2], 3).gens == ((1, 0, 1), (1, 1, 0))
    k = complete_bipartite_ideal({X1, X3}, {X2, X4}, 4)
    assert k.gens == ((0, 0, 1, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 0))
    with pytest.raises(ValueError):
        complete_bipartite_ideal([0], [0, 1], 2)
    with pytest.raises(ValueError):
        complete_bipartite_ideal([], [1], 2)


def test_special_edges_need_not_start_at_a_leaf():
    # x2 -> x6 is special from root x6 only through the non-leaf path x5 -> x2 -> x6.
    G = WeightedTree.from_edges(["x1", "x2", "x3", "x4", "x5", "x6"],
                                [("x1", "x5", 1), ("x2", "x4", 2), ("x2", "x5", 3), ("x2", "x6", 3),
                                 ("x3", "x6", 3)])
    r = G.index("x6")
    assert leaf_special_vertices(G, r) == frozenset()
    ra = analyze_root(G, r)
    assert ra.increasing and ra.s == 1
    # depth(S/I) = 2, so s = 0 would contradict depth 1 for every power above s
    assert betti(edge_ideal(G)).depth() == 2
    assert betti(ideal_power(edge_ideal(G), ra.s + 1)).depth() == 1


def test_pendant_on_weighted_path():
    assert longest_path_pendant(EX, X1) == [X1, X2, X3, X4]
    assert pendant_for_colon(EX, X1) == (X3, X4)


def test_pendant_when_root_is_a_leaf():
    G = WeightedTree.path([3, 2])
    assert pendant_for_colon(G, 0) == (1, 2)


def test_pendant_for_star_uses_lightest_leaf():
    G = WeightedTree.star([2, 1, 3])
    assert longest_path_pendant(G, 0) is None
    assert pendant_for_colon(G, 0) == (0, G.index("l2"))


def test_generate_random_examples():
    G = generate_random("strict", 2, 3, 11)
    assert G.n == 2 and 1 <= G.edges[0][2] <= 3
    assert analyze(generate_random("increasing", 5, 3, 42)).is_increasing
    with pytest.raises(InfeasibleWeightsError):
        for seed in range(200):
            generate_random("strict", 4, 1, seed)


@given(st.sampled_from(["increasing", "strict"]), st.integers(2, 8), st.integers(1, 4), st.integers(0, 2**32))
def test_generated_trees_are_in_class(kind, n, W, seed):
    try:
        G = generate_random(kind, n, W, seed)
    except InfeasibleWeightsError:
        assert kind == "strict"
        return
    A = analyze(G)
    assert A.is_increasing
    assert A.is_strictly_increasing or kind == "increasing"
    assert max(w for _, _, w in G.edges) <= W
    assert generate_random(kind, n, W, seed) == G


@given(st.integers(2, 8), st.integers(1, 4), st.integers(0, 2**32))
def test_root_invariants(n, W, seed):
    G = generate_random("increasing", n, W, seed)
    A = analyze(G)
    for r in A.roots:
        ra = A.per_root[r]
        assert ra.s == len(ra.special_vertices) == len(ra.special_edges)
        assert not ra.strictly_increasing or ra.s == 0
    U, V = A.bipartition
    assert U | V == set(range(G.n)) and not U & V
    assert all((i in U) != (j in U) for i, j, _ in G.edges)
    assert not U <= A.a_set and not V <= A.a_set
    if A.is_strictly_increasing:
        assert A.s_min == 0
