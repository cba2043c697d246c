import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wtreelab.monomials import ideal_power
from wtreelab.tree import TreeError, WeightedTree, analyze, edge_ideal, generate_random
from wtreelab.verify import (COUNTEREXAMPLE, HOLDS, SKIPPED, Campaign, Verdict, bipartite_quotient_depth,
                             check_bipartition_sides, check_colon_structure, check_constant_depth_iff,
                             check_depth_monotone, check_depth_theorem, check_lcm_degree,
                             check_nonstrict_reg_counterexample, check_path_lemmas, check_pendant_colon,
                             check_reg_formula, check_reg_power, check_special_count, check_subset_lcm,
                             check_taylor_minimal_and_betti, colon_target, recheck, run_campaign,
                             run_fixed_suite)

EX = WeightedTree.path([6, 5, 5])
EDGE = WeightedTree.path([3])
P3 = WeightedTree.path([1, 1])
P4 = WeightedTree.path([1, 1, 1])
STAR = WeightedTree.star([1, 2, 3])
STRICT_PATH = WeightedTree.path([1, 2, 3])


def test_pendant_colon_examples():
    v = check_pendant_colon(EX, t_max=2)
    assert v.status == HOLDS and v.detail["pendant"] == ["x3", "x4"] and v.detail["checked"] == [2]
    assert check_pendant_colon(EDGE).status == HOLDS
    assert check_pendant_colon(P3, t_max=3).detail["checked"] == [2, 3]


def test_colon_structure_examples():
    v = check_colon_structure(EDGE)
    assert v.status == HOLDS and v.detail["colon"] == [[1, 1]]
    v = check_colon_structure(EX)
    assert v.status == HOLDS
    assert v.instance["params"] == {"root": "x1", "t": 2}
    assert v.detail["colon"] == [[0, 0, 1, 0], [1, 0, 0, 1], [1, 1, 0, 0]]
    assert v.detail["f_not_in_power"]


def test_colon_structure_at_every_root():
    for G in (EX, P4, STAR):
        A = analyze(G)
        for r in A.roots:
            assert check_colon_structure(G, root=r).status == HOLDS


def test_depth_theorem_examples():
    for G, s in ((P4, 1), (EX, 1), (STAR, 0)):
        v = check_depth_theorem(G)
        assert v.status == HOLDS and v.detail["s"] == s
        for row in v.detail["powers"].values():
            assert row["certificate"] == 1 and row["oracle"] == 1


def test_bipartite_certificate():
    assert bipartite_quotient_depth(frozenset({0}), frozenset({1, 2})) == 1
    assert bipartite_quotient_depth(frozenset(), frozenset({1})) is None


def test_constant_depth_examples():
    assert check_constant_depth_iff(P4).detail["depths"] == {"1": 2}
    assert check_constant_depth_iff(P3).detail["depths"] == {"1": 1, "2": 1}
    v = check_constant_depth_iff(EX)
    assert v.status == HOLDS and v.detail["depths"]["1"] == 2


def test_depth_monotone_examples():
    assert check_depth_monotone(P4).detail["profile"] == [2, 1, 1]
    assert check_depth_monotone(STRICT_PATH).detail["profile"] == [1, 1, 1]
    assert check_depth_monotone(EDGE).status == HOLDS


def test_taylor_and_betti_examples():
    assert check_taylor_minimal_and_betti(P3).detail["totals"]["koszul"] == [1, 2, 1]
    assert check_taylor_minimal_and_betti(STAR).detail["totals"]["taylor"] == [1, 3, 3, 1]
    with pytest.raises(TreeError):
        check_taylor_minimal_and_betti(EX)


def test_lcm_degree_examples():
    assert check_lcm_degree(EDGE).detail == {"lcm_degree": 6, "expected": 6}
    assert check_lcm_degree(EX).detail == {"lcm_degree": 22, "expected": 22}


def test_regularity_examples():
    assert check_reg_formula(P3).detail == {"reg": 2, "expected": 2}
    assert check_reg_formula(STAR).detail == {"reg": 7, "expected": 7}
    assert check_reg_formula(STRICT_PATH).detail == {"reg": 7, "expected": 7}
    assert check_reg_power(P3).detail["reg"] == {"1": 2, "2": 4}
    assert check_reg_power(STAR).detail["reg"] == {"1": 7, "2": 13}


def test_nonstrict_regularity_example():
    v = check_nonstrict_reg_counterexample()
    assert v.status == HOLDS
    assert v.detail == {"reg1": 16, "reg2": 30, "d": 6, "strict_formula": 28, "exceeds": True}


def test_structural_checks_on_fixed_trees():
    for G in (EX, EDGE, P3, P4, STAR, STRICT_PATH):
        assert check_special_count(G).status == HOLDS
        assert check_bipartition_sides(G).status == HOLDS
        assert check_path_lemmas(G).status == HOLDS
    for G in (EDGE, P3, STAR, STRICT_PATH):
        assert check_subset_lcm(G).status == HOLDS


def test_fixed_suite_has_no_skips():
    c = run_fixed_suite()
    assert c.summary == {HOLDS: len(c.verdicts), COUNTEREXAMPLE: 0, SKIPPED: 0}


def test_empty_campaign():
    c = run_campaign("all", count=0)
    assert c.verdicts == [] and c.summary == {HOLDS: 0, COUNTEREXAMPLE: 0, SKIPPED: 0}
    assert json.loads(json.dumps(c.to_dict()))["verdicts"] == []


def test_campaign_replay_and_roundtrip():
    a = run_campaign("colon", (2, 6), 3, 8, seed=5)
    b = run_campaign("colon", (2, 6), 3, 8, seed=5)
    assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)
    assert Campaign.from_dict(json.loads(json.dumps(a.to_dict()))).to_dict() == a.to_dict()
    assert [v.instance["params"]["index"] for v in a.verdicts] == sorted(v.instance["params"]["index"]
                                                                         for v in a.verdicts)


def test_campaign_parallel_matches_serial(monkeypatch):
    serial = run_campaign("structure", (2, 6), 3, 6, seed=9).to_dict()
    monkeypatch.setenv("WTREELAB_THREADS", "2")
    assert run_campaign("structure", (2, 6), 3, 6, seed=9).to_dict() == serial


def test_strict_campaign_redraws_infeasible_shapes():
    c = run_campaign("taylor", (6, 7), 3, 10, seed=3)
    assert c.summary[COUNTEREXAMPLE] == 0
    assert all(max(e["w"] for e in v.instance["tree"]["edges"]) <= 3 for v in c.verdicts)


# --- witnesses ---------------------------------------------------------------


def _gens(I):
    return [list(g) for g in I.gens]


def test_recheck_confirms_a_false_colon_claim():
    I = edge_ideal(EX)
    # I^2 : (x2x3)^5 is not I, so a witness claiming that equality is confirmed
    w = {"kind": "colon_equality", "n": 4, "ideal": _gens(I), "power": 2, "monomial": [0, 5, 5, 0],
         "expected": _gens(I), "expected_unit": False}
    assert recheck(w)
    w["monomial"] = [0, 0, 5, 5]
    assert not recheck(w)


def test_recheck_quantities_and_inequalities():
    I = edge_ideal(EX)
    w = {"kind": "quantity", "n": 4, "ideal": _gens(I), "power": 2, "quantity": "reg_ideal",
         "expected": 28, "observed": 30}
    assert recheck(w)
    assert not recheck({**w, "expected": 30})
    ineq = {"kind": "inequality", "n": 4, "ideal": _gens(I),
            "terms": {"r1": ["reg_ideal", 1], "r2": ["reg_ideal", 2]}, "relation": ["r2", "==", "r1", 12]}
    assert recheck(ineq)
    assert not recheck({**ineq, "relation": ["r2", ">", "r1", 12]})


def test_recheck_tree_property():
    from wtreelab.io import GraphDocument
    w = {"kind": "tree_property", "claim": "colon_structure", "tree": GraphDocument.from_tree(EX).to_dict()}
    assert not recheck(w)


def test_verdict_roundtrip():
    v = check_colon_structure(EX, label="ex")
    assert Verdict.from_dict(json.loads(json.dumps(v.to_dict()))) == v


@given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 2**32))
def test_pendant_colon_law_on_random_trees(n, W, seed):
    G = generate_random("increasing", n, W, seed)
    v = check_pendant_colon(G, t_max=3)
    assert v.status == HOLDS, v.detail


@given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 2**32))
def test_colon_target_contains_power(n, W, seed):
    # I^t sits inside its own colon, so the target ideal must contain it
    from wtreelab.monomials import is_subideal
    G = generate_random("increasing", n, W, seed)
    A = analyze(G)
    t = A.per_root[A.best_root()].s + 1
    assert is_subideal(ideal_power(edge_ideal(G), t), colon_target(G, A))


def test_forced_counterexample_survives_recheck(monkeypatch):
    import wtreelab.verify as vmod
    from wtreelab.monomials import variable_ideal

    # a deliberately wrong target: drop the A-set part of the colon
    monkeypatch.setattr(vmod, "colon_target", lambda G, A: variable_ideal(range(G.n), G.n))
    v = vmod.check_colon_structure(EX)
    assert v.status == COUNTEREXAMPLE
    assert recheck(json.loads(json.dumps(v.witness)))
