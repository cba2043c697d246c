"""Certificate checkers for the depth and regularity results on weighted trees.

Every checker recomputes its claim from primitives and returns a ``Verdict``.
Closed-form values only ever appear as the expected side of a comparison.
Counterexample verdicts carry a self-contained witness that ``recheck`` can
confirm without the tree analysis that produced it.
"""

from __future__ import annotations

import operator
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .io import GraphDocument
from .linalg import GF32003, RATIONALS, FieldSpec
from .monomials import (MonomialIdeal, ResourceLimitError, colon_by_monomial, contains, depth_at_least_one,
                        ideal_power, ideal_sum, minimalize, radical, variable_ideal, zero_ideal)
from .resolution import betti, betti_koszul, lcm_degree, subset_lcms, taylor_is_minimal, taylor_total_betti
from .tree import (InfeasibleWeightsError, TreeAnalysis, TreeError, WeightedTree, analyze,
                   complete_bipartite_ideal, edge_ideal, generate_random, pendant_for_colon, witness_monomial)

HOLDS = "holds"
COUNTEREXAMPLE = "counterexample"
SKIPPED = "skipped_resource"

SUITES = ("all", "depth", "regularity", "colon", "taylor", "structure")


@dataclass
class Verdict:
    claim: str
    instance: dict
    status: str
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(**d)


def _instance(G: WeightedTree, label: str = "", **params) -> dict:
    return {"label": label, "tree": GraphDocument.from_tree(G).to_dict(), "params": params}


def _tree_of(instance: dict) -> WeightedTree:
    t = instance["tree"]
    return WeightedTree.from_edges(t["vertices"], [(e["u"], e["v"], e["w"]) for e in t["edges"]])


def _gens(I: MonomialIdeal) -> list[list[int]]:
    return [list(g) for g in I.gens]


def _ideal(n: int, gens) -> MonomialIdeal:
    return minimalize([tuple(g) for g in gens], n)


# --- witnesses -------------------------------------------------------------
#
# kinds:
#   colon_equality  I^t : f should equal `expected`
#   quantity        a homological value of I^t should equal `expected`
#   inequality      observed values should satisfy a stated relation
#   tree_property   a combinatorial statement about the serialized tree


def _colon_witness(I, t, f, expected) -> dict:
    return {"kind": "colon_equality", "n": I.ring_dim, "ideal": _gens(I), "power": t,
            "monomial": list(f), "expected": _gens(expected), "expected_unit": expected.unit}


def _quantity_witness(I, t, quantity, expected, observed) -> dict:
    return {"kind": "quantity", "n": I.ring_dim, "ideal": _gens(I), "power": t,
            "quantity": quantity, "expected": expected, "observed": observed}


def _quantity(I: MonomialIdeal, quantity: str):
    if quantity == "lcm_degree":
        return lcm_degree(I)
    if quantity == "taylor_minimal":
        return taylor_is_minimal(I)
    if quantity == "depth_at_least_one":
        return depth_at_least_one(I)
    T = betti_koszul(I, RATIONALS)
    return {"depth": T.depth, "pd": T.pd, "reg_ideal": T.reg_ideal, "totals": T.totals}[quantity]()


_OPS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq, ">": operator.gt}


def _inequality_witness(I, terms: dict, relation: list) -> dict:
    """``relation`` is [lhs, op, rhs, offset] meaning ``lhs op rhs + offset``; rhs may be null."""
    return {"kind": "inequality", "n": I.ring_dim, "ideal": _gens(I), "terms": terms, "relation": relation}


def recheck(witness: dict) -> bool:
    """True when the serialized witness really refutes its claim."""
    kind = witness["kind"]
    if kind == "colon_equality":
        n = witness["n"]
        It = ideal_power(_ideal(n, witness["ideal"]), witness["power"])
        lhs = colon_by_monomial(It, tuple(witness["monomial"]))
        rhs = (MonomialIdeal(n, (), True) if witness["expected_unit"] else _ideal(n, witness["expected"]))
        return lhs != rhs
    if kind == "quantity":
        It = ideal_power(_ideal(witness["n"], witness["ideal"]), witness["power"])
        return _quantity(It, witness["quantity"]) != witness["expected"]
    if kind == "inequality":
        vals = {k: _quantity(ideal_power(_ideal(witness["n"], witness["ideal"]), p), q)
                for k, (q, p) in witness["terms"].items()}
        lhs, op, rhs, offset = witness["relation"]
        return not _OPS[op](vals[lhs], (vals[rhs] if rhs else 0) + offset)
    if kind == "tree_property":
        G = _tree_of(witness)
        v = CHECKERS[witness["claim"]](G)
        return v.status == COUNTEREXAMPLE
    raise ValueError(f"unknown witness kind {kind!r}")


# --- shared pieces -----------------------------------------------------------


def _require_increasing(G: WeightedTree, A: TreeAnalysis):
    if not A.is_increasing:
        raise TreeError("checker requires an increasing weighted tree")


def _require_strict(G: WeightedTree, A: TreeAnalysis):
    if not A.is_strictly_increasing:
        raise TreeError("checker requires a strictly increasing weighted tree")


def colon_target(G: WeightedTree, A: TreeAnalysis) -> MonomialIdeal:
    """(A(G)) + I(K_{U,V})."""
    U, V = A.bipartition
    a = variable_ideal(A.a_set, G.n) if A.a_set else zero_ideal(G.n)
    return ideal_sum(a, complete_bipartite_ideal(U, V, G.n))


# --- checkers --------------------------------------------------------------


def check_pendant_colon(G: WeightedTree, t_max: int = 3, label: str = "") -> Verdict:
    """I^t : (xy)^w(xy) = I^(t-1) for the pendant edge picked by the longest-path lemma."""
    A = analyze(G)
    _require_increasing(G, A)
    inst = _instance(G, label, t_max=t_max)
    r = A.best_root()
    try:
        x, y = pendant_for_colon(G, r)
    except TreeError as e:
        return Verdict("pendant_colon", inst, COUNTEREXAMPLE,
                       {"kind": "tree_property", "claim": "pendant_colon", "tree": inst["tree"]}, {"error": str(e)})
    w = G.weight(x, y)
    detail = {"root": G.vertices[r], "pendant": [G.vertices[x], G.vertices[y]], "checked": [], "skipped": []}
    # colon lemma hypotheses: y is a leaf, and every edge at x weighs at least w
    if G.n > 2 and (G.degree(y) != 1 or min(G.adjacency[x].values()) < w):
        return Verdict("pendant_colon", inst, COUNTEREXAMPLE,
                       {"kind": "tree_property", "claim": "pendant_colon", "tree": inst["tree"]},
                       {**detail, "error": "pendant edge violates colon-lemma hypotheses"})
    I = edge_ideal(G)
    f = [0] * G.n
    f[x] = f[y] = w
    f = tuple(f)
    for t in range(2, t_max + 1):
        try:
            lhs = colon_by_monomial(ideal_power(I, t), f)
            rhs = ideal_power(I, t - 1)
        except ResourceLimitError:
            detail["skipped"].append(t)
            continue
        if lhs != rhs:
            return Verdict("pendant_colon", inst, COUNTEREXAMPLE, _colon_witness(I, t, f, rhs), detail)
        detail["checked"].append(t)
    status = HOLDS if detail["checked"] or t_max < 2 else SKIPPED
    return Verdict("pendant_colon", inst, status, None, detail)


def check_colon_structure(G: WeightedTree, label: str = "", root: int | None = None) -> Verdict:
    """(I^t : f(r)) = (A) + I(K_{U,V}) at t = |S(r)| + 1."""
    A = analyze(G)
    _require_increasing(G, A)
    r = A.best_root() if root is None else root
    ra = A.per_root[r]
    t = ra.s + 1
    inst = _instance(G, label, root=G.vertices[r], t=t)
    f = witness_monomial(G, r, ra)
    I = edge_ideal(G)
    try:
        It = ideal_power(I, t)
    except ResourceLimitError as e:
        return Verdict("colon_structure", inst, SKIPPED, None, {"cap": str(e)})
    lhs = colon_by_monomial(It, f)
    rhs = colon_target(G, A)
    detail = {"witness_monomial": list(f), "colon": _gens(lhs), "f_not_in_power": not contains(It, f)}
    if lhs != rhs:
        return Verdict("colon_structure", inst, COUNTEREXAMPLE, _colon_witness(I, t, f, rhs), detail)
    return Verdict("colon_structure", inst, HOLDS, None, detail)


def bipartite_quotient_depth(U: frozenset[int], V: frozenset[int]) -> int | None:
    """Certified depth of K[U u V]/I(K_{U,V}), or None if the certificate fails.

    depth >= 1 by the saturation test; depth <= 1 because the Stanley-Reisner
    complex (the simplices on U and on V) is disconnected.
    """
    if not U or not V:
        return None
    verts = sorted(U | V)
    pos = {v: k for k, v in enumerate(verts)}
    J = complete_bipartite_ideal([pos[u] for u in U], [pos[v] for v in V], len(verts))
    if not depth_at_least_one(J):
        return None
    # Minimal non-faces are exactly the cross pairs, so the facets are U and V.
    return 1


def certificate_depth(G: WeightedTree, A: TreeAnalysis, t: int) -> tuple[int | None, dict]:
    """Depth of S/I^t via saturation + colon identity + additivity, or None.

    For t above t0 = s(G)+1 the bound depth <= 1 is carried down from t0 by
    the pendant-colon identities I^k : (xy)^w = I^(k-1).
    """
    I = edge_ideal(G)
    r = A.best_root()
    ra = A.per_root[r]
    t0 = ra.s + 1
    info: dict = {"root": G.vertices[r], "t0": t0}
    It = ideal_power(I, t)
    info["saturated"] = depth_at_least_one(It)
    It0 = It if t == t0 else ideal_power(I, t0)
    f = witness_monomial(G, r, ra)
    lhs = colon_by_monomial(It0, f)
    rhs = colon_target(G, A)
    info["colon_identity"] = lhs == rhs
    info["f_not_in_power"] = not lhs.unit
    info["colon_is_radical"] = radical(lhs) == lhs
    U1 = A.bipartition[0] - A.a_set
    V1 = A.bipartition[1] - A.a_set
    info["U1_nonempty"] = bool(U1)
    info["V1_nonempty"] = bool(V1)
    # additivity: depth(K[A]/(A)) = 0 plus the bipartite part on the remaining variables
    bip = bipartite_quotient_depth(U1, V1)
    info["additive_depth"] = None if bip is None else 0 + bip
    chain_ok = True
    if t > t0:
        x, y = pendant_for_colon(G, r)
        w = G.weight(x, y)
        f_p = [0] * G.n
        f_p[x] = f_p[y] = w
        for k in range(t0 + 1, t + 1):
            if colon_by_monomial(ideal_power(I, k), tuple(f_p)) != ideal_power(I, k - 1):
                chain_ok = False
    info["monotone_chain"] = chain_ok
    ok = (info["saturated"] and info["colon_identity"] and info["f_not_in_power"] and info["colon_is_radical"]
          and info["additive_depth"] == 1 and chain_ok)
    return (1 if ok else None), info


def check_depth_theorem(G: WeightedTree, extra: int = 1, label: str = "", field: FieldSpec = GF32003,
                        engine: str = "auto") -> Verdict:
    """depth(S/I^t) = 1 for t = s(G)+1, ..., s(G)+1+extra, by oracle and by certificate."""
    A = analyze(G)
    _require_increasing(G, A)
    s = A.s_min
    inst = _instance(G, label, s=s, extra=extra)
    I = edge_ideal(G)
    detail: dict = {"s": s, "powers": {}}
    any_done = False
    for t in range(s + 1, s + 2 + extra):
        row: dict = {}
        detail["powers"][str(t)] = row
        try:
            cert, info = certificate_depth(G, A, t)
        except ResourceLimitError as e:
            row["certificate"] = "skipped"
            row["cap"] = str(e)
            continue
        row["certificate"] = cert
        row["certificate_info"] = info
        try:
            It = ideal_power(I, t)
            oracle = betti(It, engine, field).depth()
            row["oracle"] = oracle
        except ResourceLimitError as e:
            row["oracle"] = "skipped"
            row["cap"] = str(e)
            oracle = None
        any_done = True
        if cert != 1:
            return Verdict("depth_theorem", inst, COUNTEREXAMPLE,
                           {"kind": "tree_property", "claim": "depth_theorem", "tree": inst["tree"]}, detail)
        if oracle is not None and oracle != 1:
            return Verdict("depth_theorem", inst, COUNTEREXAMPLE,
                           _quantity_witness(I, t, "depth", 1, oracle), detail)
    if not any_done:
        return Verdict("depth_theorem", inst, SKIPPED, None, detail)
    return Verdict("depth_theorem", inst, HOLDS, None, detail)


def check_constant_depth_iff(G: WeightedTree, label: str = "", field: FieldSpec = GF32003,
                             engine: str = "auto") -> Verdict:
    """Strict trees have depth 1 at every power; non-strict ones have depth(S/I) >= 2."""
    A = analyze(G)
    _require_increasing(G, A)
    inst = _instance(G, label, strict=A.is_strictly_increasing)
    I = edge_ideal(G)
    detail: dict = {"strict": A.is_strictly_increasing, "depths": {}}
    if A.is_strictly_increasing:
        for t in range(1, A.s_min + 3):
            try:
                d = betti(ideal_power(I, t), engine, field).depth()
            except ResourceLimitError:
                detail["depths"][str(t)] = "skipped"
                continue
            detail["depths"][str(t)] = d
            if d != 1:
                return Verdict("constant_depth_iff", inst, COUNTEREXAMPLE,
                               _quantity_witness(I, t, "depth", 1, d), detail)
        if all(v == "skipped" for v in detail["depths"].values()):
            return Verdict("constant_depth_iff", inst, SKIPPED, None, detail)
        return Verdict("constant_depth_iff", inst, HOLDS, None, detail)
    d = betti(I, engine, field).depth()
    detail["depths"]["1"] = d
    if d < 2:
        return Verdict("constant_depth_iff", inst, COUNTEREXAMPLE,
                       _inequality_witness(I, {"d1": ["depth", 1]}, ["d1", ">=", None, 2]), detail)
    return Verdict("constant_depth_iff", inst, HOLDS, None, detail)


def check_depth_monotone(G: WeightedTree, t_max: int = 3, label: str = "", field: FieldSpec = GF32003,
                         engine: str = "auto") -> Verdict:
    """depth(S/I^(t+1)) <= depth(S/I^t) along the computed profile, and saturation agrees."""
    from .resolution import depth_profile

    A = analyze(G)
    _require_increasing(G, A)
    inst = _instance(G, label, t_max=t_max)
    prof = depth_profile(G, t_max, field, engine)
    I = edge_ideal(G)
    sat = [depth_at_least_one(ideal_power(I, t)) for t in range(1, len(prof.depths) + 1)]
    detail = {"profile": list(prof.depths), "truncated_at": prof.truncated_at,
              "stable_from": prof.stable_from(), "saturated": sat}
    if not prof.depths:
        return Verdict("depth_monotone", inst, SKIPPED, None, detail)
    for t, (a, b) in enumerate(zip(prof.depths, prof.depths[1:]), 1):
        if b > a:
            return Verdict("depth_monotone", inst, COUNTEREXAMPLE,
                           _inequality_witness(I, {"a": ["depth", t], "b": ["depth", t + 1]}, ["b", "<=", "a", 0]),
                           detail)
    for t, (d, s) in enumerate(zip(prof.depths, sat), 1):
        if (d >= 1) != s:
            return Verdict("depth_monotone", inst, COUNTEREXAMPLE,
                           _quantity_witness(I, t, "depth_at_least_one", d >= 1, s), detail)
    return Verdict("depth_monotone", inst, HOLDS, None, detail)


def check_taylor_minimal_and_betti(G: WeightedTree, label: str = "") -> Verdict:
    """Taylor complex is minimal and beta_i(S/I) = C(n-1, i) from both engines."""
    A = analyze(G)
    _require_strict(G, A)
    inst = _instance(G, label)
    I = edge_ideal(G)
    try:
        minimal = taylor_is_minimal(I)
        tables = {e: betti(I, e) for e in ("taylor", "koszul")}
    except ResourceLimitError as e:
        return Verdict("taylor_minimal_betti", inst, SKIPPED, None, {"cap": str(e)})
    expected = taylor_total_betti(G.n - 1)
    detail = {"taylor_minimal": minimal, "totals": {e: T.totals() for e, T in tables.items()},
              "expected": expected}
    if not minimal:
        return Verdict("taylor_minimal_betti", inst, COUNTEREXAMPLE,
                       _quantity_witness(I, 1, "taylor_minimal", True, False), detail)
    for e, T in tables.items():
        if T.totals() != expected:
            return Verdict("taylor_minimal_betti", inst, COUNTEREXAMPLE,
                           _quantity_witness(I, 1, "totals", expected, T.totals()), detail)
    return Verdict("taylor_minimal_betti", inst, HOLDS, None, detail)


def check_lcm_degree(G: WeightedTree, label: str = "") -> Verdict:
    """deg lcm(G(I)) = d + sum of weights."""
    A = analyze(G)
    _require_increasing(G, A)
    inst = _instance(G, label)
    I = edge_ideal(G)
    expected = A.d_max + sum(w for _, _, w in G.edges)
    got = lcm_degree(I)
    detail = {"lcm_degree": got, "expected": expected}
    if got != expected:
        return Verdict("lcm_degree", inst, COUNTEREXAMPLE, _quantity_witness(I, 1, "lcm_degree", expected, got),
                       detail)
    return Verdict("lcm_degree", inst, HOLDS, None, detail)


def reg_closed_form(G: WeightedTree) -> int:
    return max(w for _, _, w in G.edges) + sum(w - 1 for _, _, w in G.edges) + 1


def check_reg_formula(G: WeightedTree, label: str = "", field: FieldSpec = GF32003,
                      engine: str = "both") -> Verdict:
    """reg(I) = d + sum(w(e) - 1) + 1."""
    A = analyze(G)
    _require_strict(G, A)
    inst = _instance(G, label)
    I = edge_ideal(G)
    try:
        got = betti(I, engine, field).reg_ideal()
    except ResourceLimitError as e:
        return Verdict("reg_formula", inst, SKIPPED, None, {"cap": str(e)})
    expected = reg_closed_form(G)
    detail = {"reg": got, "expected": expected}
    if got != expected:
        return Verdict("reg_formula", inst, COUNTEREXAMPLE, _quantity_witness(I, 1, "reg_ideal", expected, got),
                       detail)
    return Verdict("reg_formula", inst, HOLDS, None, detail)


def check_reg_power(G: WeightedTree, t_max: int = 2, label: str = "", field: FieldSpec = GF32003,
                    engine: str = "both") -> Verdict:
    """reg(I^t) = 2d(t-1) + reg(I) for t = 2..t_max."""
    A = analyze(G)
    _require_strict(G, A)
    inst = _instance(G, label, t_max=t_max)
    I = edge_ideal(G)
    detail: dict = {"d": A.d_max, "reg": {}, "skipped": []}
    try:
        reg1 = betti(I, engine, field).reg_ideal()
    except ResourceLimitError as e:
        return Verdict("reg_power", inst, SKIPPED, None, {"cap": str(e)})
    detail["reg"]["1"] = reg1
    for t in range(2, t_max + 1):
        try:
            got = betti(ideal_power(I, t), engine, field).reg_ideal()
        except ResourceLimitError:
            detail["skipped"].append(t)
            continue
        detail["reg"][str(t)] = got
        expected = 2 * A.d_max * (t - 1) + reg1
        if got != expected:
            return Verdict("reg_power", inst, COUNTEREXAMPLE,
                           _inequality_witness(I, {"r1": ["reg_ideal", 1], "rt": ["reg_ideal", t]},
                                               ["rt", "==", "r1", 2 * A.d_max * (t - 1)]), detail)
    status = HOLDS if len(detail["reg"]) > 1 or t_max < 2 else SKIPPED
    return Verdict("reg_power", inst, status, None, detail)


EXAMPLE_WEIGHTS = (6, 5, 5)


def example_tree() -> WeightedTree:
    """Path x1-x2-x3-x4 with weights 6, 5, 5."""
    return WeightedTree.path(EXAMPLE_WEIGHTS)


def check_nonstrict_reg_counterexample(field: FieldSpec = GF32003, engine: str = "both") -> Verdict:
    """On the weights (6,5,5) path: reg(I) = 16, reg(I^2) = 30 and 30 > 2*6 + 16."""
    G = example_tree()
    inst = _instance(G, "path(6,5,5)")
    I = edge_ideal(G)
    r1 = betti(I, engine, field).reg_ideal()
    r2 = betti(ideal_power(I, 2), engine, field).reg_ideal()
    d = analyze(G).d_max
    bound = 2 * d + r1
    detail = {"reg1": r1, "reg2": r2, "d": d, "strict_formula": bound, "exceeds": r2 > bound}
    if r1 != 16:
        return Verdict("nonstrict_reg_example", inst, COUNTEREXAMPLE,
                       _quantity_witness(I, 1, "reg_ideal", 16, r1), detail)
    if r2 != 30:
        return Verdict("nonstrict_reg_example", inst, COUNTEREXAMPLE,
                       _quantity_witness(I, 2, "reg_ideal", 30, r2), detail)
    if not r2 > bound:
        return Verdict("nonstrict_reg_example", inst, COUNTEREXAMPLE,
                       _inequality_witness(I, {"r1": ["reg_ideal", 1], "r2": ["reg_ideal", 2]},
                                           ["r2", ">", "r1", 2 * d]), detail)
    return Verdict("nonstrict_reg_example", inst, HOLDS, None, detail)


# --- structural lemmas ---------------------------------------------------------


def _tree_counterexample(claim, inst, detail):
    witness = {"kind": "tree_property", "claim": claim, "tree": inst["tree"]}
    return Verdict(claim, inst, COUNTEREXAMPLE, witness, detail)


def check_special_count(G: WeightedTree, label: str = "") -> Verdict:
    """For every root: s(r) = |S(r)|, and s(r) = 0 exactly when r is a strict root."""
    A = analyze(G)
    _require_increasing(G, A)
    inst = _instance(G, label)
    bad = []
    for r in A.roots:
        a = A.per_root[r]
        if a.s != len(a.special_edges) or (a.s == 0) != a.strictly_increasing:
            bad.append(G.vertices[r])
    if bad:
        return _tree_counterexample("special_count", inst, {"roots": bad})
    return Verdict("special_count", inst, HOLDS, None, {"s": {G.vertices[r]: A.per_root[r].s for r in A.roots}})


def check_bipartition_sides(G: WeightedTree, label: str = "") -> Verdict:
    """Every edge crosses (U, V), and neither side lies inside A(G)."""
    A = analyze(G)
    _require_increasing(G, A)
    inst = _instance(G, label)
    U, V = A.bipartition
    crossing = all((i in U) != (j in U) for i, j, _ in G.edges) and not (U & V) and (U | V) == set(range(G.n))
    detail = {"crossing": crossing, "U_not_in_A": not U <= A.a_set, "V_not_in_A": not V <= A.a_set}
    if not all(detail.values()):
        return _tree_counterexample("bipartition_sides", inst, detail)
    return Verdict("bipartition_sides", inst, HOLDS, None, detail)


def _alternate_edges_special(p: list[int], S: frozenset[tuple[int, int]]) -> bool:
    und = {frozenset(e) for e in S}
    return all(frozenset((p[2 * i - 1], p[2 * i])) in und for i in range(1, len(p) // 2))


def check_path_lemmas(G: WeightedTree, label: str = "") -> Verdict:
    """Alternate edges v2v3, v4v5, ... of the relevant odd paths are special, at every root.

    Paths: the shortest odd path witnessing v in A(G), and every odd path of
    length at least 3 between two vertices outside A(G).
    """
    A = analyze(G)
    _require_increasing(G, A)
    inst = _instance(G, label)
    m = A.mu
    failures = []
    for r in A.roots:
        S = A.per_root[r].special_edges
        for v in sorted(A.a_set):
            cands = [G.path_between(v, w) for w in range(G.n) if w != v]
            cands = [p for p in cands if (len(p) - 1) % 2 == 1 and G.weight(p[-2], p[-1]) < m[p[-1]]]
            best = min(cands, key=len)
            if not _alternate_edges_special(best, S):
                failures.append({"root": G.vertices[r], "kind": "inside", "path": [G.vertices[x] for x in best]})
        out = [v for v in range(G.n) if v not in A.a_set]
        for u, v in combinations(out, 2):
            p = G.path_between(u, v)
            if (len(p) - 1) % 2 == 1 and len(p) >= 4 and not _alternate_edges_special(p, S):
                failures.append({"root": G.vertices[r], "kind": "outside", "path": [G.vertices[x] for x in p]})
    if failures:
        return _tree_counterexample("path_lemmas", inst, {"failures": failures})
    return Verdict("path_lemmas", inst, HOLDS, None, {})


def check_subset_lcm(G: WeightedTree, label: str = "") -> Verdict:
    """Strict trees: lcm(W1) != lcm(W2) for W1 < W2, and deg lcm(G(I)) >= deg lcm(W) + (n-1-|W|)."""
    A = analyze(G)
    _require_strict(G, A)
    inst = _instance(G, label)
    I = edge_ideal(G)
    m = len(I.gens)
    if m > 14:
        return Verdict("subset_lcm", inst, SKIPPED, None, {"cap": "more than 14 generators"})
    lcms = subset_lcms(I.as_array())
    degs = lcms.sum(axis=1)
    full = int(degs[-1])
    sizes = np.array([bin(U).count("1") for U in range(1 << m)])
    gap_ok = bool(np.all(full >= degs + (m - sizes)))
    strict_ok = taylor_is_minimal(I)
    detail = {"strict_chain": strict_ok, "degree_gap": gap_ok}
    if not (strict_ok and gap_ok):
        return _tree_counterexample("subset_lcm", inst, detail)
    return Verdict("subset_lcm", inst, HOLDS, None, detail)


CHECKERS: dict[str, Callable[..., Verdict]] = {
    "pendant_colon": check_pendant_colon,
    "colon_structure": check_colon_structure,
    "depth_theorem": check_depth_theorem,
    "constant_depth_iff": check_constant_depth_iff,
    "depth_monotone": check_depth_monotone,
    "taylor_minimal_betti": check_taylor_minimal_and_betti,
    "lcm_degree": check_lcm_degree,
    "reg_formula": check_reg_formula,
    "reg_power": check_reg_power,
    "special_count": check_special_count,
    "bipartition_sides": check_bipartition_sides,
    "path_lemmas": check_path_lemmas,
    "subset_lcm": check_subset_lcm,
}

# (claim, needs strict tree)
SUITE_CHECKS: dict[str, list[tuple[str, bool]]] = {
    "depth": [("depth_theorem", False), ("constant_depth_iff", False), ("depth_monotone", False)],
    "colon": [("pendant_colon", False), ("colon_structure", False)],
    "structure": [("special_count", False), ("bipartition_sides", False), ("path_lemmas", False),
                  ("lcm_degree", False)],
    "taylor": [("taylor_minimal_betti", True), ("lcm_degree", False), ("subset_lcm", True)],
    "regularity": [("reg_formula", True), ("reg_power", True)],
}
SUITE_KIND = {"depth": "increasing", "colon": "increasing", "structure": "increasing",
              "taylor": "strict", "regularity": "strict"}


def _dedupe(checks):
    seen, out = set(), []
    for c in checks:
        if c[0] not in seen:
            seen.add(c[0])
            out.append(c)
    return out


SUITE_CHECKS["all"] = _dedupe([c for name in ("structure", "colon", "depth", "taylor", "regularity")
                               for c in SUITE_CHECKS[name]])


def run_checks(G: WeightedTree, suite: str, label: str = "", t_max: int = 3, extra: int = 1) -> list[Verdict]:
    """Run every checker of ``suite`` whose class precondition the tree meets."""
    if suite not in SUITE_CHECKS:
        raise ValueError(f"unknown suite {suite!r}")
    A = analyze(G)
    out = []
    for claim, strict in SUITE_CHECKS[suite]:
        if not A.is_increasing or (strict and not A.is_strictly_increasing):
            continue
        fn = CHECKERS[claim]
        if claim in ("pendant_colon", "depth_monotone"):
            out.append(fn(G, t_max=t_max, label=label))
        elif claim == "depth_theorem":
            out.append(fn(G, extra=extra, label=label))
        elif claim == "reg_power":
            out.append(fn(G, t_max=2, label=label))
        else:
            out.append(fn(G, label=label))
    return out


# --- campaigns ---------------------------------------------------------------


@dataclass
class Campaign:
    suite: str
    params: dict
    verdicts: list[Verdict]

    @property
    def summary(self) -> dict:
        s = {HOLDS: 0, COUNTEREXAMPLE: 0, SKIPPED: 0}
        for v in self.verdicts:
            s[v.status] += 1
        return s

    @property
    def has_counterexample(self) -> bool:
        return any(v.status == COUNTEREXAMPLE for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "params": self.params,
                "verdicts": [v.to_dict() for v in self.verdicts], "summary": self.summary}

    @classmethod
    def from_dict(cls, d: dict) -> "Campaign":
        return cls(d["suite"], d["params"], [Verdict.from_dict(v) for v in d["verdicts"]])


def random_instance(kind: str, n_min: int, n_max: int, max_weight: int | None, seed: int, index: int):
    """Deterministic tree for campaign slot ``index``; redraws shapes that cannot be weighted."""
    ss = np.random.SeedSequence([seed, index])
    rng = np.random.default_rng(ss)
    n = int(rng.integers(n_min, n_max + 1))
    W = n if max_weight is None else max_weight
    for attempt in range(1000):
        sub = int(rng.integers(0, 2**31))
        try:
            return generate_random(kind, n, W, sub), {"n": n, "max_weight": W, "seed": sub}
        except InfeasibleWeightsError:
            continue
    raise InfeasibleWeightsError(f"no {kind} weighting with n={n}, max_weight={W} after 1000 shapes")


def _run_slot(args) -> list[Verdict]:
    suite, kind, n_min, n_max, max_weight, seed, index, t_max, extra = args
    G, gen = random_instance(kind, n_min, n_max, max_weight, seed, index)
    label = f"#{index} {kind} n={gen['n']} W={gen['max_weight']} seed={gen['seed']}"
    verdicts = run_checks(G, suite, label, t_max, extra)
    for v in verdicts:
        v.instance["params"].update(index=index, kind=kind, generator=gen)
    return verdicts


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("WTREELAB_THREADS", "1")))
    except ValueError:
        return 1


def run_campaign(suite: str, n_range: tuple[int, int] = (2, 6), max_weight: int | None = None,
                 count: int = 10, seed: int = 0, t_max: int = 3, extra: int = 1) -> Campaign:
    """Generate ``count`` random trees of the suite's class and run its checkers.

    The ``all`` suite alternates increasing and strict instances.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    n_min, n_max = n_range
    params = {"n_min": n_min, "n_max": n_max, "max_weight": max_weight, "count": count, "seed": seed,
              "t_max": t_max, "extra": extra}
    jobs = []
    for idx in range(count):
        kind = SUITE_KIND.get(suite) or ("increasing" if idx % 2 == 0 else "strict")
        jobs.append((suite, kind, n_min, n_max, max_weight, seed, idx, t_max, extra))
    workers = _workers()
    if workers > 1 and count > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_slot, jobs))
    else:
        results = [_run_slot(j) for j in jobs]
    return Campaign(suite, params, [v for res in results for v in res])


def fixed_instances() -> list[tuple[str, WeightedTree]]:
    return [
        ("single edge w=3", WeightedTree.path([3])),
        ("path(6,5,5)", example_tree()),
        ("unit P3", WeightedTree.path([1, 1])),
        ("unit P4", WeightedTree.path([1, 1, 1])),
        ("star(1,2,3)", WeightedTree.star([1, 2, 3])),
        ("strict path(1,2,3)", WeightedTree.path([1, 2, 3])),
    ]


def run_fixed_suite(t_max: int = 3, extra: int = 1) -> Campaign:
    verdicts = []
    for label, G in fixed_instances():
        verdicts.extend(run_checks(G, "all", label, t_max, extra))
    verdicts.append(check_nonstrict_reg_counterexample())
    return Campaign("fixed", {"t_max": t_max, "extra": extra}, verdicts)
