"""Edge-weighted trees and the combinatorial data attached to them.

Vertices are indexed by their position in the input order; that order is also
the variable order of the polynomial ring, so vertex ``i`` is variable ``x_i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .monomials import Monomial, MonomialIdeal, minimalize


class TreeError(ValueError):
    """Input does not describe a valid edge-weighted tree."""


@dataclass(frozen=True)
class WeightedTree:
    """A tree with positive integer edge weights.

    ``edges`` holds ``(i, j, w)`` with vertex indices ``i < j``, sorted.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n < 2:
            raise TreeError("a weighted tree needs at least two vertices")
        if len(set(self.vertices)) != n:
            raise TreeError("vertex names must be unique")
        seen = set()
        for i, j, w in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise TreeError(f"edge ({i}, {j}) references an unknown vertex")
            if i == j:
                raise TreeError(f"loop at vertex {self.vertices[i]}")
            if w < 1:
                raise TreeError(f"non-positive weight {w} on edge {self.vertices[i]}{self.vertices[j]}")
            key = frozenset((i, j))
            if key in seen:
                raise TreeError(f"duplicate edge {self.vertices[i]}{self.vertices[j]}")
            seen.add(key)
        if len(self.edges) != n - 1:
            raise TreeError(f"a tree on {n} vertices has {n - 1} edges, got {len(self.edges)}")
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from((i, j) for i, j, _ in self.edges)
        if not nx.is_connected(g):
            raise TreeError("graph is disconnected (or has a cycle)")

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[tuple[str, str, int]]) -> "WeightedTree":
        index = {v: k for k, v in enumerate(vertices)}
        out = []
        for u, v, w in edges:
            if u not in index or v not in index:
                raise TreeError(f"edge {u}{v} references an unknown vertex")
            i, j = sorted((index[u], index[v]))
            out.append((i, j, int(w)))
        return cls(tuple(vertices), tuple(sorted(out)))

    @classmethod
    def path(cls, weights: Sequence[int], prefix: str = "x") -> "WeightedTree":
        n = len(weights) + 1
        names = [f"{prefix}{k + 1}" for k in range(n)]
        return cls.from_edges(names, [(names[k], names[k + 1], w) for k, w in enumerate(weights)])

    @classmethod
    def star(cls, weights: Sequence[int]) -> "WeightedTree":
        names = ["c"] + [f"l{k + 1}" for k in range(len(weights))]
        return cls.from_edges(names, [("c", names[k + 1], w) for k, w in enumerate(weights)])

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def adjacency(self) -> tuple[dict[int, int], ...]:
        adj: list[dict[int, int]] = [{} for _ in self.vertices]
        for i, j, w in self.edges:
            adj[i][j] = w
            adj[j][i] = w
        return tuple(adj)

    def weight(self, u: int, v: int) -> int:
        return self.adjacency[u][v]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.degree(v) == 1]

    @cached_property
    def _parents(self) -> tuple[tuple[int, ...], ...]:
        # _parents[r][v] is the neighbour of v on the way to r (-1 for r itself).
        out = []
        for r in range(self.n):
            parent = [-1] * self.n
            seen = {r}
            queue = deque([r])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if v not in seen:
                        seen.add(v)
                        parent[v] = u
                        queue.append(v)
            out.append(tuple(parent))
        return tuple(out)

    def parent(self, v: int, root: int) -> int:
        return self._parents[root][v]

    def path_between(self, u: int, v: int) -> list[int]:
        """The unique simple path u -> ... -> v."""
        parent = self._parents[v]
        out = [u]
        while out[-1] != v:
            out.append(parent[out[-1]])
        return out

    def distance(self, u: int, v: int) -> int:
        return len(self.path_between(u, v)) - 1

    def children(self, v: int, root: int) -> list[int]:
        return [u for u in self.neighbors(v) if self.parent(u, root) == v]

    def index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise TreeError(f"unknown vertex {name!r}") from None

    def remove_leaf(self, y: int) -> "WeightedTree":
        if self.degree(y) != 1:
            raise TreeError(f"{self.vertices[y]} is not a leaf")
        names = [v for k, v in enumerate(self.vertices) if k != y]
        edges = [(self.vertices[i], self.vertices[j], w) for i, j, w in self.edges if y not in (i, j)]
        return WeightedTree.from_edges(names, edges)


@dataclass(frozen=True)
class RootAnalysis:
    root: int
    increasing: bool
    strictly_increasing: bool
    special_vertices: frozenset[int]
    special_edges: frozenset[tuple[int, int]]

    @property
    def s(self) -> int:
        return len(self.special_vertices)


@dataclass(frozen=True)
class TreeAnalysis:
    roots: tuple[int, ...]
    per_root: tuple[RootAnalysis, ...] = field(repr=False)
    s_min: int | None
    is_increasing: bool
    is_strictly_increasing: bool
    d_max: int
    mu: tuple[int, ...]
    a_set: frozenset[int]
    bipartition: tuple[frozenset[int], frozenset[int]]

    @property
    def strict_roots(self) -> tuple[int, ...]:
        return tuple(a.root for a in self.per_root if a.strictly_increasing)

    def best_root(self) -> int:
        """Least root (in vertex order) achieving the minimal special count."""
        if not self.is_increasing:
            raise TreeError("tree is not increasing")
        return min(r for r in self.roots if self.per_root[r].s == self.s_min)


def _leaf_paths(G: WeightedTree, r: int):
    for leaf in G.leaves():
        if leaf != r:
            yield G.path_between(leaf, r)


def analyze_root(G: WeightedTree, r: int) -> RootAnalysis:
    """Classify root r and collect its special edges.

    A directed edge u -> v (v one step closer to r) is special when some
    neighbour c of u further from r has w(cu) = w(uv); c need not be a leaf.
    Its tail u is the special vertex.
    """
    if not 0 <= r < G.n:
        raise TreeError(f"unknown root index {r}")
    increasing = strict = True
    for p in _leaf_paths(G, r):
        ws = [G.weight(a, b) for a, b in zip(p, p[1:])]
        for a, b in zip(ws, ws[1:]):
            if a > b:
                increasing = False
            if a >= b:
                strict = False
    if not increasing:
        strict = False
    edges = special_edges_any_start(G, r)
    return RootAnalysis(r, increasing, strict, frozenset(u for u, _ in edges), edges)


def leaf_special_vertices(G: WeightedTree, r: int) -> frozenset[int]:
    """Second vertices v2 of leaf paths v1 -> v2 -> v3 -> ... -> r with w(v1v2) = w(v2v3).

    Only leaf-started paths count here, so this can undercount special edges.
    """
    out = set()
    for p in _leaf_paths(G, r):
        if len(p) >= 3 and G.weight(p[0], p[1]) == G.weight(p[1], p[2]):
            out.add(p[1])
    return frozenset(out)


def special_edges_any_start(G: WeightedTree, r: int) -> frozenset[tuple[int, int]]:
    """Directed edges u -> v (v toward r) having a child c of u with w(cu) = w(uv)."""
    out = set()
    for u in range(G.n):
        v = G.parent(u, r)
        if v < 0:
            continue
        w = G.weight(u, v)
        if any(G.weight(u, c) == w for c in G.children(u, r)):
            out.add((u, v))
    return frozenset(out)


def mu(G: WeightedTree) -> tuple[int, ...]:
    """Largest weight of an edge at each vertex."""
    return tuple(max(G.adjacency[v].values()) for v in range(G.n))


def a_set(G: WeightedTree) -> frozenset[int]:
    """Vertices v with an odd-length path v -> ... -> w whose last edge weighs less than mu(w)."""
    m = mu(G)
    out = set()
    for v in range(G.n):
        for w in range(G.n):
            if v == w:
                continue
            p = G.path_between(v, w)
            if (len(p) - 1) % 2 == 1 and G.weight(p[-2], w) < m[w]:
                out.add(v)
                break
    return frozenset(out)


def bipartition(G: WeightedTree) -> tuple[frozenset[int], frozenset[int]]:
    """Two-colouring; the first side contains vertex 0."""
    side = [G.distance(v, 0) % 2 for v in range(G.n)]
    return (frozenset(v for v in range(G.n) if side[v] == 0),
            frozenset(v for v in range(G.n) if side[v] == 1))


def analyze(G: WeightedTree) -> TreeAnalysis:
    per_root = tuple(analyze_root(G, r) for r in range(G.n))
    roots = tuple(a.root for a in per_root if a.increasing)
    return TreeAnalysis(
        roots=roots,
        per_root=per_root,
        s_min=min(per_root[r].s for r in roots) if roots else None,
        is_increasing=bool(roots),
        is_strictly_increasing=any(a.strictly_increasing for a in per_root),
        d_max=max(w for _, _, w in G.edges),
        mu=mu(G),
        a_set=a_set(G),
        bipartition=bipartition(G),
    )


def _unit_vector(n: int, i: int, e: int = 1) -> list[int]:
    v = [0] * n
    v[i] = e
    return v


def edge_monomial(G: WeightedTree, i: int, j: int) -> Monomial:
    w = G.weight(i, j)
    m = [0] * G.n
    m[i] = m[j] = w
    return tuple(m)


def edge_ideal(G: WeightedTree) -> MonomialIdeal:
    return minimalize([edge_monomial(G, i, j) for i, j, _ in G.edges], G.n)


def complete_bipartite_ideal(U: Iterable[int], V: Iterable[int], n: int) -> MonomialIdeal:
    U, V = frozenset(U), frozenset(V)
    if not U or not V:
        raise TreeError("complete bipartite ideal needs two nonempty sides")
    if U & V:
        raise TreeError("sides of a bipartition must be disjoint")
    gens = []
    for u in U:
        for v in V:
            m = [0] * n
            m[u] = m[v] = 1
            gens.append(m)
    return minimalize(gens, n)


def witness_monomial(G: WeightedTree, r: int, analysis: RootAnalysis | None = None) -> Monomial:
    """Product of (uv)^w(uv) over special edges times prod v^(mu(v)-1)."""
    a = analysis or analyze_root(G, r)
    if not a.increasing:
        raise TreeError(f"{G.vertices[r]} is not a root of an increasing weighting")
    out = [e - 1 for e in mu(G)]
    for u, v in a.special_edges:
        w = G.weight(u, v)
        out[u] += w
        out[v] += w
    return tuple(out)


def is_star_centered_at(G: WeightedTree, r: int) -> bool:
    return G.degree(r) == G.n - 1


def longest_path_pendant(G: WeightedTree, r: int) -> list[int] | None:
    """A longest path r = v0 -> ... -> vk with the five pendant properties, or None.

    Returns None when G is a star centred at r, where no such path is promised.
    Raises TreeError if no longest path has the properties, which would refute
    the structural lemma for an increasing root.
    """
    if is_star_centered_at(G, r):
        return None
    depth = [G.distance(v, r) for v in range(G.n)]
    k = max(depth)
    leaves = set(G.leaves())
    for vk in sorted(v for v in range(G.n) if depth[v] == k):
        p = G.path_between(vk, r)[::-1]
        v1, v2 = p[k - 1], p[k - 2]
        w12 = G.weight(v1, v2)
        # (1) leaf; (3) v_{k-1} has one non-leaf neighbour, counting a leaf root as internal
        if vk not in leaves:
            continue
        if any(u not in leaves for u in G.neighbors(v1) if u != v2):
            continue
        # (2) the edge v_{k-1}v_{k-2} is lightest among non-leaf edges at v_{k-2}
        if any(w12 > G.weight(v2, u) for u in G.neighbors(v2) if u not in leaves):
            continue
        # (4) w12 is the heaviest and (5) w(v_{k-1}v_k) the lightest edge at v_{k-1}
        ws = [G.weight(v1, u) for u in G.neighbors(v1)]
        if max(ws) > w12 or G.weight(v1, vk) > min(ws):
            continue
        return p
    raise TreeError(f"no longest path from {G.vertices[r]} has the pendant properties")


def pendant_for_colon(G: WeightedTree, r: int) -> tuple[int, int]:
    """Pendant edge (x, y), y a leaf, with w(xy) minimal among edges at x.

    Taken from the longest path when one exists; for a star centred at r the
    lightest leaf edge is used.
    """
    p = longest_path_pendant(G, r)
    if p is not None:
        return p[-2], p[-1]
    leaf = min(G.neighbors(r), key=lambda u: (G.weight(r, u), u))
    if G.n == 2:
        return leaf, r
    return r, leaf


class InfeasibleWeightsError(ValueError):
    pass


def generate_random(kind: str, n: int, max_weight: int, seed: int) -> WeightedTree:
    """Random tree shape (uniform Prufer sequence) with an increasing or strict weighting.

    Weights are assigned from the leaves up toward a random root, each edge
    drawn uniformly between the largest child-edge weight (plus one when
    strict) and ``max_weight``. In the strict case the upper end is lowered by
    the number of edges still to come above it, so no draw can strand an
    ancestor.
    """
    if kind not in ("increasing", "strict"):
        raise ValueError(f"unknown kind {kind!r}")
    if n < 2 or max_weight < 1:
        raise ValueError("need n >= 2 and max_weight >= 1")
    rng = np.random.default_rng(seed)
    if n == 2:
        shape = nx.path_graph(2)
    else:
        shape = nx.from_prufer_sequence([int(x) for x in rng.integers(0, n, size=n - 2)])
    root = int(rng.integers(0, n))
    names = [f"x{k + 1}" for k in range(n)]
    depth = nx.single_source_shortest_path_length(shape, root)
    height = {v: 0 for v in shape}
    parent = {}
    for v in sorted(shape, key=lambda v: (-depth[v], v)):
        for u in shape[v]:
            if depth[u] == depth[v] - 1:
                parent[v] = u
            elif depth[u] == depth[v] + 1:
                height[v] = max(height[v], height[u] + 1)
    strict = kind == "strict"
    # Edge v-parent(v) lies on a chain of height[v] + 1 edges from a leaf.
    if strict and max(height[v] + 1 for v in parent) > max_weight:
        raise InfeasibleWeightsError(
            f"strict weighting needs {max(height.values())} levels but max_weight is {max_weight}")
    weight = {}
    for v in sorted(parent, key=lambda v: (-depth[v], v)):
        child = [weight[u] for u in shape[v] if parent.get(u) == v]
        lo = max(child, default=0) + 1 if strict else max(child, default=1)
        hi = max_weight - (depth[v] - 1) if strict else max_weight
        weight[v] = int(rng.integers(lo, hi + 1))
    return WeightedTree.from_edges(names, [(names[v], names[parent[v]], weight[v]) for v in sorted(parent)])
