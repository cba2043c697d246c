"""Multigraded Betti numbers of S/I for monomial ideals I.

Two engines compute the same table by unrelated routes:

* ``betti_taylor`` takes homology of the multidegree strands of the Taylor
  complex tensored with the field;
* ``betti_koszul`` walks the lcm lattice and takes reduced homology of the
  upper Koszul simplicial complex at each lattice point.

Tables always describe the quotient S/I, so the degree-zero entry is 1.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .linalg import GF32003, FieldSpec, homology_rank
from .monomials import Monomial, MonomialIdeal, ResourceLimitError, ideal_power
from .tree import WeightedTree, edge_ideal

DEFAULT_TAYLOR_CAP = 14
DEFAULT_LATTICE_CAP = 100_000

ENGINES = ("auto", "taylor", "koszul", "both")


class EngineMismatchError(AssertionError):
    def __init__(self, taylor: "BettiTable", koszul: "BettiTable"):
        super().__init__("Taylor and Koszul engines disagree")
        self.taylor = taylor
        self.koszul = koszul


@dataclass(frozen=True)
class BettiTable:
    """Nonzero multigraded Betti numbers of S/I as sorted ``(i, b, rank)`` triples."""

    ring_dim: int
    entries: tuple[tuple[int, Monomial, int], ...]

    @classmethod
    def from_dict(cls, n: int, d: dict[tuple[int, Monomial], int]) -> "BettiTable":
        return cls(n, tuple(sorted((i, b, r) for (i, b), r in d.items() if r)))

    def as_dict(self) -> dict[tuple[int, Monomial], int]:
        return {(i, b): r for i, b, r in self.entries}

    def totals(self) -> list[int]:
        """Total Betti numbers beta_0, ..., beta_pd."""
        out = [0] * (self.pd() + 1)
        for i, _, r in self.entries:
            out[i] += r
        return out

    def graded(self) -> dict[tuple[int, int], int]:
        """beta_{i,j} with j the total degree."""
        out: dict[tuple[int, int], int] = defaultdict(int)
        for i, b, r in self.entries:
            out[i, sum(b)] += r
        return dict(sorted(out.items()))

    def pd(self) -> int:
        return max(i for i, _, _ in self.entries)

    def depth(self) -> int:
        return self.ring_dim - self.pd()

    def reg_quotient(self) -> int:
        return max(sum(b) - i for i, b, _ in self.entries)

    def reg_ideal(self) -> int:
        return self.reg_quotient() + 1


def _check_ideal(I: MonomialIdeal):
    if I.unit:
        raise ValueError("the quotient by the unit ideal is zero; no Betti table")


# --- Taylor engine -------------------------------------------------------


def subset_lcms(gens: np.ndarray) -> np.ndarray:
    """Row U (a bitmask over generators) holds the exponent vector of m_U."""
    m, n = gens.shape
    out = np.zeros((1 << m, n), dtype=np.int64)
    for j in range(m):
        out[1 << j: 1 << (j + 1)] = np.maximum(out[: 1 << j], gens[j])
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


def taylor_sign(i: int, U: int) -> int:
    """(-1)^(j-1) when generator i is the j-th smallest element of U."""
    return -1 if _popcount(U & ((1 << i) - 1)) % 2 else 1


def _check_taylor_cap(I: MonomialIdeal, cap: int):
    if len(I.gens) > cap:
        raise ResourceLimitError("Taylor complex generators", len(I.gens), cap)


def taylor_strand_boundary(group: Sequence[int], p: int) -> np.ndarray:
    """Matrix of d_p restricted to one multidegree strand.

    ``group`` lists the subsets U (bitmasks) with a common lcm. Only faces
    U \\ {i} inside the group survive, since any other face has strictly
    smaller lcm and its coefficient m_U/m_{U\\i} vanishes in the field.
    """
    cols = [U for U in group if _popcount(U) == p]
    rows = [U for U in group if _popcount(U) == p - 1]
    pos = {U: k for k, U in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, U in enumerate(cols):
        rest = U
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            k = pos.get(U ^ low)
            if k is not None:
                mat[k, c] = taylor_sign(i, U)
    return mat


def _taylor_strand_betti(group: list[int], field: FieldSpec) -> dict[int, int]:
    sizes = sorted({_popcount(U) for U in group})
    if len(group) == 1:
        return {sizes[0]: 1}
    out = {}
    for p in range(sizes[0], sizes[-1] + 1):
        h = homology_rank(taylor_strand_boundary(group, p + 1), taylor_strand_boundary(group, p), field)
        if h:
            out[p] = h
    return out


def betti_taylor(I: MonomialIdeal, field: FieldSpec = GF32003, cap: int = DEFAULT_TAYLOR_CAP) -> BettiTable:
    _check_ideal(I)
    _check_taylor_cap(I, cap)
    n = I.ring_dim
    lcms = subset_lcms(I.as_array())
    groups: dict[Monomial, list[int]] = defaultdict(list)
    for U, row in enumerate(lcms.tolist()):
        groups[tuple(row)].append(U)
    table = {}
    for b, group in groups.items():
        for p, h in _taylor_strand_betti(group, field).items():
            table[p, b] = h
    return BettiTable.from_dict(n, table)


def taylor_is_minimal(I: MonomialIdeal, cap: int = DEFAULT_TAYLOR_CAP) -> bool:
    """True iff m_U != m_{U minus i} for every subset U and every i in U."""
    _check_ideal(I)
    _check_taylor_cap(I, cap)
    lcms = subset_lcms(I.as_array())
    masks = np.arange(len(lcms))
    for j in range(len(I.gens)):
        has = masks[(masks >> j) & 1 == 1]
        if np.any(np.all(lcms[has] == lcms[has ^ (1 << j)], axis=1)):
            return False
    return True


def lcm_degree(I: MonomialIdeal) -> int:
    if not I.gens:
        return 0
    return int(I.as_array().max(axis=0).sum())


# --- Koszul / lcm-lattice engine -----------------------------------------


def lcm_lattice(I: MonomialIdeal, cap: int = DEFAULT_LATTICE_CAP) -> np.ndarray:
    """All lcms of subsets of G(I), including 1 for the empty subset, sorted."""
    lat = np.zeros((1, I.ring_dim), dtype=np.int64)
    for g in I.as_array():
        lat = np.unique(np.vstack([lat, np.maximum(lat, g)]), axis=0)
        if len(lat) > cap:
            raise ResourceLimitError("lcm lattice", len(lat), cap)
    return lat


def upper_koszul_faces(gens: np.ndarray, b: Sequence[int]) -> list[int]:
    """Faces of K^b as bitmasks over the support of b, in the order of ``support``.

    A squarefree tau <= b is a face when x^(b - tau) lies in the ideal.
    """
    b = np.asarray(b, dtype=np.int64)
    supp = np.nonzero(b)[0]
    k = len(supp)
    masks = np.arange(1 << k)
    taus = np.zeros((1 << k, len(b)), dtype=np.int64)
    for pos, var in enumerate(supp):
        taus[:, var] = (masks >> pos) & 1
    shifted = b - taus
    member = np.any(np.all(gens[None, :, :] <= shifted[:, None, :], axis=2), axis=1)
    return [int(t) for t in masks[member]]


def _is_cone(faces: set[int], k: int) -> bool:
    for j in range(k):
        bit = 1 << j
        if all((f | bit) in faces for f in faces):
            return True
    return False


def simplicial_boundary(faces: Sequence[int], size: int) -> np.ndarray:
    """Boundary from faces with ``size`` vertices to faces with ``size - 1``."""
    cols = [f for f in faces if _popcount(f) == size]
    rows = [f for f in faces if _popcount(f) == size - 1]
    pos = {f: k for k, f in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, f in enumerate(cols):
        rest, j = f, 0
        while rest:
            low = rest & -rest
            rest ^= low
            mat[pos[f ^ low], c] = -1 if j % 2 else 1
            j += 1
    return mat


def reduced_homology(faces: Sequence[int], field: FieldSpec = GF32003) -> dict[int, int]:
    """Nonzero reduced Betti numbers {dim: rank} of a complex given by face bitmasks.

    The complex {empty face} has H_{-1} of rank 1; the void complex (no faces) has none.
    """
    if not faces:
        return {}
    top = max(_popcount(f) for f in faces)
    out = {}
    for size in range(0, top + 1):
        h = homology_rank(simplicial_boundary(faces, size + 1), simplicial_boundary(faces, size), field)
        if h:
            out[size - 1] = h
    return out


def _koszul_point(args) -> list[tuple[int, Monomial, int]]:
    gens, b, field = args
    k = int(np.count_nonzero(b))
    if k == 0:
        return []
    full = b - (b > 0)
    if np.any(np.all(gens <= full, axis=1)):
        return []
    faces = upper_koszul_faces(gens, b)
    if not faces or _is_cone(set(faces), k):
        return []
    bt = tuple(int(x) for x in b)
    return [(d + 2, bt, h) for d, h in reduced_homology(faces, field).items()]


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("WTREELAB_THREADS", "1")))
    except ValueError:
        return 1


def betti_koszul(I: MonomialIdeal, field: FieldSpec = GF32003, cap: int = DEFAULT_LATTICE_CAP) -> BettiTable:
    _check_ideal(I)
    n = I.ring_dim
    table = {(0, (0,) * n): 1}
    if I.is_zero:
        return BettiTable.from_dict(n, table)
    gens = I.as_array()
    lat = lcm_lattice(I, cap)
    jobs = [(gens, b, field) for b in lat]
    workers = _worker_count()
    if workers > 1 and len(jobs) > 2000:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_koszul_point, jobs, chunksize=256))
    else:
        results = [_koszul_point(j) for j in jobs]
    for res in results:
        for i, b, h in res:
            table[i, b] = h
    return BettiTable.from_dict(n, table)


def betti(I: MonomialIdeal, engine: str = "auto", field: FieldSpec = GF32003,
          taylor_cap: int = DEFAULT_TAYLOR_CAP, lattice_cap: int = DEFAULT_LATTICE_CAP) -> BettiTable:
    """Dispatch to an engine; ``both`` cross-checks and raises on disagreement."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "auto":
        engine = "taylor" if len(I.gens) <= taylor_cap else "koszul"
    if engine == "taylor":
        return betti_taylor(I, field, taylor_cap)
    if engine == "koszul":
        return betti_koszul(I, field, lattice_cap)
    t = betti_taylor(I, field, taylor_cap)
    k = betti_koszul(I, field, lattice_cap)
    if t != k:
        raise EngineMismatchError(t, k)
    return t


def taylor_total_betti(m: int) -> list[int]:
    """Total Betti numbers of a minimal Taylor resolution on m generators."""
    return [comb(m, i) for i in range(m + 1)]


@dataclass(frozen=True)
class DepthProfile:
    depths: tuple[int, ...]
    truncated_at: int | None = None  # first power that hit a resource cap

    def stable_from(self) -> int | None:
        """First t from which the observed profile is constant."""
        if not self.depths:
            return None
        t = len(self.depths)
        while t > 1 and self.depths[t - 2] == self.depths[-1]:
            t -= 1
        return t


def depth_profile(G: WeightedTree, t_max: int, field: FieldSpec = GF32003, engine: str = "auto",
                  power_cap: int | None = None, lattice_cap: int = DEFAULT_LATTICE_CAP) -> DepthProfile:
    """depth(S/I^t) for t = 1..t_max; stops early (with a marker) at a resource cap."""
    I = edge_ideal(G)
    depths = []
    for t in range(1, t_max + 1):
        try:
            It = ideal_power(I, t) if power_cap is None else ideal_power(I, t, power_cap)
            depths.append(betti(It, engine, field, lattice_cap=lattice_cap).depth())
        except ResourceLimitError:
            return DepthProfile(tuple(depths), t)
    return DepthProfile(tuple(depths))
