"""Monomials and monomial ideals in a polynomial ring over an abstract field.

A monomial is a tuple of non-negative exponents, one entry per ring variable.
Ideals are stored by their minimal generating set in lexicographic order, so
two ideals are equal exactly when their canonical forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

import numpy as np

Monomial = tuple[int, ...]

DEFAULT_POWER_CAP = 4000


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap."""

    def __init__(self, what: str, projected: int, cap: int):
        super().__init__(f"{what}: projected size {projected} exceeds cap {cap}")
        self.what = what
        self.projected = projected
        self.cap = cap


class DimensionError(ValueError):
    pass


def monomial(exponents: Iterable[int]) -> Monomial:
    m = tuple(int(e) for e in exponents)
    if any(e < 0 for e in m):
        raise ValueError(f"negative exponent in {m}")
    return m


def one(n: int) -> Monomial:
    return (0,) * n


def degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def lcm_of(ms: Iterable[Monomial], n: int) -> Monomial:
    """Componentwise maximum; the lcm of the empty set is 1."""
    out = one(n)
    for m in ms:
        if len(m) != n:
            raise DimensionError(f"monomial {m} has length {len(m)}, expected {n}")
        out = lcm(out, m)
    return out


def format_monomial(m: Monomial, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"x{i + 1}" for i in range(len(m))]
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _minimal_rows(rows: np.ndarray) -> np.ndarray:
    # Sort by total degree so a divisor is always seen before its multiples.
    if len(rows) == 0:
        return rows
    rows = np.unique(rows, axis=0)
    order = np.argsort(rows.sum(axis=1), kind="stable")
    rows = rows[order]
    kept = np.empty_like(rows)
    k = 0
    for row in rows:
        if k and np.any(np.all(kept[:k] <= row, axis=1)):
            continue
        kept[k] = row
        k += 1
    return kept[:k]


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    ``unit`` marks the whole ring; the unit ideal has no stored generators.
    The zero ideal is the non-unit ideal with no generators.
    """

    ring_dim: int
    gens: tuple[Monomial, ...] = ()
    unit: bool = False

    def __post_init__(self):
        if self.ring_dim < 1:
            raise DimensionError("ring dimension must be positive")

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    @property
    def is_zero(self) -> bool:
        return not self.unit and not self.gens

    @property
    def is_proper(self) -> bool:
        return not self.unit

    def as_array(self) -> np.ndarray:
        return np.array(self.gens, dtype=np.int64).reshape(len(self.gens), self.ring_dim)

    def support(self) -> frozenset[int]:
        return frozenset().union(*(support(g) for g in self.gens))

    def format(self, names: Sequence[str] | None = None) -> str:
        if self.unit:
            return "(1)"
        return "(" + ", ".join(format_monomial(g, names) for g in self.gens) + ")"

    def __str__(self):
        return self.format()


def _check_dims(n: int, ms: Iterable[Monomial]):
    for m in ms:
        if len(m) != n:
            raise DimensionError(f"monomial {m} has length {len(m)}, expected {n}")


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, (), True)


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n)


def minimalize(gens: Iterable[Sequence[int]], n: int) -> MonomialIdeal:
    """Return the ideal generated by ``gens`` in canonical minimal form."""
    ms = [monomial(g) for g in gens]
    _check_dims(n, ms)
    if not ms:
        return zero_ideal(n)
    if any(not any(m) for m in ms):
        return unit_ideal(n)
    kept = _minimal_rows(np.array(ms, dtype=np.int64))
    return MonomialIdeal(n, tuple(sorted(tuple(int(e) for e in row) for row in kept)))


def _from_rows(rows: np.ndarray, n: int) -> MonomialIdeal:
    if len(rows) == 0:
        return zero_ideal(n)
    if np.any(rows.sum(axis=1) == 0):
        return unit_ideal(n)
    kept = _minimal_rows(rows)
    return MonomialIdeal(n, tuple(sorted(tuple(int(e) for e in row) for row in kept)))


def _same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.ring_dim != J.ring_dim:
        raise DimensionError(f"ring dimensions differ: {I.ring_dim} vs {J.ring_dim}")


def contains(I: MonomialIdeal, f: Monomial) -> bool:
    _check_dims(I.ring_dim, [f])
    if I.unit:
        return True
    return any(divides(g, f) for g in I.gens)


def equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _same_ring(I, J)
    return I == J


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff I is contained in J."""
    _same_ring(I, J)
    if J.unit:
        return True
    if I.unit:
        return False
    return all(contains(J, g) for g in I.gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    if I.unit or J.unit:
        return unit_ideal(I.ring_dim)
    return minimalize(I.gens + J.gens, I.ring_dim)


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    n = I.ring_dim
    if I.unit:
        return J
    if J.unit:
        return I
    if I.is_zero or J.is_zero:
        return zero_ideal(n)
    a, b = I.as_array(), J.as_array()
    rows = np.maximum(a[:, None, :], b[None, :, :]).reshape(-1, n)
    return _from_rows(rows, n)


def power_size(I: MonomialIdeal, t: int) -> int:
    """Number of generator multisets of size t, i.e. products before minimalization."""
    return comb(len(I.gens) + t - 1, t)


def ideal_power(I: MonomialIdeal, t: int, cap: int = DEFAULT_POWER_CAP) -> MonomialIdeal:
    if t < 1:
        raise ValueError("power must be at least 1")
    if I.unit or I.is_zero or t == 1:
        return I
    projected = power_size(I, t)
    if projected > cap:
        raise ResourceLimitError(f"I^{t}", projected, cap)
    gens = I.as_array()
    idx = np.array(list(combinations_with_replacement(range(len(gens)), t)), dtype=np.int64)
    rows = gens[idx].sum(axis=1)
    return _from_rows(rows, I.ring_dim)


def colon_by_monomial(I: MonomialIdeal, f: Monomial) -> MonomialIdeal:
    _check_dims(I.ring_dim, [f])
    if I.unit or I.is_zero:
        return I
    rows = np.maximum(I.as_array() - np.array(f, dtype=np.int64), 0)
    return _from_rows(rows, I.ring_dim)


def colon_by_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    if J.is_zero:
        raise ValueError("colon by the zero ideal")
    if J.unit:
        return I
    out = unit_ideal(I.ring_dim)
    for g in J.gens:
        out = intersect(out, colon_by_monomial(I, g))
    return out


def radical(I: MonomialIdeal) -> MonomialIdeal:
    if I.unit or I.is_zero:
        return I
    return _from_rows(np.minimum(I.as_array(), 1), I.ring_dim)


def variable_ideal(W: Iterable[int], n: int) -> MonomialIdeal:
    """The ideal generated by the variables with indices in W."""
    gens = []
    for i in sorted(set(W)):
        if not 0 <= i < n:
            raise DimensionError(f"variable index {i} out of range for n={n}")
        gens.append(tuple(1 if j == i else 0 for j in range(n)))
    return minimalize(gens, n)


def maximal_ideal(n: int) -> MonomialIdeal:
    return variable_ideal(range(n), n)


def depth_at_least_one(I: MonomialIdeal) -> bool:
    """Saturation test: (I : m) = I iff the maximal ideal is not associated to I."""
    if I.unit or I.is_zero:
        raise ValueError("saturation test needs a proper nonzero ideal")
    return colon_by_ideal(I, maximal_ideal(I.ring_dim)) == I
