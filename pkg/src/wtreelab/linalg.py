"""Exact rank and homology over Q or GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``prime=None`` means the rationals."""

    prime: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.prime is not None and not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.prime is not None and self.prime >= 1 << 31:
            raise ValueError("primes must be below 2^31 so products fit in int64")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("rational", "rationals", "q", "qq", "0"):
            return cls(None)
        return cls(int(t))

    def __str__(self):
        return "QQ" if self.prime is None else f"GF({self.prime})"


RATIONALS = FieldSpec(None)
GF32003 = FieldSpec(DEFAULT_PRIME)


def _rank_mod_p(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        below = a[r + 1:, c]
        if below.any():
            a[r + 1:] = (a[r + 1:] - np.outer(below, a[r])) % p
        r += 1
    return r


def _rank_rational(a) -> int:
    m = [[Fraction(int(x)) for x in row] for row in np.asarray(a).tolist()]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c] / pr[c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        r += 1
        if r == rows:
            break
    return r


def rank(a, field: FieldSpec = GF32003) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    if field.prime is None:
        return _rank_rational(a)
    return _rank_mod_p(a, field.prime)


class BoundaryError(AssertionError):
    """Two maps that should form a complex do not compose to zero."""


def homology_rank(boundary_in, boundary_out, field: FieldSpec = GF32003) -> int:
    """dim ker(boundary_out) - rank(boundary_in) at the middle term.

    ``boundary_in`` maps C_{i+1} -> C_i and has shape (dim C_i, dim C_{i+1});
    ``boundary_out`` maps C_i -> C_{i-1} and has shape (dim C_{i-1}, dim C_i).
    """
    b_in = np.asarray(boundary_in, dtype=np.int64)
    b_out = np.asarray(boundary_out, dtype=np.int64)
    if b_in.ndim != 2 or b_out.ndim != 2:
        raise ValueError("boundary maps must be matrices")
    if b_out.shape[1] != b_in.shape[0]:
        raise ValueError(f"shapes {b_out.shape} and {b_in.shape} do not compose")
    dim = b_in.shape[0]
    if b_out.size and b_in.size:
        comp = b_out @ b_in
        if field.prime is not None:
            comp %= field.prime
        if comp.any():
            raise BoundaryError("boundary maps do not compose to zero")
    return dim - rank(b_out, field) - rank(b_in, field)
