"""Exact scalars and sparse rational linear algebra.

``Rational`` is :class:`fractions.Fraction`.  A :class:`Surd` is ``q*sqrt(b)``
with ``b`` squarefree; a :class:`SurdSum` is a finite sum of those with
distinct radicands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Rational = Fraction


@lru_cache(maxsize=65536)
def square_split(k: int) -> tuple[int, int]:
    """Write ``k > 0`` as ``s*s*b`` with ``b`` squarefree; return ``(s, b)``."""
    if k <= 0:
        raise ValueError(f"square_split needs a positive integer, got {k}")
    s, b = 1, 1
    p = 2
    while p * p <= k:
        e = 0
        while k % p == 0:
            k //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            b *= p
        p += 1 if p == 2 else 2
    return s, b * k


def is_squarefree(k: int) -> bool:
    p = 2
    while p * p <= k:
        if k % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class Surd:
    """Exact real ``coeff * sqrt(radicand)``, radicand squarefree (1 for zero)."""

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self):
        c = Fraction(self.coeff)
        b = int(self.radicand)
        if c == 0:
            b = 1
        elif b != 1:
            s, b = square_split(b)
            c *= s
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "radicand", b)

    @classmethod
    def zero(cls) -> "Surd":
        return cls(Fraction(0), 1)

    @classmethod
    def from_triple(cls, a: int, b: int, c: int) -> "Surd":
        return cls(Fraction(a, c), b)

    def triple(self) -> tuple[int, int, int]:
        """``(a, b, c)`` meaning ``a*sqrt(b)/c`` with gcd(a, c) = 1 and c > 0."""
        return self.coeff.numerator, self.radicand, self.coeff.denominator

    def square(self) -> Fraction:
        return self.coeff * self.coeff * self.radicand

    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def __bool__(self):
        return self.coeff != 0

    def __neg__(self):
        return Surd(-self.coeff, self.radicand)

    def __mul__(self, other):
        if isinstance(other, Surd):
            g = math.gcd(self.radicand, other.radicand)
            return Surd(self.coeff * other.coeff * g, (self.radicand // g) * (other.radicand // g))
        if isinstance(other, (int, Fraction)):
            return Surd(self.coeff * other, self.radicand)
        if isinstance(other, SurdSum):
            return SurdSum.of(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        return SurdSum.of(self) + other

    __radd__ = __add__

    def __sub__(self, other):
        return SurdSum.of(self) - other

    def __rsub__(self, other):
        return SurdSum.of(other) - self

    def __truediv__(self, other):
        # division only by a single surd: multiply with its exact inverse
        if isinstance(other, (int, Fraction)):
            return Surd(self.coeff / other, self.radicand)
        if isinstance(other, Surd):
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> "Surd":
        if not self:
            raise ZeroDivisionError("inverse of zero surd")
        return Surd(1 / (self.coeff * self.radicand), self.radicand)

    def __float__(self):
        return float(self.coeff) * math.sqrt(self.radicand)

    def __str__(self):
        a, b, c = self.triple()
        if a == 0:
            return "0"
        body = f"{a}" if b == 1 else (f"{'-' if a < 0 else ''}{abs(a) if abs(a) != 1 else ''}√{b}")
        return body if c == 1 else f"{body}/{c}"


def surd_normalize(q, r) -> Surd:
    """``q * sqrt(r)`` for rational ``q`` and rational ``r > 0`` as a canonical :class:`Surd`."""
    q, r = Fraction(q), Fraction(r)
    if r <= 0:
        raise ValueError(f"radicand must be positive, got {r}")
    # sqrt(p/s) = sqrt(p*s)/s
    p, s = r.numerator, r.denominator
    return Surd(q / s, p * s)


@dataclass(frozen=True)
class SurdSum:
    """Finite exact sum of surds, stored as ``{radicand: coefficient}``."""

    terms: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {b: Fraction(c) for b, c in sorted(self.terms.items()) if c != 0})

    @classmethod
    def of(cls, x) -> "SurdSum":
        if isinstance(x, SurdSum):
            return x
        if isinstance(x, Surd):
            return cls({x.radicand: x.coeff})
        if isinstance(x, (int, Fraction)):
            return cls({1: Fraction(x)})
        raise TypeError(f"cannot make a SurdSum from {type(x).__name__}")

    @classmethod
    def total(cls, items: Iterable) -> "SurdSum":
        acc: dict[int, Fraction] = {}
        for x in items:
            for b, c in cls.of(x).terms.items():
                acc[b] = acc.get(b, 0) + c
        return cls(acc)

    def __add__(self, other):
        try:
            other = SurdSum.of(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        for b, c in other.terms.items():
            acc[b] = acc.get(b, 0) + c
        return SurdSum(acc)

    __radd__ = __add__

    def __neg__(self):
        return SurdSum({b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-SurdSum.of(other))

    def __rsub__(self, other):
        return SurdSum.of(other) - self

    def __mul__(self, other):
        try:
            other = SurdSum.of(other)
        except TypeError:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                s = Surd(c1, b1) * Surd(c2, b2)
                acc[s.radicand] = acc.get(s.radicand, 0) + s.coeff
        return SurdSum(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Surd(1 / Fraction(other))
        if isinstance(other, Surd):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other):
        try:
            other = SurdSum.of(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def as_surd(self) -> Surd:
        """The value as a single surd; raises if it needs more than one radicand."""
        if not self.terms:
            return Surd.zero()
        if len(self.terms) > 1:
            raise ValueError(f"{self} is not a single surd")
        (b, c), = self.terms.items()
        return Surd(c, b)

    def __float__(self):
        return sum((float(c) * math.sqrt(b) for b, c in self.terms.items()), 0.0)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(Surd(c, b)) for b, c in self.terms.items())


# ---------------------------------------------------------------------------
# sparse matrices and kernels


class SparseRationalMatrix:
    """Row-major sparse matrix over the rationals; zeros are never stored."""

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, Fraction]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self._rows: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]
        if rows is not None:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            for r, row in enumerate(rows):
                for c, v in row.items():
                    self[r, c] = v

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "SparseRationalMatrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        return cls(nrows, ncols, [{c: Fraction(v) for c, v in enumerate(row) if v} for row in dense])

    def __setitem__(self, key, value):
        r, c = key
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"({r}, {c}) outside {self.nrows}x{self.ncols}")
        value = Fraction(value)
        if value:
            self._rows[r][c] = value
        else:
            self._rows[r].pop(c, None)

    def __getitem__(self, key) -> Fraction:
        r, c = key
        return self._rows[r].get(c, Fraction(0))

    def add(self, r: int, c: int, value) -> None:
        self[r, c] = self[r, c] + value

    def row(self, r: int) -> dict[int, Fraction]:
        return dict(self._rows[r])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def entries(self) -> list[tuple[int, int, Fraction]]:
        return [(r, c, v) for r, row in enumerate(self._rows) for c, v in sorted(row.items())]

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def matvec(self, x: Sequence) -> list:
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum((v * x[c] for c, v in row.items()), Fraction(0)) for row in self._rows]

    def __repr__(self):
        return f"SparseRationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def _eliminate(rows: list[dict[int, Fraction]], ncols: int):
    """Sparse Gaussian elimination with a Markowitz-style pivot choice.

    Returns the pivot rows as ``[(pivot_col, row_dict)]`` in elimination order.
    Each pivot row is zero in the columns pivoted before it.  Pivot choice:
    the active column with fewest entries, then its shortest row; ties go to
    the lowest column and then the lowest row.
    """
    active = {i: dict(r) for i, r in enumerate(rows) if r}
    col_rows: dict[int, set[int]] = {}
    for i, r in active.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    pivots = []
    while col_rows:
        pc = min(col_rows, key=lambda c: (len(col_rows[c]), c))
        pr = min(col_rows[pc], key=lambda i: (len(active[i]), i))
        prow = active.pop(pr)
        for c in prow:
            col_rows[c].discard(pr)
        pv = prow[pc]
        for i in sorted(col_rows[pc]):
            row = active[i]
            f = row[pc] / pv
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    if c not in row:
                        col_rows.setdefault(c, set()).add(i)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    col_rows[c].discard(i)
            if not row:
                del active[i]
        for c in [c for c, s in col_rows.items() if not s]:
            del col_rows[c]
        pivots.append((pc, prow))
    return pivots


def rank(A: SparseRationalMatrix) -> int:
    return len(_eliminate([A.row(r) for r in range(A.nrows)], A.ncols))


def canonical_basis(vectors: Sequence[Sequence], pivot: str = "last") -> list[list[Fraction]]:
    """Reduced echelon basis of the span of ``vectors``.

    ``pivot="last"`` puts each vector's unit pivot at its last nonzero
    coordinate (the basis read off the reduced row echelon form of a matrix
    whose kernel this is); ``"first"`` uses the first nonzero coordinate.
    Either way the result is ordered by ascending pivot column.
    """
    if pivot not in ("last", "first"):
        raise ValueError(f"unknown pivot rule {pivot!r}")
    vecs = [[Fraction(x) for x in v] for v in vectors]
    if not vecs:
        return []
    n = len(vecs[0])
    order = range(n - 1, -1, -1) if pivot == "last" else range(n)
    basis: list[tuple[int, list[Fraction]]] = []
    remaining = vecs
    for col in order:
        idx = next((k for k, v in enumerate(remaining) if v[col]), None)
        if idx is None:
            continue
        v = remaining.pop(idx)
        inv = 1 / v[col]
        v = [x * inv for x in v]
        remaining = [[a - w[col] * b for a, b in zip(w, v)] if w[col] else w for w in remaining]
        basis = [(p, [a - w[col] * b for a, b in zip(w, v)] if w[col] else w) for p, w in basis]
        basis.append((col, v))
        remaining = [w for w in remaining if any(w)]
        if not remaining:
            break
    basis.sort(key=lambda pv: pv[0])
    return [v for _, v in basis]


def rref_kernel(A: SparseRationalMatrix, pivot: str = "last") -> list[list[Fraction]]:
    """Exact nullspace basis of ``A`` in canonical reduced echelon form.

    The elimination order does not affect the result: the basis is
    canonicalised by :func:`canonical_basis` afterwards.  With the default
    ``pivot="last"`` it coincides with the basis read off the reduced row
    echelon form of ``A`` (one vector per free column).
    """
    n = A.ncols
    pivots = _eliminate([A.row(r) for r in range(A.nrows)], n)
    pivot_cols = {c for c, _ in pivots}
    free = [c for c in range(n) if c not in pivot_cols]
    raw = []
    for f in free:
        x: dict[int, Fraction] = {f: Fraction(1)}
        for pc, prow in reversed(pivots):
            s = sum((v * x[c] for c, v in prow.items() if c != pc and c in x), Fraction(0))
            if s:
                x[pc] = -s / prow[pc]
        vec = [Fraction(0)] * n
        for c, v in x.items():
            vec[c] = v
        raw.append(vec)
    return canonical_basis(raw, pivot)
