"""Partitions, standard and skew Young tableaux, and the combinatorics around them.

A tableau is stored by its *row word*: ``word[k]`` is the (0-based) row that
holds entry ``offset + 1 + k``.  Entries sit left to right in each row after
the boxes of the inner shape, so the word plus the shapes fix every position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterator, Sequence

from .exact import Surd, surd_normalize

ROW_WORD_LEX = "row-word-lex"
LAST_LETTER = "last-letter"
ORDERINGS = (ROW_WORD_LEX, LAST_LETTER)
DEFAULT_ORDERING = ROW_WORD_LEX


class PartitionFormatError(ValueError):
    pass


class ShapeMismatchError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise PartitionFormatError(f"non-positive part in {list(parts)}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise PartitionFormatError(f"parts not weakly decreasing: {list(parts)}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def row(self, i: int) -> int:
        """Length of row ``i``, zero beyond the last row."""
        return self.parts[i] if i < len(self.parts) else 0

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(b <= self.row(i) for i, b in enumerate(other))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"

    def __repr__(self):
        return f"Partition{self.parts}"


EMPTY = Partition(())


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, str):
        return parse_partition(x)
    return Partition(tuple(x))


_PARTITION_RE = re.compile(r"^\s*\[?\s*(\d+(\s*,\s*\d+)*)?\s*\]?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"[4,3,2,1]"`` (brackets optional) into a :class:`Partition`."""
    if not _PARTITION_RE.match(text):
        raise PartitionFormatError(f"cannot parse partition {text!r}")
    body = text.strip().strip("[]").strip()
    if not body:
        raise PartitionFormatError("empty partition")
    return Partition(tuple(int(tok) for tok in body.split(",")))


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order ([n] first)."""

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    for parts in rec(n, n):
        yield Partition(parts)


# ---------------------------------------------------------------------------
# tableaux


@dataclass(frozen=True)
class StandardTableau:
    """Standard (possibly skew) tableau of shape ``shape / inner``.

    Entries run from ``offset + 1`` to ``offset + len(word)``.  With an empty
    ``inner`` this is an ordinary standard Young tableau; with a nonempty one
    it is a standard skew tableau, see :data:`SkewFilling`.
    """

    shape: Partition
    word: tuple[int, ...]
    offset: int = 0
    inner: Partition = EMPTY

    def __post_init__(self):
        counts = [self.inner.row(r) for r in range(len(self.shape))]
        for k, r in enumerate(self.word):
            if r >= len(self.shape) or counts[r] >= self.shape[r]:
                raise ShapeMismatchError(f"word {self.word} overflows shape {self.shape}")
            c = counts[r]
            # the box above must already be filled (or belong to inner)
            if r > 0 and counts[r - 1] <= c:
                raise ShapeMismatchError(f"word {self.word} is not standard for {self.shape}/{self.inner}")
            counts[r] += 1
        if counts != list(self.shape.parts):
            raise ShapeMismatchError(f"word {self.word} does not fill {self.shape}/{self.inner}")

    @property
    def outer(self) -> Partition:
        return self.shape

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def entries(self) -> range:
        return range(self.offset + 1, self.offset + len(self.word) + 1)

    @cached_property
    def positions(self) -> dict[int, tuple[int, int]]:
        counts = [self.inner.row(r) for r in range(len(self.shape))]
        pos = {}
        for k, r in enumerate(self.word):
            pos[self.offset + 1 + k] = (r, counts[r])
            counts[r] += 1
        return pos

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.shape]
        for k, r in enumerate(self.word):
            out[r].append(self.offset + 1 + k)
        return tuple(tuple(r) for r in out)

    def content(self, k: int) -> int:
        r, c = self.positions[k]
        return c - r

    def __str__(self):
        return format_tableau(self)


#: A standard skew tableau is a :class:`StandardTableau` with a nonempty inner shape.
SkewFilling = StandardTableau


def format_tableau(t: StandardTableau) -> str:
    """Row-list text form, e.g. ``"1 2 4 / 3"``; inner boxes are written as ``.``."""
    parts = []
    for r, row in enumerate(t.rows):
        cells = ["."] * t.inner.row(r) + [str(k) for k in row]
        parts.append(" ".join(cells))
    return " / ".join(parts)


def parse_tableau(text: str, offset: int | None = None) -> StandardTableau:
    """Inverse of :func:`format_tableau`; ``.`` marks boxes of the inner shape."""
    rows = [r.split() for r in text.split("/")]
    shape = Partition(tuple(len(r) for r in rows))
    inner_parts = tuple(sum(1 for x in r if x == ".") for r in rows)
    inner = Partition(tuple(p for p in inner_parts if p))
    where = {}
    for r, row in enumerate(rows):
        for x in row:
            if x != ".":
                where[int(x)] = r
    if not where:
        return StandardTableau(shape, (), offset or 0, inner)
    lo = min(where)
    if offset is None:
        offset = lo - 1
    if sorted(where) != list(range(offset + 1, offset + 1 + len(where))):
        raise ShapeMismatchError(f"entries of {text!r} are not consecutive from {offset + 1}")
    word = tuple(where[k] for k in sorted(where))
    t = StandardTableau(shape, word, offset, inner)
    if t.rows != tuple(tuple(int(x) for x in row if x != ".") for row in rows):
        raise ShapeMismatchError(f"{text!r} is not standard")
    return t


def ordering_key(t: StandardTableau, ordering: str = DEFAULT_ORDERING):
    if ordering == ROW_WORD_LEX:
        return t.word
    if ordering == LAST_LETTER:
        return t.word[::-1]
    raise ValueError(f"unknown ordering {ordering!r}")


@lru_cache(maxsize=None)
def _words(shape: Partition, inner: Partition) -> tuple[tuple[int, ...], ...]:
    nrows = len(shape)
    counts = [inner.row(r) for r in range(nrows)]
    total = shape.n - inner.n
    out = []
    word = []

    def rec():
        if len(word) == total:
            out.append(tuple(word))
            return
        for r in range(nrows):
            if counts[r] < shape[r] and (r == 0 or counts[r - 1] > counts[r]):
                counts[r] += 1
                word.append(r)
                rec()
                word.pop()
                counts[r] -= 1

    rec()
    return tuple(out)


def enumerate_skew(lam, lam1=EMPTY, offset: int | None = None, ordering: str = DEFAULT_ORDERING) -> tuple[StandardTableau, ...]:
    """Standard fillings of ``lam / lam1`` with ``offset+1 ..``, sorted by ``ordering``.

    ``offset`` defaults to ``|lam1|``.  Returns an empty tuple when ``lam1``
    does not fit inside ``lam``.
    """
    lam, lam1 = as_partition(lam), as_partition(lam1)
    if offset is None:
        offset = lam1.n
    return _enumerate_skew(lam, lam1, offset, ordering)


@lru_cache(maxsize=None)
def _enumerate_skew(lam: Partition, lam1: Partition, offset: int, ordering: str) -> tuple[StandardTableau, ...]:
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}")
    if not lam.contains(lam1):
        return ()
    tabs = [StandardTableau(lam, w, offset, lam1) for w in _words(lam, lam1)]
    tabs.sort(key=lambda t: ordering_key(t, ordering))
    return tuple(tabs)


def enumerate_standard_tableaux(lam, ordering: str = DEFAULT_ORDERING, offset: int = 0) -> tuple[StandardTableau, ...]:
    return enumerate_skew(as_partition(lam), EMPTY, offset, ordering)


def tableau_index(tabs: Sequence[StandardTableau]) -> dict[StandardTableau, int]:
    """0-based position lookup for an ordered tableau list."""
    return {t: i for i, t in enumerate(tabs)}


def hook_dimension(lam) -> int:
    lam = as_partition(lam)
    conj = lam.conjugate()
    prod = 1
    for r, row in enumerate(lam):
        for c in range(row):
            prod *= (row - c - 1) + (conj[c] - r - 1) + 1
    return factorial(lam.n) // prod


@lru_cache(maxsize=None)
def _skew_count(outer: tuple[int, ...], inner: tuple[int, ...]) -> int:
    if outer == inner:
        return 1
    total = 0
    # remove a corner of outer that is not in inner
    for r in range(len(outer)):
        nxt = outer[r + 1] if r + 1 < len(outer) else 0
        low = inner[r] if r < len(inner) else 0
        if outer[r] > nxt and outer[r] > low:
            smaller = list(outer)
            smaller[r] -= 1
            while smaller and smaller[-1] == 0:
                smaller.pop()
            total += _skew_count(tuple(smaller), inner)
    return total


def skew_count(lam, lam1) -> int:
    """Number of standard skew tableaux of shape ``lam / lam1`` (0 if not nested)."""
    lam, lam1 = as_partition(lam), as_partition(lam1)
    if not lam.contains(lam1):
        return 0
    return _skew_count(lam.parts, lam1.parts)


def lr_multiplicity(lam, lam1, lam2) -> int:
    """Littlewood-Richardson coefficient by counting LR fillings of ``lam/lam1`` with content ``lam2``."""
    lam, lam1, lam2 = as_partition(lam), as_partition(lam1), as_partition(lam2)
    if lam.n != lam1.n + lam2.n or not lam.contains(lam1):
        return 0
    # boxes in reverse reading order: top row first, right to left
    boxes = [(r, c) for r in range(len(lam)) for c in range(lam[r] - 1, lam1.row(r) - 1, -1)]
    filling = {}
    used = [0] * len(lam2)

    def rec(k):
        if k == len(boxes):
            return 1
        r, c = boxes[k]
        count = 0
        for v in range(len(lam2)):
            if used[v] >= lam2[v]:
                continue
            # lattice condition on the reading word
            if v > 0 and used[v] + 1 > used[v - 1]:
                continue
            right = filling.get((r, c + 1))
            if right is not None and v > right:
                continue
            above = filling.get((r - 1, c))
            if above is not None and v <= above:
                continue
            filling[(r, c)] = v
            used[v] += 1
            count += rec(k + 1)
            used[v] -= 1
            del filling[(r, c)]
        return count

    return rec(0)


def axial_distance(m: StandardTableau, i: int) -> int:
    """``content(i+1) - content(i)``: +1 for same-row neighbours, -1 for same-column ones."""
    if i not in m.positions or i + 1 not in m.positions:
        raise IndexError(f"entries {i}, {i + 1} not both in tableau {m}")
    return m.content(i + 1) - m.content(i)


def apply_generator(m: StandardTableau, i: int) -> StandardTableau:
    """Swap ``i`` and ``i+1`` when the result is standard, else return ``m``."""
    if abs(axial_distance(m, i)) == 1:
        return m
    k = i - m.offset - 1
    w = list(m.word)
    w[k], w[k + 1] = w[k + 1], w[k]
    return StandardTableau(m.shape, tuple(w), m.offset, m.inner)


def restrict(m: StandardTableau, n1: int) -> StandardTableau:
    """Drop the entries above ``n1``; ``m`` must be an ordinary tableau filled from 1."""
    if m.offset != 0 or m.inner.n:
        raise ValueError("restrict expects an ordinary tableau filled from 1")
    if not 0 <= n1 <= m.n:
        raise ValueError(f"n1={n1} out of range for {m.n} boxes")
    w = m.word[:n1]
    shape = Partition(tuple(w.count(r) for r in range(max(w) + 1))) if w else EMPTY
    return StandardTableau(shape, w)


def skew_part(m: StandardTableau, n1: int) -> StandardTableau:
    """The skew tableau ``m / m^(n1)`` holding entries ``n1+1 .. n``."""
    inner = restrict(m, n1).shape
    return StandardTableau(m.shape, m.word[n1:], n1, inner)


def join(mu: StandardTableau, skew: StandardTableau) -> StandardTableau:
    """Glue a tableau ``mu`` (entries 1..n1) and a compatible skew filling."""
    return StandardTableau(skew.shape, mu.word + skew.word)


def compatible(m: StandardTableau, m1: StandardTableau) -> bool:
    return m1.n <= m.n and m.word[: m1.n] == m1.word and m1.offset == 0 and not m1.inner.n


def conjugate(x):
    """Transpose a partition or a (skew) tableau."""
    if isinstance(x, Partition):
        return x.conjugate()
    if isinstance(x, StandardTableau):
        shape = x.shape.conjugate()
        inner = x.inner.conjugate()
        word = tuple(x.positions[k][1] for k in x.entries)
        return StandardTableau(shape, word, x.offset, inner)
    return as_partition(x).conjugate()


# ---------------------------------------------------------------------------
# Yamanouchi phases


def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def yamanouchi_phase(m: StandardTableau, reference: StandardTableau) -> int:
    """Relative phase: +1 at ``reference``, flipping at every generator step.

    A generator step composes the entry labelling with an adjacent
    transposition, so the parity of the step count is the sign of the
    permutation carrying ``reference``'s labelling onto ``m``'s.
    """
    if (m.shape, m.inner, m.offset) != (reference.shape, reference.inner, reference.offset):
        raise ShapeMismatchError("tableaux of different shapes")
    at_box = {pos: k for k, pos in reference.positions.items()}
    perm = [at_box[m.positions[k]] - m.offset - 1 for k in m.entries]
    return permutation_sign(perm)


# Global signs of the Yamanouchi phase, keyed by (outer, inner) and valid for
# the row-word-lex ordering: value is the phase of the first tableau.
CALIBRATED_PHASES: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {
    ((4, 3, 2, 1), (3, 2, 1)): -1,
    ((3, 1), ()): +1,
    ((2, 1, 1), ()): +1,
}


class PhaseConventionError(LookupError):
    pass


def phase_calibrated(lam, lam1=EMPTY) -> bool:
    return (as_partition(lam).parts, as_partition(lam1).parts) in CALIBRATED_PHASES


def phase_factors(lam, lam1=EMPTY, ordering: str = DEFAULT_ORDERING, strict: bool = False) -> tuple[int, ...]:
    """Phase of every filling of ``lam/lam1`` in ``ordering`` order.

    Calibrated shapes use the recorded global sign; any other shape gets +1 on
    the first row-word-lex filling, or raises :class:`PhaseConventionError`
    when ``strict``.
    """
    lam, lam1 = as_partition(lam), as_partition(lam1)
    key = (lam.parts, lam1.parts)
    if key not in CALIBRATED_PHASES and strict:
        raise PhaseConventionError(f"no calibrated phase convention for {lam}/{lam1}" if lam1.n else f"no calibrated phase convention for {lam}")
    sign = CALIBRATED_PHASES.get(key, 1)
    first = enumerate_skew(lam, lam1, 0, ROW_WORD_LEX)[0]
    return tuple(sign * yamanouchi_phase(t, first) for t in enumerate_skew(lam, lam1, 0, ordering))


# ---------------------------------------------------------------------------
# Young's orthogonal form


def beta(d: int) -> Surd:
    """Off-diagonal weight ``sqrt(1 - 1/d^2)``."""
    from fractions import Fraction

    return surd_normalize(Fraction(1), Fraction(d * d - 1, d * d))


def orthogonal_rep_matrix(lam, i: int, ordering: str = DEFAULT_ORDERING) -> list[list[Surd]]:
    """Matrix of the generator ``g_i`` in the standard basis of ``[lam]``, exact.

    Dense, so only meant for small irreps; see :func:`orthogonal_rep_entries`
    for the sparse form.
    """
    lam = as_partition(lam)
    tabs = enumerate_standard_tableaux(lam, ordering)
    size = len(tabs)
    out = [[Surd.zero()] * size for _ in range(size)]
    for (r, c), v in orthogonal_rep_entries(lam, i, ordering).items():
        out[r][c] = v
    return out


def orthogonal_rep_entries(lam, i: int, ordering: str = DEFAULT_ORDERING, offset: int = 0) -> dict[tuple[int, int], Surd]:
    from fractions import Fraction

    lam = as_partition(lam)
    if not 1 <= i < lam.n:
        raise IndexError(f"generator g_{i} out of range for S_{lam.n}")
    tabs = enumerate_standard_tableaux(lam, ordering, offset)
    index = tableau_index(tabs)
    out = {}
    for a, m in enumerate(tabs):
        d = axial_distance(m, i + offset)
        out[(a, a)] = Surd(Fraction(1, d), 1)
        g = apply_generator(m, i + offset)
        if g != m:
            out[(a, index[g])] = beta(d)
    return out
