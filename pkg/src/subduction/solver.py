"""Reduced island system: assembly, exact kernel, multiplicity separation, and the
checks that tie a solved island back to the full transformation matrix."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import SparseRationalMatrix, Surd, rref_kernel, surd_normalize
from .graph import DegenerateSplitError, Island, ReducedGraph, build_grid, build_island, build_reduced_graph, check_triple
from .tableaux import (
    DEFAULT_ORDERING,
    Partition,
    StandardTableau,
    apply_generator,
    as_partition,
    axial_distance,
    enumerate_standard_tableaux,
    hook_dimension,
    lr_multiplicity,
    skew_count,
)

log = logging.getLogger(__name__)

PHASE_CONVENTION = "first-nonzero-positive"


class WeightConsistencyError(RuntimeError):
    """Scaling weights disagree around a cycle of the tableau graph."""


class InvariantViolation(RuntimeError):
    pass


def rational_sqrt(q: Fraction) -> Fraction:
    s = surd_normalize(1, q)
    if s.radicand != 1:
        raise WeightConsistencyError(f"sqrt({q}) is irrational")
    return s.coeff


def weight_ratio(d: int) -> Fraction:
    """``w(g_i m) / w(m)`` for ``d = d_i(m)``: shrink when ``d > 0``, grow when ``d < 0``."""
    r = Fraction(d * d - 1, d * d)
    return r if d > 0 else 1 / r


def seminormal_weights(tabs: Sequence[StandardTableau], generators: Sequence[int]) -> dict[StandardTableau, Fraction]:
    """Weights from a breadth-first spanning forest rooted at each component's first tableau.

    Every non-tree edge is checked; a mismatch raises :class:`WeightConsistencyError`.
    """
    members = set(tabs)
    w: dict[StandardTableau, Fraction] = {}
    for root in tabs:
        if root in w:
            continue
        w[root] = Fraction(1)
        queue = deque([root])
        while queue:
            t = queue.popleft()
            for i in generators:
                g = apply_generator(t, i)
                if g == t:
                    continue
                if g not in members:
                    raise ValueError(f"g_{i} leaves the tableau set at {t}")
                expected = w[t] * weight_ratio(axial_distance(t, i))
                if g in w:
                    if w[g] != expected:
                        raise WeightConsistencyError(f"weights of {t} and {g} inconsistent along g_{i}")
                else:
                    w[g] = expected
                    queue.append(g)
    return w


@dataclass(frozen=True)
class ScalingWeights:
    w: dict  # skew filling -> Fraction
    u: dict  # m2 tableau -> Fraction

    def node_weight(self, island: Island, k: int) -> Fraction:
        s, t = island.coordinates(k)
        return self.w[island.skews[s]] * self.u[island.tabs2[t]]


def compute_scaling_weights(island: Island, reduced: ReducedGraph | None = None) -> ScalingWeights:
    gens = range(island.n1 + 1, island.n)
    return ScalingWeights(seminormal_weights(island.skews, gens), seminormal_weights(island.tabs2, gens))


def coupling(d: int, w_from: Fraction, w_to: Fraction) -> Fraction:
    """``beta(d) * sqrt(w_to / w_from)``, which the weights make rational."""
    return rational_sqrt(Fraction(d * d - 1, d * d) * w_to / w_from)


def assemble_reduced_system(island: Island, reduced: ReducedGraph | None = None, weights: ScalingWeights | None = None) -> SparseRationalMatrix:
    """One row per (island node, ``g_i`` with ``i > n1``); columns are island nodes.

    Row for node ``(m, m2)`` and ``g_i`` in the unscaled coefficients ``C``::

        (1/d_i(m) - 1/d_i(m2)) C(m, m2) + beta_m C(g_i m, m2) - beta_m2 C(m, g_i m2) = 0

    and the matrix holds it after ``C = sqrt(w(m) u(m2)) X``, divided by
    ``sqrt(w(m) u(m2))``.
    """
    if weights is None:
        weights = compute_scaling_weights(island)
    n1, n = island.n1, island.n
    gens = list(range(n1 + 1, n))
    ncols = len(island)
    A = SparseRationalMatrix(ncols * len(gens), ncols)
    nt = len(island.tabs2)
    for s_idx, s in enumerate(island.skews):
        for t_idx, m2 in enumerate(island.tabs2):
            col = s_idx * nt + t_idx
            for g, i in enumerate(gens):
                row = col * len(gens) + g
                d, d2 = axial_distance(s, i), axial_distance(m2, i)
                A.add(row, col, Fraction(1, d) - Fraction(1, d2))
                gs = apply_generator(s, i)
                if gs != s:
                    A.add(row, island.skew_index[gs] * nt + t_idx, coupling(d, weights.w[s], weights.w[gs]))
                gm2 = apply_generator(m2, i)
                if gm2 != m2:
                    A.add(row, s_idx * nt + island.m2_index[gm2], -coupling(d2, weights.u[m2], weights.u[gm2]))
    return A


def reduced_system_shape(lam, lam1, lam2) -> tuple[int, int]:
    lam, lam1, lam2 = check_triple(lam, lam1, lam2)
    unknowns = skew_count(lam, lam1) * hook_dimension(lam2)
    return (lam2.n - 1) * unknowns, unknowns


# ---------------------------------------------------------------------------
# multiplicity separation


def orthonormalize(vectors: Sequence[Sequence[Fraction]], metric: Sequence[Fraction], norm: Fraction = Fraction(1)) -> list[list[Surd]]:
    """Gram-Schmidt in the diagonal metric, then ``C_j = Y_j sqrt(metric_j * norm / |Y|^2)``.

    Inner products stay rational; every output entry is a single surd.
    Each column is then flipped so its first nonzero entry is positive.
    """
    ys: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for v in vectors:
        y = [Fraction(x) for x in v]
        for prev, pn in zip(ys, norms):
            f = sum((a * b * g for a, b, g in zip(y, prev, metric)), Fraction(0)) / pn
            if f:
                y = [a - f * b for a, b in zip(y, prev)]
        nn = sum((a * a * g for a, g in zip(y, metric)), Fraction(0))
        if nn == 0:
            raise InvariantViolation("kernel vectors are linearly dependent")
        ys.append(y)
        norms.append(nn)
    out = []
    for y, nn in zip(ys, norms):
        first = next(a for a in y if a)
        sign = 1 if first > 0 else -1
        out.append([surd_normalize(sign * a, g * norm / nn) if a else Surd.zero() for a, g in zip(y, metric)])
    return out


SEPARATIONS = ("row-diagonal", "gram-schmidt")
DEFAULT_SEPARATION = "row-diagonal"


def _form(vectors, metric, support) -> list[list[Fraction]]:
    k = len(vectors)
    out = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            v = sum((metric[q] * vectors[i][q] * vectors[j][q] for q in support), Fraction(0))
            out[i][j] = out[j][i] = v
    return out


def _congruence(B, F):
    """``B F B^T`` for a block ``B`` given as rows of coefficients."""
    FB = [[sum((F[i][j] * b[j] for j in range(len(b))), Fraction(0)) for i in range(len(F))] for b in B]
    return [[sum((x * y for x, y in zip(fb, b)), Fraction(0)) for b in B] for fb in FB]


def _kernel_of(dense) -> list[list[Fraction]]:
    return rref_kernel(SparseRationalMatrix.from_dense(dense))


def _split_block(B, Q, M) -> list[list[list[Fraction]]]:
    """Split the span of ``B`` into eigenspaces of the pencil ``Q - x M``.

    Rational eigenvalues give their eigenspaces; an irreducible factor of higher
    degree keeps its whole invariant subspace together.  Pieces come out in
    decreasing eigenvalue order.
    """
    import sympy

    QB, MB = _congruence(B, Q), _congruence(B, M)
    b = len(B)
    P = sympy.Matrix(b, b, lambda i, j: sympy.Rational(MB[i][j].numerator, MB[i][j].denominator)).inv() * sympy.Matrix(
        b, b, lambda i, j: sympy.Rational(QB[i][j].numerator, QB[i][j].denominator)
    )
    x = sympy.Symbol("x")
    _, factors = sympy.factor_list(P.charpoly(x).as_expr(), x)
    keyed = []
    for f, _mult in factors:
        poly = sympy.Poly(f, x)
        top = max(float(sympy.re(r)) for r in poly.nroots())
        fP = sympy.zeros(b, b)
        for c in poly.all_coeffs():
            fP = fP * P + c * sympy.eye(b)
        dense = [[Fraction(int(v.p), int(v.q)) for v in fP.row(i)] for i in range(b)]
        pieces = _kernel_of(dense)
        keyed.append((-top, [[sum((z[r] * B[r][c] for r in range(b)), Fraction(0)) for c in range(len(B[0]))] for z in pieces]))
    keyed.sort(key=lambda kv: kv[0])
    return [blk for _, blk in keyed]


def row_diagonal_basis(kernel, metric, rows) -> tuple[list[list[Fraction]], dict]:
    """Reorder and recombine kernel vectors so each skew row's Gram form is diagonal.

    ``rows`` lists node positions per skew filling, in island order.  Starting
    from the first row, the multiplicity space is split into eigenspaces of that
    row's Gram form relative to the full one; ties are broken by later rows.
    Pieces still larger than one vector are left to Gram-Schmidt.
    """
    k = len(kernel)
    M = _form(kernel, metric, range(len(metric)))
    blocks = [[[Fraction(int(i == j)) for j in range(k)] for i in range(k)]]
    used = 0
    for support in rows:
        if all(len(b) == 1 for b in blocks):
            break
        Q = _form(kernel, metric, support)
        nxt = []
        for b in blocks:
            nxt.extend(_split_block(b, Q, M) if len(b) > 1 else [b])
        blocks = nxt
        used += 1
    coeffs = [c for b in blocks for c in b]
    vectors = [[sum((c[i] * kernel[i][q] for i in range(k)), Fraction(0)) for q in range(len(metric))] for c in coeffs]
    info = {"rows_used": used, "resolved": all(len(b) == 1 for b in blocks)}
    return vectors, info


@dataclass
class SDCTable:
    """Island coefficients ``<lam; m | lam1, lam2; mu, m2>_eta``, one column per copy eta."""

    lam: Partition
    lam1: Partition
    lam2: Partition
    mu: StandardTableau | None
    mu_index: int
    multiplicity: int
    island: Island | None
    copies: list[list[Surd]] = field(default_factory=list)
    ordering: str = DEFAULT_ORDERING
    phase_convention: str = PHASE_CONVENTION
    meta: dict = field(default_factory=dict)

    @property
    def nodes(self) -> list[tuple[int, int]]:
        if self.island is None:
            return []
        return [self.island.coordinates(k) for k in range(len(self.island))]

    def value(self, eta: int, s: int, t: int) -> Surd:
        """Entry for copy ``eta`` (0-based) at skew index ``s`` and ``m2`` index ``t``."""
        return self.copies[eta][self.island.position(s, t)]

    def __len__(self):
        return 0 if self.island is None else len(self.island)


def island_metric(island: Island, weights: ScalingWeights) -> list[Fraction]:
    return [weights.node_weight(island, k) for k in range(len(island))]


def solve_island(
    lam,
    lam1,
    lam2,
    mu: int | StandardTableau = 1,
    ordering: str = DEFAULT_ORDERING,
    pivot: str = "last",
    separation: str = DEFAULT_SEPARATION,
) -> SDCTable:
    """Solve the reduced system on one island and separate the multiplicity.

    ``mu`` is the 1-based index of the island tableau (or the tableau itself).
    With ``separation="gram-schmidt"`` the copies are Gram-Schmidt over the
    canonical kernel basis.  The default ``"row-diagonal"`` first rotates the
    kernel so that, skew row by skew row, the copies restricted to that row are
    mutually orthogonal, ordered by decreasing weight on the row.
    """
    if separation not in SEPARATIONS:
        raise ValueError(f"unknown separation {separation!r}")
    lam, lam1, lam2 = as_partition(lam), as_partition(lam1), as_partition(lam2)
    if lam1.n == 0 or lam2.n == 0:
        raise DegenerateSplitError("both factors of the split subgroup need at least one box")
    tabs1 = enumerate_standard_tableaux(lam1, ordering)
    if isinstance(mu, StandardTableau):
        mu_tab = mu
        mu_index = tabs1.index(mu) + 1
    else:
        mu_index = int(mu)
        if not 1 <= mu_index <= len(tabs1):
            raise ValueError(f"island index {mu_index} out of range 1..{len(tabs1)}")
        mu_tab = tabs1[mu_index - 1]
    # zero also covers |lam1| + |lam2| != |lam|
    mult = lr_multiplicity(lam, lam1, lam2)
    meta = {"pivot": pivot, "separation": separation}
    if mult == 0:
        return SDCTable(lam, lam1, lam2, mu_tab, mu_index, 0, None, [], ordering, PHASE_CONVENTION, meta)
    grid = build_grid(lam, lam1, lam2, ordering)
    island = build_island(grid, mu_tab)
    weights = compute_scaling_weights(island)
    A = assemble_reduced_system(island, weights=weights)
    kernel = rref_kernel(A, pivot=pivot)
    if len(kernel) != mult:
        raise InvariantViolation(f"kernel dimension {len(kernel)} != multiplicity {mult} for {lam}->{lam1}x{lam2}")
    metric = island_metric(island, weights)
    vectors = kernel
    if separation == "row-diagonal" and mult > 1:
        rows = [[island.position(s, t) for t in range(len(island.tabs2))] for s in range(len(island.skews))]
        vectors, info = row_diagonal_basis(kernel, metric, rows)
        meta["separation_rows_used"] = info["rows_used"]
        meta["separation_resolved"] = info["resolved"]
    copies = orthonormalize(vectors, metric, Fraction(len(island.tabs2)))
    return SDCTable(lam, lam1, lam2, mu_tab, mu_index, mult, island, copies, ordering, PHASE_CONVENTION, meta)


def kernel_dimension(lam, lam1, lam2, ordering: str = DEFAULT_ORDERING) -> int:
    lam, lam1, lam2 = check_triple(lam, lam1, lam2)
    grid = build_grid(lam, lam1, lam2, ordering)
    island = build_island(grid, grid.tabs1[0])
    if not len(island):
        return 0
    return len(rref_kernel(assemble_reduced_system(island)))
