"""Full-grid reconstruction and the checks run against solved islands:
unitarity, block diagonalization, an unreduced-system oracle and conjugation."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import SparseRationalMatrix, Surd, SurdSum, rref_kernel, surd_normalize
from .graph import Grid, Node, build_grid, build_island, check_triple, is_nonvanishing
from .solver import (
    DEFAULT_SEPARATION,
    InvariantViolation,
    SDCTable,
    coupling,
    orthonormalize,
    seminormal_weights,
    solve_island,
)
from .tableaux import (
    DEFAULT_ORDERING,
    Partition,
    PhaseConventionError,
    as_partition,
    axial_distance,
    apply_generator,
    conjugate,
    enumerate_standard_tableaux,
    join,
    lr_multiplicity,
    orthogonal_rep_entries,
    partitions,
    phase_calibrated,
    phase_factors,
    skew_part,
    tableau_index,
)

log = logging.getLogger(__name__)

#: Largest grid (f^lam f^lam1 f^lam2) handled by exact checks and the oracle.
EXACT_LIMIT = 5000
FLOAT_TOLERANCE = 1e-12
#: Largest irrep dimension for which block diagonalization is checked exactly by default.
BLOCKDIAG_EXACT_DIM = 100


class SizeGuardError(RuntimeError):
    """Raised instead of starting a computation that is too large to finish."""


@dataclass
class Report:
    """Outcome of one check; ``failure`` names the first offending index tuple."""

    name: str
    ok: bool
    exact: bool = True
    checked: int = 0
    failure: str | None = None
    max_deviation: float | None = None
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "exact": self.exact, "checked": self.checked}
        if self.failure is not None:
            out["failure"] = self.failure
        if self.max_deviation is not None:
            out["max_deviation"] = self.max_deviation
        if self.detail:
            out["detail"] = self.detail
        return out


# ---------------------------------------------------------------------------
# full tables


@dataclass
class FullTable:
    """Sparse full-grid coefficients ``copies[eta][(m, m1, m2)]`` (0-based indices).

    Only entries on islands are stored; everything else vanishes.
    """

    lam: Partition
    lam1: Partition
    lam2: Partition
    multiplicity: int
    grid: Grid
    copies: list[dict[tuple[int, int, int], Surd]]

    def column(self, eta: int, m1: int, m2: int) -> dict[int, Surd]:
        return {m: v for (m, a, b), v in self.copies[eta].items() if a == m1 and b == m2}

    def value(self, eta: int, m: int, m1: int, m2: int) -> Surd:
        return self.copies[eta].get((m, m1, m2), Surd.zero())


def reconstruct_full_table(t: SDCTable) -> FullTable:
    """Copy the solved island onto every island of the grid."""
    grid = build_grid(t.lam, t.lam1, t.lam2, t.ordering)
    copies: list[dict] = [{} for _ in range(t.multiplicity)]
    if not t.multiplicity:
        return FullTable(t.lam, t.lam1, t.lam2, 0, grid, copies)
    index = tableau_index(grid.tabs)
    isl = t.island
    for a, mu in enumerate(grid.tabs1):
        for s, skew in enumerate(isl.skews):
            m = index[join(mu, skew)]
            for b in range(len(isl.tabs2)):
                for eta in range(t.multiplicity):
                    v = t.value(eta, s, b)
                    if v:
                        copies[eta][(m, a, b)] = v
    return FullTable(t.lam, t.lam1, t.lam2, t.multiplicity, grid, copies)


def solve_sectors(lam, lam1, ordering: str = DEFAULT_ORDERING, separation: str = DEFAULT_SEPARATION) -> list[SDCTable]:
    """Island tables for every ``lam2`` with nonzero multiplicity, in partition order."""
    lam, lam1 = as_partition(lam), as_partition(lam1)
    out = []
    for lam2 in partitions(lam.n - lam1.n):
        if lr_multiplicity(lam, lam1, lam2):
            out.append(solve_island(lam, lam1, lam2, ordering=ordering, separation=separation))
    return out


# ---------------------------------------------------------------------------
# unitarity


def _island_columns(tables: Sequence[SDCTable]):
    """Columns ``(label, {skew index: value})`` of the island tables, all for one ``mu``."""
    cols = []
    for t in tables:
        for eta in range(t.multiplicity):
            for b in range(len(t.island.tabs2)):
                vec = {s: t.value(eta, s, b) for s in range(len(t.island.skews)) if t.value(eta, s, b)}
                cols.append(((str(t.lam2), b + 1, eta + 1), vec))
    return cols


def _check_same_split(tables: Sequence[SDCTable]):
    keys = {(t.lam, t.lam1, t.ordering) for t in tables}
    if len(keys) != 1:
        raise ValueError("tables must share lam, lam1 and ordering")


def _exact_dot(x: dict, y: dict) -> SurdSum:
    return SurdSum.total(x[k] * y[k] for k in x.keys() & y.keys())


def _is_delta(value, expected: int, exact: bool) -> tuple[bool, float]:
    if exact:
        return value == SurdSum.of(Fraction(expected)), 0.0
    dev = abs(float(value) - expected)
    return dev <= FLOAT_TOLERANCE, dev


def _float_dot(x: dict, y: dict) -> float:
    return sum(float(x[k]) * float(y[k]) for k in x.keys() & y.keys())


def verify_unitarity(tables: Sequence[SDCTable] | SDCTable, completeness: bool | None = None, exact: bool | None = None) -> Report:
    """Orthonormality of the split vectors and, when every sector is present, completeness.

    Works on one island: by the selection and identity rules every other island
    repeats the same sums.  Orthonormality is checked over the ``m`` sum for all
    pairs of columns, across sectors too.  Completeness is the sum over
    ``(lam2, m2, eta)`` for a fixed ``m1`` and is checked for ``m, m'`` on the
    ``m1``-island (off-island rows carry no coefficients for that ``m1``).
    It runs when ``completeness`` is true, or by default when the sectors
    cover the island.
    """
    if isinstance(tables, SDCTable):
        tables = [tables]
    tables = [t for t in tables if t.multiplicity]
    if not tables:
        return Report("unitarity", True, checked=0)
    _check_same_split(tables)
    size = sum(len(t) for t in tables)
    if exact is None:
        exact = size <= EXACT_LIMIT
    dot = _exact_dot if exact else _float_dot
    cols = _island_columns(tables)
    checked = 0
    worst = 0.0
    for a, (la, x) in enumerate(cols):
        for b in range(a, len(cols)):
            lb, y = cols[b]
            ok, dev = _is_delta(dot(x, y), int(a == b), exact)
            worst = max(worst, dev)
            checked += 1
            if not ok:
                return Report("unitarity", False, exact, checked, f"orthonormality {la} vs {lb}", worst or None)
    nskew = len(tables[0].island.skews)
    complete = len(cols) == nskew
    if completeness is None:
        completeness = complete
    if completeness:
        if not complete:
            return Report("unitarity", False, exact, checked, f"completeness needs {nskew} columns, have {len(cols)}")
        rows = [{c: vec[s] for c, (_, vec) in enumerate(cols) if s in vec} for s in range(nskew)]
        for s in range(nskew):
            for s2 in range(s, nskew):
                ok, dev = _is_delta(dot(rows[s], rows[s2]), int(s == s2), exact)
                worst = max(worst, dev)
                checked += 1
                if not ok:
                    return Report("unitarity", False, exact, checked, f"completeness m={s + 1} m'={s2 + 1}", worst or None)
    return Report("unitarity", True, exact, checked, None, None if exact else worst, {"completeness": bool(completeness)})


# ---------------------------------------------------------------------------
# block diagonalization


def _split_columns(lam: Partition, n1: int, ordering: str, separation: str):
    """Columns of the full transformation matrix: ``(lam1, lam2, eta, m1, m2)`` -> {m: value}."""
    cols = []
    labels = []
    for lam1 in partitions(n1):
        if not lam.contains(lam1):
            continue
        for t in solve_sectors(lam, lam1, ordering, separation):
            full = reconstruct_full_table(t)
            per_col: dict[tuple[int, int, int], dict[int, Surd]] = {}
            for eta, copy in enumerate(full.copies):
                for (m, a, b), v in copy.items():
                    per_col.setdefault((eta, a, b), {})[m] = v
            nt1, nt2 = len(full.grid.tabs1), len(full.grid.tabs2)
            for eta in range(t.multiplicity):
                for a in range(nt1):
                    for b in range(nt2):
                        labels.append((t.lam1, t.lam2, eta, a, b))
                        cols.append(per_col.get((eta, a, b), {}))
    return labels, cols


def _factor_action(labels, i: int, n1: int, ordering: str):
    """Sparse matrix of ``g_i`` on the split basis, ``{(row, col): Surd}``."""
    where = {lab: k for k, lab in enumerate(labels)}
    cache: dict = {}
    out = {}
    for col, (lam1, lam2, eta, a, b) in enumerate(labels):
        if i < n1:
            key = (lam1, i, 0)
            if key not in cache:
                cache[key] = _by_column(orthogonal_rep_entries(lam1, i, ordering)) if lam1.n > 1 else {}
            for r, v in cache[key].get(a, {}).items():
                out[(where[(lam1, lam2, eta, r, b)], col)] = v
        else:
            key = (lam2, i - n1, n1)
            if key not in cache:
                cache[key] = _by_column(orthogonal_rep_entries(lam2, i - n1, ordering, n1))
            for r, v in cache[key].get(b, {}).items():
                out[(where[(lam1, lam2, eta, a, r)], col)] = v
    return out


def _by_column(entries):
    cols: dict[int, dict[int, Surd]] = {}
    for (r, c), v in entries.items():
        cols.setdefault(c, {})[r] = v
    return cols


def verify_block_diagonalization(lam, n1: int, ordering: str = DEFAULT_ORDERING, exact: bool | None = None, separation: str = DEFAULT_SEPARATION) -> Report:
    """``U^T R_i U`` against the direct sum of factor matrices for every ``g_i``, ``i != n1``.

    ``U`` is assembled from every sector ``(lam1, lam2)`` with ``|lam1| = n1``.
    Exact when ``exact`` (default: ``f^lam`` up to ``BLOCKDIAG_EXACT_DIM``),
    otherwise in floating point with tolerance 1e-12.
    """
    lam = as_partition(lam)
    if not 0 < n1 < lam.n:
        raise ValueError("need 0 < n1 < n")
    labels, cols = _split_columns(lam, n1, ordering, separation)
    dim = len(enumerate_standard_tableaux(lam, ordering))
    if len(cols) != dim:
        raise InvariantViolation(f"split basis has {len(cols)} vectors, [{lam}] has dimension {dim}")
    if exact is None:
        exact = dim <= BLOCKDIAG_EXACT_DIM
    gens = [i for i in range(1, lam.n) if i != n1]
    if exact:
        return _blockdiag_exact(lam, n1, labels, cols, gens, ordering)
    return _blockdiag_float(lam, n1, labels, cols, gens, ordering, dim)


def _blockdiag_exact(lam, n1, labels, cols, gens, ordering) -> Report:
    checked = 0
    for i in gens:
        R = _by_column(orthogonal_rep_entries(lam, i, ordering))
        B = _factor_action(labels, i, n1, ordering)
        # R U, one column at a time
        RU = []
        for col in cols:
            acc: dict[int, list] = {}
            for m, v in col.items():
                for r, rv in R.get(m, {}).items():
                    acc.setdefault(r, []).append(rv * v)
            RU.append({r: SurdSum.total(vs) for r, vs in acc.items()})
        for a, ca in enumerate(cols):
            for b, rb in enumerate(RU):
                got = SurdSum.total(ca[m] * x for m, x in rb.items() if m in ca) if ca else SurdSum.of(0)
                want = SurdSum.of(B.get((a, b), Surd.zero()))
                checked += 1
                if got != want:
                    return Report("blockdiag", False, True, checked, f"g_{i} block entry {_label(labels[a])} x {_label(labels[b])}")
    return Report("blockdiag", True, True, checked, detail={"generators": gens, "dimension": len(cols)})


def _blockdiag_float(lam, n1, labels, cols, gens, ordering, dim) -> Report:
    import numpy as np

    U = np.zeros((dim, dim))
    for c, col in enumerate(cols):
        for m, v in col.items():
            U[m, c] = float(v)
    worst = 0.0
    checked = 0
    for i in gens:
        R = np.zeros((dim, dim))
        for (r, c), v in orthogonal_rep_entries(lam, i, ordering).items():
            R[r, c] = float(v)
        B = np.zeros((dim, dim))
        for (r, c), v in _factor_action(labels, i, n1, ordering).items():
            B[r, c] = float(v)
        diff = np.abs(U.T @ R @ U - B)
        checked += diff.size
        dev = float(diff.max())
        worst = max(worst, dev)
        if dev > FLOAT_TOLERANCE:
            r, c = np.unravel_index(int(diff.argmax()), diff.shape)
            return Report("blockdiag", False, False, checked, f"g_{i} block entry {_label(labels[r])} x {_label(labels[c])}", worst)
    return Report("blockdiag", True, False, checked, None, worst, {"generators": gens, "dimension": dim})


def _label(lab) -> str:
    lam1, lam2, eta, a, b = lab
    return f"({lam1},{lam2},eta={eta + 1},m1={a + 1},m2={b + 1})"


# ---------------------------------------------------------------------------
# unreduced oracle


@dataclass
class OracleResult:
    grid: Grid
    kernel: list[list[Fraction]]
    weights: dict  # node index -> Fraction, C = sqrt(weight) * X
    reports: list[Report]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)


def full_system_shape(lam, lam1, lam2) -> tuple[int, int]:
    lam, lam1, lam2 = check_triple(lam, lam1, lam2)
    size = len(build_grid(lam, lam1, lam2))
    return (lam.n - 2) * size, size


def _assemble_full(grid: Grid):
    n, n1 = grid.lam.n, grid.n1
    gens = [i for i in range(1, n) if i != n1]
    W = seminormal_weights(grid.tabs, range(1, n))
    w1 = seminormal_weights(grid.tabs1, range(1, n1))
    u = seminormal_weights(grid.tabs2, range(n1 + 1, n))
    index = grid.index
    A = SparseRationalMatrix(len(index) * len(gens), len(index))
    for node, col in index.items():
        for g, i in enumerate(gens):
            row = col * len(gens) + g
            m = node.m
            f, fw = (node.m1, w1) if i < n1 else (node.m2, u)
            d, df = axial_distance(m, i), axial_distance(f, i)
            A.add(row, col, Fraction(1, d) - Fraction(1, df))
            gm = apply_generator(m, i)
            if gm != m:
                A.add(row, index[Node(gm, node.m1, node.m2)], coupling(d, W[m], W[gm]))
            gf = apply_generator(f, i)
            if gf != f:
                other = Node(m, gf, node.m2) if i < n1 else Node(m, node.m1, gf)
                A.add(row, index[other], -coupling(df, fw[f], fw[gf]))
    weights = {col: W[node.m] * w1[node.m1] * u[node.m2] for node, col in index.items()}
    return A, weights


def _projector(vectors, metric) -> list[list[Fraction]]:
    """Metric-orthogonal projector onto ``span(vectors)``, exact and basis free."""
    k = len(vectors)
    G = [[sum((metric[q] * vectors[i][q] * vectors[j][q] for q in range(len(metric))), Fraction(0)) for j in range(k)] for i in range(k)]
    Ginv = _invert(G)
    n = len(metric)
    # P = V^T Ginv V M
    coef = [[sum((Ginv[i][j] * vectors[j][q] for j in range(k)), Fraction(0)) for q in range(n)] for i in range(k)]
    return [[sum((vectors[i][p] * coef[i][q] for i in range(k)), Fraction(0)) * metric[q] for q in range(n)] for p in range(n)]


def _invert(G):
    k = len(G)
    A = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(G)]
    for c in range(k):
        p = next((r for r in range(c, k) if A[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular Gram matrix")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(k):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[k:] for row in A]


def full_system_oracle(lam, lam1, lam2, ordering: str = DEFAULT_ORDERING, limit: int = EXACT_LIMIT, table: SDCTable | None = None) -> OracleResult:
    """Solve the unreduced system on the whole grid and test the island shortcuts against it.

    Checks: kernel dimension equals the multiplicity; every kernel vector
    vanishes off the islands; corresponding nodes of different islands carry
    equal coefficients; and on the first island the kernel spans the same
    space (same metric projector) as the reduced solve.
    """
    lam, lam1, lam2 = check_triple(lam, lam1, lam2)
    grid = build_grid(lam, lam1, lam2, ordering)
    if len(grid) > limit:
        raise SizeGuardError(f"grid of {len(grid)} nodes exceeds the oracle limit {limit}")
    A, weights = _assemble_full(grid)
    kernel = rref_kernel(A)
    mult = lr_multiplicity(lam, lam1, lam2)
    reports = [Report("oracle-dimension", len(kernel) == mult, checked=1, detail={"kernel": len(kernel), "multiplicity": mult})]
    nodes = list(grid.nodes())

    bad = next(((v, k) for v, vec in enumerate(kernel) for k, node in enumerate(nodes) if vec[k] and not is_nonvanishing(node)), None)
    reports.append(Report("selection", bad is None, checked=len(kernel) * len(nodes), failure=None if bad is None else f"vector {bad[0] + 1} node {bad[1] + 1}"))

    index = grid.index
    tab_index = tableau_index(grid.tabs)
    first = grid.tabs1[0]
    failure = None
    checked = 0
    for v, vec in enumerate(kernel):
        for k, node in enumerate(nodes):
            if not is_nonvanishing(node) or node.m1 == first:
                continue
            ref = index[Node(join(first, _skew(node)), first, node.m2)]
            x, y = vec[k], vec[ref]
            checked += 1
            if x * x * weights[k] != y * y * weights[ref] or (x > 0) != (y > 0) or (x < 0) != (y < 0):
                failure = f"vector {v + 1} node {k + 1} vs node {ref + 1}"
                break
        if failure:
            break
    reports.append(Report("identity", failure is None, checked=checked, failure=failure))

    if table is None:
        table = solve_island(lam, lam1, lam2, 1, ordering)
    if mult:
        isl = table.island
        positions = [index[Node(join(first, s), first, m2)] for s in isl.skews for m2 in isl.tabs2]
        metric = [weights[p] for p in positions]
        restricted = [[vec[p] for p in positions] for vec in kernel]
        # table columns, converted to the oracle's scaling: C^2 / weight
        cols = []
        for eta in range(table.multiplicity):
            cols.append([table.copies[eta][k] for k in range(len(isl))])
        span_ok, failure = _same_span(restricted, cols, metric)
        reports.append(Report("span", span_ok, checked=len(positions), failure=failure))
    log.debug("oracle %s: %s", (lam, lam1, lam2), [r.as_dict() for r in reports])
    return OracleResult(grid, kernel, weights, reports)


def _skew(node: Node):
    return skew_part(node.m, node.n1)


def _same_span(restricted, cols, metric) -> tuple[bool, str | None]:
    """Compare metric projectors of the oracle span and of the solved copies.

    The copies are single surds ``C = a sqrt(b)``; on the island each copy is
    ``sqrt(metric * c) * X`` for a rational ``X`` and a constant ``c``, which
    is recovered from the first nonzero entry.
    """
    xs = []
    for col in cols:
        k0 = next(k for k, v in enumerate(col) if v)
        c = col[k0].square() / metric[k0]
        xvec = []
        for k, v in enumerate(col):
            if not v:
                xvec.append(Fraction(0))
                continue
            root = surd_normalize(1, v.square() / (metric[k] * c))
            if root.radicand != 1:
                return False, f"copy entry {k + 1} is not a rational multiple of its scale"
            xvec.append(root.coeff * v.sign())
        xs.append(xvec)
    if len(xs) != len(restricted):
        return False, f"dimension {len(restricted)} vs {len(xs)}"
    try:
        same = _projector(restricted, metric) == _projector(xs, metric)
    except ZeroDivisionError:
        return False, "copies are linearly dependent"
    if not same:
        return False, "projectors differ"
    return True, None


# ---------------------------------------------------------------------------
# conjugation


#: Published copy pairing for three-fold multiplicity: conjugate copy eta <- source copy.
PUBLISHED_COPY_MAP = {3: (2, 1, 0), 1: (0,)}


def _conjugate_phases(t: SDCTable):
    for key in ((t.lam, t.lam1), (t.lam2, Partition(()))):
        if not phase_calibrated(*key):
            raise PhaseConventionError(f"convention unknown for {key[0]}" + (f"/{key[1]}" if key[1].n else ""))
    return phase_factors(t.lam, t.lam1, t.ordering, strict=True), phase_factors(t.lam2, (), t.ordering, strict=True)


def _conjugate_values(t: SDCTable):
    """Conjugate island and, per source copy, its phased values at conjugate nodes."""
    lam_c, lam1_c, lam2_c = conjugate(t.lam), conjugate(t.lam1), conjugate(t.lam2)
    grid = build_grid(lam_c, lam1_c, lam2_c, t.ordering)
    mu_c = conjugate(t.mu)
    island = build_island(grid, mu_c)
    ps, p2 = _conjugate_phases(t)
    src = t.island
    values = [[Surd.zero()] * len(island) for _ in range(t.multiplicity)]
    for s, skew in enumerate(src.skews):
        ds = island.skew_index[conjugate(skew)]
        for b, m2 in enumerate(src.tabs2):
            db = island.m2_index[conjugate(m2)]
            sign = ps[s] * p2[b]
            for eta in range(t.multiplicity):
                v = t.value(eta, s, b)
                values[eta][island.position(ds, db)] = v if sign > 0 else -v
    return grid, mu_c, island, values


def detect_copy_map(t: SDCTable, direct: SDCTable) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Match phased conjugate copies of ``t`` to the copies of a direct solve.

    Returns ``(map, signs)`` where conjugate copy ``eta`` is ``signs[eta]``
    times source copy ``map[eta]``; raises if some copy has no match.
    """
    _, _, island, values = _conjugate_values(t)
    mapping, signs = [], []
    for eta, col in enumerate(direct.copies):
        hit = None
        for src, vec in enumerate(values):
            for sign in (1, -1):
                if all((v if sign > 0 else -v) == c for v, c in zip(vec, col)):
                    hit = (src, sign)
                    break
            if hit:
                break
        if hit is None:
            raise InvariantViolation(f"conjugate copy {eta + 1} matches no phased source copy")
        mapping.append(hit[0])
        signs.append(hit[1])
    return tuple(mapping), tuple(signs)


def conjugation_transform(t: SDCTable, copy_map: Sequence[int] | None = None) -> SDCTable:
    """Table for the conjugate triple, from ``t`` and the Yamanouchi phases.

    The entry at the conjugate node is the skew phase times the ``m2`` phase
    times the source entry.  Copies follow ``copy_map`` (conjugate copy
    ``eta`` <- source copy ``copy_map[eta]``, 0-based); by default the
    published pairing for multiplicity three (1<->3, 2<->2), the identity
    for multiplicity one, and otherwise the pairing detected against a
    direct solve, recorded in ``meta``.
    """
    if not t.multiplicity:
        raise ValueError("nothing to conjugate in an empty table")
    grid, mu_c, island, values = _conjugate_values(t)
    meta = {"derived_from": "conjugation", "source_separation": t.meta.get("separation")}
    if copy_map is None:
        if t.multiplicity in PUBLISHED_COPY_MAP:
            copy_map = PUBLISHED_COPY_MAP[t.multiplicity]
            meta["copy_map_source"] = "published"
        else:
            direct = solve_island(grid.lam, grid.lam1, grid.lam2, mu_c, t.ordering, separation=t.meta.get("separation", DEFAULT_SEPARATION))
            copy_map, signs = detect_copy_map(t, direct)
            meta["copy_map_source"] = "detected"
            meta["copy_signs"] = list(signs)
    copy_map = tuple(copy_map)
    if sorted(copy_map) != list(range(t.multiplicity)):
        raise ValueError(f"copy map {copy_map} is not a permutation")
    meta["copy_map"] = [c + 1 for c in copy_map]
    copies = [values[c] for c in copy_map]
    if "copy_signs" in meta:
        copies = [[v if sg > 0 else -v for v in col] for col, sg in zip(copies, meta["copy_signs"])]
    mu_index = grid.tabs1.index(mu_c) + 1
    return SDCTable(grid.lam, grid.lam1, grid.lam2, mu_c, mu_index, t.multiplicity, island, copies, t.ordering, t.phase_convention, meta)


def tables_equal(a: SDCTable, b: SDCTable) -> bool:
    return (a.lam, a.lam1, a.lam2, a.multiplicity) == (b.lam, b.lam1, b.lam2, b.multiplicity) and a.copies == b.copies


def iter_triples(n_max: int, n_min: int = 2) -> Iterable[tuple[Partition, Partition, Partition]]:
    """All ``(lam, lam1, lam2)`` with ``n_min <= n <= n_max``, both factors nonempty."""
    for n in range(n_min, n_max + 1):
        for lam in partitions(n):
            for n1 in range(1, n):
                for lam1 in partitions(n1):
                    for lam2 in partitions(n - n1):
                        yield lam, lam1, lam2
