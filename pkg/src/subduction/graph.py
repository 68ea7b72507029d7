"""Nodes, grids, islands and reduced subduction graphs, plus the crossing/bridge
classification of tableau pairs that underlies the vanishing rules."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

from .tableaux import (
    DEFAULT_ORDERING,
    Partition,
    ShapeMismatchError,
    StandardTableau,
    apply_generator,
    as_partition,
    axial_distance,
    compatible,
    enumerate_skew,
    enumerate_standard_tableaux,
    join,
    restrict,
    skew_part,
    tableau_index,
)


class DegenerateSplitError(ValueError):
    pass


def check_triple(lam, lam1, lam2) -> tuple[Partition, Partition, Partition]:
    lam, lam1, lam2 = as_partition(lam), as_partition(lam1), as_partition(lam2)
    if lam1.n + lam2.n != lam.n:
        raise ShapeMismatchError(f"|{lam1}| + |{lam2}| != |{lam}|")
    if lam1.n == 0 or lam2.n == 0:
        raise DegenerateSplitError("both factors of the split subgroup need at least one box")
    return lam, lam1, lam2


@dataclass(frozen=True)
class Node:
    m: StandardTableau
    m1: StandardTableau
    m2: StandardTableau

    @property
    def n1(self) -> int:
        return self.m1.n


def apply_generator_node(node: Node, i: int) -> Node:
    """``g_i`` on a node.  For ``i == n1`` only ``m`` moves (the split pair has no ``g_{n1}``)."""
    n = node.m.n
    if not 1 <= i < n:
        raise IndexError(f"generator g_{i} out of range for S_{n}")
    m = apply_generator(node.m, i)
    n1 = node.n1
    if i < n1:
        return Node(m, apply_generator(node.m1, i), node.m2)
    if i > n1:
        return Node(m, node.m1, apply_generator(node.m2, i))
    return Node(m, node.m1, node.m2)


@dataclass(frozen=True)
class Grid:
    lam: Partition
    lam1: Partition
    lam2: Partition
    ordering: str = DEFAULT_ORDERING

    @cached_property
    def tabs(self) -> tuple[StandardTableau, ...]:
        return enumerate_standard_tableaux(self.lam, self.ordering)

    @cached_property
    def tabs1(self) -> tuple[StandardTableau, ...]:
        return enumerate_standard_tableaux(self.lam1, self.ordering)

    @cached_property
    def tabs2(self) -> tuple[StandardTableau, ...]:
        return enumerate_standard_tableaux(self.lam2, self.ordering, offset=self.lam1.n)

    @property
    def n1(self) -> int:
        return self.lam1.n

    def __len__(self):
        return len(self.tabs) * len(self.tabs1) * len(self.tabs2)

    def nodes(self):
        for m in self.tabs:
            for m1 in self.tabs1:
                for m2 in self.tabs2:
                    yield Node(m, m1, m2)

    @cached_property
    def index(self) -> dict[Node, int]:
        return {v: k for k, v in enumerate(self.nodes())}


def build_grid(lam, lam1, lam2, ordering: str = DEFAULT_ORDERING) -> Grid:
    lam, lam1, lam2 = check_triple(lam, lam1, lam2)
    return Grid(lam, lam1, lam2, ordering)


# ---------------------------------------------------------------------------
# crossing / bridge pairs


@dataclass(frozen=True)
class Equal:
    pass


@dataclass(frozen=True)
class Crossing:
    separation: int


@dataclass(frozen=True)
class Bridge:
    cut: int


PairClass = Union[Equal, Crossing, Bridge]


def _check_pair(a: StandardTableau, b: StandardTableau):
    if (a.shape, a.inner, a.offset) != (b.shape, b.inner, b.offset):
        raise ShapeMismatchError(f"{a} and {b} have different shapes")


def cut(a: StandardTableau, b: StandardTableau) -> int:
    """Smallest ``i`` with ``d_i(a) != d_i(b)``; 0 if there is none."""
    _check_pair(a, b)
    for i in range(a.offset + 1, a.offset + a.n):
        if axial_distance(a, i) != axial_distance(b, i):
            return i
    return 0


def classify_pair(a: StandardTableau, b: StandardTableau) -> PairClass:
    _check_pair(a, b)
    if a == b:
        return Equal()
    for i in range(a.offset + 1, a.offset + a.n):
        da, db = axial_distance(a, i), axial_distance(b, i)
        if da == db:
            continue
        moved_a, moved_b = abs(da) != 1, abs(db) != 1
        if moved_a == moved_b:
            return Crossing(i)
    return Bridge(cut(a, b))


def bridge_chain(a: StandardTableau, b: StandardTableau) -> list[tuple[StandardTableau, StandardTableau]]:
    """Iterate ``(a, b) -> (g_cut a, g_cut b)`` from a bridge pair to a crossing pair.

    The returned list starts with the input pair and ends with the first
    crossing pair.
    """
    first = classify_pair(a, b)
    if not isinstance(first, Bridge):
        raise ValueError(f"({a}, {b}) is not a bridge pair: {first}")
    chain = [(a, b)]
    cls = first
    while isinstance(cls, Bridge):
        if len(chain) > first.cut:
            raise RuntimeError("bridge chain did not terminate within the cut")
        a, b = apply_generator(a, cls.cut), apply_generator(b, cls.cut)
        chain.append((a, b))
        cls = classify_pair(a, b)
        if isinstance(cls, Equal):
            raise RuntimeError("bridge chain collapsed to an equal pair")
    return chain


# ---------------------------------------------------------------------------
# islands and reduced graphs


@dataclass(frozen=True)
class Island:
    """Nodes ``<m; mu, m2>`` with ``m`` compatible with ``mu``.

    Ordered by (skew filling of ``m`` given ``mu``, ``m2``) with both factors in
    the grid's tableau ordering.
    """

    lam: Partition
    lam1: Partition
    lam2: Partition
    mu: StandardTableau
    ordering: str = DEFAULT_ORDERING

    @cached_property
    def skews(self) -> tuple[StandardTableau, ...]:
        return enumerate_skew(self.lam, self.lam1, self.lam1.n, self.ordering)

    @cached_property
    def tabs2(self) -> tuple[StandardTableau, ...]:
        return enumerate_standard_tableaux(self.lam2, self.ordering, offset=self.lam1.n)

    @cached_property
    def skew_index(self) -> dict[StandardTableau, int]:
        return tableau_index(self.skews)

    @cached_property
    def m2_index(self) -> dict[StandardTableau, int]:
        return tableau_index(self.tabs2)

    @property
    def n1(self) -> int:
        return self.lam1.n

    @property
    def n(self) -> int:
        return self.lam.n

    def __len__(self):
        return len(self.skews) * len(self.tabs2)

    def position(self, s: int, t: int) -> int:
        return s * len(self.tabs2) + t

    def coordinates(self, k: int) -> tuple[int, int]:
        return divmod(k, len(self.tabs2))

    @cached_property
    def nodes(self) -> tuple[Node, ...]:
        return tuple(Node(join(self.mu, s), self.mu, m2) for s in self.skews for m2 in self.tabs2)


def build_island(grid: Grid, mu: StandardTableau) -> Island:
    if mu.shape != grid.lam1 or mu.offset != 0:
        raise ShapeMismatchError(f"island label {mu} must have shape {grid.lam1} and entries from 1")
    return Island(grid.lam, grid.lam1, grid.lam2, mu, grid.ordering)


def is_nonvanishing(node: Node) -> bool:
    """True when the node lies on its ``m1``-island (its coefficient is not forced to vanish)."""
    return compatible(node.m, node.m1)


@dataclass(frozen=True)
class ReducedGraph:
    island: Island
    edges: tuple[tuple[int, int, int], ...] = field(default_factory=tuple)

    @property
    def labels(self) -> set[int]:
        return {e[2] for e in self.edges}


def build_reduced_graph(island: Island) -> ReducedGraph:
    """Edges ``(a, b, i)`` with ``a < b`` joining island nodes swapped by ``g_i``, ``i > n1``."""
    index = {v: k for k, v in enumerate(island.nodes)}
    edges = []
    for a, node in enumerate(island.nodes):
        for i in range(island.n1 + 1, island.n):
            other = apply_generator_node(node, i)
            b = index[other]
            if a < b:
                edges.append((a, b, i))
    edges.sort()
    return ReducedGraph(island, tuple(edges))


def full_graph_edges(grid: Grid) -> list[tuple[int, int, int]]:
    """Edges of the whole subduction graph (every ``g_i`` with ``i != n1``)."""
    index = grid.index
    edges = []
    for node, a in index.items():
        for i in range(1, grid.lam.n):
            if i == grid.n1:
                continue
            b = index[apply_generator_node(node, i)]
            if a < b:
                edges.append((a, b, i))
    edges.sort()
    return edges


def island_of(node: Node) -> StandardTableau | None:
    """The island label of a node, or None when the node lies on no island."""
    return node.m1 if compatible(node.m, node.m1) else None


def corresponding_node(node: Node, mu: StandardTableau) -> Node:
    """Move an island node to the ``mu``-island keeping its skew filling and ``m2``."""
    s = skew_part(node.m, node.n1)
    return Node(join(mu, s), mu, node.m2)


def restricted_shape(m: StandardTableau, n1: int) -> Partition:
    return restrict(m, n1).shape
