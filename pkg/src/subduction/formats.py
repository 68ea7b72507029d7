"""Serialization of SDC tables (JSON, CSV), golden-file comparison and graph export."""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .exact import Surd, SurdSum
from .graph import Grid, ReducedGraph, build_grid, build_island, build_reduced_graph, full_graph_edges
from .solver import SDCTable
from .tableaux import as_partition, enumerate_standard_tableaux, join, tableau_index

DOCUMENT_FORMAT = "sdc-table"
DOCUMENT_VERSION = 1
CSV_HEADER = ("m_index", "m2_index", "eta", "a", "b", "c")
GOLDEN_TABLE1 = "table1_4321_321_31.csv"


class DocumentError(ValueError):
    pass


# ---------------------------------------------------------------------------
# JSON


def table_document(t: SDCTable) -> dict:
    """Plain-data form of a table; ``nodes`` and indices are 1-based."""
    doc = {
        "format": DOCUMENT_FORMAT,
        "version": DOCUMENT_VERSION,
        "engine": __version__,
        "lambda": list(t.lam.parts),
        "lambda1": list(t.lam1.parts),
        "lambda2": list(t.lam2.parts),
        "mu_index": t.mu_index,
        "ordering": t.ordering,
        "phase_convention": t.phase_convention,
        "multiplicity": t.multiplicity,
        "nodes": [[s + 1, b + 1] for s, b in t.nodes],
        "copies": [[list(v.triple()) for v in col] for col in t.copies],
        "meta": t.meta,
    }
    if not t.multiplicity:
        doc["note"] = "multiplicity 0"
    return doc


def dumps_table(t: SDCTable) -> str:
    """Deterministic JSON text (sorted keys, compact rows, trailing newline)."""
    return json.dumps(table_document(t), sort_keys=True, separators=(",", ":")) + "\n"


def table_from_document(doc: dict) -> SDCTable:
    if doc.get("format") != DOCUMENT_FORMAT:
        raise DocumentError(f"not an {DOCUMENT_FORMAT} document")
    if doc.get("version") != DOCUMENT_VERSION:
        raise DocumentError(f"unsupported document version {doc.get('version')}")
    lam, lam1, lam2 = (as_partition(doc[k]) for k in ("lambda", "lambda1", "lambda2"))
    mu = enumerate_standard_tableaux(lam1, doc["ordering"])[doc["mu_index"] - 1]
    mult = doc["multiplicity"]
    island = build_island(build_grid(lam, lam1, lam2, doc["ordering"]), mu) if mult else None
    copies = [[Surd.from_triple(*abc) for abc in col] for col in doc["copies"]]
    if island is not None:
        expected = [[s + 1, b + 1] for s, b in (island.coordinates(k) for k in range(len(island)))]
        if doc["nodes"] != expected or any(len(c) != len(island) for c in copies):
            raise DocumentError("node list does not match the island layout")
    return SDCTable(lam, lam1, lam2, mu, doc["mu_index"], mult, island, copies, doc["ordering"], doc["phase_convention"], dict(doc.get("meta", {})))


def loads_table(text: str) -> SDCTable:
    return table_from_document(json.loads(text))


# ---------------------------------------------------------------------------
# CSV


def table_rows(t: SDCTable) -> list[tuple[int, int, int, int, int, int]]:
    """``(m_index, m2_index, eta, a, b, c)`` rows, copy-major, 1-based; zeros as ``0,1,1``."""
    rows = []
    for eta in range(t.multiplicity):
        for k, (s, b) in enumerate(t.nodes):
            rows.append((s + 1, b + 1, eta + 1, *t.copies[eta][k].triple()))
    return rows


def dumps_csv(t: SDCTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(table_rows(t))
    return buf.getvalue()


def read_csv_values(text: str) -> dict[tuple[int, int, int], Surd]:
    """``{(m_index, m2_index, eta): value}`` from a CSV in the table schema."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise DocumentError(f"expected header {','.join(CSV_HEADER)}")
    out = {}
    for line, row in enumerate(reader, start=2):
        try:
            key = (int(row["m_index"]), int(row["m2_index"]), int(row["eta"]))
            value = Surd.from_triple(int(row["a"]), int(row["b"]), int(row["c"]))
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"line {line}: {exc}") from None
        if key in out:
            raise DocumentError(f"line {line}: duplicate entry {key}")
        out[key] = value
    return out


def golden_path(name: str = GOLDEN_TABLE1):
    return resources.files("subduction") / "data" / name


def load_golden(path=None) -> dict[tuple[int, int, int], Surd]:
    p = golden_path() if path is None else Path(path)
    return read_csv_values(p.read_text())


# ---------------------------------------------------------------------------
# golden comparison


@dataclass
class GoldenReport:
    exact: bool
    multiset: bool
    gram: bool
    projector: bool
    findings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.multiset and self.gram

    @property
    def verdict(self) -> str:
        if self.exact:
            return "exact match"
        if self.ok:
            return "ordering mismatch"
        return "mismatch"

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "verdict": self.verdict,
            "levels": {"exact": self.exact, "multiset": self.multiset, "gram": self.gram, "projector": self.projector},
            "findings": self.findings,
        }


def _gram(cols) -> list[list[SurdSum]]:
    return [[SurdSum.total(x * y for x, y in zip(a, b)) for b in cols] for a in cols]


def _projector(cols) -> list[list[SurdSum]]:
    n = len(cols[0]) if cols else 0
    return [[SurdSum.total(c[p] * c[q] for c in cols) for q in range(n)] for p in range(n)]


def compare_golden(t: SDCTable, golden: dict[tuple[int, int, int], Surd]) -> GoldenReport:
    """Compare a solved table with golden values at four levels.

    exact: every signed entry; multiset: per copy, the multiset of
    ``(|a|, b, c)``; gram: the Gram matrix of the copies; projector: the
    island projector ``sum_eta C_eta C_eta^T`` (sensitive to node order).
    """
    findings = []
    computed = {(s + 1, b + 1, eta + 1): t.copies[eta][k] for eta in range(t.multiplicity) for k, (s, b) in enumerate(t.nodes)}
    if set(golden) != set(computed):
        missing = sorted(set(computed) - set(golden))[:3]
        extra = sorted(set(golden) - set(computed))[:3]
        findings.append(f"index sets differ: missing {missing} extra {extra}")
        return GoldenReport(False, False, False, False, findings)
    exact = True
    for key in sorted(computed):
        if computed[key] != golden[key]:
            exact = False
            findings.append(f"first entry mismatch at (m,m2,eta)={key}: computed {computed[key]}, golden {golden[key]}")
            break
    multiset = True
    for eta in range(1, t.multiplicity + 1):
        mine = Counter(_abs_triple(v) for k, v in computed.items() if k[2] == eta)
        theirs = Counter(_abs_triple(v) for k, v in golden.items() if k[2] == eta)
        if mine != theirs:
            multiset = False
            odd = sorted((theirs - mine).elements())[:1] or sorted((mine - theirs).elements())[:1]
            findings.append(f"copy {eta}: triple multisets differ, offending (|a|,b,c) {odd[0]}")
    keys = sorted({(s, b) for s, b, _ in computed})
    cols_c = [[computed[(s, b, eta)] for s, b in keys] for eta in range(1, t.multiplicity + 1)]
    cols_g = [[golden[(s, b, eta)] for s, b in keys] for eta in range(1, t.multiplicity + 1)]
    gram = _gram(cols_c) == _gram(cols_g)
    if not gram:
        findings.append("Gram matrices of the copies differ")
    projector = _projector(cols_c) == _projector(cols_g)
    if not projector:
        findings.append("island projectors differ")
    return GoldenReport(exact, multiset, gram, projector, findings)


def _abs_triple(v: Surd) -> tuple[int, int, int]:
    a, b, c = v.triple()
    return abs(a), b, c


# ---------------------------------------------------------------------------
# graphs


def node_name(m: int, m1: int, m2: int) -> str:
    return f"⟨{m};{m1},{m2}⟩"


@dataclass
class GraphDoc:
    """Labelled undirected graph: ``nodes`` are ``(name, m, m1, m2)``, edges ``(a, b, label)``."""

    title: str
    nodes: list[tuple[str, int, int, int]]
    edges: list[tuple[str, str, int]]


def reduced_graph_doc(g: ReducedGraph) -> GraphDoc:
    isl = g.island
    grid = build_grid(isl.lam, isl.lam1, isl.lam2, isl.ordering)
    tab_index = tableau_index(grid.tabs)
    mu_index = grid.tabs1.index(isl.mu) + 1
    names = []
    nodes = []
    for s, skew in enumerate(isl.skews):
        m = tab_index[join(isl.mu, skew)] + 1
        for b in range(len(isl.tabs2)):
            name = node_name(m, mu_index, b + 1)
            names.append(name)
            nodes.append((name, m, mu_index, b + 1))
    edges = [(names[a], names[b], i) for a, b, i in g.edges]
    return GraphDoc(f"reduced {isl.lam} -> {isl.lam1} x {isl.lam2}, island {mu_index}", nodes, edges)


def grid_graph_doc(grid: Grid) -> GraphDoc:
    nodes = []
    nt1, nt2 = len(grid.tabs1), len(grid.tabs2)
    names = []
    for k in range(len(grid)):
        m, rest = divmod(k, nt1 * nt2)
        a, b = divmod(rest, nt2)
        name = node_name(m + 1, a + 1, b + 1)
        names.append(name)
        nodes.append((name, m + 1, a + 1, b + 1))
    edges = [(names[a], names[b], i) for a, b, i in full_graph_edges(grid)]
    return GraphDoc(f"grid {grid.lam} -> {grid.lam1} x {grid.lam2}", nodes, edges)


def export_graph(g: ReducedGraph | Grid) -> str:
    """DOT text.  ``pos`` places node ``<m;m1,m2>`` at column ``(m1, m2)``, row ``m``."""
    doc = reduced_graph_doc(g) if isinstance(g, ReducedGraph) else grid_graph_doc(g)
    return dumps_dot(doc)


def dumps_dot(doc: GraphDoc) -> str:
    ncol = max((m2 for _, _, _, m2 in doc.nodes), default=1)
    lines = [f"graph {json.dumps(doc.title, ensure_ascii=False)} {{"]
    for name, m, m1, m2 in doc.nodes:
        col = (m1 - 1) * ncol + m2
        lines.append(f'  {json.dumps(name, ensure_ascii=False)} [m={m}, m1={m1}, m2={m2}, pos="{col},{-m}!"];')
    for a, b, i in doc.edges:
        lines.append(f'  {json.dumps(a, ensure_ascii=False)} -- {json.dumps(b, ensure_ascii=False)} [label="({i})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_HEAD = re.compile(r'^graph\s+("(?:[^"\\]|\\.)*")\s*\{$')
_DOT_NODE = re.compile(r'^("(?:[^"\\]|\\.)*")\s*\[m=(\d+), m1=(\d+), m2=(\d+)(?:, [^\]]*)?\];$')
_DOT_EDGE = re.compile(r'^("(?:[^"\\]|\\.)*")\s*--\s*("(?:[^"\\]|\\.)*")\s*\[label="\((\d+)\)"\];$')


def parse_dot(text: str) -> GraphDoc:
    """Read back what :func:`dumps_dot` writes."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[-1] != "}":
        raise DocumentError("graph document must end with '}'")
    head = _DOT_HEAD.match(lines[0])
    if head is None:
        raise DocumentError("graph document must start with 'graph \"title\" {'")
    nodes, edges = [], []
    for ln in lines[1:-1]:
        if (m := _DOT_EDGE.match(ln)) is not None:
            edges.append((json.loads(m[1]), json.loads(m[2]), int(m[3])))
        elif (m := _DOT_NODE.match(ln)) is not None:
            nodes.append((json.loads(m[1]), int(m[2]), int(m[3]), int(m[4])))
        else:
            raise DocumentError(f"unrecognized graph line: {ln}")
    return GraphDoc(json.loads(head[1]), nodes, edges)


def graph_csv(doc: GraphDoc) -> tuple[str, str]:
    """Node and edge listings as two CSV texts."""
    nb, eb = io.StringIO(), io.StringIO()
    nw, ew = csv.writer(nb, lineterminator="\n"), csv.writer(eb, lineterminator="\n")
    nw.writerow(("node", "m_index", "m1_index", "m2_index"))
    nw.writerows(doc.nodes)
    ew.writerow(("source", "target", "label"))
    ew.writerows(doc.edges)
    return nb.getvalue(), eb.getvalue()


def table_graph(t: SDCTable) -> str:
    if t.island is None:
        return dumps_dot(GraphDoc(f"reduced {t.lam} -> {t.lam1} x {t.lam2}, multiplicity 0", [], []))
    return export_graph(build_reduced_graph(t.island))
