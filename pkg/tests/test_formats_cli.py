import json
from collections import Counter

import pytest

from conftest import solved
from subduction.cache import Cache, job_key
from subduction.cli import main
from subduction.exact import Surd
from subduction.formats import (
    DocumentError,
    compare_golden,
    dumps_csv,
    dumps_table,
    export_graph,
    graph_csv,
    load_golden,
    loads_table,
    parse_dot,
    read_csv_values,
    reduced_graph_doc,
    table_graph,
)
from subduction.graph import build_grid, build_island, build_reduced_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- serialization ---------------------------------------------------------------------


def test_json_roundtrip(table1):
    text = dumps_table(table1)
    back = loads_table(text)
    assert back.copies == table1.copies
    assert (back.lam, back.lam1, back.lam2, back.mu_index) == (table1.lam, table1.lam1, table1.lam2, 1)
    assert dumps_table(back) == text
    doc = json.loads(text)
    assert doc["multiplicity"] == 3 and len(doc["nodes"]) == 72
    assert doc["nodes"][0] == [1, 1]


def test_json_rejects_garbage():
    with pytest.raises(DocumentError):
        loads_table('{"format": "something-else"}')


def test_csv_roundtrip(table1):
    text = dumps_csv(table1)
    assert text.splitlines()[0] == "m_index,m2_index,eta,a,b,c"
    values = read_csv_values(text)
    assert len(values) == 216
    assert values[(1, 1, 1)] == table1.copies[0][0]


def test_csv_rejects_bad_header_and_duplicates():
    with pytest.raises(DocumentError):
        read_csv_values("x,y\n1,2\n")
    with pytest.raises(DocumentError):
        read_csv_values("m_index,m2_index,eta,a,b,c\n1,1,1,1,1,1\n1,1,1,1,1,1\n")


# -- golden comparison ----------------------------------------------------------------------


def test_golden_exact(table1, golden1):
    rep = compare_golden(table1, golden1)
    assert (rep.exact, rep.multiset, rep.gram, rep.projector) == (True, True, True, True)
    assert rep.verdict == "exact match"


def test_golden_anchor_values(golden1):
    triples = Counter(v.triple() for k, v in golden1.items() if k[2] == 1)
    assert triples[(1, 14, 64)] and triples[(-5, 42, 192)]
    assert any(v.triple() == (3, 6, 64) for k, v in golden1.items() if k[2] == 3)


def test_golden_rows_swapped(table1, golden1):
    swapped = dict(golden1)
    a, b = (1, 1), (2, 2)
    for eta in (1, 2, 3):
        swapped[(*a, eta)], swapped[(*b, eta)] = golden1[(*b, eta)], golden1[(*a, eta)]
    rep = compare_golden(table1, swapped)
    assert not rep.exact and rep.multiset and rep.gram
    assert rep.verdict == "ordering mismatch"


def test_golden_value_altered(table1, golden1):
    altered = dict(golden1)
    key = next(k for k, v in golden1.items() if v and k[2] == 2)
    altered[key] = golden1[key] * 3
    rep = compare_golden(table1, altered)
    assert not rep.multiset and not rep.ok
    finding = next(f for f in rep.findings if f.startswith("copy 2"))
    a, b, c = (altered[key] * Surd(1)).triple()
    assert str((abs(a), b, c)) in finding


def test_shipped_golden_file():
    g = load_golden()
    assert len(g) == 216
    assert all(isinstance(v, Surd) for v in g.values())


# -- graph export ----------------------------------------------------------------------------


def test_figure_one_export():
    grid = build_grid([4, 1], [1], [3, 1])
    red = build_reduced_graph(build_island(grid, grid.tabs1[0]))
    text = export_graph(red)
    doc = parse_dot(text)
    assert len(doc.nodes) == 12
    assert {e[2] for e in doc.edges} <= {2, 3, 4}
    # 4 x 3 arrangement: rows by m, columns by m2
    assert {n[1] for n in doc.nodes} == {1, 2, 3, 4} and {n[3] for n in doc.nodes} == {1, 2, 3}
    assert export_graph(red) == text


def test_graph_roundtrip_multisets():
    grid = build_grid([3, 2, 1], [2, 1], [2, 1])
    for g in (build_reduced_graph(build_island(grid, grid.tabs1[1])), grid):
        text = export_graph(g)
        doc = parse_dot(text)
        again = parse_dot(export_graph(g))
        assert Counter(doc.nodes) == Counter(again.nodes)
        assert Counter(doc.edges) == Counter(again.edges)
        names = {n[0] for n in doc.nodes}
        assert all(a in names and b in names for a, b, _ in doc.edges)


def test_single_node_graph():
    grid = build_grid([2], [1], [1])
    doc = parse_dot(export_graph(build_reduced_graph(build_island(grid, grid.tabs1[0]))))
    assert len(doc.nodes) == 1 and doc.edges == []
    assert doc.nodes[0][0] == "⟨1;1,1⟩"


def test_empty_table_graph():
    doc = parse_dot(table_graph(solved((2,), (1,), (2,))))
    assert doc.nodes == [] and doc.edges == []


def test_graph_csv():
    grid = build_grid([4, 1], [1], [3, 1])
    red = build_reduced_graph(build_island(grid, grid.tabs1[0]))
    nodes, edges = graph_csv(reduced_graph_doc(red))
    assert len(nodes.splitlines()) == 13
    assert len(edges.splitlines()) == len(red.edges) + 1


def test_parse_dot_rejects():
    with pytest.raises(DocumentError):
        parse_dot("digraph x {\n}\n")


# -- cache ------------------------------------------------------------------------------------


def test_cache_put_get(tmp_path):
    cache = Cache(tmp_path)
    spec = {"lambda": [2], "lambda1": [1], "lambda2": [1]}
    assert cache.get(spec) is None
    cache.put(spec, "doc\n")
    assert cache.get(spec).document == "doc\n"
    assert [e.key for e in cache.entries()] == [job_key(spec)]
    assert job_key(spec) != job_key({**spec, "ordering": "last-letter"})
    assert cache.clear() == 1 and cache.entries() == []


def test_cli_cache_transparent(tmp_path, capsys):
    args = ["compute", "[3,2,1]", "[2,1]", "[2,1]", "--cache-dir", str(tmp_path)]
    code, fresh, _ = run(capsys, *args)
    assert code == 0
    code, cached, _ = run(capsys, *args)
    assert code == 0 and cached == fresh
    code, nocache, _ = run(capsys, *args, "--no-cache")
    assert nocache == fresh
    code, out, _ = run(capsys, "cache", "ls", "--cache-dir", str(tmp_path))
    assert len(json.loads(out)["entries"]) == 1
    code, out, _ = run(capsys, "cache", "clear", "--cache-dir", str(tmp_path))
    assert json.loads(out)["removed"] == 1


# -- command line ------------------------------------------------------------------------------


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("SUBDUCTION_CACHE_DIR", str(tmp_path))
    return tmp_path


def test_cli_compute_table1(cache_dir, capsys):
    code, out, _ = run(capsys, "compute", "[4,3,2,1]", "[3,2,1]", "[3,1]")
    doc = json.loads(out)
    assert code == 0 and doc["multiplicity"] == 3 and len(doc["copies"][0]) == 72


def test_cli_compute_trivial(cache_dir, capsys):
    code, out, _ = run(capsys, "compute", "[2]", "[1]", "[1]")
    assert code == 0 and json.loads(out)["copies"] == [[[1, 1, 1]]]


def test_cli_compute_multiplicity_zero(cache_dir, capsys):
    code, out, err = run(capsys, "compute", "[2]", "[1]", "[2]")
    assert code == 0
    assert json.loads(out)["copies"] == []
    assert "multiplicity 0" in err


def test_cli_compute_size_mismatch_is_empty(cache_dir, capsys):
    code, out, err = run(capsys, "compute", "[3]", "[1]", "[1]")
    assert code == 0 and json.loads(out)["multiplicity"] == 0 and "multiplicity 0" in err


def test_cli_compute_csv_and_out(cache_dir, capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "compute", "[3,1]", "[2]", "[2]", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("m_index,m2_index,eta,a,b,c\n")


def test_cli_compute_with_verify(cache_dir, capsys):
    code, out, err = run(capsys, "compute", "[3,2,1]", "[2,1]", "[2,1]", "--verify", "oracle")
    assert code == 0 and json.loads(err.splitlines()[-1])["ok"]


@pytest.mark.parametrize(
    "triple,expected",
    [
        (("[5,4,3,2,1]", "[4,3,2,1]", "[4,1]"), (4, 899678208, 480)),
        (("[6,5,4,3,2,1]", "[5,4,3,2,1]", "[5,1]"), (5, 1611839486033920, 3600)),
        (("[4,2]", "[2,1]", "[2,1]"), (1, 36, 6)),
    ],
)
def test_cli_info(capsys, triple, expected):
    code, out, _ = run(capsys, "info", *triple)
    rep = json.loads(out)
    assert code == 0
    assert (rep["multiplicity"], rep["grid_size"], rep["island_size"]) == expected


def test_cli_info_pretty(capsys):
    code, out, _ = run(capsys, "info", "[4,2]", "[2,1]", "[2,1]", "--pretty")
    assert code == 0 and "multiplicity        1" in out


def test_cli_verify_levels(cache_dir, capsys):
    code, out, _ = run(capsys, "verify", "[4,3,2,1]", "[3,2,1]", "[3,1]", "--level", "unitarity")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "verify", "[3,2,1]", "[2,1]", "[2,1]", "--level", "oracle")
    checks = {c["check"] for c in json.loads(out)["checks"]}
    assert code == 0 and {"selection", "identity", "span"} <= checks
    code, out, _ = run(capsys, "verify", "[3,1]", "[2]", "[2]", "--level", "blockdiag")
    assert code == 0
    code, out, _ = run(capsys, "verify", "[4,3,2,1]", "[3,2,1]", "[3,1]", "--level", "conjugation")
    assert code == 0 and json.loads(out)["checks"][0]["detail"]["copy_map"] == [3, 2, 1]


def test_cli_oracle_guard(cache_dir, capsys):
    code, _, err = run(capsys, "verify", "[4,3,2,1]", "[3,2,1]", "[3,1]", "--level", "oracle")
    assert code == 4
    assert err.startswith("error code=size-guard exit=4:") and "blockdiag-float" in err
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize(
    "argv,code,tag",
    [
        (["compute", "[2,3]", "[1]", "[1]"], 2, "bad-input"),
        (["info", "[3]", "[1]", "[1]"], 2, "bad-input"),
        (["compute", "[2]", "[1]", "[1]", "--mu", "3"], 2, "bad-input"),
        (["info", "[2]"], 2, "bad-input"),
        (["frobnicate"], 2, "bad-input"),
        (["verify", "[3,2,1]", "[2,1]", "[2,1]", "--level", "conjugation"], 2, "convention-unknown"),
        (["compute", "[5,4,3,2,1]", "[4,3,2,1]", "[4,1]", "--max-unknowns", "100"], 4, "size-guard"),
        (["golden", "/nonexistent/file.csv"], 2, "bad-input"),
    ],
)
def test_cli_errors(cache_dir, capsys, argv, code, tag):
    got, out, err = run(capsys, *argv)
    assert got == code
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith(f"error code={tag} exit={code}:")


def test_cli_golden(capsys, tmp_path, golden1, table1):
    code, out, _ = run(capsys, "golden")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "exact match"
    # a tampered copy fails with exit 3
    rows = dumps_csv(table1).splitlines()
    head, body = rows[0], rows[1:]
    fields = body[5].split(",")
    fields[3] = str(int(fields[3]) * 7 or 7)
    body[5] = ",".join(fields)
    bad = tmp_path / "bad.csv"
    bad.write_text("\n".join([head] + body) + "\n")
    code, out, err = run(capsys, "golden", str(bad))
    assert code == 3 and "golden-mismatch" in err


def test_cli_export_graph(capsys):
    code, out, _ = run(capsys, "export-graph", "[4,1]", "[1]", "[3,1]")
    assert code == 0 and len(parse_dot(out).nodes) == 12
    code, out, _ = run(capsys, "export-graph", "[2]", "[1]", "[1]", "--format", "csv")
    assert code == 0 and out.startswith("node,m_index,m1_index,m2_index\n")
    code, out, _ = run(capsys, "export-graph", "[3,1]", "[2]", "[2]", "--full")
    assert code == 0 and len(parse_dot(out).nodes) == 3


def test_cli_deterministic(cache_dir, capsys):
    outs = {run(capsys, "compute", "[4,2,1]", "[3,1]", "[2,1]", "--no-cache")[1] for _ in range(2)}
    assert len(outs) == 1
