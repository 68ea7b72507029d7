"""Command-line front end: ``subduction {compute,info,verify,golden,export-graph,cache}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .cache import ENV_CACHE_DIR, Cache
from .formats import (
    DocumentError,
    compare_golden,
    dumps_csv,
    dumps_table,
    export_graph,
    graph_csv,
    grid_graph_doc,
    load_golden,
    loads_table,
    reduced_graph_doc,
    table_graph,
)
from .graph import DegenerateSplitError, build_grid, build_island, build_reduced_graph, check_triple
from .solver import DEFAULT_SEPARATION, PHASE_CONVENTION, SEPARATIONS, InvariantViolation, WeightConsistencyError, reduced_system_shape, solve_island
from .tableaux import (
    DEFAULT_ORDERING,
    ORDERINGS,
    PartitionFormatError,
    PhaseConventionError,
    ShapeMismatchError,
    hook_dimension,
    lr_multiplicity,
    parse_partition,
    skew_count,
)
from .verify import (
    BLOCKDIAG_EXACT_DIM,
    EXACT_LIMIT,
    Report,
    SizeGuardError,
    conjugation_transform,
    full_system_oracle,
    solve_sectors,
    tables_equal,
    verify_block_diagonalization,
    verify_unitarity,
)

log = logging.getLogger("subduction")

EXIT_OK, EXIT_BAD_INPUT, EXIT_INVARIANT, EXIT_SIZE = 0, 2, 3, 4
VERIFY_LEVELS = ("none", "unitarity", "oracle", "blockdiag", "blockdiag-float", "conjugation")
DEFAULT_MAX_UNKNOWNS = 2000
FLOAT_DIM_LIMIT = 5000


class CliError(Exception):
    def __init__(self, code: str, status: int, message: str):
        super().__init__(message)
        self.code = code
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("bad-input", EXIT_BAD_INPUT, f"{self.prog}: {message}")


def _partition(text):
    try:
        return parse_partition(text)
    except PartitionFormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _triple(args):
    return check_triple(args.lam, args.lam1, args.lam2)


def _emit(text: str, out: str | None):
    if out:
        path = Path(out)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(text)
        os.replace(tmp, path)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _guard_unknowns(lam, lam1, lam2, limit: int):
    rows, cols = reduced_system_shape(lam, lam1, lam2)
    if cols > limit:
        raise SizeGuardError(f"island of {cols} unknowns exceeds --max-unknowns {limit}")


# ---------------------------------------------------------------------------
# info


def info_report(lam, lam1, lam2) -> dict:
    lam, lam1, lam2 = check_triple(lam, lam1, lam2)
    f, f1, f2 = hook_dimension(lam), hook_dimension(lam1), hook_dimension(lam2)
    fs = skew_count(lam, lam1)
    rows, cols = reduced_system_shape(lam, lam1, lam2)
    return {
        "lambda": list(lam.parts),
        "lambda1": list(lam1.parts),
        "lambda2": list(lam2.parts),
        "multiplicity": lr_multiplicity(lam, lam1, lam2),
        "dimension": f,
        "dimension1": f1,
        "dimension2": f2,
        "skew_count": fs,
        "islands": f1,
        "grid_size": f * f1 * f2,
        "island_size": fs * f2,
        "reduced_system": [rows, cols],
        "full_system": [(lam.n - 2) * f * f1 * f2, f * f1 * f2],
    }


def cmd_info(args) -> int:
    rep = info_report(*_triple(args))
    if args.pretty:
        lines = [
            f"{_fmt(rep['lambda'])} -> {_fmt(rep['lambda1'])} x {_fmt(rep['lambda2'])}",
            f"  multiplicity        {rep['multiplicity']}",
            f"  f^lam f^lam1 f^lam2 {rep['grid_size']}",
            f"  island size         {rep['island_size']}",
            f"  reduced system      {rep['reduced_system'][0]} x {rep['reduced_system'][1]}",
            f"  full system         {rep['full_system'][0]} x {rep['full_system'][1]}",
        ]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(_json(rep))
    return EXIT_OK


def _fmt(parts) -> str:
    return "[" + ",".join(map(str, parts)) + "]"


# ---------------------------------------------------------------------------
# compute


def job_spec(args) -> dict:
    lam, lam1, lam2 = args.lam, args.lam1, args.lam2
    return {
        "lambda": list(lam.parts),
        "lambda1": list(lam1.parts),
        "lambda2": list(lam2.parts),
        "mu_index": args.mu,
        "ordering": args.ordering,
        "separation": args.separation,
        "phase_convention": PHASE_CONVENTION,
    }


def compute_document(args) -> str:
    spec = job_spec(args)
    cache = None if args.no_cache else Cache(args.cache_dir)
    if cache is not None:
        hit = cache.get(spec)
        if hit is not None:
            log.info("cache hit %s", hit.key[:12])
            return hit.document
    lam, lam1, lam2 = args.lam, args.lam1, args.lam2
    if lam1.n + lam2.n == lam.n:
        _guard_unknowns(lam, lam1, lam2, args.max_unknowns)
    f1 = hook_dimension(lam1)
    if not 1 <= args.mu <= f1:
        raise CliError("bad-input", EXIT_BAD_INPUT, f"--mu must be in 1..{f1}")
    table = solve_island(lam, lam1, lam2, args.mu, args.ordering, separation=args.separation)
    doc = dumps_table(table)
    if cache is not None:
        cache.put(spec, doc)
    return doc


def pretty_table(table) -> str:
    if not table.multiplicity:
        return f"{table.lam} -> {table.lam1} x {table.lam2}: multiplicity 0\n"
    head = f"{table.lam} -> {table.lam1} x {table.lam2}, island {table.mu_index}, multiplicity {table.multiplicity}"
    lines = [head, "m  m2  " + "  ".join(f"copy {e + 1:<10}" for e in range(table.multiplicity))]
    for k, (s, b) in enumerate(table.nodes):
        vals = "  ".join(f"{str(col[k]):<15}" for col in table.copies)
        lines.append(f"{s + 1:<3}{b + 1:<4}{vals}".rstrip())
    return "\n".join(lines) + "\n"


def cmd_compute(args) -> int:
    doc = compute_document(args)
    table = loads_table(doc)
    if args.pretty:
        text = pretty_table(table)
    elif args.format == "json":
        text = doc
    elif args.format == "csv":
        text = dumps_csv(table)
    else:
        text = table_graph(table)
    _emit(text, args.out)
    if not table.multiplicity:
        sys.stderr.write("note: multiplicity 0, empty table\n")
    if args.verify != "none":
        if not table.multiplicity:
            raise CliError("bad-input", EXIT_BAD_INPUT, "nothing to verify for multiplicity 0")
        report = run_verify(table.lam, table.lam1, table.lam2, args.verify, args, table)
        stream = sys.stdout if args.out else sys.stderr
        stream.write(_json(report))
        if not report["ok"]:
            raise CliError("verification-failed", EXIT_INVARIANT, _first_failure(report))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def run_verify(lam, lam1, lam2, level: str, args, table=None) -> dict:
    reports = []
    if level in ("unitarity", "oracle"):
        _guard_unknowns(lam, lam1, lam2, args.max_unknowns)
        if level == "oracle":
            size = len(build_grid(lam, lam1, lam2))
            if size > EXACT_LIMIT:
                raise SizeGuardError(f"grid of {size} nodes exceeds the oracle limit {EXACT_LIMIT}; use --level blockdiag-float")
        if table is None:
            table = solve_island(lam, lam1, lam2, 1, args.ordering, separation=args.separation)
        reports.append(verify_unitarity(table, completeness=False))
        sectors = solve_sectors(lam, lam1, args.ordering, args.separation)
        rep = verify_unitarity(sectors, completeness=True)
        rep.name = "completeness"
        reports.append(rep)
        if level == "oracle":
            reports.extend(full_system_oracle(lam, lam1, lam2, args.ordering, table=table if table.mu_index == 1 else None).reports)
    elif level in ("blockdiag", "blockdiag-float"):
        dim = hook_dimension(lam)
        exact = level == "blockdiag"
        if exact and dim > BLOCKDIAG_EXACT_DIM:
            raise SizeGuardError(f"[{lam}] has dimension {dim} > {BLOCKDIAG_EXACT_DIM} for the exact check; use --level blockdiag-float")
        if dim > FLOAT_DIM_LIMIT:
            raise SizeGuardError(f"[{lam}] has dimension {dim} > {FLOAT_DIM_LIMIT}")
        reports.append(verify_block_diagonalization(lam, lam1.n, args.ordering, exact=exact, separation=args.separation))
    elif level == "conjugation":
        _guard_unknowns(lam, lam1, lam2, args.max_unknowns)
        if table is None:
            table = solve_island(lam, lam1, lam2, 1, args.ordering, separation=args.separation)
        if not table.multiplicity:
            raise CliError("bad-input", EXIT_BAD_INPUT, "multiplicity 0, nothing to conjugate")
        conj = conjugation_transform(table)
        direct = solve_island(conj.lam, conj.lam1, conj.lam2, conj.mu, args.ordering, separation=args.separation)
        same = tables_equal(conj, direct)
        reports.append(Report("conjugation", same, checked=len(conj) * conj.multiplicity, failure=None if same else "transformed table differs from the direct solve", detail={"copy_map": conj.meta["copy_map"]}))
    else:
        raise CliError("bad-input", EXIT_BAD_INPUT, f"unknown verify level {level}")
    return {
        "lambda": list(lam.parts),
        "lambda1": list(lam1.parts),
        "lambda2": list(lam2.parts),
        "level": level,
        "ok": all(r.ok for r in reports),
        "checks": [r.as_dict() for r in reports],
    }


def _first_failure(report: dict) -> str:
    for c in report["checks"]:
        if not c["ok"]:
            return f"{c['check']} failed: {c.get('failure', '')}".rstrip(": ")
    return "verification failed"


def cmd_verify(args) -> int:
    lam, lam1, lam2 = _triple(args)
    report = run_verify(lam, lam1, lam2, args.level, args)
    if args.pretty:
        lines = [f"{'PASS' if c['ok'] else 'FAIL'} {c['check']}" + (f" ({c['failure']})" if "failure" in c else "") for c in report["checks"]]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(_json(report))
    if not report["ok"]:
        raise CliError("verification-failed", EXIT_INVARIANT, _first_failure(report))
    return EXIT_OK


# ---------------------------------------------------------------------------
# golden


def cmd_golden(args) -> int:
    lam, lam1, lam2 = check_triple(*args.triple)
    golden = load_golden(args.path)
    table = solve_island(lam, lam1, lam2, args.mu, args.ordering, separation=args.separation)
    rep = compare_golden(table, golden)
    out = {"golden": str(args.path or "shipped Table 1"), "ordering": args.ordering, "separation": args.separation, **rep.as_dict()}
    if args.pretty:
        lv = out["levels"]
        lines = [f"{k:<10}{'PASS' if v else 'FAIL'}" for k, v in lv.items()] + [f"verdict   {out['verdict']}"] + out["findings"]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(_json(out))
    if not rep.ok:
        raise CliError("golden-mismatch", EXIT_INVARIANT, rep.findings[0] if rep.findings else "golden comparison failed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# graphs and cache


def cmd_export_graph(args) -> int:
    lam, lam1, lam2 = _triple(args)
    grid = build_grid(lam, lam1, lam2, args.ordering)
    if args.full:
        if len(grid) > EXACT_LIMIT:
            raise SizeGuardError(f"grid of {len(grid)} nodes exceeds {EXACT_LIMIT}")
        doc = grid_graph_doc(grid)
        text = export_graph(grid)
    else:
        if not 1 <= args.mu <= len(grid.tabs1):
            raise CliError("bad-input", EXIT_BAD_INPUT, f"--mu must be in 1..{len(grid.tabs1)}")
        reduced = build_reduced_graph(build_island(grid, grid.tabs1[args.mu - 1]))
        doc = reduced_graph_doc(reduced)
        text = export_graph(reduced)
    if args.format == "csv":
        nodes, edges = graph_csv(doc)
        text = nodes + "\n" + edges
    _emit(text, args.out)
    return EXIT_OK


def cmd_cache(args) -> int:
    cache = Cache(args.cache_dir)
    if args.action == "ls":
        rows = [{"key": e.key, "engine": e.engine, "created": e.created, "spec": e.spec} for e in cache.entries()]
        if args.pretty:
            sys.stdout.write("".join(f"{r['key'][:16]}  {_fmt(r['spec']['lambda'])} {_fmt(r['spec']['lambda1'])} {_fmt(r['spec']['lambda2'])}\n" for r in rows))
        else:
            sys.stdout.write(_json({"cache_dir": str(cache.root), "entries": rows}))
    else:
        sys.stdout.write(_json({"cache_dir": str(cache.root), "removed": cache.clear()}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="subduction", description="Exact subduction coefficients for S_n -> S_n1 x S_n2.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ordering", choices=ORDERINGS, default=DEFAULT_ORDERING)
    common.add_argument("--separation", choices=SEPARATIONS, default=DEFAULT_SEPARATION)
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--cache-dir", default=None, help=f"cache location (env {ENV_CACHE_DIR})")
    common.add_argument("--max-unknowns", type=int, default=DEFAULT_MAX_UNKNOWNS, help="refuse islands larger than this")

    triple = argparse.ArgumentParser(add_help=False)
    triple.add_argument("lam", type=_partition, metavar="LAMBDA")
    triple.add_argument("lam1", type=_partition, metavar="LAMBDA1")
    triple.add_argument("lam2", type=_partition, metavar="LAMBDA2")

    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[triple, common], help="solve one island")
    c.add_argument("--mu", type=int, default=1, help="1-based island index")
    c.add_argument("--format", choices=("json", "csv", "graph"), default="json")
    c.add_argument("--verify", choices=VERIFY_LEVELS, default="none")
    c.add_argument("--out", default=None)
    c.add_argument("--no-cache", action="store_true")
    c.set_defaults(func=cmd_compute)

    i = sub.add_parser("info", parents=[triple, common], help="dimensions and multiplicity, no solve")
    i.set_defaults(func=cmd_info)

    v = sub.add_parser("verify", parents=[triple, common], help="run invariant checks")
    v.add_argument("--level", "--verify", dest="level", choices=VERIFY_LEVELS[1:], default="unitarity")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("golden", parents=[common], help="compare with a golden CSV")
    g.add_argument("path", nargs="?", default=None, help="golden CSV (default: shipped Table 1)")
    g.add_argument("--triple", nargs=3, type=_partition, metavar=("LAMBDA", "LAMBDA1", "LAMBDA2"), default=[parse_partition("[4,3,2,1]"), parse_partition("[3,2,1]"), parse_partition("[3,1]")])
    g.add_argument("--mu", type=int, default=1)
    g.set_defaults(func=cmd_golden)

    e = sub.add_parser("export-graph", parents=[triple, common], help="reduced or full subduction graph")
    e.add_argument("--mu", type=int, default=1)
    e.add_argument("--full", action="store_true", help="whole grid instead of one island")
    e.add_argument("--format", choices=("dot", "csv"), default="dot")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_export_graph)

    k = sub.add_parser("cache", parents=[common], help="inspect or clear the result cache")
    k.add_argument("action", choices=("ls", "clear"))
    k.set_defaults(func=cmd_cache)
    return p


def _error(code: str, status: int, message: str) -> int:
    message = " ".join(str(message).split())
    sys.stderr.write(f"error code={code} exit={status}: {message}\n")
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliError as exc:
        return _error(exc.code, exc.status, str(exc))
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        return _error(exc.code, exc.status, str(exc))
    except (PartitionFormatError, ShapeMismatchError, DegenerateSplitError, DocumentError) as exc:
        return _error("bad-input", EXIT_BAD_INPUT, str(exc))
    except PhaseConventionError as exc:
        return _error("convention-unknown", EXIT_BAD_INPUT, str(exc))
    except (InvariantViolation, WeightConsistencyError) as exc:
        return _error("invariant-violation", EXIT_INVARIANT, str(exc))
    except SizeGuardError as exc:
        return _error("size-guard", EXIT_SIZE, str(exc))
    except (FileNotFoundError, IsADirectoryError, ValueError) as exc:
        return _error("bad-input", EXIT_BAD_INPUT, str(exc))


if __name__ == "__main__":
    sys.exit(main())
