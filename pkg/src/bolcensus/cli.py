"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch or engine disagreement,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import catalog as cat
from .catalog import CatalogEntry, Source
from .census import (BACKTRACKING, EXHAUSTIVE, BudgetExceeded, MAX_EXHAUSTIVE_ORDER, CensusQuery, CensusResult,
                     Partition, available_jobs, census, default_prefix_cells, run_query)
from .fixtures import Fixture, select_fixtures
from .groupoid import format_table, is_associative, is_commutative, is_quasigroup, to_index
from .report import FORMATS, Report, emit_report, rows_from_result
from .terms import IdentitySyntaxError, VariableMismatchError, parse_identity

log = logging.getLogger("bolcensus")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class EngineMismatch(Exception):
    pass


def _shard(text: str) -> tuple[int, int]:
    try:
        i, m = (int(v) for v in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i/m, got {text!r}") from None
    if m < 1 or not 0 <= i < m:
        raise argparse.ArgumentTypeError(f"shard index must satisfy 0 <= i < m, got {text!r}")
    return i, m


def _add_selection(p: argparse.ArgumentParser, with_catalog: bool = True) -> None:
    if with_catalog:
        p.add_argument("--catalog", help="table1 | paper | all | file:PATH")
    p.add_argument("--named", action="append", default=[], metavar="ID",
                   help="abbreviation (SGR) or name (left-semimedial); repeatable")
    p.add_argument("--identity", action="append", default=[], metavar="FORMULA",
                   help='identity formula, e.g. "xx*yz=xy*xz"; repeatable')


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--engine", choices=[EXHAUSTIVE, BACKTRACKING, "both"], default=EXHAUSTIVE)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: available CPUs)")
    p.add_argument("--shard", type=_shard, default=None, metavar="i/m",
                   help="count only shard i of m")
    p.add_argument("--prefix-cells", type=int, default=None)
    p.add_argument("--backend", choices=["compiled", "python"], default=None)
    p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS",
                   help="abandon the census once this much time has passed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bolcensus", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (("census", "count every identity in a catalog selection"),
                        ("count", "count the given identities")):
        p = sub.add_parser(name, help=help_)
        _add_selection(p)
        _add_run_options(p)
        p.add_argument("--iso", action="store_true", help="also count isomorphism classes")
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--timing", action="store_true", help="include elapsed time per row")
        p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("reps", help="print a canonical representative of every isomorphism class")
    _add_selection(p, with_catalog=False)
    _add_run_options(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("verify", help="recompute published and derived counts")
    p.add_argument("--fixtures", default="paper", help="paper | derived | all | file:PATH")
    p.add_argument("--engine", choices=[EXHAUSTIVE, BACKTRACKING, "both"], default="both")
    p.add_argument("--backend", choices=["compiled", "python"], default=None)

    p = sub.add_parser("export-catalog", help="write the built-in catalog as name;abbrev;formula")
    p.add_argument("--catalog", default="all")
    p.add_argument("-o", "--output", type=Path)
    return parser


# --- helpers ---------------------------------------------------------------

def _resolve(args, default_catalog: Optional[str]) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    selection = getattr(args, "catalog", None)
    if selection is None and not args.named and not args.identity:
        selection = default_catalog
    try:
        if selection:
            entries += cat.select(selection)
        entries += [cat.lookup(key) for key in args.named]
        for formula in args.identity:
            ident = parse_identity(formula)
            entries.append(CatalogEntry(ident, Source.USER, formula))
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    except (IdentitySyntaxError, VariableMismatchError, OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if not entries:
        raise UsageError("no identities selected (use --catalog, --named or --identity)")
    return entries


def _engines(engine: str, order: int) -> list[str]:
    if engine == "both":
        return [EXHAUSTIVE, BACKTRACKING] if order <= MAX_EXHAUSTIVE_ORDER else [BACKTRACKING]
    return [engine]


def _compute(entries: list[CatalogEntry], args, engine: str, iso: bool,
             reps: bool = False) -> CensusResult:
    idents = [e.identity for e in entries]
    if args.shard is not None:
        index, count = args.shard
        prefix = args.prefix_cells
        if prefix is None:
            prefix = default_prefix_cells(args.order, count)
        q = CensusQuery(args.order, tuple(idents), engine, iso, reps,
                        Partition(prefix, index, count), args.backend)
        return run_query(q)
    jobs = args.jobs if args.jobs is not None else available_jobs()
    return census(args.order, idents, engine, iso=iso, representatives=reps, jobs=jobs,
                  prefix_cells=args.prefix_cells, backend=args.backend,
                  time_budget=args.time_budget)


def _run_engines(entries, args, iso: bool, reps: bool = False) -> tuple[CensusResult, str]:
    results = {}
    for engine in _engines(args.engine, args.order):
        try:
            results[engine] = _compute(entries, args, engine, iso, reps)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    engines = list(results)
    first = results[engines[0]]
    for other in engines[1:]:
        for e, a, b in zip(entries, first.counts, results[other].counts):
            if (a.total_count, a.iso_class_count) != (b.total_count, b.iso_class_count):
                raise EngineMismatch(
                    f"{e.abbrev or e.formula}: {engines[0]} gives {a.total_count}, "
                    f"{other} gives {b.total_count}")
    label = "both" if len(engines) > 1 else engines[0]
    return first, label


def _write(data: bytes, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        output.write_bytes(data)


# --- commands --------------------------------------------------------------

def cmd_census(args, default_catalog: Optional[str] = "table1") -> int:
    entries = _resolve(args, default_catalog)
    result, label = _run_engines(entries, args, args.iso)
    report = Report(rows_from_result(entries, result, label, timing=args.timing))
    _write(emit_report(report, args.format), args.output)
    return EXIT_OK


def cmd_count(args) -> int:
    return cmd_census(args, default_catalog=None)


def cmd_reps(args) -> int:
    entries = _resolve(args, None)
    result, label = _run_engines(entries, args, iso=True, reps=True)
    if args.format == "json":
        payload = []
        for e, c in zip(entries, result.counts):
            payload.append({
                "name": e.name, "abbrev": e.abbrev, "identity": str(c.identity),
                "order": result.order, "total": c.total_count, "iso": c.iso_class_count,
                "representatives": [
                    {"index": to_index(g), "rows": [[v + 1 for v in row] for row in g.rows()],
                     "associative": is_associative(g), "quasigroup": is_quasigroup(g),
                     "commutative": is_commutative(g)}
                    for g in c.representatives or []],
            })
        _write((json.dumps(payload, indent=2) + "\n").encode(), args.output)
        return EXIT_OK
    out = []
    for e, c in zip(entries, result.counts):
        title = e.name or e.formula
        out.append(f"# {title}: {c.identity}  order {result.order}  "
                   f"total {c.total_count}  classes {c.iso_class_count}")
        for i, g in enumerate(c.representatives or [], 1):
            flags = "  ".join(f"{k}={'yes' if f(g) else 'no'}" for k, f in
                              (("associative", is_associative), ("quasigroup", is_quasigroup),
                               ("commutative", is_commutative)))
            out.append(f"# class {i}/{c.iso_class_count}  index {to_index(g)}  {flags}")
            out.append(format_table(g).rstrip("\n"))
        out.append("")
    _write("\n".join(out).encode(), args.output)
    return EXIT_OK


def _check_fixture(fx: Fixture, engine: str, backend: Optional[str]) -> tuple[bool, str]:
    try:
        entry = cat.lookup(fx.key)
    except KeyError:
        return False, "unknown identity"
    want_iso = fx.expected_iso is not None
    try:
        q = CensusQuery(fx.order, (entry.identity,), engine, want_iso, False, None, backend)
    except ValueError as exc:
        return False, str(exc)
    c = run_query(q).counts[0]
    got = f"total={c.total_count}" + ("" if not want_iso else f" iso={c.iso_class_count}")
    ok = c.total_count == fx.expected_total and (not want_iso or c.iso_class_count == fx.expected_iso)
    return ok, got


def cmd_verify(args) -> int:
    try:
        fixtures = select_fixtures(args.fixtures)
    except (KeyError, OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    failures = 0
    checks = 0
    for fx in fixtures:
        for engine in _engines(args.engine, fx.order):
            if engine == EXHAUSTIVE and fx.order > MAX_EXHAUSTIVE_ORDER:
                continue
            ok, got = _check_fixture(fx, engine, args.backend)
            checks += 1
            failures += not ok
            print(f"{'PASS' if ok else 'FAIL'}  {fx.label():<32} {engine:<12} got {got}")
    print(f"{checks - failures}/{checks} checks passed")
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def cmd_export_catalog(args) -> int:
    try:
        entries = cat.select(args.catalog)
    except (KeyError, OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    text = cat.write_catalog(entries, header="name;abbrev;formula")
    _write(text.encode(), args.output)
    return EXIT_OK


COMMANDS = {
    "census": cmd_census,
    "count": cmd_count,
    "reps": cmd_reps,
    "verify": cmd_verify,
    "export-catalog": cmd_export_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bolcensus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EngineMismatch as exc:
        print(f"bolcensus: engine disagreement: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except BudgetExceeded as exc:
        print(f"bolcensus: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
