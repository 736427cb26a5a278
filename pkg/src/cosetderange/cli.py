"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or resolution error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import sys
from pathlib import Path

from .actions import BudgetExceeded, DEFAULT_TUPLE_BUDGET
from .catalog import CatalogError, GroupSpec, IngestError, build, catalog_selectors, dump_specs, ingest
from .perm import CapExceeded, ParseError, PermGroup, is_normal, parse_cycles, print_cycles, quotient_generators
from .scan import (
    ScanConfig,
    SourceError,
    render_structured,
    render_tsv,
    render_verdict_lines,
    report_row,
    run_scan,
)
from .verify import FAULTS, LEMMA_IDS, LEMMA_LABELS, analyze_triple, check_report, triples_for_group

log = logging.getLogger("cosetderange")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class ResolutionError(ValueError):
    pass


def _timestamp() -> str:
    return "generated " + _dt.datetime.now(_dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _resolve_group(selector: str, file: str | None, cap: int) -> PermGroup:
    if file:
        for spec in ingest(file):
            if spec.name == selector:
                return spec.to_group(cap=cap)
        raise ResolutionError(f"no group named {selector!r} in {file}")
    return build(selector, cap=cap)


def _resolve_subgroup(A: PermGroup, args) -> PermGroup | None:
    if args.normal_gens:
        gens = [parse_cycles(g, A.degree) for g in args.normal_gens.split(";") if g.strip()]
        G = PermGroup(gens, A.degree, cap=A.cap, name=f"<{args.normal_gens}>")
    elif args.normal:
        G = _resolve_group(args.normal, args.file, A.cap)
        if G.degree != A.degree:
            raise ResolutionError(f"{args.normal} has degree {G.degree}, {A.name} has {A.degree}")
    else:
        return None
    if G.same_elements(A):
        return A
    if not is_normal(A, G):
        raise ResolutionError(f"{G.name} is not normal in {A.name}")
    return G


def _triples(args):
    A = _resolve_group(args.group, args.file, args.max_order)
    A.elements
    G = _resolve_subgroup(A, args)
    if G is None and not args.x:
        if args.all:
            return A, [(t.G, t.x, t.quotient_order, t.g_label) for t in triples_for_group(A)]
        G = A
    elif G is None:
        G = A
    m, cosets = quotient_generators(A, G)
    if args.x:
        x = parse_cycles(args.x, A.degree)
        if x not in A:
            raise ResolutionError(f"{args.x} is not in {A.name}")
        if not any(x in c for c in cosets):
            raise ResolutionError(f"{args.x} does not generate {A.name}/G")
        return A, [(G, x, m, "")]
    if not cosets:
        raise ResolutionError(f"{A.name}/{G.name} is not cyclic")
    return A, [(G, cosets[0].representative, m, "")]


def _fmt_fraction(f) -> str:
    return f"{f.numerator}/{f.denominator} ({float(f):.4f})"


def _human(rep) -> str:
    p = rep.profile
    lines = [
        f"A            {rep.A.name}  |A| = {rep.A.order}",
        f"G            |G| = {rep.G.order}  (index {rep.triple.quotient_order})",
        f"x            {print_cycles(rep.x)}",
        f"n            {rep.n}",
        f"mu           {rep.mu}",
        "r_k          " + "  ".join(f"r{k}={v}" for k, v in sorted(rep.r_orbit.items())),
        "spectrum     " + " ".join(f"N{i}={c}" for i, c in enumerate(rep.spectrum.counts) if c),
        f"s0           {_fmt_fraction(rep.s0)}",
        f"transitive   A={p.transitive} G={rep.transitive_G}",
        f"primitive    {p.primitive}",
        f"frobenius    {p.frobenius}",
        "regular N    " + (", ".join(rn.describe() for rn in p.regular_normals) or "none"),
    ]
    if rep.r_pair is not None:
        lines.append(f"A_(a,b)      pair={tuple(i + 1 for i in rep.pair_rep)} order={rep.pair_stab_order} orbits={rep.r_pair}")
    label = rep.case.value
    if label in "abcde" and label != "-":
        label = f"({label})"
    lines.append(f"case         {label}")
    if rep.flags:
        lines.append("flags        " + ", ".join(rep.flags))
    fails = [v for v in rep.verdicts if v.status == "fail"]
    passed = sum(v.status == "pass" for v in rep.verdicts)
    lines.append(f"checks       {passed} pass, {len(fails)} fail")
    for v in fails:
        lines.append(f"  FAIL {v.lemma}: {json.dumps(v.witness['values'], sort_keys=True)}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    A, items = _triples(args)
    reports = []
    for G, x, m, label in items:
        rep = analyze_triple(A, G, x, k_max=args.k, tuple_budget=args.tuple_budget, quotient_order=m, g_label=label)
        rep.verdicts = check_report(rep)
        reports.append(rep)
    if args.format == "human":
        print("\n\n".join(_human(r) for r in reports))
    elif args.format == "tsv":
        sys.stdout.write(render_tsv([report_row(r) for r in reports]))
    else:
        sys.stdout.write(render_structured({"reports": [r.as_dict() for r in reports]}))
    return EXIT_OK


def cmd_classify(args) -> int:
    A, items = _triples(args)
    for G, x, m, label in items:
        rep = analyze_triple(A, G, x, k_max=args.k, tuple_budget=args.tuple_budget, quotient_order=m, g_label=label)
        print(f"{rep.triple_id}\t{rep.s0}\t{rep.case.value}")
    return EXIT_OK


def _config(args, lemmas=None) -> ScanConfig:
    return ScanConfig(
        sources=args.sources or ["catalog"],
        max_degree=args.max_degree,
        max_order=args.max_order,
        tuple_budget=args.tuple_budget,
        k_max=args.k,
        jobs=args.jobs,
        fmt=args.format,
        out=args.out,
        only=args.only,
        lemmas=lemmas,
        fault=getattr(args, "inject_fault", None),
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_scan(args) -> int:
    cfg = _config(args)
    result = run_scan(cfg)
    header = None if args.no_header else _timestamp()
    if cfg.fmt == "tsv":
        _emit(render_tsv(result.rows, header), cfg.out)
    else:
        payload = {
            "rows": result.reports,
            "summary": {"cases": result.case_histogram(), "lemmas": result.status_counts()},
        }
        _emit(render_structured(payload, header), cfg.out)
    fig_dir = args.figures or (str(Path(cfg.out).parent) if cfg.out else None)
    if fig_dir and not args.no_figures:
        from .plots import render_scan_figures

        stem = Path(cfg.out).stem if cfg.out else "scan"
        render_scan_figures(result.rows, Path(fig_dir), stem)
    hist = result.case_histogram()
    print(f"{len(result.rows)} triples; cases: " + ", ".join(f"{k}={v}" for k, v in hist.items()), file=sys.stderr)
    for r in result.findings():
        print(f"flag {r['triple_id']}: {', '.join(r['flags'])}", file=sys.stderr)
    fails = result.failures()
    if fails:
        print(f"{len(fails)} failing checks", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    lemmas = None
    if args.lemmas:
        lemmas = [l.strip() for l in args.lemmas.split(",") if l.strip()]
        bad = [l for l in lemmas if l not in LEMMA_IDS]
        if bad:
            raise ResolutionError(f"unknown lemma id(s): {', '.join(bad)}")
    cfg = _config(args, lemmas)
    result = run_scan(cfg)
    header = None if args.no_header else _timestamp()
    if cfg.fmt == "tsv":
        _emit(render_verdict_lines(result.verdicts, header), cfg.out)
    else:
        _emit(render_structured({"verdicts": result.verdicts, "summary": result.status_counts()}, header), cfg.out)
    fails = result.failures()
    for v in fails:
        print(
            f"FAIL {v['lemma']} {v['triple_id']}: {json.dumps(v['witness'], sort_keys=True)}",
            file=sys.stderr,
        )
    counts = result.status_counts()
    print(
        "; ".join(f"{LEMMA_LABELS.get(lid, lid)} " + "/".join(f"{s}={n}" for s, n in c.items()) for lid, c in counts.items()),
        file=sys.stderr,
    )
    return EXIT_FAIL if fails else EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for sel in catalog_selectors(args.max_degree):
            if args.only and not sel.startswith(args.only + ":"):
                continue
            print(sel)
        return EXIT_OK
    if not args.selectors:
        raise ResolutionError("catalog emit needs at least one selector")
    specs = [GroupSpec.from_group(build(s)) for s in args.selectors]
    _emit(dump_specs(specs), args.out)
    return EXIT_OK


def _add_budget_flags(p, scan: bool = False) -> None:
    p.add_argument("--max-order", type=int, default=100_000, help="element cap for group closures")
    p.add_argument("--tuple-budget", type=int, default=DEFAULT_TUPLE_BUDGET)
    p.add_argument("--k", type=int, default=3, choices=(1, 2, 3, 4), help="largest tuple arity")
    if scan:
        p.add_argument("sources", nargs="*", help="'catalog', file:PATH, a .json path, or selectors")
        p.add_argument("--max-degree", type=int, default=10)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--format", choices=("tsv", "structured"), default="tsv")
        p.add_argument("--out")
        p.add_argument("--only", help="catalog family, or 'affine'")
        p.add_argument("--no-header", action="store_true", help="omit the timestamp header")


def _add_triple_flags(p) -> None:
    p.add_argument("group", help="selector such as sym:4, or a name in --file")
    p.add_argument("--normal", help="selector (or --file name) of the normal subgroup G")
    p.add_argument("--normal-gens", help="generators of G in cycle notation, ';'-separated")
    p.add_argument("--x", help="coset representative in cycle notation")
    p.add_argument("--file", help="group file to resolve names in")
    p.add_argument("--all", action="store_true", help="every triple of the group")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosetderange", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="statistics and case label of one triple")
    _add_triple_flags(p)
    _add_budget_flags(p)
    p.add_argument("--format", choices=("human", "tsv", "structured"), default="human")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="case label only")
    _add_triple_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="one row per triple over the given sources")
    _add_budget_flags(p, scan=True)
    p.add_argument("--figures", help="directory for PNG figures (default: next to --out)")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the lemma suite; exit 1 on any failure")
    _add_budget_flags(p, scan=True)
    p.add_argument("--lemmas", help="comma-separated lemma ids")
    p.add_argument("--inject-fault", choices=sorted(FAULTS), help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list or emit catalog groups")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("selectors", nargs="*")
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--only")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CapExceeded, BudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ResolutionError, CatalogError, IngestError, ParseError, SourceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
