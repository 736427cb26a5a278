"""Scanning groups for triples: source resolution, rows, and summaries."""

from __future__ import annotations

import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .actions import BudgetExceeded, DEFAULT_TUPLE_BUDGET
from .catalog import (
    AFFINE_FAMILIES,
    GroupSpec,
    build,
    catalog_selectors,
    ingest,
    selector_family,
)
from .perm import CapExceeded
from .verify import LEMMA_IDS, FAIL, SuiteVerdict, run_group

log = logging.getLogger(__name__)

TSV_COLUMNS = (
    "source", "A_name", "A_order", "G_order", "quotient_order", "degree",
    "mu", "r1", "r2", "r3", "s0_num", "s0_den", "case", "verdicts",
)
STATUS_CODE = {"pass": "pass", "fail": "FAIL", "inapplicable": "na"}


@dataclass
class ScanConfig:
    sources: list[str] = field(default_factory=lambda: ["catalog"])
    max_degree: int = 10
    max_order: int = 100_000
    tuple_budget: int = DEFAULT_TUPLE_BUDGET
    k_max: int = 3
    jobs: int = 1
    fmt: str = "tsv"
    out: str | None = None
    only: str | None = None
    lemmas: list[str] | None = None
    fault: str | None = None

    def __post_init__(self):
        if self.max_degree < 1 or self.max_order < 1 or self.tuple_budget < 1 or self.jobs < 1:
            raise ValueError("caps and widths must be positive")
        if not 1 <= self.k_max <= 4:
            raise ValueError("k must lie in 1..4")
        if self.k_max < 3:
            log.warning("k < 3 leaves the r3-based checks inapplicable")


class SourceError(ValueError):
    pass


def resolve_sources(cfg: ScanConfig) -> list[tuple[str, object]]:
    """Expand sources into ``(source label, selector or GroupSpec)`` items."""
    items: list[tuple[str, object]] = []
    for src in cfg.sources:
        if src == "catalog":
            for sel in catalog_selectors(cfg.max_degree):
                fam = selector_family(sel)
                if cfg.only == "affine" and fam not in AFFINE_FAMILIES:
                    continue
                if cfg.only and cfg.only != "affine" and fam != cfg.only:
                    continue
                items.append(("catalog", sel))
        elif src.startswith("file:") or src.endswith(".json"):
            path = src[5:] if src.startswith("file:") else src
            try:
                specs = ingest(path)
            except OSError as exc:
                raise SourceError(f"cannot read {path}: {exc}") from exc
            for spec in specs:
                if spec.degree <= cfg.max_degree:
                    items.append((f"file:{path}", spec))
        else:
            items.append(("selector", src))
    return items


def _error_row(source: str, name: str, reason: str) -> dict:
    row = {c: "" for c in TSV_COLUMNS}
    row.update(source=source, A_name=name, case=f"error:{reason}")
    return row


def report_row(rep) -> dict:
    """One TSV-shaped row for a triple report."""
    s0 = rep.s0
    return {
        "source": rep.triple.source,
        "A_name": rep.A.name,
        "A_order": rep.A.order,
        "G_order": rep.G.order,
        "quotient_order": rep.triple.quotient_order,
        "degree": rep.n,
        "mu": rep.mu if rep.mu is not None else "",
        "r1": rep.r1,
        "r2": rep.r2,
        "r3": rep.r3,
        "s0_num": s0.numerator,
        "s0_den": s0.denominator,
        "case": rep.case.value,
        "verdicts": ",".join(f"{v.lemma}:{STATUS_CODE[v.status]}" for v in rep.verdicts),
    }


def scan_item(item: tuple[str, object], cfg: ScanConfig) -> tuple[list[dict], list[dict], list[dict]]:
    """Rows, structured reports and verdicts for one group."""
    source, what = item
    name = what if isinstance(what, str) else what.name
    try:
        if isinstance(what, GroupSpec):
            A = what.to_group(cap=cfg.max_order)
        else:
            A = build(what, cap=cfg.max_order)
        if A.degree > cfg.max_degree:
            return [], [], []
        A.elements
        reports = run_group(
            A, cfg.lemmas, source=source, k_max=cfg.k_max, tuple_budget=cfg.tuple_budget, fault=cfg.fault
        )
    except CapExceeded:
        if source == "catalog":
            return [], [], []
        return [_error_row(source, name, "order-cap")], [], []
    except BudgetExceeded:
        return [_error_row(source, name, "tuple-budget")], [], []
    rows = [report_row(r) for r in reports]
    structured = [r.as_dict() for r in reports]
    verdicts = [v.as_dict() for r in reports for v in r.verdicts]
    return rows, structured, verdicts


@dataclass
class ScanResult:
    rows: list[dict]
    reports: list[dict]
    verdicts: list[dict]

    def case_histogram(self) -> dict[str, int]:
        return dict(sorted(Counter(r["case"] for r in self.rows).items()))

    def failures(self) -> list[dict]:
        return [v for v in self.verdicts if v["status"] == FAIL]

    def status_counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {lid: {} for lid in LEMMA_IDS}
        for v in self.verdicts:
            d = out.setdefault(v["lemma"], {})
            d[v["status"]] = d.get(v["status"], 0) + 1
        return {k: dict(sorted(v.items())) for k, v in out.items() if v}

    def findings(self) -> list[dict]:
        return [r for r in self.reports if r["flags"]]


def run_scan(cfg: ScanConfig) -> ScanResult:
    items = resolve_sources(cfg)
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            parts = list(pool.map(scan_item, items, [cfg] * len(items)))
    else:
        parts = [scan_item(it, cfg) for it in items]
    rows, reports, verdicts = [], [], []
    for r, s, v in parts:
        rows.extend(r)
        reports.extend(s)
        verdicts.extend(v)
    return ScanResult(rows, reports, verdicts)


def render_tsv(rows: Sequence[dict], header_line: str | None = None) -> str:
    lines = []
    if header_line:
        lines.append(f"# {header_line}")
    lines.append("\t".join(TSV_COLUMNS))
    for row in rows:
        lines.append("\t".join(str(row[c]) for c in TSV_COLUMNS))
    return "\n".join(lines) + "\n"


def render_verdict_lines(verdicts: Sequence[dict], header_line: str | None = None) -> str:
    lines = [f"# {header_line}"] if header_line else []
    lines.append("\t".join(("triple_id", "lemma", "status", "witness")))
    for v in verdicts:
        lines.append(SuiteVerdict(**v).line())
    return "\n".join(lines) + "\n"


def render_structured(payload: dict, header_line: str | None = None) -> str:
    doc = dict(payload)
    if header_line:
        doc["generated"] = header_line
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
