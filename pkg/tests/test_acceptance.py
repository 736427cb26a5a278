"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines go
straight to the terminal even when output capture is on.
"""

from __future__ import annotations

import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from cosetderange.actions import minimal_degree
from cosetderange.catalog import CatalogError, automorphisms, build, default_catalog, regular, standard
from cosetderange.cli import main as cli_main
from cosetderange.cosets import exceptionality_conditions, r_k_from_spectrum, spectrum
from cosetderange.fields import prime_factors, prime_power
from cosetderange.perm import Permutation, PermGroup, centralizer_sizes, difference_map_is_bijection, is_solvable, parse_cycles
from cosetderange.structure import AFFINE_CASES, CaseLabel, regular_normal_subgroups
from cosetderange.verify import FAIL, PASS, analyze_triple, replay, run_group


def announce(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="module")
def default_scan():
    t0 = time.perf_counter()
    reports = []
    for A in default_catalog(max_degree=10, max_order=100_000):
        reports.extend(run_group(A))
    return reports, time.perf_counter() - t0


def statuses(reports, lemma):
    return Counter(v.status for r in reports for v in r.verdicts if v.lemma == lemma)


# -- 1 ------------------------------------------------------------------------


def test_criterion_1_exact_s0_values(capsys):
    t0 = time.perf_counter()
    bad = []

    rep = analyze_triple(build("sym:4"), build("alt:4"), parse_cycles("(1 2)", 4))
    if rep.s0 != Fraction(1, 2) or rep.case is not CaseLabel.SPECIAL_S4:
        bad.append(f"S4/A4: s0={rep.s0} case={rep.case}")
    for q in (4, 5, 7, 8, 9, 11, 13):
        A = build(f"agl1:{q}")
        rep = analyze_triple(A, A, Permutation.identity(q))
        if rep.s0 != Fraction(1, q) or rep.case is not CaseLabel.FROBENIUS_FULL:
            bad.append(f"agl1:{q}: s0={rep.s0} case={rep.case}")
    for q in (5, 7, 9, 11, 13):
        A = build(f"agl1_half:{q}")
        rep = analyze_triple(A, A, Permutation.identity(q))
        if rep.s0 != Fraction(2, q) or rep.case is not CaseLabel.FROBENIUS_HALF:
            bad.append(f"agl1_half:{q}: s0={rep.s0} case={rep.case}")
    C3 = build("cyclic:3")
    if spectrum(Permutation.identity(3), C3).s0 != Fraction(2, 3):
        bad.append("C3 s0")

    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 5
    announce(capsys, 1, ok, f"14 exact s0 values; {elapsed:.2f}s (< 5s) {bad or ''}")
    assert ok, bad


# -- 2 ------------------------------------------------------------------------


def test_criterion_2_r_k_spectrum_vs_orbits(capsys, default_scan):
    reports, elapsed = default_scan
    bad = []
    for rep in reports:
        for k in (1, 2, 3):
            if r_k_from_spectrum(rep.spectrum, k) != rep.r_orbit[k]:
                bad.append((rep.triple_id, k))
    ok = not bad and elapsed < 120 and statuses(reports, "L2") == Counter({PASS: len(reports)})
    announce(capsys, 2, ok, f"{len(reports)} triples, k=1..3 spectrum == orbits; scan {elapsed:.1f}s (< 120s)")
    assert ok, bad[:5]


# -- 3 ------------------------------------------------------------------------


def test_criterion_3_exceptionality(capsys, default_scan):
    reports, _ = default_scan
    checked = 0
    bad = []
    for rep in reports:
        if not (rep.profile.transitive and rep.transitive_G):
            continue
        checked += 1
        if not exceptionality_conditions(rep.spectrum, rep.r2).consistent:
            bad.append(rep.triple_id)
    s3 = analyze_triple(build("sym:3"), build("alt:3"), parse_cycles("(1 2)", 3))
    s3_ok = exceptionality_conditions(s3.spectrum, s3.r2).exceptional and s3.case is CaseLabel.EXCEPTIONAL
    ok = not bad and s3_ok and statuses(reports, "L3").get(FAIL, 0) == 0
    announce(capsys, 3, ok, f"five conditions agree on {checked} transitive triples; S3/A3 exceptional={s3_ok}")
    assert ok, bad


# -- 4 ------------------------------------------------------------------------


def test_criterion_4_fixed_point_chain(capsys, default_scan):
    reports, _ = default_scan
    ids = ("E1", "E2", "E3", "E4", "E5", "E6", "E7", "UB")
    fails = {lid: statuses(reports, lid).get(FAIL, 0) for lid in ids}
    missing = []
    for rep in reports:
        got = {v.lemma: v.status for v in rep.verdicts}
        need = ["E1", "E2"]
        if rep.r1 == 1:
            need.append("E3")
            if rep.r2 >= 1 and rep.mu is not None and rep.mu < rep.n:
                need += ["E4", "E5", "E6"]
            if rep.r2 == 1:
                need.append("UB")
        missing += [(rep.triple_id, lid) for lid in need if got.get(lid) != PASS]
    tight = sum(1 for r in reports if r.r1 == 1 and r.r2 == 1 and r.s0 == Fraction(1, 2))
    ok = not any(fails.values()) and not missing
    passes = {lid: statuses(reports, lid).get(PASS, 0) for lid in ids}
    announce(capsys, 4, ok, f"passes {passes}; s0 = 1/2 equality triples: {tight}")
    assert ok, (fails, missing[:5])


# -- 5 ------------------------------------------------------------------------


def test_criterion_5_pair_stabilizer_bounds(capsys, default_scan):
    """Literal statements; failures are listed with their two-point stabilizer order."""
    reports, _ = default_scan
    prim = [r for r in reports if r.profile.primitive and r.transitive_G and r.r2 == 1]
    literal, guarded = [], []
    for r in prim:
        n, mu, s0 = r.n, r.mu, r.s0
        broken = []
        if not (r.r3 + 2 <= r.r_pair and 2 * r.r_pair <= 2 * n - mu):
            broken.append("P5")
        if r.r3 + 2 < mu and not s0 > Fraction(2, n):
            broken.append("L4")
        if 3 * mu > 2 * n and not s0 > Fraction(2, n):
            broken.append("L6a")
        if 3 * mu == 2 * n and s0 <= Fraction(2, n) and r.pair_stab_order != 2:
            broken.append("L6b")
        for b in broken:
            literal.append((r.A.name, b, r.pair_stab_order))
            if r.pair_stab_order > 1:
                guarded.append((r.triple_id, b))
    verdict_fails = [(r.triple_id, v.lemma) for r in prim for v in r.verdicts if v.lemma in ("P5", "L4", "L6") and v.status == FAIL]
    trivial_only = all(order == 1 for _, _, order in literal)
    ok = not literal
    names = sorted({f"{a}:{b}" for a, b, _ in literal})
    announce(
        capsys, 5, ok,
        f"{len(prim)} primitive r2=1 triples; literal violations {len(literal)} {names[:12]}"
        f"{'...' if len(names) > 12 else ''}; all with trivial A_ab: {trivial_only}; "
        f"violations with A_ab nontrivial: {len(guarded)}; suite fails: {len(verdict_fails)}",
    )
    assert not guarded and not verdict_fails
    assert ok, literal


# -- 6 ------------------------------------------------------------------------


def test_criterion_6_affine_minimal_degree(capsys):
    bad = []
    for q in (2, 3, 5, 7, 11, 13):
        mu = minimal_degree(build(f"agl1:{q}"))
        if mu != q - 1:
            bad.append(f"agl1:{q} mu={mu} (regular: GL(1,{q}) is trivial)" if q == 2 else f"agl1:{q} mu={mu}")
    for q in (4, 8, 9, 16, 25, 27):
        p, e = prime_power(q)
        q0 = p ** (e // min(prime_factors(e)))
        mu = minimal_degree(build(f"agl1:{q}"))
        if mu < q - q0:
            bad.append(f"agl1:{q} mu={mu} < {q - q0}")
    for d, p in ((2, 2), (3, 2), (2, 3)):
        A = build(f"agl:{d}:{p}")
        mu, n = minimal_degree(A), A.degree
        if mu * p < (p - 1) * n:
            bad.append(f"agl:{d}:{p} mu={mu}")
    ok = not bad
    announce(capsys, 6, ok, "mu(agl1(p)) = p-1, mu(agl1(q)) >= q-q0, mu(agl_dp) >= (q-1)n/q " + (str(bad) if bad else ""))
    assert ok, bad


# -- 7 ------------------------------------------------------------------------


def test_criterion_7_affine_case_totality(capsys):
    groups = default_catalog(max_degree=16, max_order=1_000_000, only="affine")
    reports = [r for A in groups for r in run_group(A, ["T8"])]
    scoped = [r for r in reports if r.profile.primitive and r.profile.affine and r.transitive_G]
    hist = Counter(r.case.value for r in scoped)
    extra = {
        "AGammaL(1,8)/AGL(1,8)": [r for r in scoped if r.A.name == "agammal1:8" and r.G.order == 56],
        "AGammaL(1,9)/AGL(1,9)": [r for r in scoped if r.A.name == "agammal1:9" and r.G.order == 72 and r.G.element_set == build("agl1:9").element_set],
    }
    unclassified = [f"{r.triple_id} (s0={r.s0}, r2={r.r2})" for r in scoped if r.case is CaseLabel.UNCLASSIFIED]
    multiple = [r.triple_id for r in scoped if len(r.case_matches) > 1]
    every_label = all(hist.get(c.value, 0) >= 1 for c in AFFINE_CASES)
    ok = not unclassified and not multiple and every_label and all(extra.values())
    detail = (
        f"{len(scoped)} primitive affine triples, histogram {dict(sorted(hist.items()))}; "
        f"coset families present {[k for k, v in extra.items() if v]}; unclassified: {unclassified}"
    )
    announce(capsys, 7, ok, detail)
    assert ok, detail


# -- 8 ------------------------------------------------------------------------


def _fixed_equals_centralizer(A: PermGroup) -> tuple[int, list]:
    arr = A.array
    fixed = (arr == np.arange(A.degree)).sum(axis=1)
    mask = fixed > 0
    checked, bad = 0, []
    for rn in regular_normal_subgroups(A):
        cent = centralizer_sizes(rn.group, arr[mask])
        checked += int(mask.sum())
        if not np.array_equal(cent, fixed[mask]):
            bad.append(A.name)
    return checked, bad


HOL_INNERS = (
    [f"cyclic:{n}" for n in range(2, 61)]
    + [f"dihedral:{n}" for n in range(3, 31)]
    + ["elab:2:2", "elab:2:3", "elab:2:4", "elab:2:5", "elab:3:2", "elab:3:3", "elab:5:2", "elab:7:2"]
    + ["quaternion:8", "sym:3", "alt:4", "sym:4", "alt:5"]
)


def test_criterion_8_regular_nonabelian_ingredients(capsys, default_scan):
    t0 = time.perf_counter()
    bad = []

    # (i) L10: |Fix(g)| = |C_N(g)|
    n10 = 0
    for sel in ("hol:sym:3", "hol:dihedral:4", "hol:alt:4", "hol:elab:2:3", "agl:3:2"):
        checked, b = _fixed_equals_centralizer(build(sel))
        n10 += checked
        bad += [f"L10 {x}" for x in b]

    # (ii) C13 on Aut(A5)
    N5 = regular(standard("alt", 5))
    auts = automorphisms(N5)
    cents = centralizer_sizes(N5, np.asarray(auts, dtype=np.int32))
    if len(auts) != 120 or not (cents > 1).all():
        bad.append("C13 on A5")

    # (iii) P11 and L12 over N of order <= 60
    pairs, skipped = 0, []
    for inner in HOL_INNERS:
        N = build(inner)
        R = N if N.order == N.degree else regular(N)
        if R.order > 60:
            continue
        try:
            auts = automorphisms(R)
        except CatalogError:
            skipped.append(inner)
            continue
        cents = centralizer_sizes(R, np.asarray(auts, dtype=np.int32))
        for x, c in zip(auts, cents):
            if c != 1:
                continue
            pairs += 1
            if not difference_map_is_bijection(R, x):
                bad.append(f"P11 {inner} {x}")
            if not is_solvable(R):
                bad.append(f"L12 {inner}")

    # (iv) L9 on the catalog
    reports, _ = default_scan
    n9 = 0
    for rep in reports:
        c = rep.spectrum.counts
        if not (rep.profile.transitive and rep.transitive_G) or c[1] or c[0] == rep.m:
            continue
        n9 += 1
        s0 = rep.s0
        if s0 < Fraction(1, 2):
            bad.append(f"L9 {rep.triple_id}")
        if (s0 == Fraction(1, 2)) != (rep.spectrum.proportion(2) == Fraction(1, 2) == s0):
            bad.append(f"L9 remark {rep.triple_id}")
    l9 = statuses(reports, "L9")

    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300 and pairs > 0 and n9 > 0 and l9.get(FAIL, 0) == 0
    announce(
        capsys, 8, ok,
        f"L10 on {n10} elements; Aut(A5) all |C|>1; {pairs} fixed-point-free (N,x) pairs (automorphism search over budget: {skipped}); "
        f"L9 on {n9} triples; {elapsed:.1f}s (< 300s) {bad[:5] or ''}",
    )
    assert ok, bad[:10]


# -- 9 ------------------------------------------------------------------------


def test_criterion_9_verify_exit_and_fault_hook(capsys, tmp_path):
    out = tmp_path / "verdicts.tsv"
    clean = cli_main(["verify", "--no-header", "--out", str(out)])
    err = capsys.readouterr().err
    failing = [line for line in err.splitlines() if line.startswith("FAIL ")]

    faulty = run_group(build("sym:4"), ["L2"], fault="spectrum-off-by-one")
    fails = [v for r in faulty for v in r.verdicts if v.status == FAIL]
    replayed = all(replay(v).status == FAIL for v in fails)
    fault_code = cli_main(["verify", "sym:4", "--lemmas", "L2", "--inject-fault", "spectrum-off-by-one", "--no-header"])
    capsys.readouterr()

    hook_ok = bool(fails) and replayed and fault_code == 1
    ok = clean == 0 and hook_ok
    detail = (
        f"verify exit {clean} (want 0), failing checks: {[f.split(':')[0] for f in failing]}; "
        f"fault hook L2 fails={len(fails)} replayable={replayed} exit={fault_code}"
    )
    announce(capsys, 9, ok, detail)
    assert hook_ok, detail
    assert clean == 0, detail
