"""Triple analysis and the exact lemma-by-lemma verification suite.

A *triple* is ``(A, G, x)`` with G normal in A and xG generating the cyclic
quotient A/G.  :func:`analyze_triple` measures everything about one triple;
:func:`check_report` turns the measurements into pass/fail verdicts.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, perm as falling_factorial
from typing import Callable, Iterable, Sequence

import numpy as np

from .actions import (
    DEFAULT_TUPLE_BUDGET,
    common_orbits,
    is_transitive,
    minimal_degree,
    point_orbits,
    stabilizer_orbits,
    tuple_orbits,
    two_point_stabilizer,
)
from .cosets import (
    CosetSpectrum,
    InconsistencyError,
    bounds_report,
    exceptionality_conditions,
    r_k_from_spectrum,
    spectrum,
)
from .fields import prime_factors, prime_power
from .perm import PermGroup, Permutation, centralizer_sizes, difference_map_is_bijection, print_cycles
from .structure import (
    CaseLabel,
    GroupProfile,
    case_matches,
    classify,
    profile,
    subgroups_with_cyclic_quotient,
)

log = logging.getLogger(__name__)

LEMMA_IDS = (
    "L1", "L2", "L3", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "UB",
    "L4", "P5", "L6", "L7", "T8", "L9", "L10", "P11", "L12", "C13", "S5",
)
LEMMA_LABELS = {"S5": "S5 (ingredient form)"}
PASS, FAIL, NA = "pass", "fail", "inapplicable"
AUT_CHECK_LIMIT = 60

SpectrumHook = Callable[[CosetSpectrum], CosetSpectrum]


def off_by_one(spec: CosetSpectrum) -> CosetSpectrum:
    """Test hook: move one element up a fixed-point bin."""
    counts = list(spec.counts)
    i = next(i for i, c in enumerate(counts[:-1]) if c)
    counts[i] -= 1
    counts[i + 1] += 1
    return CosetSpectrum(spec.degree, spec.order, tuple(counts))


FAULTS: dict[str, SpectrumHook] = {"spectrum-off-by-one": off_by_one}


@dataclass
class Triple:
    A: PermGroup
    G: PermGroup
    x: Permutation
    source: str = "catalog"
    quotient_order: int = 1
    g_label: str = ""

    @property
    def triple_id(self) -> str:
        label = self.g_label or f"G{self.G.order}"
        return f"{self.A.name}|{label}|{print_cycles(self.x)}"

    def describe(self) -> dict:
        return {
            "A": {
                "name": self.A.name,
                "degree": self.A.degree,
                "gens": [print_cycles(g) for g in self.A.generators],
                "meta": dict(self.A.meta),
            },
            "G": {"gens": [print_cycles(g) for g in self.G.generators]},
            "x": print_cycles(self.x),
        }


@dataclass
class TripleReport:
    triple: Triple
    profile: GroupProfile = field(repr=False)
    transitive_G: bool
    g_orbit_count: int
    g_mu: int | None
    spectrum: CosetSpectrum
    r_orbit: dict[int, int]
    r_spectrum: dict[int, int | None]
    fault: str | None = None
    pair_rep: tuple[int, int] | None = None
    pair_alt: tuple[int, int] | None = None
    r_pair: int | None = None
    r_pair_alt: int | None = None
    pair_stab_order: int | None = None
    pair_stab_mu: int | None = None
    case: CaseLabel = CaseLabel.NOT_APPLICABLE
    case_matches: list = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    verdicts: list = field(default_factory=list)

    @property
    def A(self) -> PermGroup:
        return self.triple.A

    @property
    def G(self) -> PermGroup:
        return self.triple.G

    @property
    def x(self) -> Permutation:
        return self.triple.x

    @property
    def n(self) -> int:
        return self.A.degree

    @property
    def m(self) -> int:
        return self.G.order

    @property
    def mu(self) -> int | None:
        return self.profile.mu

    @property
    def r1(self) -> int:
        return self.r_orbit.get(1, 0)

    @property
    def r2(self) -> int:
        return self.r_orbit.get(2, 0)

    @property
    def r3(self) -> int:
        return self.r_orbit.get(3, 0)

    @property
    def s0(self) -> Fraction:
        return self.spectrum.s0

    @property
    def triple_id(self) -> str:
        return self.triple.triple_id

    def as_dict(self) -> dict:
        t = self.triple
        return {
            "triple_id": self.triple_id,
            "source": t.source,
            "A_name": self.A.name,
            "A_order": self.A.order,
            "G_order": self.G.order,
            "quotient_order": t.quotient_order,
            "degree": self.n,
            "x": print_cycles(self.x),
            "transitive_A": self.profile.transitive,
            "transitive_G": self.transitive_G,
            "primitive_A": self.profile.primitive,
            "frobenius_A": self.profile.frobenius,
            "affine": list(self.profile.affine) if self.profile.affine else None,
            "regular_normal_subgroups": [rn.describe() for rn in self.profile.regular_normals],
            "mu": self.mu,
            "r": {str(k): v for k, v in sorted(self.r_orbit.items())},
            "spectrum": list(self.spectrum.counts),
            "s0": str(self.s0),
            "pair_rep": list(self.pair_rep) if self.pair_rep else None,
            "r_pair": self.r_pair,
            "pair_stabilizer_order": self.pair_stab_order,
            "case": self.case.value,
            "flags": list(self.flags),
            "verdicts": {v.lemma: v.status for v in self.verdicts},
        }


@dataclass(frozen=True)
class SuiteVerdict:
    triple_id: str
    lemma: str
    status: str
    witness: dict | None = None

    def __post_init__(self):
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing verdict needs a counterexample")

    def as_dict(self) -> dict:
        return {"triple_id": self.triple_id, "lemma": self.lemma, "status": self.status, "witness": self.witness}

    def line(self) -> str:
        wit = json.dumps(self.witness, sort_keys=True, separators=(",", ":")) if self.witness else ""
        return "\t".join((self.triple_id, self.lemma, self.status, wit))


def analyze_triple(
    A: PermGroup,
    G: PermGroup,
    x: Permutation,
    *,
    prof: GroupProfile | None = None,
    k_max: int = 3,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
    fault: str | None = None,
    source: str = "catalog",
    quotient_order: int | None = None,
    g_label: str = "",
) -> TripleReport:
    """Measure every statistic of one triple."""
    if prof is None:
        prof = profile(A)
    if quotient_order is None:
        quotient_order = A.order // G.order
    triple = Triple(A, G, x, source, quotient_order, g_label)
    spec = spectrum(x, G)
    if fault:
        spec = FAULTS[fault](spec)
    r_orbit = {k: len(common_orbits(A, G, k, tuple_budget)) for k in range(1, k_max + 1)}
    r_spec: dict[int, int | None] = {}
    for k in range(1, k_max + 1):
        try:
            r_spec[k] = r_k_from_spectrum(spec, k)
        except InconsistencyError:
            r_spec[k] = None
    g_trans = is_transitive(G)
    rep = TripleReport(
        triple=triple,
        profile=prof,
        transitive_G=g_trans,
        g_orbit_count=point_orbits(G).count,
        g_mu=None if G.order == 1 else minimal_degree(G),
        spectrum=spec,
        r_orbit=r_orbit,
        r_spectrum=r_spec,
        fault=fault,
    )
    if rep.r2 >= 1:
        _measure_pair(rep, tuple_budget)
    if prof.transitive and prof.primitive and g_trans:
        rep.case_matches = case_matches(
            n=A.degree, a_order=A.order, g_order=G.order, r2=rep.r2, s0=rep.s0, sharp=prof.max_fixed <= 1
        )
        rep.case = classify(A, G, x, rep)
        if rep.case == CaseLabel.UNCLASSIFIED and prof.affine:
            rep.flags.append("finding:affine-unclassified")
        if A.degree == 9 and rep.case == CaseLabel.LARGE_S0 and rep.s0 < Fraction(1, 3):
            rep.flags.append("inspect:degree-9-below-1/3")
    return rep


def _measure_pair(rep: TripleReport, budget: int) -> None:
    """Two-point stabilizer of the least pair in the least common pair-orbit."""
    A, G = rep.A, rep.G
    part = tuple_orbits(G, 2, budget)
    common = common_orbits(A, G, 2, budget)
    members = part.domain.members
    orbit = common[0]
    idx = [j for j, o in enumerate(part.ids) if o == orbit]
    a, b = members[idx[0]]
    rep.pair_rep = (a, b)
    stab = two_point_stabilizer(A, a, b)
    rep.r_pair = stabilizer_orbits(stab, A.degree).count
    rep.pair_stab_order = len(stab)
    if len(stab) > 1:
        moved = (stab != np.arange(A.degree)).sum(axis=1)
        rep.pair_stab_mu = int(moved[moved > 0].min())
    a2, b2 = members[idx[-1]]
    rep.pair_alt = (a2, b2)
    rep.r_pair_alt = stabilizer_orbits(two_point_stabilizer(A, a2, b2), A.degree).count


# -- checks -------------------------------------------------------------------


def _witness(rep: TripleReport, **values) -> dict:
    w = {"triple": rep.triple.describe()}
    if rep.fault:
        w["triple"]["fault"] = rep.fault
    w["values"] = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in values.items()}
    return w


def _verdict(rep: TripleReport, lemma: str, ok: bool | None, **values) -> SuiteVerdict:
    if ok is None:
        return SuiteVerdict(rep.triple_id, lemma, NA)
    if ok:
        return SuiteVerdict(rep.triple_id, lemma, PASS)
    return SuiteVerdict(rep.triple_id, lemma, FAIL, _witness(rep, **values))


def _both_transitive(rep: TripleReport) -> bool:
    return rep.profile.transitive and rep.transitive_G


def check_L1(rep):
    bad = []
    for label, order, orbits, mu in (
        ("A", rep.A.order, rep.profile.orbit_count, rep.mu),
        ("G", rep.G.order, rep.g_orbit_count, rep.g_mu),
    ):
        if mu is None:
            continue
        bound2 = 2 * rep.n - mu
        if 2 * orbits > bound2 or (order > 2 and 2 * orbits == bound2):
            bad.append({"group": label, "orbits": orbits, "n": rep.n, "mu": mu, "order": order})
    if rep.mu is None:
        return _verdict(rep, "L1", None)
    return _verdict(rep, "L1", not bad, violations=bad)


def check_L2(rep):
    mism = {k: (rep.r_spectrum.get(k), v) for k, v in rep.r_orbit.items() if rep.r_spectrum.get(k) != v}
    ok = not mism
    claim = None
    if rep.profile.transitive:
        some_fixed = rep.spectrum.counts[0] < rep.m
        claim = some_fixed == rep.transitive_G
        ok = ok and claim
    return _verdict(
        rep, "L2", ok,
        mismatches={str(k): {"spectrum": s, "orbits": o} for k, (s, o) in mism.items()},
        spectrum=list(rep.spectrum.counts), transitivity_claim=claim,
    )


def check_L3(rep):
    if not _both_transitive(rep):
        return _verdict(rep, "L3", None)
    ex = exceptionality_conditions(rep.spectrum, rep.r2)
    return _verdict(rep, "L3", ex.consistent, conditions=list(ex.conditions))


def check_E1(rep):
    return _verdict(rep, "E1", rep.spectrum.total == rep.m, total=rep.spectrum.total, order=rep.m)


def check_E2(rep):
    bad = {}
    for k, r in rep.r_orbit.items():
        lhs = sum(comb(i, k) * c for i, c in enumerate(rep.spectrum.counts)) * falling_factorial(k, k)
        if lhs != r * rep.m:
            bad[str(k)] = {"k!*sum C(i,k)N_i": lhs, "r_k*|G|": r * rep.m}
    return _verdict(rep, "E2", not bad, mismatches=bad)


def check_E3(rep):
    if rep.r1 != 1:
        return _verdict(rep, "E3", None)
    c = rep.spectrum.counts
    rhs = sum((i - 1) * c[i] for i in range(2, len(c)))
    return _verdict(rep, "E3", c[0] == rhs, N0=c[0], rhs=rhs)


def check_E4(rep):
    if rep.r1 != 1:
        return _verdict(rep, "E4", None)
    c, n, m = rep.spectrum.counts, rep.n, rep.m
    lhs = n * c[0] - rep.r2 * m
    rhs = sum((n - i) * (i - 1) * c[i] for i in range(2, n + 1))
    tight_cond = all(v == 0 for v in c[2:n])
    ok = lhs == rhs and lhs >= 0 and (lhs == 0) == tight_cond
    if rep.r2 >= 2:
        ok = ok and rep.s0 >= Fraction(2, n)
    frob = None
    if rep.r2 >= 1 and lhs == 0:
        frob = rep.A.order == rep.G.order and rep.profile.max_fixed <= 1
        ok = ok and frob
    return _verdict(rep, "E4", ok, lhs=lhs, rhs=rhs, tight_condition=tight_cond, frobenius=frob)


def check_E5(rep):
    if 3 not in rep.r_orbit:
        return _verdict(rep, "E5", None)
    c, n, m = rep.spectrum.counts, rep.n, rep.m
    lhs = ((n - 2) * rep.r2 - rep.r3) * m
    rhs = sum((n - i) * i * (i - 1) * c[i] for i in range(n + 1))
    return _verdict(rep, "E5", lhs == rhs and lhs >= 0, lhs=lhs, rhs=rhs)


def check_E6(rep):
    if rep.r1 != 1 or rep.r2 < 1 or rep.mu is None or rep.mu >= rep.n or 3 not in rep.r_orbit:
        return _verdict(rep, "E6", None)
    b = bounds_report(rep.spectrum, rep.r2, rep.r3, rep.mu)
    return _verdict(rep, "E6", b.combined_bound_holds, s0=rep.s0, bound=b.combined_bound)


def check_E7(rep):
    if not (rep.profile.primitive and rep.r2 == 1 and rep.mu is not None and rep.mu < rep.n and 3 in rep.r_orbit):
        return _verdict(rep, "E7", None)
    n = rep.n
    bound = Fraction(1, n) + Fraction(n - (rep.r3 + 2), n * (n - rep.mu))
    return _verdict(rep, "E7", rep.s0 >= bound, s0=rep.s0, bound=bound)


def check_UB(rep):
    if rep.r1 != 1 or rep.r2 != 1:
        return _verdict(rep, "UB", None)
    b = bounds_report(rep.spectrum, rep.r2, rep.r3, max(rep.mu or 2, 2))
    ok = b.upper_holds and (b.upper_tight == b.upper_tight_condition)
    return _verdict(rep, "UB", ok, s0=rep.s0, tight=b.upper_tight, tail_zero=b.upper_tight_condition)


def _primitive_r2_one(rep) -> bool:
    return bool(rep.profile.primitive) and rep.r2 == 1 and 3 in rep.r_orbit


def check_L4(rep):
    if not _primitive_r2_one(rep) or not rep.r3 + 2 < rep.mu:
        return _verdict(rep, "L4", None)
    return _verdict(rep, "L4", rep.s0 > Fraction(2, rep.n), s0=rep.s0, r3=rep.r3, mu=rep.mu)


def check_P5(rep):
    if not _primitive_r2_one(rep) or rep.r_pair is None:
        return _verdict(rep, "P5", None)
    ok = rep.r3 + 2 <= rep.r_pair and rep.r_pair == rep.r_pair_alt
    upper = None
    if rep.pair_stab_order > 1:
        upper = 2 * rep.r_pair <= 2 * rep.n - rep.mu
        ok = ok and upper
    return _verdict(
        rep, "P5", ok, r3=rep.r3, r=rep.r_pair, r_alt=rep.r_pair_alt, n=rep.n, mu=rep.mu,
        pair=rep.pair_rep, stabilizer_order=rep.pair_stab_order,
    )


def check_L6(rep):
    if not _primitive_r2_one(rep) or not rep.pair_stab_order or rep.pair_stab_order < 2:
        return _verdict(rep, "L6", None)
    n, mu, s0 = rep.n, rep.mu, rep.s0
    if 3 * mu > 2 * n:
        return _verdict(rep, "L6", s0 > Fraction(2, n), part="a", s0=s0, mu=mu)
    if 3 * mu == 2 * n and s0 <= Fraction(2, n):
        return _verdict(rep, "L6", rep.pair_stab_order == 2, part="b", stabilizer_order=rep.pair_stab_order)
    return _verdict(rep, "L6", None)


def _lemma7_statements(rep) -> list[tuple[str, bool]]:
    prof = rep.profile
    if prof.affine is None or rep.mu is None:
        return []
    n, mu = rep.n, rep.mu
    p, d = prof.affine
    out = []
    if d > 1:
        out.append(("a", mu * p >= (p - 1) * n))
    elif prof.order > n:
        out.append(("b", mu == p - 1))
    fam = rep.A.meta.get("family")
    if fam in ("agl1", "agl1_half") and "q" in rep.A.meta:
        q = int(rep.A.meta["q"])
        qp, e = prime_power(q)
        if e > 1:
            q0 = qp ** (e // min(prime_factors(e)))
            out.append(("c", mu >= q - q0))
    return out


def check_L7(rep):
    stmts = _lemma7_statements(rep)
    if not stmts:
        return _verdict(rep, "L7", None)
    bad = [part for part, ok in stmts if not ok]
    return _verdict(rep, "L7", not bad, failed_parts=bad, mu=rep.mu, n=rep.n, meta=rep.A.meta)


def check_T8(rep):
    prof = rep.profile
    if not (prof.primitive and prof.affine and rep.transitive_G):
        return _verdict(rep, "T8", None)
    labels = [c.value for c in rep.case_matches]
    return _verdict(rep, "T8", len(labels) == 1, matches=labels, s0=rep.s0, r2=rep.r2,
                    A_order=rep.A.order, G_order=rep.G.order, n=rep.n)


def check_L9(rep):
    if not _both_transitive(rep):
        return _verdict(rep, "L9", None)
    s = rep.spectrum.min_nonzero_fixed()
    if s is None or s < 2:
        return _verdict(rep, "L9", None)
    s0, c = rep.s0, rep.spectrum.counts
    ok = s0 >= 1 - Fraction(1, s)
    ok = ok and ((s0 == Fraction(1, 2)) == (2 * c[0] == rep.m and 2 * c[2] == rep.m))
    return _verdict(rep, "L9", ok, s=s, s0=s0, spectrum=list(c))


def _coset_array(rep) -> np.ndarray:
    return np.asarray(rep.x, dtype=np.int32)[rep.G.array]


def _regular_centralizers(rep):
    """``(N-record, coset array, fixed counts, |C_N(g)| per coset element)``."""
    if not rep.profile.regular_normals.subgroups:
        return []
    arr = _coset_array(rep)
    fixed = (arr == np.arange(rep.n)).sum(axis=1)
    return [(rn, arr, fixed, centralizer_sizes(rn.group, arr)) for rn in rep.profile.regular_normals]


def check_L10(rep, cache=None):
    data = cache if cache is not None else _regular_centralizers(rep)
    if not data:
        return _verdict(rep, "L10", None)
    for rn, arr, fixed, cent in data:
        mask = fixed > 0
        bad = np.flatnonzero(mask & (fixed != cent))
        if bad.size:
            i = int(bad[0])
            return _verdict(rep, "L10", False, N=rn.describe(), element=print_cycles(arr[i].tolist()),
                            fixed=int(fixed[i]), centralizer=int(cent[i]))
    return _verdict(rep, "L10", True)


def _fpf_elements(rep, data):
    out = []
    for rn, arr, fixed, cent in data:
        if rn.group.order > AUT_CHECK_LIMIT:
            continue
        idx = np.flatnonzero(cent == 1)
        if idx.size:
            out.append((rn, arr, idx))
    return out


def check_P11(rep, cache=None):
    data = cache if cache is not None else _regular_centralizers(rep)
    fpf = _fpf_elements(rep, data)
    if not fpf:
        return _verdict(rep, "P11", None)
    for rn, arr, idx in fpf:
        for i in idx:
            a = Permutation._raw(arr[i].tolist())
            if not difference_map_is_bijection(rn.group, a):
                return _verdict(rep, "P11", False, N=rn.describe(), element=print_cycles(a))
    return _verdict(rep, "P11", True)


def check_L12(rep, cache=None):
    data = cache if cache is not None else _regular_centralizers(rep)
    fpf = _fpf_elements(rep, data)
    if not fpf:
        return _verdict(rep, "L12", None)
    bad = [rn.describe() for rn, _, _ in fpf if not rn.solvable]
    return _verdict(rep, "L12", not bad, unsolvable=bad)


def check_C13(rep, cache=None):
    data = cache if cache is not None else _regular_centralizers(rep)
    simple = [(rn, arr, cent) for rn, arr, _, cent in data if rn.simple_nonabelian]
    if not simple:
        return _verdict(rep, "C13", None)
    for rn, arr, cent in simple:
        bad = np.flatnonzero(cent <= 1)
        if bad.size:
            return _verdict(rep, "C13", False, element=print_cycles(arr[int(bad[0])].tolist()))
    return _verdict(rep, "C13", True)


def check_S5(rep, cache=None):
    data = cache if cache is not None else _regular_centralizers(rep)
    data = [d for d in data if d[0].nonabelian]
    if not data or not _both_transitive(rep):
        return _verdict(rep, "S5", None)
    for rn, arr, fixed, cent in data:
        mask = fixed > 0
        if np.all(cent[mask] >= 2):
            s0, c = rep.s0, rep.spectrum.counts
            ok = s0 >= Fraction(1, 2)
            ok = ok and ((s0 == Fraction(1, 2)) == (2 * c[0] == rep.m and 2 * c[2] == rep.m))
            return _verdict(rep, "S5", ok, check=LEMMA_LABELS["S5"], N=rn.describe(), s0=s0, spectrum=list(c))
    return _verdict(rep, "S5", None)


CHECKS = {
    "L1": check_L1, "L2": check_L2, "L3": check_L3,
    "E1": check_E1, "E2": check_E2, "E3": check_E3, "E4": check_E4, "E5": check_E5,
    "E6": check_E6, "E7": check_E7, "UB": check_UB,
    "L4": check_L4, "P5": check_P5, "L6": check_L6, "L7": check_L7, "T8": check_T8,
    "L9": check_L9, "L10": check_L10, "P11": check_P11, "L12": check_L12, "C13": check_C13, "S5": check_S5,
}
_NEEDS_CENTRALIZERS = {"L10", "P11", "L12", "C13", "S5"}


def check_report(rep: TripleReport, lemmas: Sequence[str] | None = None) -> list[SuiteVerdict]:
    lemmas = list(LEMMA_IDS if lemmas is None else lemmas)
    unknown = [l for l in lemmas if l not in CHECKS]
    if unknown:
        raise ValueError(f"unknown lemma id(s): {', '.join(unknown)}")
    cache = _regular_centralizers(rep) if _NEEDS_CENTRALIZERS.intersection(lemmas) else None
    out = []
    for lid in LEMMA_IDS:
        if lid not in lemmas:
            continue
        fn = CHECKS[lid]
        out.append(fn(rep, cache) if lid in _NEEDS_CENTRALIZERS else fn(rep))
    return out


# -- triples and suites ---------------------------------------------------------


def triples_for_group(A: PermGroup, source: str = "catalog") -> list[Triple]:
    """Every (A, G, x) with A/G cyclic and xG a generating coset."""
    out = []
    for gi, (G, m, cosets) in enumerate(subgroups_with_cyclic_quotient(A)):
        label = f"G{G.order}.{gi}"
        if G is not A:
            G.name = f"{A.name}>{label}"
        for c in cosets:
            out.append(Triple(A, G, c.representative, source, m, label))
    return out


def run_group(
    A: PermGroup,
    lemmas: Sequence[str] | None = None,
    *,
    source: str = "catalog",
    k_max: int = 3,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
    fault: str | None = None,
) -> list[TripleReport]:
    """Analyze and check every triple of one group."""
    prof = profile(A)
    reports = []
    for t in triples_for_group(A, source):
        rep = analyze_triple(
            t.A, t.G, t.x, prof=prof, k_max=k_max, tuple_budget=tuple_budget, fault=fault,
            source=source, quotient_order=t.quotient_order, g_label=t.g_label,
        )
        rep.verdicts = check_report(rep, lemmas)
        reports.append(rep)
    return reports


def run_suite(
    triples: Iterable[Triple], lemmas: Sequence[str] | None = None, *, fault: str | None = None, **kw
) -> list[SuiteVerdict]:
    """Verdicts for every (triple, lemma), sorted by triple id then lemma order."""
    profiles: dict[int, GroupProfile] = {}
    verdicts = []
    for t in triples:
        prof = profiles.get(id(t.A))
        if prof is None:
            prof = profiles[id(t.A)] = profile(t.A)
        rep = analyze_triple(t.A, t.G, t.x, prof=prof, fault=fault, source=t.source,
                             quotient_order=t.quotient_order, g_label=t.g_label, **kw)
        verdicts.extend(check_report(rep, lemmas))
    order = {lid: i for i, lid in enumerate(LEMMA_IDS)}
    return sorted(verdicts, key=lambda v: (v.triple_id, order[v.lemma]))


def replay(verdict: SuiteVerdict) -> SuiteVerdict:
    """Re-run one check on the triple recorded in a counterexample."""
    from .perm import parse_cycles

    if not verdict.witness:
        raise ValueError("only failing verdicts carry a replayable triple")
    t = verdict.witness["triple"]
    n = t["A"]["degree"]
    A = PermGroup([parse_cycles(g, n) for g in t["A"]["gens"]], n, name=t["A"]["name"], meta=t["A"].get("meta"))
    G = PermGroup([parse_cycles(g, n) for g in t["G"]["gens"]], n)
    if G.same_elements(A):
        G = A
    x = parse_cycles(t["x"], n)
    rep = analyze_triple(A, G, x, fault=t.get("fault"))
    (v,) = check_report(rep, [verdict.lemma])
    return v
