"""Constructors for the group families scanned by the tool, and group files.

Selectors are short tokens such as ``sym:4``, ``agl1:9``, ``agl:2:3`` or
``hol:sym:3``; :func:`build` turns one into a :class:`PermGroup`.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Iterable

from .fields import FiniteField, gf, is_prime, prime_factors, prime_power
from .perm import (
    DEFAULT_CAP,
    CapExceeded,
    ParseError,
    PermGroup,
    Permutation,
    closure,
    parse_cycles,
    print_cycles,
)

DEFAULT_AUT_BUDGET = 1_000_000
AGAMMA_QS = (4, 8, 9, 16, 27, 32)


class CatalogError(ValueError):
    pass


def _cycle(points: Iterable[int], n: int) -> Permutation:
    pts = list(points)
    images = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        images[a] = b
    return Permutation._raw(images)


def _named(gens, degree, name, **meta) -> PermGroup:
    return PermGroup(gens, degree, name=name, meta={k: str(v) for k, v in meta.items()})


def standard(name: str, n: int) -> PermGroup:
    """Symmetric, alternating, cyclic and dihedral groups on n points."""
    if n < 2 or (name in ("alt", "dihedral") and n < 3):
        raise CatalogError(f"invalid degree {n} for {name}")
    full = _cycle(range(n), n)
    if name == "sym":
        gens = [_cycle([0, 1], n), full] if n > 2 else [full]
    elif name == "alt":
        long = full if n % 2 else _cycle(range(1, n), n)
        gens = [_cycle([0, 1, 2], n), long]
    elif name == "cyclic":
        gens = [full]
    elif name == "dihedral":
        gens = [full, Permutation._raw((-i) % n for i in range(n))]
    else:
        raise CatalogError(f"unknown standard family {name!r}")
    return _named(gens, n, f"{name}:{n}", family=name, n=n)


def _affine_map(F: FiniteField, a: int, b: int) -> Permutation:
    return Permutation._raw(F.add(F.mul(a, v), b) for v in range(F.q))


def _field_for(q: int) -> FiniteField:
    p, e = prime_power(q)
    return gf(p, e)


def agl1(q: int) -> PermGroup:
    """All maps v -> a*v + b (a != 0) on F_q."""
    if not 2 <= q <= 64:
        raise CatalogError(f"agl1 needs 2 <= q <= 64, got {q}")
    F = _field_for(q)
    gens = [_affine_map(F, 1, F.power_of_gamma(i)) for i in range(F.e)]
    gens.append(_affine_map(F, F.gamma, 0))
    p, e = F.p, F.e
    return _named(gens, q, f"agl1:{q}", family="agl1", q=q, p=p, e=e)


def agl1_half(q: int) -> PermGroup:
    """Maps v -> a*v + b with a a nonzero square, q odd."""
    if q % 2 == 0 or not 3 <= q <= 64:
        raise CatalogError(f"agl1_half needs odd 3 <= q <= 64, got {q}")
    F = _field_for(q)
    gens = [_affine_map(F, 1, F.power_of_gamma(i)) for i in range(F.e)]
    gens.append(_affine_map(F, F.mul(F.gamma, F.gamma), 0))
    return _named(gens, q, f"agl1_half:{q}", family="agl1_half", q=q, p=F.p, e=F.e)


def agammal1(q: int) -> PermGroup:
    """agl1(q) extended by the Frobenius automorphism v -> v**p."""
    F = _field_for(q)
    if F.e == 1:
        raise CatalogError(f"agammal1 needs a proper prime power, got {q}")
    base = agl1(q)
    frob = Permutation._raw(F.frobenius(v) for v in range(q))
    return _named(
        list(base.generators) + [frob], q, f"agammal1:{q}", family="agammal1", q=q, p=F.p, e=F.e
    )


def _vec_encode(v, p):
    return sum(c * p**i for i, c in enumerate(v))


def gl_order(d: int, p: int) -> int:
    return prod(p**d - p**i for i in range(d))


def agl_dp(d: int, p: int, mat_budget: int = 1_000_000) -> PermGroup:
    """Full affine group of F_p^d on p**d points (mixed-radix encoding)."""
    if not is_prime(p) or d < 1:
        raise CatalogError(f"agl_dp needs prime p and d >= 1, got d={d}, p={p}")
    n = p**d
    if n > 512:
        raise CatalogError(f"degree {n} exceeds 512")
    if gl_order(d, p) > mat_budget:
        raise CatalogError(f"|GL({d},{p})| = {gl_order(d, p)} exceeds budget {mat_budget}")
    vecs = [tuple((k // p**i) % p for i in range(d)) for k in range(n)]

    def linear(M):
        return Permutation._raw(
            _vec_encode([sum(M[i][j] * v[j] for j in range(d)) % p for i in range(d)], p) for v in vecs
        )

    gens = []
    for i in range(d):
        shift = [0] * d
        shift[i] = 1
        gens.append(Permutation._raw(_vec_encode([(a + b) % p for a, b in zip(v, shift)], p) for v in vecs))
    prim = gf(p).gamma
    if p > 2:
        gens.append(linear([[prim if (i == j == 0) else int(i == j) for j in range(d)] for i in range(d)]))
    for i in range(d):
        for j in range(d):
            if i != j:
                gens.append(linear([[int(r == c) + int(r == i and c == j) for c in range(d)] for r in range(d)]))
    return _named(gens, n, f"agl:{d}:{p}", family="agl", d=d, p=p, q=p)


def elementary_abelian(p: int, d: int) -> PermGroup:
    """The translation group of F_p^d, regular on p**d points."""
    if not is_prime(p) or d < 1 or p**d > 512:
        raise CatalogError(f"elab needs prime p, d >= 1 and p**d <= 512, got p={p}, d={d}")
    n = p**d
    gens = []
    for i in range(d):
        step = p**i
        # adding e_i bumps digit i mod p and leaves the others alone
        gens.append(Permutation._raw(v - ((v // step) % p) * step + (((v // step) + 1) % p) * step for v in range(n)))
    return _named(gens, n, f"elab:{p}:{d}", family="elab", p=p, d=d)


def quaternion() -> PermGroup:
    """Q8 in its regular representation."""
    i = parse_cycles("(1 2 3 4)(5 6 7 8)", 8)
    j = parse_cycles("(1 5 3 7)(2 8 4 6)", 8)
    return _named([i, j], 8, "quaternion:8", family="quaternion")


def regular(H: PermGroup) -> PermGroup:
    """Left regular representation of H on its own elements."""
    elems = H.elements
    index = {g: k for k, g in enumerate(elems)}
    gens = [Permutation._raw(index[s * h] for h in elems) for s in H.generators if not s.is_identity()]
    return PermGroup(gens, len(elems), name=f"regular({H.name})", meta={"family": "regular"})


def _is_regular(N: PermGroup) -> bool:
    from .actions import is_transitive

    return N.order == N.degree and is_transitive(N)


def _irredundant_generators(N: PermGroup) -> list[Permutation]:
    kept: list[Permutation] = []
    for s in N.generators:
        if s.is_identity():
            continue
        if kept and s in closure(kept):
            continue
        kept.append(s)
    while len(kept) > 1:
        for i in range(len(kept)):
            rest = kept[:i] + kept[i + 1:]
            if closure(rest).order == N.order:
                kept = rest
                break
        else:
            break
    return kept


def automorphisms(N: PermGroup, budget: int = DEFAULT_AUT_BUDGET) -> list[Permutation]:
    """Automorphisms of a regular N, as point permutations fixing point 0.

    Point ``h(0)`` is identified with the element ``h``; an automorphism is
    then the permutation ``phi`` with ``phi * s * phi**-1`` in N for each
    generator s, and ``phi(0) == 0``.
    """
    if not _is_regular(N):
        raise CatalogError("automorphism search needs a regular group")
    n = N.degree
    gens = _irredundant_generators(N)
    orders = [g.order() for g in gens]
    candidates = [[g for g in N.elements if g.order() == o] for o in orders]
    total = prod(len(c) for c in candidates)
    if total > budget:
        raise CatalogError(f"automorphism search needs {total} candidates, budget {budget}")
    # BFS spanning tree of the Cayley graph from point 0
    tree: list[tuple[int, int, int]] = []
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for j, s in enumerate(gens):
                t = s[h]
                if t not in seen:
                    seen.add(t)
                    tree.append((h, j, t))
                    nxt.append(t)
        frontier = nxt
    out = []
    for images in product(*candidates):
        phi = [-1] * n
        phi[0] = 0
        for h, j, t in tree:
            phi[t] = images[j][phi[h]]
        if len(set(phi)) != n:
            continue
        if all(phi[s[h]] == c[phi[h]] for s, c in zip(gens, images) for h in range(n)):
            out.append(Permutation._raw(phi))
    return sorted(out)


def holomorph(N: PermGroup, aut_budget: int = DEFAULT_AUT_BUDGET, name: str | None = None) -> PermGroup:
    """N together with Aut(N), acting on the points of a regular N."""
    if not _is_regular(N):
        raise CatalogError("holomorph needs a regular group")
    if N.order > 60:
        raise CatalogError(f"holomorph limited to |N| <= 60, got {N.order}")
    auts = automorphisms(N, aut_budget)
    gens = [g for g in N.generators if not g.is_identity()]
    aut_gens: list[Permutation] = []
    current = None
    for a in auts:
        if a.is_identity():
            continue
        if current is not None and a in current:
            continue
        aut_gens.append(a)
        current = closure(aut_gens)
    return PermGroup(
        gens + aut_gens,
        N.degree,
        name=name or f"hol({N.name})",
        meta={"family": "hol", "aut_order": str(len(auts))},
    )


FAMILIES = (
    "sym", "alt", "cyclic", "dihedral", "agl1", "agl1_half", "agammal1", "agl", "elab", "quaternion", "hol",
)
AFFINE_FAMILIES = ("agl1", "agl1_half", "agammal1", "agl")


def build(selector: str, cap: int = DEFAULT_CAP) -> PermGroup:
    """Construct the group named by a selector such as ``agl:2:3``."""
    fam, _, rest = selector.partition(":")
    try:
        if fam == "hol":
            inner = build(rest, cap)
            N = inner if _is_regular(inner) else regular(inner)
            G = holomorph(N, name=selector)
        else:
            args = [int(a) for a in rest.split(":")] if rest else []
            if fam in ("sym", "alt", "cyclic", "dihedral"):
                (n,) = args
                G = standard(fam, n)
            elif fam == "agl1":
                G = agl1(*args)
            elif fam == "agl1_half":
                G = agl1_half(*args)
            elif fam == "agammal1":
                G = agammal1(*args)
            elif fam == "agl":
                G = agl_dp(*args)
            elif fam == "elab":
                G = elementary_abelian(*args)
            elif fam == "quaternion":
                G = quaternion()
            else:
                raise CatalogError(f"unknown family {fam!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, CatalogError):
            raise
        raise CatalogError(f"bad selector {selector!r}: {exc}") from exc
    G.name = selector
    G.meta.setdefault("family", fam)
    G.meta["selector"] = selector
    G.cap = cap
    return G


def catalog_selectors(max_degree: int = 10) -> list[str]:
    """Every catalog selector of degree at most ``max_degree``, in scan order."""
    out = []
    for n in range(2, max_degree + 1):
        out.append(f"sym:{n}")
    for n in range(3, max_degree + 1):
        out.append(f"alt:{n}")
    for n in range(2, max_degree + 1):
        out.append(f"cyclic:{n}")
    for n in range(3, max_degree + 1):
        out.append(f"dihedral:{n}")
    for q in range(2, min(max_degree, 64) + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(f"agl1:{q}")
        if q % 2:
            out.append(f"agl1_half:{q}")
        if len(prime_factors(q)) == 1 and not is_prime(q) and q in AGAMMA_QS:
            out.append(f"agammal1:{q}")
    for p in (2, 3, 5, 7):
        for d in range(2, 10):
            if p**d > max_degree:
                break
            out.append(f"agl:{d}:{p}")
            out.append(f"elab:{p}:{d}")
    if max_degree >= 8:
        out.append("quaternion:8")
    hol_inner = [f"cyclic:{n}" for n in range(3, max_degree + 1)]
    hol_inner += ["sym:3", "dihedral:4", "quaternion:8", "alt:4", "alt:5"]
    seen = set()
    for inner in hol_inner:
        deg = _regular_degree(inner)
        if deg is not None and deg <= max_degree and inner not in seen:
            seen.add(inner)
            out.append(f"hol:{inner}")
    return out


def _regular_degree(inner: str) -> int | None:
    fam, _, rest = inner.partition(":")
    if fam == "cyclic":
        return int(rest)
    if fam == "sym":
        return prod(range(1, int(rest) + 1))
    if fam == "dihedral":
        return 2 * int(rest)
    if fam == "alt":
        return prod(range(1, int(rest) + 1)) // 2
    if fam == "quaternion":
        return 8
    if fam == "elab":
        p, d = (int(a) for a in rest.split(":"))
        return p**d
    return None


def selector_family(selector: str) -> str:
    return selector.partition(":")[0]


def default_catalog(
    max_degree: int = 10, max_order: int = 100_000, only: str | None = None
) -> list[PermGroup]:
    """Catalog groups within the degree and order caps."""
    out = []
    for sel in catalog_selectors(max_degree):
        fam = selector_family(sel)
        if only == "affine":
            if fam not in AFFINE_FAMILIES:
                continue
        elif only and fam != only:
            continue
        try:
            G = build(sel, cap=max_order)
            G.elements
        except (CapExceeded, CatalogError):
            continue
        out.append(G)
    return out


@dataclass
class GroupSpec:
    name: str
    degree: int
    gens: list[str]
    provenance: str = "ingested"
    meta: dict[str, str] = field(default_factory=dict)

    def to_group(self, cap: int = DEFAULT_CAP) -> PermGroup:
        perms = [parse_cycles(g, self.degree) for g in self.gens]
        meta = dict(self.meta)
        meta.setdefault("provenance", self.provenance)
        return PermGroup(perms, self.degree, cap=cap, name=self.name, meta=meta)

    def to_record(self) -> dict:
        rec = {"name": self.name, "degree": self.degree, "gens": list(self.gens)}
        if self.meta:
            rec["meta"] = dict(self.meta)
        return rec

    @classmethod
    def from_group(cls, G: PermGroup, provenance: str = "constructed") -> GroupSpec:
        meta = {k: v for k, v in G.meta.items() if k != "selector"}
        return cls(G.name, G.degree, [print_cycles(g) for g in G.generators], provenance, meta)


class IngestError(ValueError):
    def __init__(self, message: str, record: int | None = None, line: int | None = None):
        where = []
        if record is not None:
            where.append(f"record {record}")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.record = record
        self.line = line


def _split_records(text: str) -> list[tuple[object, int]]:
    dec = json.JSONDecoder()
    pos = 0
    n = len(text)

    def skip(p):
        while p < n and text[p] in " \t\r\n":
            p += 1
        return p

    def line_of(p):
        return text.count("\n", 0, p) + 1

    pos = skip(pos)
    if pos >= n or text[pos] != "[":
        raise IngestError("group file must contain a JSON array of records", line=line_of(pos))
    pos = skip(pos + 1)
    out = []
    if pos < n and text[pos] == "]":
        pos += 1
    else:
        while True:
            try:
                rec, end = dec.raw_decode(text, pos)
            except json.JSONDecodeError as exc:
                raise IngestError(exc.msg, record=len(out), line=exc.lineno) from None
            out.append((rec, line_of(pos)))
            pos = skip(end)
            if pos < n and text[pos] == ",":
                pos = skip(pos + 1)
                continue
            if pos < n and text[pos] == "]":
                pos += 1
                break
            raise IngestError("expected ',' or ']' between records", record=len(out), line=line_of(pos))
    if skip(pos) != n:
        raise IngestError("trailing content after the record array", line=line_of(pos))
    return out


def ingest(source) -> list[GroupSpec]:
    """Read group records from a path or a text stream."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        text = source.read()
    else:
        raise TypeError("ingest needs a path or a readable stream")
    specs = []
    for idx, (rec, line) in enumerate(_split_records(text)):
        if not isinstance(rec, dict):
            raise IngestError("record is not an object", idx, line)
        missing = [k for k in ("name", "degree", "gens") if k not in rec]
        if missing:
            raise IngestError(f"missing field(s) {', '.join(missing)}", idx, line)
        name, degree, gens = rec["name"], rec["degree"], rec["gens"]
        if not isinstance(name, str):
            raise IngestError("name must be a string", idx, line)
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
            raise IngestError("degree must be a positive integer", idx, line)
        if not isinstance(gens, list) or not gens or not all(isinstance(g, str) for g in gens):
            raise IngestError("gens must be a nonempty array of strings", idx, line)
        meta = rec.get("meta", {})
        if not isinstance(meta, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in meta.items()):
            raise IngestError("meta must map strings to strings", idx, line)
        for g in gens:
            try:
                parse_cycles(g, degree)
            except ParseError as exc:
                raise IngestError(str(exc), idx, line) from None
        specs.append(GroupSpec(name, degree, list(gens), "ingested", dict(meta)))
    return specs


def dump_specs(specs: list[GroupSpec]) -> str:
    return json.dumps([s.to_record() for s in specs], indent=2, ensure_ascii=False) + "\n"
