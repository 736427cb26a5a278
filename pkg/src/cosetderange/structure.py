"""Structural predicates and the case classification of coset triples."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .actions import is_primitive, is_transitive, minimal_degree
from .fields import prime_power
from .perm import (
    CapExceeded,
    PermGroup,
    Permutation,
    centralizer_in,
    closure,
    derived_subgroup,
    is_solvable,
    normal_closure,
    quotient_generators,
)

SUBGROUP_SEARCH_BUDGET = 100_000


def max_fixed_nonidentity(H: PermGroup) -> int:
    """Largest number of points fixed by a non-identity element (0 if trivial)."""
    arr = H.array
    fixed = (arr == np.arange(H.degree)).sum(axis=1)
    fixed = fixed[fixed < H.degree]
    return int(fixed.max()) if fixed.size else 0


def is_frobenius(A: PermGroup) -> bool:
    if not is_transitive(A):
        raise ValueError("Frobenius test needs a transitive group")
    return A.order > A.degree and max_fixed_nonidentity(A) <= 1


def conjugacy_classes(A: PermGroup) -> list[list[Permutation]]:
    """Classes in order of their first element in A's enumeration."""
    gens = [(a, a.inverse()) for a in A.generators if not a.is_identity()]
    seen: set[Permutation] = set()
    classes = []
    for g in A.elements:
        if g in seen:
            continue
        seen.add(g)
        cls = [g]
        queue = deque([g])
        while queue:
            c = queue.popleft()
            for a, a_inv in gens:
                d = a * c * a_inv
                if d not in seen:
                    seen.add(d)
                    cls.append(d)
                    queue.append(d)
        classes.append(cls)
    return classes


def _add_unique(found: list[PermGroup], H: PermGroup) -> bool:
    if any(K.order == H.order and K.element_set == H.element_set for K in found):
        return False
    found.append(H)
    return True


def _close_under_joins(found: list[PermGroup], cap: int | None) -> None:
    i = 0
    while i < len(found):
        for j in range(i):
            gens = list(found[i].generators) + list(found[j].generators)
            try:
                J = closure(gens, cap=cap or found[i].cap)
            except CapExceeded:
                continue
            _add_unique(found, J)
        i += 1


def normal_subgroups(A: PermGroup, max_order: int | None = None, derangement_classes_only: bool = False) -> list[PermGroup]:
    """Normal subgroups of A (optionally of order at most ``max_order``).

    Every normal subgroup is generated by the classes it contains, so normal
    closures of class representatives closed under joins give all of them.
    """
    n = A.degree
    found: list[PermGroup] = [PermGroup([], n)]
    for cls in conjugacy_classes(A):
        a = cls[0]
        if a.is_identity():
            continue
        if derangement_classes_only and a.num_fixed() > 0:
            continue
        if max_order is not None and a.order() > max_order:
            continue
        try:
            H = normal_closure(A, [a], cap=max_order if max_order is not None else A.cap)
        except CapExceeded:
            continue
        _add_unique(found, H)
    _close_under_joins(found, max_order)
    found.sort(key=lambda H: H.order)
    return found


def subgroups_with_cyclic_quotient(A: PermGroup) -> list[tuple[PermGroup, int, list]]:
    """Normal G with A/G cyclic, as ``(G, index, generating cosets)``.

    Such G contain the derived subgroup, so they are joins of the groups
    generated by the derived subgroup and one extra element.
    """
    D = derived_subgroup(A)
    found: list[PermGroup] = [D]
    covered: set[Permutation] = set()
    d_elems = D.elements
    for a in A.elements:
        if a in covered:
            continue
        covered.update(a * d for d in d_elems)
        if a in D:
            continue
        _add_unique(found, closure(list(D.generators) + [a], cap=A.cap))
    _close_under_joins(found, None)
    found.sort(key=lambda H: -H.order)
    out = []
    for G in found:
        m, cosets = quotient_generators(A, G)
        if cosets:
            if G.order == A.order:
                G = A
            out.append((G, m, cosets))
    return out


def is_elementary_abelian(N: PermGroup) -> int | None:
    """The prime p if N is elementary abelian of exponent p, else None."""
    if N.order == 1 or not N.is_abelian():
        return None
    try:
        p, _ = prime_power(N.order)
    except ValueError:
        return None
    if all(g ** p == N.identity for g in N.generators):
        return p
    return None


def is_simple_nonabelian(N: PermGroup) -> bool:
    if N.is_abelian():
        return False
    return len(normal_subgroups(N)) == 2


@dataclass
class RegularNormal:
    group: PermGroup
    abelian: bool
    elementary_p: int | None

    @property
    def nonabelian(self) -> bool:
        return not self.abelian

    @cached_property
    def solvable(self) -> bool:
        return is_solvable(self.group)

    @cached_property
    def simple_nonabelian(self) -> bool:
        return is_simple_nonabelian(self.group)

    def describe(self) -> str:
        if self.elementary_p:
            return f"elementary-abelian(p={self.elementary_p})"
        return "abelian" if self.abelian else "nonabelian"


@dataclass
class RegularNormalSearch:
    subgroups: list[RegularNormal]
    truncated: bool = False

    def __iter__(self):
        return iter(self.subgroups)

    def __len__(self):
        return len(self.subgroups)


def regular_normal_subgroups(A: PermGroup, budget: int = SUBGROUP_SEARCH_BUDGET) -> RegularNormalSearch:
    """Normal subgroups of A that act regularly on the points."""
    if A.order > budget:
        return RegularNormalSearch([], truncated=True)
    n = A.degree
    if A.order % n:
        return RegularNormalSearch([])
    out = []
    for N in normal_subgroups(A, max_order=n, derangement_classes_only=True):
        if N.order != n or not is_transitive(N):
            continue
        abelian = N.is_abelian()
        out.append(RegularNormal(N, abelian, is_elementary_abelian(N) if abelian else None))
    return RegularNormalSearch(out)


def fixed_points_equal_centralizer(A: PermGroup, N: PermGroup, g: Permutation) -> bool:
    if g not in A:
        raise ValueError("g is not an element of A")
    fixed = g.num_fixed()
    if fixed == 0:
        raise ValueError("g has no fixed point")
    return fixed == len(centralizer_in(N, g))


@dataclass
class GroupProfile:
    """Per-group data shared by every triple with the same A."""

    group: PermGroup
    transitive: bool
    primitive: bool | None
    mu: int | None
    orbit_count: int
    max_fixed: int
    regular_normals: RegularNormalSearch = field(repr=False)

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def frobenius(self) -> bool:
        return self.transitive and self.order > self.degree and self.max_fixed <= 1

    @property
    def affine(self) -> tuple[int, int] | None:
        for rn in self.regular_normals:
            if rn.elementary_p:
                return prime_power(self.degree)
        return None

    @property
    def regular_nonabelian(self) -> list[RegularNormal]:
        return [rn for rn in self.regular_normals if rn.nonabelian]


def profile(A: PermGroup, budget: int = SUBGROUP_SEARCH_BUDGET) -> GroupProfile:
    from .actions import point_orbits

    transitive = is_transitive(A)
    return GroupProfile(
        group=A,
        transitive=transitive,
        primitive=is_primitive(A) if transitive else None,
        mu=None if A.order == 1 else minimal_degree(A),
        orbit_count=point_orbits(A).count,
        max_fixed=max_fixed_nonidentity(A),
        regular_normals=regular_normal_subgroups(A, budget),
    )


class CaseLabel(str, enum.Enum):
    EXCEPTIONAL = "a"
    FROBENIUS_FULL = "b"
    FROBENIUS_HALF = "c"
    LARGE_S0 = "d"
    SPECIAL_S4 = "e"
    REGULAR_NONABELIAN = "regular-nonabelian"
    UNCLASSIFIED = "unclassified"
    NOT_APPLICABLE = "-"

    def __str__(self) -> str:
        return self.value


AFFINE_CASES = (
    CaseLabel.EXCEPTIONAL,
    CaseLabel.FROBENIUS_FULL,
    CaseLabel.FROBENIUS_HALF,
    CaseLabel.LARGE_S0,
    CaseLabel.SPECIAL_S4,
)


def case_matches(
    *, n: int, a_order: int, g_order: int, r2: int, s0: Fraction, sharp: bool
) -> list[CaseLabel]:
    """Every affine case whose defining conditions hold.

    ``sharp`` means no non-identity element of A fixes two points.  A sharply
    transitive group of the listed order counts as Frobenius here, which
    admits the degenerate complements at n = 2 and n = 3.
    """
    try:
        p, _ = prime_power(n)
    except ValueError:
        p = None
    same = a_order == g_order
    out = []
    if r2 == 0 and s0 == 0:
        out.append(CaseLabel.EXCEPTIONAL)
    if r2 == 1 and s0 == Fraction(1, n) and same and sharp and a_order == n * (n - 1) and p:
        out.append(CaseLabel.FROBENIUS_FULL)
    if (
        r2 == 2 and s0 == Fraction(2, n) and same and sharp
        and 2 * a_order == n * (n - 1) and p is not None and p % 2 == 1
    ):
        out.append(CaseLabel.FROBENIUS_HALF)
    if s0 > Fraction(2, n):
        out.append(CaseLabel.LARGE_S0)
    if n == 4 and a_order == 24 and g_order == 12 and s0 == Fraction(1, 2):
        out.append(CaseLabel.SPECIAL_S4)
    return out


def classify(A: PermGroup, G: PermGroup, x: Permutation, report) -> CaseLabel:
    """Case label of a triple from its measured statistics.

    ``report`` supplies ``profile``, ``transitive_G``, ``r2`` and ``s0``.
    """
    prof: GroupProfile = report.profile
    if not (prof.transitive and prof.primitive and report.transitive_G):
        raise ValueError("classification needs A primitive and G transitive")
    matches = case_matches(
        n=A.degree, a_order=A.order, g_order=G.order, r2=report.r2, s0=report.s0, sharp=prof.max_fixed <= 1
    )
    if prof.affine is not None:
        if len(matches) == 1:
            return matches[0]
        if len(matches) > 1:
            raise AssertionError(f"affine cases overlap: {matches}")
        return CaseLabel.UNCLASSIFIED
    if prof.regular_nonabelian:
        if report.s0 >= Fraction(1, 2):
            return CaseLabel.REGULAR_NONABELIAN
        return CaseLabel.UNCLASSIFIED
    return matches[0] if len(matches) == 1 else CaseLabel.UNCLASSIFIED
