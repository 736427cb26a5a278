"""Permutations, cycle notation, and enumerated permutation groups.

Points are 0-based internally and 1-based in every text format.  Products
compose right to left: ``(p * q)[i] == p[q[i]]``, so ``x * g`` applies ``g``
first.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_CAP = 1_000_000


class ParseError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Raised when a closure grows past its element cap."""

    def __init__(self, cap: int, partial: int):
        super().__init__(f"group closure exceeded cap {cap} ({partial} elements so far)")
        self.cap = cap
        self.partial = partial


class Permutation(tuple):
    """A bijection of ``{0..n-1}`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n == 0:
            raise ValueError("permutation must have positive degree")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a bijection of 0..{n - 1}: {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> Permutation:
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._raw(range(n))

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other) != len(self):
            raise ValueError("degree mismatch")
        return Permutation._raw(map(self.__getitem__, other))

    def __rmul__(self, other):
        return NotImplemented

    def __call__(self, point: int) -> int:
        return self[point]

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v] = i
        return Permutation._raw(inv)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = base * result
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by: Permutation) -> Permutation:
        """Return ``by**-1 * self * by``."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self))

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self) if i == v)

    def num_fixed(self) -> int:
        return sum(1 for i, v in enumerate(self) if i == v)

    def moved_points(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self) if i != v)

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles()), 1)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles (0-based), each starting at its least point."""
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen or self[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        return f"Permutation({print_cycles(self)!r}, degree={len(self)})"

    def __str__(self) -> str:
        return print_cycles(self)


def fixed_points(g: Permutation) -> frozenset[int]:
    return g.fixed_points()


def print_cycles(p: Sequence[int]) -> str:
    """1-based cycle notation, ``()`` for the identity."""
    cyc = Permutation._raw(p).cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation or a bracketed 1-based image list."""
    if degree < 1:
        raise ParseError(f"degree must be positive, got {degree}")
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"unterminated image list: {text!r}")
        body = s[1:-1].strip()
        try:
            imgs = [int(t) for t in body.split(",")] if body else []
        except ValueError:
            raise ParseError(f"malformed image list: {text!r}") from None
        if len(imgs) != degree:
            raise ParseError(f"image list has {len(imgs)} entries, expected {degree}")
        for v in imgs:
            _check_point(v, degree)
        if len(set(imgs)) != degree:
            raise ParseError(f"image list is not a bijection: {text!r}")
        return Permutation._raw(v - 1 for v in imgs)

    if s == "()":
        return Permutation.identity(degree)
    images = list(range(degree))
    seen: set[int] = set()
    pos = 0
    matched = False
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ParseError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        matched = True
        tokens = m.group(1).split()
        if not tokens:
            raise ParseError(f"empty cycle inside {text!r}")
        try:
            pts = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}") from None
        for v in pts:
            _check_point(v, degree)
            if v in seen:
                raise ParseError(f"point {v} repeated in {text!r}")
            seen.add(v)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    if not matched or s[pos:].strip():
        raise ParseError(f"malformed cycle notation: {text!r}")
    return Permutation._raw(images)


def _check_point(v: int, degree: int) -> None:
    if v < 1:
        raise ParseError(f"point {v} is not a positive 1-based index")
    if v > degree:
        raise ParseError(f"point {v} exceeds degree {degree}")


class PermGroup:
    """A permutation group given by generators, enumerated on demand.

    Enumeration is breadth-first from the identity with generators applied
    in list order, so element order is reproducible.
    """

    def __init__(
        self,
        generators: Sequence[Permutation],
        degree: int | None = None,
        *,
        cap: int = DEFAULT_CAP,
        name: str | None = None,
        meta: dict[str, str] | None = None,
    ):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit degree")
            degree = len(gens[0])
        if not gens:
            gens = [Permutation.identity(degree)]
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator {g} does not have degree {degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.cap = cap
        self.name = name or "group"
        self.meta = dict(meta or {})

    def __repr__(self) -> str:
        return f"PermGroup({self.name!r}, degree={self.degree}, gens={len(self.generators)})"

    def __getstate__(self):
        state = self.__dict__.copy()
        # cached materializations are rebuilt on the other side
        for key in ("elements", "element_set", "array", "identity"):
            state.pop(key, None)
        return state

    @cached_property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        ident = self.identity
        seen = {ident}
        out = [ident]
        gens = [g for g in dict.fromkeys(self.generators) if g != ident]
        queue = deque([ident])
        while queue:
            e = queue.popleft()
            for s in gens:
                t = Permutation._raw(map(s.__getitem__, e))
                if t not in seen:
                    seen.add(t)
                    out.append(t)
                    if len(out) > self.cap:
                        raise CapExceeded(self.cap, len(out))
                    queue.append(t)
        self.__dict__["element_set"] = frozenset(seen)
        return tuple(out)

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @cached_property
    def array(self) -> np.ndarray:
        """Elements as an ``(order, degree)`` integer array, in enumeration order."""
        arr = np.array(self.elements, dtype=np.int32)
        arr.setflags(write=False)
        return arr

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.element_set

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def same_elements(self, other: PermGroup) -> bool:
        return self.degree == other.degree and self.element_set == other.element_set

    def subgroup(self, generators: Sequence[Permutation], **kw) -> PermGroup:
        kw.setdefault("cap", self.cap)
        return PermGroup(generators, self.degree, **kw)


def closure(generators: Sequence[Permutation], cap: int = DEFAULT_CAP, **kw) -> PermGroup:
    """Materialize the group generated by ``generators``."""
    if not generators:
        raise ValueError("closure needs at least one generator")
    degrees = {len(g) for g in generators}
    if len(degrees) != 1:
        raise ValueError(f"generators have mixed degrees {sorted(degrees)}")
    grp = PermGroup(generators, cap=cap, **kw)
    grp.elements
    return grp


def check_order_divides_factorial(group: PermGroup) -> bool:
    return factorial(group.degree) % group.order == 0


@dataclass(frozen=True)
class Coset:
    representative: Permutation
    subgroup: PermGroup

    def __len__(self) -> int:
        return self.subgroup.order

    def __iter__(self) -> Iterator[Permutation]:
        x = self.representative
        for g in self.subgroup.elements:
            yield Permutation._raw(map(x.__getitem__, g))

    def __contains__(self, u) -> bool:
        u = Permutation._raw(u)
        return self.representative.inverse() * u in self.subgroup

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.representative, dtype=np.int32)[self.subgroup.array]


def is_normal(A: PermGroup, G: PermGroup) -> bool:
    if A.degree != G.degree:
        raise ValueError(f"degree mismatch: {A.degree} vs {G.degree}")
    for g in G.generators:
        if g not in A:
            raise ValueError(f"generator {g} of G is not in A")
    for a in A.generators:
        a_inv = a.inverse()
        for g in G.generators:
            if a * g * a_inv not in G:
                return False
    return True


def normalizes(x: Permutation, N: PermGroup) -> bool:
    x_inv = x.inverse()
    return all(x * g * x_inv in N for g in N.generators)


def quotient_generators(A: PermGroup, G: PermGroup) -> tuple[int, list[Coset]]:
    """Index of G in A and the cosets generating A/G when it is cyclic.

    Each coset is represented by its first element in A's enumeration
    order; the list is sorted by that order.  The list is empty when the
    quotient is not cyclic.
    """
    m, rem = divmod(A.order, G.order)
    if rem:
        raise ValueError("G is not a subgroup of A")
    if m == 1:
        return 1, [Coset(A.identity, G)]
    g_elems = G.elements
    covered: set[Permutation] = set()
    reps = []
    for a in A.elements:
        if a in covered:
            continue
        covered.update(Permutation._raw(map(a.__getitem__, g)) for g in g_elems)
        t, p = 1, a
        while p not in G:
            p = a * p
            t += 1
        if t == m:
            reps.append(Coset(a, G))
    return m, reps


def cyclic_quotient_generator(A: PermGroup, G: PermGroup) -> Coset | None:
    if not is_normal(A, G):
        raise ValueError("G is not normal in A")
    _, reps = quotient_generators(A, G)
    return reps[0] if reps else None


def centralizer_in(N: PermGroup, g: Permutation) -> list[Permutation]:
    if len(g) != N.degree:
        raise ValueError("degree mismatch")
    arr = N.array
    ga = np.asarray(g, dtype=np.int32)
    mask = (ga[arr] == arr[:, ga]).all(axis=1)
    return [N.elements[i] for i in np.flatnonzero(mask)]


def centralizer_sizes(N: PermGroup, elems: np.ndarray) -> np.ndarray:
    """``|C_N(g)|`` for every row ``g`` of ``elems``."""
    arr = N.array
    out = np.empty(len(elems), dtype=np.int64)
    for i, g in enumerate(elems):
        out[i] = int((g[arr] == arr[:, g]).all(axis=1).sum())
    return out


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def normal_closure(A: PermGroup, gens: Sequence[Permutation], cap: int | None = None) -> PermGroup:
    """Smallest normal subgroup of A containing ``gens``."""
    cap = A.cap if cap is None else cap
    gens = [g for g in dict.fromkeys(gens) if not g.is_identity()]
    if not gens:
        return PermGroup([], A.degree, cap=cap)
    while True:
        H = closure(gens, cap=cap)
        extra = None
        for a in A.generators:
            a_inv = a.inverse()
            for h in gens:
                c = a * h * a_inv
                if c not in H:
                    extra = c
                    break
            if extra is not None:
                break
        if extra is None:
            return H
        gens.append(extra)


def derived_subgroup(H: PermGroup) -> PermGroup:
    gens = H.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(H, comms)


def is_solvable(N: PermGroup) -> bool:
    H = N
    while H.order > 1:
        D = derived_subgroup(H)
        if D.order == H.order:
            return False
        H = D
    return True


def is_perfect(N: PermGroup) -> bool:
    return derived_subgroup(N).order == N.order


def difference_map_is_bijection(N: PermGroup, x: Permutation) -> bool:
    """Whether ``g -> g**-1 * (x**-1 g x)`` hits every element of N once."""
    if not normalizes(x, N):
        raise ValueError("x does not normalize N")
    x_inv = x.inverse()
    values = {g.inverse() * (x_inv * g * x) for g in N.elements}
    return len(values) == N.order
