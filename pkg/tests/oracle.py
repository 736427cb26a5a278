"""Brute-force reference computations on plain tuples.

Nothing here imports the package: these are the independent oracles the
tests compare against.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations


def compose(p, q):
    """(p*q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def cycle(points, n):
    img = list(range(n))
    pts = [p - 1 for p in points]
    for a, b in zip(pts, pts[1:] + pts[:1]):
        img[a] = b
    return tuple(img)


def group(gens, n):
    """Naive closure: multiply until nothing new appears."""
    elems = {tuple(range(n))}
    frontier = set(elems)
    gens = [tuple(g) for g in gens]
    while frontier:
        new = set()
        for e in frontier:
            for g in gens:
                h = compose(e, g)
                if h not in elems:
                    new.add(h)
        elems |= new
        frontier = new
    return elems


def nfix(p):
    return sum(i == v for i, v in enumerate(p))


def coset(x, G):
    return [compose(tuple(x), g) for g in G]


def fixed_spectrum(x, G, n):
    counts = [0] * (n + 1)
    for g in coset(x, G):
        counts[nfix(g)] += 1
    return counts


def tuple_orbits(H, n, k):
    """Orbits of H on distinct k-tuples, as frozensets."""
    seen = set()
    orbits = []
    for t in permutations(range(n), k):
        if t in seen:
            continue
        orb = frozenset(tuple(h[i] for i in t) for h in H)
        seen |= orb
        orbits.append(orb)
    return orbits


def common_orbits(A, G, n, k):
    a_orbits = set(tuple_orbits(A, n, k))
    return [o for o in tuple_orbits(G, n, k) if o in a_orbits]


def burnside_fixed_tuples(g, k):
    """Distinct k-tuples fixed by g: the falling factorial of nfix(g)."""
    f = nfix(g)
    out = 1
    for j in range(k):
        out *= f - j
    return max(out, 0)


def coset_average(x, G, k):
    elems = coset(x, G)
    return Fraction(sum(burnside_fixed_tuples(g, k) for g in elems), len(elems))


def minimal_degree(H, n):
    return min(n - nfix(h) for h in H if h != tuple(range(n)))


def is_normal(A, G):
    return all(compose(compose(a, g), inverse(a)) in G for a in A for g in G)


def is_primitive(A, n):
    """Try every candidate block through point 0."""
    for size in range(2, n):
        if n % size:
            continue
        for rest in combinations(range(1, n), size - 1):
            B = frozenset((0,) + rest)
            if all(len(B & {a[i] for i in B}) in (0, size) for a in A):
                return False
    return True


def normal_subgroups_containing(A, D):
    """All normal subgroups of a small group that contain D (by subsets of classes)."""
    A = list(A)
    n = len(A[0])
    classes = []
    seen = set()
    for g in A:
        if g in seen:
            continue
        cls = {compose(compose(a, g), inverse(a)) for a in A}
        seen |= cls
        classes.append(frozenset(cls))
    out = set()
    for r in range(len(classes) + 1):
        for pick in combinations(classes, r):
            S = set().union(*pick) | {tuple(range(n))}
            if not D <= S:
                continue
            if all(compose(a, b) in S for a in S for b in S):
                out.add(frozenset(S))
    return out


def quotient_is_cyclic(A, G):
    m = len(A) // len(G)
    for x in A:
        cosets = set()
        y = tuple(range(len(x)))
        for _ in range(m):
            cosets.add(frozenset(compose(y, g) for g in G))
            y = compose(y, x)
        if len(cosets) == m:
            return True
    return False
