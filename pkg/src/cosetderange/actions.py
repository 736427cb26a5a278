"""Orbits of permutation groups on points and on tuples of distinct points."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from math import perm as falling_factorial

import numpy as np

from .perm import PermGroup, is_normal

DEFAULT_TUPLE_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TupleDomain:
    """All ordered k-tuples of distinct points, in lexicographic order."""

    degree: int
    arity: int

    @property
    def size(self) -> int:
        return falling_factorial(self.degree, self.arity)

    @property
    def members(self) -> list[tuple[int, ...]]:
        return list(permutations(range(self.degree), self.arity))

    def encode(self, t) -> int:
        n = self.degree
        return sum(v * n**i for i, v in enumerate(t))


@dataclass(frozen=True)
class OrbitPartition:
    size: int
    ids: tuple[int, ...]
    count: int
    representatives: tuple[int, ...]
    domain: TupleDomain | None = field(default=None, compare=False)

    def sizes(self) -> list[int]:
        out = [0] * self.count
        for i in self.ids:
            out[i] += 1
        return out

    def members(self, orbit: int) -> list[int]:
        return [j for j, i in enumerate(self.ids) if i == orbit]

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for j, i in enumerate(self.ids):
            out[i].append(j)
        return out


def _components(size: int, maps: list) -> OrbitPartition:
    ids = [-1] * size
    reps = []
    count = 0
    for start in range(size):
        if ids[start] >= 0:
            continue
        ids[start] = count
        reps.append(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for m in maps:
                v = m[u]
                if ids[v] < 0:
                    ids[v] = count
                    queue.append(v)
        count += 1
    return OrbitPartition(size, tuple(ids), count, tuple(reps))


def point_orbits(H: PermGroup) -> OrbitPartition:
    return _components(H.degree, list(H.generators))


def is_transitive(H: PermGroup) -> bool:
    return point_orbits(H).count == 1


def minimal_degree(H: PermGroup) -> int:
    arr = H.array
    moved = (arr != np.arange(H.degree)).sum(axis=1)
    moved = moved[moved > 0]
    if moved.size == 0:
        raise ValueError("minimal degree of the trivial group is undefined")
    return int(moved.min())


def _tuple_maps(H: PermGroup, k: int, budget: int) -> tuple[TupleDomain, list[list[int]]]:
    dom = TupleDomain(H.degree, k)
    if dom.size > budget:
        raise BudgetExceeded(f"{dom.size} tuples of arity {k} exceed budget {budget}")
    n = H.degree
    if dom.size == 0:
        return dom, []
    members = np.array(dom.members, dtype=np.int64).reshape(dom.size, k)
    weights = n ** np.arange(k, dtype=np.int64)
    lookup = np.full(n**k, -1, dtype=np.int64)
    lookup[members @ weights] = np.arange(dom.size)
    maps = []
    for g in dict.fromkeys(H.generators):
        if g.is_identity():
            continue
        img = np.asarray(g, dtype=np.int64)[members]
        maps.append(lookup[img @ weights].tolist())
    return dom, maps


def tuple_orbits(H: PermGroup, k: int, budget: int = DEFAULT_TUPLE_BUDGET) -> OrbitPartition:
    """Orbits of the componentwise action on distinct k-tuples.

    Orbit ids and representatives refer to positions in the lexicographic
    member list of the returned partition's ``domain``.
    """
    if k < 1:
        raise ValueError("arity must be positive")
    dom, maps = _tuple_maps(H, k, budget)
    part = _components(dom.size, maps)
    return OrbitPartition(part.size, part.ids, part.count, part.representatives, dom)


def common_orbit_count(
    A: PermGroup, G: PermGroup, k: int, budget: int = DEFAULT_TUPLE_BUDGET, check: bool = True
) -> int:
    """Number of G-orbits on distinct k-tuples that are also A-orbits."""
    if check and not is_normal(A, G):
        raise ValueError("G is not normal in A")
    return len(common_orbits(A, G, k, budget))


def common_orbits(A: PermGroup, G: PermGroup, k: int, budget: int = DEFAULT_TUPLE_BUDGET) -> list[int]:
    """Ids of the common orbits within ``tuple_orbits(G, k)``."""
    part = tuple_orbits(G, k, budget)
    _, amaps = _tuple_maps(A, k, budget)
    ids = part.ids
    return [o for o, r in enumerate(part.representatives) if all(ids[m[r]] == o for m in amaps)]


def _block_of_zero(H: PermGroup, beta: int) -> list[int]:
    n = H.degree
    parent = list(range(n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    gens = [g for g in H.generators if not g.is_identity()]
    parent[find(beta)] = find(0)
    pending = [(0, beta)]
    while pending:
        a, b = pending.pop()
        for g in gens:
            u, v = find(g[a]), find(g[b])
            if u != v:
                parent[v] = u
                pending.append((g[a], g[b]))
    root = find(0)
    return [i for i in range(n) if find(i) == root]


def is_primitive(A: PermGroup) -> bool:
    if not is_transitive(A):
        raise ValueError("primitivity is only defined here for transitive groups")
    n = A.degree
    return all(len(_block_of_zero(A, beta)) == n for beta in range(1, n))


def minimal_block(A: PermGroup, beta: int) -> list[int]:
    return _block_of_zero(A, beta)


def two_point_stabilizer(A: PermGroup, a: int, b: int) -> np.ndarray:
    if a == b:
        raise ValueError("two-point stabilizer needs distinct points")
    arr = A.array
    return arr[(arr[:, a] == a) & (arr[:, b] == b)]


def stabilizer_orbits(elems: np.ndarray, n: int) -> OrbitPartition:
    return _components(n, [row.tolist() for row in elems])


def two_point_stabilizer_orbit_count(A: PermGroup, a: int, b: int) -> int:
    return stabilizer_orbits(two_point_stabilizer(A, a, b), A.degree).count


__all__ = [
    "BudgetExceeded",
    "OrbitPartition",
    "TupleDomain",
    "point_orbits",
    "is_transitive",
    "minimal_degree",
    "tuple_orbits",
    "common_orbit_count",
    "common_orbits",
    "is_primitive",
    "minimal_block",
    "two_point_stabilizer",
    "two_point_stabilizer_orbit_count",
]
