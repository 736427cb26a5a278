"""Prime-power finite fields with integer-encoded elements.

An element is the integer sum(c_i * p**i) of its polynomial coefficients
c_0..c_{e-1} over F_p, reduced modulo the lexicographically least monic
irreducible polynomial of degree e.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MAX_FIELD_ORDER = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """``(p, e)`` with ``q == p**e``; ValueError otherwise."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, e, r = fs[0], 0, q
    while r > 1:
        r //= p
        e += 1
    return p, e


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def _polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of coefficient lists reduced by the monic ``mod`` (low to high)."""
    e = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for j in range(e + 1):
                prod[k - e + j] = (prod[k - e + j] - c * mod[j]) % p
    return (prod + [0] * e)[:e]


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    while db > 0 and b[db] == 0:
        db -= 1
    inv = pow(b[db], -1, p)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return a[:db]


def _is_irreducible(poly: list[int], p: int) -> bool:
    e = len(poly) - 1
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            if not any(_polymod(poly, div, p)):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Coefficients (low to high, monic) of the least irreducible of degree e."""
    for code in range(p**e):
        poly = _digits(code, p, e) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    e: int
    modulus: tuple[int, ...]
    gamma: int
    exp: tuple[int, ...]
    log: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        return self.q

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return _undigits([(-d) % self.p for d in _digits(a, self.p, self.e)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def power_of_gamma(self, i: int) -> int:
        return self.exp[i % (self.q - 1)]

    def is_square(self, a: int) -> bool:
        return a != 0 and (self.p == 2 or self.log[a] % 2 == 0)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def multiplicative_order(self, a: int) -> int:
        from math import gcd

        return (self.q - 1) // gcd(self.log[a], self.q - 1)


@lru_cache(maxsize=None)
def gf(p: int, e: int = 1) -> FiniteField:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be positive")
    q = p**e
    if q > MAX_FIELD_ORDER:
        raise ValueError(f"field order {q} exceeds {MAX_FIELD_ORDER}")
    mod = list(least_irreducible(p, e))

    def mul(a, b):
        return _undigits(_polymulmod(_digits(a, p, e), _digits(b, p, e), mod, p), p)

    def power(a, k):
        result, base = 1, a
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    cofactors = [(q - 1) // r for r in prime_factors(q - 1)] if q > 2 else []
    gamma = next(g for g in range(1, q) if all(power(g, c) != 1 for c in cofactors))
    exp = [1]
    for _ in range(q - 2):
        exp.append(mul(exp[-1], gamma))
    log = [0] * q
    for i, v in enumerate(exp):
        log[v] = i
    return FiniteField(p, e, tuple(mod), gamma, tuple(exp), tuple(log))
