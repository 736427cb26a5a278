"""Fixed-point spectra of cosets and the exact identities and bounds on them.

Everything here is integer or :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, perm as falling_factorial

import numpy as np

from .actions import common_orbit_count, is_transitive
from .perm import PermGroup, Permutation


class InconsistencyError(ArithmeticError):
    """An identity that must hold exactly did not."""


@dataclass(frozen=True)
class CosetSpectrum:
    """``counts[i]`` is the number of elements of xG fixing exactly i points."""

    degree: int
    order: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.degree + 1:
            raise ValueError("spectrum needs degree + 1 counts")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative count in spectrum")

    def proportion(self, i: int) -> Fraction:
        return Fraction(self.counts[i], self.order)

    @property
    def s0(self) -> Fraction:
        return self.proportion(0)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.counts) if c]

    def min_nonzero_fixed(self) -> int | None:
        """Least positive fixed-point count occurring in the coset."""
        return next((i for i in range(1, self.degree + 1) if self.counts[i]), None)


def spectrum(x: Permutation, G: PermGroup) -> CosetSpectrum:
    n = G.degree
    if len(x) != n:
        raise ValueError("degree mismatch")
    coset = np.asarray(x, dtype=np.int32)[G.array]
    fixed = (coset == np.arange(n)).sum(axis=1)
    counts = np.bincount(fixed, minlength=n + 1)
    return CosetSpectrum(n, G.order, tuple(int(c) for c in counts))


def coset_fixed_counts(x: Permutation, G: PermGroup) -> np.ndarray:
    coset = np.asarray(x, dtype=np.int32)[G.array]
    return (coset == np.arange(G.degree)).sum(axis=1)


def r_k_from_spectrum(spec: CosetSpectrum, k: int) -> int:
    """Common orbit count on distinct k-tuples, read off the spectrum."""
    if k < 1:
        raise ValueError("k must be positive")
    total = sum(c * falling_factorial(i, k) for i, c in enumerate(spec.counts))
    q, rem = divmod(total, spec.order)
    if rem:
        raise InconsistencyError(
            f"sum of N_i*P(i,{k}) = {total} is not divisible by |G| = {spec.order}"
        )
    return q


def average_fixed_points(spec: CosetSpectrum) -> Fraction:
    return Fraction(sum(i * c for i, c in enumerate(spec.counts)), spec.order)


@dataclass(frozen=True)
class ExceptionalityReport:
    r2_zero: bool
    s0_zero: bool
    all_fix_exactly_one: bool
    all_fix_at_most_one: bool
    all_fix_at_least_one: bool

    @property
    def conditions(self) -> tuple[bool, ...]:
        return (
            self.r2_zero,
            self.s0_zero,
            self.all_fix_exactly_one,
            self.all_fix_at_most_one,
            self.all_fix_at_least_one,
        )

    @property
    def consistent(self) -> bool:
        return len(set(self.conditions)) == 1

    @property
    def exceptional(self) -> bool:
        return all(self.conditions)


def exceptionality_conditions(spec: CosetSpectrum, r2: int) -> ExceptionalityReport:
    c = spec.counts
    return ExceptionalityReport(
        r2_zero=r2 == 0,
        s0_zero=c[0] == 0,
        all_fix_exactly_one=c[1] == spec.order,
        all_fix_at_most_one=sum(c[2:]) == 0,
        all_fix_at_least_one=c[0] == 0,
    )


def exceptionality_report(
    A: PermGroup, G: PermGroup, x: Permutation, *, r2: int | None = None, spec: CosetSpectrum | None = None
) -> ExceptionalityReport:
    """Evaluate the five exceptionality conditions and require they agree."""
    if not (is_transitive(A) and is_transitive(G)):
        raise ValueError("exceptionality needs A and G transitive")
    if r2 is None:
        r2 = common_orbit_count(A, G, 2)
    if spec is None:
        spec = spectrum(x, G)
    rep = exceptionality_conditions(spec, r2)
    if not rep.consistent:
        raise InconsistencyError(f"exceptionality conditions disagree: {rep.conditions}")
    return rep


@dataclass(frozen=True)
class BoundsReport:
    """Lower and upper bounds on s0; every flag is derived from raw values."""

    spec: CosetSpectrum
    r2: int
    r3: int
    mu: int

    @property
    def n(self) -> int:
        return self.spec.degree

    @property
    def s0(self) -> Fraction:
        return self.spec.s0

    @property
    def applicable(self) -> bool:
        return self.r2 >= 1

    @property
    def pair_bound(self) -> Fraction | None:
        return Fraction(self.r2, self.n) if self.applicable else None

    @property
    def pair_bound_holds(self) -> bool | None:
        return self.s0 >= self.pair_bound if self.applicable else None

    @property
    def pair_bound_tight(self) -> bool | None:
        return self.s0 == self.pair_bound if self.applicable else None

    @property
    def pair_bound_tight_condition(self) -> bool:
        # the identity (i = n) term carries weight zero
        return all(c == 0 for c in self.spec.counts[2:self.n])

    @property
    def triple_quantity(self) -> int:
        return (self.n - 2) * self.r2 - self.r3

    @property
    def triple_quantity_nonnegative(self) -> bool:
        return self.triple_quantity >= 0

    @property
    def combined_bound(self) -> Fraction | None:
        if not self.applicable or self.mu >= self.n:
            return None
        n = self.n
        return Fraction(self.r2, n) + Fraction(self.triple_quantity, n * (n - self.mu))

    @property
    def combined_bound_holds(self) -> bool | None:
        b = self.combined_bound
        return None if b is None else self.s0 >= b

    @property
    def two_over_n_holds(self) -> bool | None:
        if self.r2 < 2:
            return None
        return self.s0 >= Fraction(2, self.n)

    @property
    def upper_applicable(self) -> bool:
        return self.r2 == 1

    @property
    def upper_holds(self) -> bool | None:
        return self.s0 <= Fraction(1, 2) if self.upper_applicable else None

    @property
    def upper_tight(self) -> bool | None:
        return self.s0 == Fraction(1, 2) if self.upper_applicable else None

    @property
    def upper_tight_condition(self) -> bool:
        return all(c == 0 for c in self.spec.counts[3:])

    def as_dict(self) -> dict:
        def fmt(v):
            if v is None:
                return "n/a"
            return str(v) if isinstance(v, Fraction) else v

        return {
            "pair_bound": fmt(self.pair_bound),
            "pair_bound_holds": fmt(self.pair_bound_holds),
            "combined_bound": fmt(self.combined_bound),
            "combined_bound_holds": fmt(self.combined_bound_holds),
            "triple_quantity": self.triple_quantity,
            "two_over_n_holds": fmt(self.two_over_n_holds),
            "upper_holds": fmt(self.upper_holds),
            "upper_tight": fmt(self.upper_tight),
        }


def bounds_report(spec: CosetSpectrum, r2: int, r3: int, mu: int) -> BoundsReport:
    if r2 < 0 or r3 < 0:
        raise ValueError("orbit counts are nonnegative")
    if mu < 2:
        raise ValueError("minimal degree is at least 2")
    return BoundsReport(spec, r2, r3, mu)


def binomial_moment(spec: CosetSpectrum, k: int) -> int:
    """``sum_i C(i, k) * N_i``."""
    return sum(comb(i, k) * c for i, c in enumerate(spec.counts))
