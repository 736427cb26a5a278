from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from cosetderange.actions import common_orbit_count
from cosetderange.cosets import (
    CosetSpectrum,
    InconsistencyError,
    average_fixed_points,
    binomial_moment,
    bounds_report,
    exceptionality_conditions,
    exceptionality_report,
    r_k_from_spectrum,
    spectrum,
)
from cosetderange.structure import subgroups_with_cyclic_quotient
from cosetderange.perm import PermGroup, Permutation, closure, parse_cycles, quotient_generators


@pytest.fixture
def s4_coset(groups):
    return spectrum(parse_cycles("(1 2)", 4), groups("alt:4"))


def test_s4_transposition_coset(s4_coset):
    assert s4_coset.counts == (6, 0, 6, 0, 0)
    assert s4_coset.s0 == Fraction(1, 2)
    assert [r_k_from_spectrum(s4_coset, k) for k in (1, 2, 3)] == [1, 1, 0]


def test_agl15_identity_coset(groups):
    spec = spectrum(Permutation.identity(5), groups("agl1:5"))
    assert spec.counts == (4, 15, 0, 0, 0, 1)
    assert spec.s0 == Fraction(1, 5)


def test_c3_regular(groups):
    spec = spectrum(Permutation.identity(3), groups("cyclic:3"))
    assert spec.counts == (2, 0, 0, 1)
    assert spec.s0 == Fraction(2, 3)


def test_average_fixed_points(groups, cyc):
    assert average_fixed_points(spectrum(cyc("(1 2)", 3), groups("alt:3"))) == 1
    assert average_fixed_points(spectrum(Permutation.identity(6), groups("dihedral:6"))) == 1
    # fixed counts 2 and 0; the single common orbit is {3, 4}
    A = PermGroup([cyc("(1 2)", 4), cyc("(3 4)", 4)])
    G = PermGroup([cyc("(3 4)", 4)])
    intrans = spectrum(cyc("(1 2)", 4), G)
    assert intrans.counts == (1, 0, 1, 0, 0)
    assert average_fixed_points(intrans) == 1 == common_orbit_count(A, G, 1)


def test_non_integer_rk_is_inconsistent():
    with pytest.raises(InconsistencyError):
        r_k_from_spectrum(CosetSpectrum(3, 4, (3, 0, 0, 1)), 2)


def test_rk_beyond_degree_is_zero(s4_coset):
    assert r_k_from_spectrum(s4_coset, 5) == 0


def _triples(A):
    for G, _, cosets in subgroups_with_cyclic_quotient(A):
        for c in cosets:
            yield G, c.representative


@pytest.mark.parametrize("sel", ["sym:3", "sym:4", "alt:4", "dihedral:5", "dihedral:6", "agl1:4", "agammal1:4", "cyclic:6"])
def test_lemma2_against_burnside_and_orbits(groups, sel):
    A = groups(sel)
    for G, x in _triples(A):
        spec = spectrum(x, G)
        assert list(spec.counts) == oracle.fixed_spectrum(x, G.elements, A.degree)
        for k in (1, 2, 3):
            via_spec = r_k_from_spectrum(spec, k)
            assert via_spec == oracle.coset_average(x, G.elements, k)
            assert via_spec == len(oracle.common_orbits(A.element_set, G.element_set, A.degree, k))
            assert via_spec == common_orbit_count(A, G, k)


def test_exceptionality_examples(groups, cyc):
    rep = exceptionality_report(groups("sym:3"), groups("alt:3"), cyc("(1 2)", 3))
    assert rep.consistent and rep.exceptional and all(rep.conditions)
    rep = exceptionality_report(groups("sym:4"), groups("alt:4"), cyc("(1 2)", 4))
    assert rep.consistent and not any(rep.conditions)
    A = groups("agl1:5")
    assert not exceptionality_report(A, A, Permutation.identity(5)).exceptional


def test_exceptionality_disagreement_raises():
    spec = CosetSpectrum(3, 3, (0, 3, 0, 0))
    assert exceptionality_conditions(spec, 0).consistent
    assert not exceptionality_conditions(spec, 1).consistent


class TestBounds:
    def test_s4(self, s4_coset):
        b = bounds_report(s4_coset, 1, 0, 2)
        assert b.combined_bound == Fraction(1, 2)
        assert b.combined_bound_holds and s4_coset.s0 == b.combined_bound
        assert b.upper_holds and b.upper_tight and b.upper_tight_condition

    def test_agl15(self, groups):
        spec = spectrum(Permutation.identity(5), groups("agl1:5"))
        b = bounds_report(spec, 1, 3, 4)
        assert b.pair_bound == Fraction(1, 5)
        assert b.pair_bound_holds and b.pair_bound_tight and b.pair_bound_tight_condition

    def test_exceptional_input(self):
        b = bounds_report(CosetSpectrum(3, 3, (0, 3, 0, 0)), 0, 0, 2)
        assert b.pair_bound_holds is None and b.combined_bound is None

    def test_binomial_moment(self, s4_coset):
        assert binomial_moment(s4_coset, 2) == sum(c * comb(i, 2) for i, c in enumerate(s4_coset.counts))


@given(st.lists(st.permutations(range(6)), min_size=1, max_size=2), st.permutations(range(6)))
@settings(max_examples=40, deadline=None)
def test_eq1_and_eq3_identities(gens, extra):
    """With A = <G, x>, both sides of the moment identities are integers that agree."""
    G = closure([Permutation(g) for g in gens])
    x = Permutation(extra)
    A = closure(list(G.generators) + [x])
    if not all(x * g * x.inverse() in G for g in G.generators):
        return
    m, cosets = quotient_generators(A, G)
    if not cosets:
        return
    for c in cosets:
        spec = spectrum(c.representative, G)
        r = [r_k_from_spectrum(spec, k) for k in (1, 2, 3)]
        total = sum(spec.counts)
        assert sum(i * c_ for i, c_ in enumerate(spec.counts)) == r[0] * total
        assert sum(i * (i - 1) * c_ for i, c_ in enumerate(spec.counts)) == r[1] * total
        assert sum(i * (i - 1) * (i - 2) * c_ for i, c_ in enumerate(spec.counts)) == r[2] * total
