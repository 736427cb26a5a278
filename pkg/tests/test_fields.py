from itertools import product

import pytest
from hypothesis import given, strategies as st

from cosetderange.fields import gf, least_irreducible, prime_power

FIELDS = [(p, e) for p, e in product((2, 3, 5, 7), range(1, 7)) if p**e <= 64]


def test_prime_fields():
    F = gf(5, 1)
    assert F.q == 5 and F.gamma == 2
    assert [F.mul(a, b) for a, b in [(2, 3), (4, 4)]] == [1, 1]


def test_gf4():
    F = gf(2, 2)
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert F.q == 4 and F.gamma == 2
    assert F.mul(2, 2) == 3


def test_gf9():
    F = gf(3, 2)
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert F.multiplicative_order(F.gamma) == 8
    assert all(F.multiplicative_order(a) < 8 for a in range(1, F.gamma))


@pytest.mark.parametrize("p, e", FIELDS)
def test_field_axioms_exhaustive(p, e):
    F = gf(p, e)
    q = F.q
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
    # associativity and distributivity on a deterministic stride through triples
    step = max(1, q // 8)
    for a in range(0, q, step):
        for b in range(0, q, step):
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


@pytest.mark.parametrize("p, e", FIELDS)
def test_primitive_element(p, e):
    F = gf(p, e)
    assert F.multiplicative_order(F.gamma) == F.q - 1
    assert sorted(F.power_of_gamma(i) for i in range(F.q - 1)) == list(range(1, F.q))
    assert all(F.multiplicative_order(a) < F.q - 1 for a in range(1, F.gamma))


@given(st.sampled_from(FIELDS).flatmap(lambda pe: st.tuples(st.just(pe), st.integers(1, pe[0] ** pe[1] - 1))))
def test_frobenius_is_automorphism(case):
    (p, e), a = case
    F = gf(p, e)
    for b in range(F.q):
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.is_square(F.mul(a, a))


def test_errors():
    with pytest.raises(ValueError):
        gf(4, 1)
    with pytest.raises(ValueError):
        gf(2, 17)
    with pytest.raises(ValueError):
        prime_power(12)
    assert prime_power(27) == (3, 3)
