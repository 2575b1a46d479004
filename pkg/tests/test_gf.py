import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lierack.errors import DegreeOutOfRange, NotPrime
from lierack.gf import (embed, field_of_order, fixed_field, frobenius, from_json, hermitian_pairs,
                        is_prime, make_field, prime_factors, to_json)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81]


def test_prime_field_gf3():
    F = make_field(3, 1)
    assert F.q == 3 and len(F.elements()) == 3
    assert F.generator.order() == 2


def test_gf9_generator_order():
    F = make_field(3, 2)
    assert F.q == 9 and F.generator.order() == 8


def test_gf4_table_matches_brute_force():
    # x^2 + x + 1 is the only irreducible quadratic over GF(2); multiply polynomials by hand
    F = make_field(2, 2)
    def mul(a, b):  # codes a0 + 2 a1
        a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
        c0, c1, c2 = a0 * b0, a0 * b1 + a1 * b0, a1 * b1
        c0, c1 = (c0 + c2) % 2, (c1 + c2) % 2  # x^2 = x + 1
        return c0 + 2 * c1
    for a, b in itertools.product(range(4), repeat=2):
        assert (F.from_code(a) * F.from_code(b)).code == mul(a, b)


def test_bad_parameters():
    with pytest.raises(NotPrime):
        make_field(6, 1)
    with pytest.raises(DegreeOutOfRange):
        make_field(2, 0)


def test_frobenius_examples():
    F3 = make_field(3)
    assert all(frobenius(a) == a for a in F3.elements())
    F9 = make_field(3, 2)
    g = F9.generator
    assert frobenius(g) == g ** 3
    assert frobenius(g, 2) == g


def test_frobenius_additive_gf4():
    F = make_field(2, 2)
    for a, b in itertools.product(F.elements(), repeat=2):
        assert (a + b) ** 2 == a ** 2 + b ** 2


@pytest.mark.parametrize("q,count", [(2, 8), (3, 27)])
def test_hermitian_pair_counts(q, count):
    pairs = list(hermitian_pairs(field_of_order(q * q), q))
    assert len(pairs) == count


@pytest.mark.parametrize("q", [2, 3, 4])
def test_trace_kernel(q):
    F = field_of_order(q * q)
    pairs = list(hermitian_pairs(F, q))
    zero_xi = [p for p in pairs if p[0] == 0]
    assert len(zero_xi) == q


def test_fixed_field_and_embedding():
    F9 = make_field(3, 2)
    fixed = fixed_field(F9, 1)
    assert sorted(a.code for a in fixed) == sorted(a.code for a in F9.elements() if a ** 3 == a)
    F3 = make_field(3)
    images = [embed(a, F9) for a in F3.elements()]
    for a, b in itertools.product(F3.elements(), repeat=2):
        assert embed(a * b, F9) == images[a.code] * images[b.code]
        assert embed(a + b, F9) == embed(a, F9) + embed(b, F9)


def test_number_theory_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_factors(360) == [2, 3, 5]


field_and_codes = st.sampled_from(ORDERS).flatmap(
    lambda q: st.tuples(st.just(q), st.integers(0, q - 1), st.integers(0, q - 1), st.integers(0, q - 1)))


@settings(max_examples=300, deadline=None)
@given(field_and_codes)
def test_field_axioms(data):
    q, a, b, c = data
    F = field_of_order(q)
    x, y, z = F.from_code(a), F.from_code(b), F.from_code(c)
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == 0 and x - x == 0
    if a:
        assert x * x.inverse() == 1
        assert x ** (q - 1) == 1
    assert x ** q == x
    assert frobenius(x * y) == frobenius(x) * frobenius(y)
    assert from_json(to_json(x), F) == x
