import random

import pytest

from interdist.errors import DuplicateAbscissaError, NotAPermutationError, ZeroPolynomialError
from interdist.field import build_field, field_of_order, prime_powers_upto
from interdist.poly import (
    Polynomial,
    count_irreducible_cubics_brute,
    count_irreducible_cubics_fixed_trace,
    distinct_roots,
    evaluate,
    format_poly,
    from_values,
    indicator_polynomial,
    interpolate,
    is_permutation,
    parse_poly,
    perm_inverse,
    poly_gcd,
)

from oracles import SlowField, cubic_is_irreducible, poly_values


def mono(F, d, c=1):
    return Polynomial.monomial(F, d, c)


def x_pow_minus_one(F, n):
    return mono(F, n) - Polynomial.const(F, 1)


def test_evaluate_examples():
    F13 = build_field(13)
    assert evaluate(mono(F13, 4), 5) == 1
    assert evaluate(Polynomial.zero(F13), 7) == 0
    F = build_field(5, 2, [2, 4, 1])
    a3 = F.alpha_pow(3)
    f = mono(F, 11) - Polynomial.x(F) - Polynomial.const(F, a3)
    assert evaluate(f, a3) == 0


def test_gcd_examples():
    F = build_field(13)
    assert poly_gcd(x_pow_minus_one(F, 8), x_pow_minus_one(F, 12)) == x_pow_minus_one(F, 4)
    f = Polynomial(F, (3, 0, 5))
    assert poly_gcd(f, Polynomial.zero(F)) == f.monic()
    G = build_field(7)
    assert poly_gcd(x_pow_minus_one(G, 3), x_pow_minus_one(G, 6)) == x_pow_minus_one(G, 3)


def test_distinct_roots_examples():
    F = build_field(5, 2, [2, 4, 1])
    f = mono(F, 20) + Polynomial.x(F) + Polynomial.const(F, 1)
    rep = distinct_roots(f)
    assert rep.count == 5
    assert {F.log(r) for r in rep.roots} == {7, 8, 11, 16, 18}
    assert distinct_roots(mono(F, 25) - Polynomial.x(F)).count == 25
    # x^((q-1)/2) - x has roots {0, 1, -1} exactly when q = 3 mod 4
    for q in (7, 11, 19):
        G = build_field(q)
        assert distinct_roots(mono(G, (q - 1) // 2) - Polynomial.x(G)).roots == {0, 1, q - 1}
    G = build_field(13)
    assert distinct_roots(mono(G, 6) - Polynomial.x(G)).roots == {0, 1}
    with pytest.raises(ZeroPolynomialError):
        distinct_roots(Polynomial.zero(G))


def test_interpolate_examples():
    F = build_field(5)
    assert interpolate(F, [(x, x * x % 5) for x in range(5)]) == mono(F, 2)
    G = build_field(7)
    c = 3
    pairs = [(x, x * x % 7) for x in range(1, 7)] + [(0, c)]
    expected = mono(G, 2) + Polynomial.const(G, c) - mono(G, 6, c)
    assert interpolate(G, pairs) == expected
    with pytest.raises(DuplicateAbscissaError):
        interpolate(G, [(1, 2), (1, 3)])


def test_interpolate_random_gf13():
    F = build_field(13)
    rng = random.Random(4)
    pairs = [(x, rng.randrange(13)) for x in range(13)]
    f = interpolate(F, pairs)
    assert f.degree <= 12
    assert all(f(x) == y for x, y in pairs)


def test_permutation_examples():
    F11 = build_field(11)
    assert is_permutation(mono(F11, 3))
    assert not is_permutation(mono(build_field(13), 4))
    assert is_permutation(Polynomial.x(F11))
    assert perm_inverse(mono(F11, 3)) == mono(F11, 7)
    F13 = build_field(13)
    assert perm_inverse(mono(F13, 5)) == mono(F13, 5)
    assert perm_inverse(Polynomial.x(F13)) == Polynomial.x(F13)
    with pytest.raises(NotAPermutationError):
        perm_inverse(mono(F13, 4))


@pytest.mark.parametrize("q", prime_powers_upto(25))
def test_perm_inverse_involutive_on_monomials(q):
    F = field_of_order(q)
    for d in range(1, q):
        f = mono(F, d)
        if not is_permutation(f):
            continue
        g = perm_inverse(f)
        assert g.compose(f).same_function(Polynomial.x(F))
        assert perm_inverse(g).same_function(f)


def test_indicator_examples():
    F = build_field(7)
    assert indicator_polynomial(F, [0]) == Polynomial.const(F, 1) - mono(F, 6)
    assert indicator_polynomial(F, []).is_zero()
    G = build_field(3, 2)
    T = {1, 4, 5, 8}
    ind = indicator_polynomial(G, T)
    assert [ind(x) for x in range(9)] == [1 if x in T else 0 for x in range(9)]


def test_irreducible_cubic_examples():
    assert count_irreducible_cubics_fixed_trace(build_field(7), 1) == 16
    F9 = build_field(3, 2)
    assert count_irreducible_cubics_fixed_trace(F9, 1) == 27
    assert count_irreducible_cubics_fixed_trace(F9, 0) == 24


@pytest.mark.parametrize("q", prime_powers_upto(13))
def test_irreducible_closed_form_matches_enumeration(q):
    F = field_of_order(q)
    slow = SlowField(F.p, F.modulus)
    for gamma in range(q):
        brute = sum(
            cubic_is_irreducible(slow, (c, b, gamma, 1)) for b in range(q) for c in range(q)
        )
        assert count_irreducible_cubics_fixed_trace(F, gamma) == brute
        assert count_irreducible_cubics_brute(F, gamma) == brute


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_values_match_slow_horner(q):
    F = field_of_order(q)
    slow = SlowField(F.p, F.modulus)
    rng = random.Random(q)
    for _ in range(10):
        coeffs = [rng.randrange(q) for _ in range(rng.randrange(1, 2 * q))]
        assert Polynomial(F, coeffs).values().tolist() == poly_values(slow, coeffs)


def test_text_round_trip():
    F = build_field(5, 2, [2, 4, 1])
    f = parse_poly(F, "a^3 + x + a^7*x^11")
    assert parse_poly(F, format_poly(f)) == f
    G = build_field(7)
    assert parse_poly(G, "3 - x^2 + 2*x^6") == Polynomial(G, (3, 0, 6, 0, 0, 0, 2))


def test_from_values_degree_below_q():
    F = build_field(7)
    f = from_values(F, [(x**9 + 1) % 7 for x in range(7)])
    assert f.degree < 7 and f.same_function(mono(F, 9) + Polynomial.const(F, 1))
