import pytest

from interdist.errors import ShapeMismatchError, TooLargeError
from interdist.field import build_field, field_of_order, prime_powers_upto
from interdist.monomial import (
    RULES,
    bound_report,
    degree_table,
    exact_divisor_cases,
    format_line,
    horizontal_analysis,
    kelley_owen_cap,
    lacunary_partition,
    lower_bound,
    monomial_degree,
    origin_analysis,
    trace_witness,
    upper_bounds,
)
from interdist.poly import Polynomial

from oracles import SlowField, poly_values

TABLE_Q25 = (2, 3, 4, 5, 6, 7, 8, 9, 4, 4, 12, 13, 4, 3, 8, 9, 6, 7, 5, 5, 4, 3, 24)


@pytest.fixture(scope="module")
def gf25():
    return build_field(5, 2, [2, 4, 1])


def brute_degree(F, d):
    """Max over all lines y = a x + b of #{x : x^d = a x + b}, with schoolbook arithmetic."""
    slow = SlowField(F.p, F.modulus)
    vals = poly_values(slow, [0] * d + [1])
    best = 0
    for a in range(F.q):
        tally = {}
        for x in range(F.q):
            r = slow.sub(vals[x], slow.mul(a, x))
            tally[r] = tally.get(r, 0) + 1
        best = max(best, max(tally.values()))
    return best


def hits(F, d, a, b):
    return sum(F.pow(x, d) == F.add(F.mul(a, x), b) for x in range(F.q))


def test_brute_degree_oracle_reproduces_table(gf25):
    assert tuple(brute_degree(gf25, d) for d in range(2, 25)) == TABLE_Q25


def test_horizontal_examples(gf25):
    F = build_field(13)
    fam = horizontal_analysis(F, 4)
    assert fam.gcd == 4 and set(fam.hits) == {1, 3, 9}
    assert list(fam.hits[1]) == [1, 5, 8, 12]
    fam8 = horizontal_analysis(F, 8)
    assert fam8.gcd == 4 and set(fam8.hits) == {1, 3, 9}
    fam16 = horizontal_analysis(gf25, 16)
    assert fam16.gcd == 8
    F = gf25
    assert set(fam16.hits) == {1, F.alpha_pow(8), F.alpha_pow(16)}
    classes = F.cyclotomic_classes(3)
    for i in range(3):
        assert set(fam16.hits[F.alpha_pow(16 * i)]) == set(classes[i].members)


def test_origin_examples():
    F = build_field(13)
    fam = origin_analysis(F, 5)
    assert set(fam.hits) == {1, 3, 9}
    assert all(0 in xs and len(xs) == 5 for xs in fam.hits.values())
    G = build_field(31)
    fam = origin_analysis(G, 26)
    assert fam.gcd == 5
    assert set(fam.hits) == {G.alpha_pow(5 * i) for i in range(6)}
    assert all(len(xs) == 6 for xs in fam.hits.values())
    for q in (5, 9, 16):
        assert origin_analysis(field_of_order(q), 2).gcd == 1


def test_lower_bound_examples(gf25):
    assert (lower_bound(gf25, 10).value, lower_bound(gf25, 10).rule) == (4, "OriginGcd")
    assert lower_bound(gf25, 15).value == 3
    assert (lower_bound(gf25, 14).value, lower_bound(gf25, 14).rule) == (2, "HorizGcd")


def test_upper_bound_examples(gf25):
    ub = upper_bounds(gf25, 11)
    assert (ub.overall.value, ub.overall.rule) == (4, "Lacunary")
    assert "(i)" in ub.overall.detail
    ub = upper_bounds(gf25, 14)
    assert (ub.overall.value, ub.overall.rule) == (4, "Lacunary")
    assert "(ii)" in ub.overall.detail
    for s in (3, 4, 5):
        F = build_field(2, s)
        ub = upper_bounds(F, F.q - 2)
        assert ub.overall.value == 2 and monomial_degree(F, F.q - 2) == 2
        assert any(c.rule == "QminusPi" and c.value == 2 for c in ub.candidates)


def test_three_part_bound_values(gf25):
    for d in (10, 15):
        ub = upper_bounds(gf25, d)
        assert (ub.overall.value, ub.overall.rule) == (5, "KelleyOwen")
    assert kelley_owen_cap(25) == 5
    for q in range(3, 200):
        cap = kelley_owen_cap(q)
        # floor(1/2 + sqrt(q-1)) without floating point: cap is the largest k with (2k-1)^2 <= 4(q-1)
        assert (2 * cap - 1) ** 2 <= 4 * (q - 1) < (2 * cap + 1) ** 2


def test_exact_cases_examples(gf25):
    ex16 = {(b.rule, b.value) for b in exact_divisor_cases(gf25, 16)}
    assert ("HorizGcd", 8) in ex16
    ex20 = {(b.rule, b.value) for b in exact_divisor_cases(gf25, 20)}
    assert ("Trace", 5) in ex20
    ex23 = exact_divisor_cases(gf25, 23)
    assert any(b.rule == "DivisorCase" and "(iv) e=2" in b.detail and b.value == 3 for b in ex23)
    ex17 = {(b.rule, b.value) for b in exact_divisor_cases(gf25, 17)}
    assert ("OriginGcd", 9) in ex17
    assert any(b.value == 4 for b in exact_divisor_cases(build_field(13), 4))


def test_lacunary_examples(gf25):
    F = gf25
    a3 = F.alpha_pow(3)
    h = Polynomial.from_terms(F, {11: 1, 1: F.neg(1), 0: F.neg(a3)})
    part = lacunary_partition(h, 2)
    assert part.case == "i"
    logs = [{F.log(r) for r in piece.roots} for piece in part.pieces]
    assert logs == [{16, 20}, {3, 21}]
    h = Polynomial.from_terms(F, {14: 1, 1: F.neg(1), 0: F.neg(2)})
    part = lacunary_partition(h, 2)
    assert part.case == "ii"
    assert [set(p.roots) for p in part.pieces] == [{2, 4}, {F.alpha_pow(13), F.alpha_pow(17)}]
    # the witnessing lines from the worked examples
    assert hits(F, 11, 1, a3) == 4
    assert hits(F, 14, 1, 2) == 4


def test_lacunary_shape_errors(gf25):
    F = gf25
    with pytest.raises(ShapeMismatchError):
        lacunary_partition(Polynomial.from_terms(F, {11: 2, 1: 1, 0: 1}), 2)
    with pytest.raises(ShapeMismatchError):
        lacunary_partition(Polynomial.from_terms(F, {11: 1, 1: 1}), 2)
    with pytest.raises(ShapeMismatchError):
        lacunary_partition(Polynomial.from_terms(F, {11: 1, 0: 1}), 2)
    with pytest.raises(ShapeMismatchError):
        lacunary_partition(Polynomial.from_terms(F, {11: 1, 1: 1, 0: 1}), 5)


@pytest.mark.parametrize("q", [13, 16, 25, 31])
def test_lacunary_roots_cover_all_nonzero_roots(q):
    F = field_of_order(q)
    for classes in (c for c in range(2, q - 1) if (q - 1) % c == 0):
        for n in (3, (q - 1) // classes, q - 3):
            h = Polynomial.from_terms(F, {n: 1, 1: F.neg(1), 0: F.alpha_pow(3)})
            roots = {x for x in range(1, q) if h(x) == 0}
            assert set(lacunary_partition(h, classes).all_roots()) == roots


def test_trace_witness(gf25):
    w = trace_witness(5, gf25)
    assert {gf25.log(r) for r in w.roots} == {7, 8, 11, 16, 18}
    assert w.line == (gf25.neg(1), gf25.neg(1))
    assert hits(gf25, 20, *w.line) == 5
    assert len(trace_witness(2).roots) == 2
    F9 = build_field(3, 2)
    w9 = trace_witness(3, F9)
    assert w9.roots == {x for x in range(9) if F9.add(F9.add(F9.pow(x, 6), x), 1) == 0}
    assert len(w9.roots) == 3


def test_table_matches_and_sample_lines_attain(gf25):
    rows = degree_table(gf25)
    assert tuple(r.brute_force for r in rows) == TABLE_Q25
    for r in rows:
        assert r.sandwiched
        assert hits(gf25, r.d, *r.sample_line) == r.brute_force
    by_d = {r.d: r for r in rows}
    for d, lo, hi in ((10, 4, 5), (11, 3, 4), (14, 2, 4), (15, 3, 5)):
        assert (by_d[d].lower.value, by_d[d].upper.value) == (lo, hi)
        assert by_d[d].exact is None
    assert format_line(gf25, (1, gf25.alpha_pow(3))) == "y=x+a^3"


def test_table_cap():
    with pytest.raises(TooLargeError):
        degree_table(field_of_order(64))
    assert len(degree_table(field_of_order(64), cap=64)) == 62


def test_report_rules_are_known(gf25):
    for d in range(2, 25):
        r = bound_report(gf25, d)
        assert r.lower.rule in RULES and r.upper.rule in RULES
        assert all(c.rule in RULES for c in r.upper_candidates + r.exact_candidates)


@pytest.mark.parametrize("q", prime_powers_upto(49))
def test_bounds_sound(q):
    F = field_of_order(q)
    for d in range(2, q):
        r = bound_report(F, d)
        assert r.lower.value <= r.brute_force <= r.upper.value
        assert all(b.value == r.brute_force for b in r.exact_candidates)
