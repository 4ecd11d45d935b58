"""The eight acceptance criteria, each at its stated tolerance and time budget.

Every test records a PASS/FAIL line; the lines are printed at the end of the pytest run
and also when this file is executed directly with ``python tests/test_acceptance.py``.
"""

import contextlib
import csv
import io
import random
import sys
import time


from conftest import ACCEPTANCE
from interdist.cli import main
from interdist.constructions import FAMILIES, PARTITIONS, valid_specs, verify
from interdist.distribution import (
    complete_from_tail,
    convert,
    cubic_distribution,
    poly_distribution,
    set_distribution,
)
from interdist.equivalence import EquivTransform, inverse_comparison, nucleus_swap, transform
from interdist.field import field_of_order, prime_powers_upto
from interdist.geometry import graph_set
from interdist.monomial import bound_report
from interdist.poly import Polynomial, count_irreducible_cubics_fixed_trace, is_permutation
from interdist.spectrum import exhaustive_spectrum, max_value_probe, spectrum

from oracles import SlowField, cubic_is_irreducible

TABLE_Q25 = [2, 3, 4, 5, 6, 7, 8, 9, 4, 4, 12, 13, 4, 3, 8, 9, 6, 7, 5, 5, 4, 3, 24]
SPEC = {
    2: {0, 1},
    3: {0, 2, 3},
    4: {0, 3, 4, 5, 6},
    5: {0, 4, 6, 7, 8, 9, 10},
    7: {0, 6, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 21},
    8: {0, 7, 12, 13, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 28},
    9: {0, 8, 14, 15, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 36},
}


@contextlib.contextmanager
def criterion(n: int, label: str):
    ok = False
    try:
        yield
        ok = True
    finally:
        ACCEPTANCE[n] = (ok, label)
        print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {label}")


def random_poly(F, rng):
    return Polynomial(F, [rng.randrange(F.q) for _ in range(F.q)])


def test_criterion_1_degree_table():
    with criterion(1, "degree table for GF(25), x^2+4x+2: exact, sandwiched, < 10 s"):
        start = time.perf_counter()
        buf = io.StringIO()
        assert main(["degree-table", "--field", "5^2:2,4,1", "--csv"], out=buf) == 0
        rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
        assert [int(r["d"]) for r in rows] == list(range(2, 25))
        assert [int(r["exact"]) for r in rows] == TABLE_Q25
        for r in rows:
            assert int(r["lower"]) <= int(r["exact"]) <= int(r["upper"])
        assert time.perf_counter() - start < 10


def test_criterion_2_spectra():
    with criterion(2, "spectra: exhaustive q<=5, Spec(7) exactly, q=8,9 rows attained, no u0=34 at q=9"):
        start = time.perf_counter()
        for q in (2, 3, 4, 5):
            assert set(exhaustive_spectrum(q).values()) == SPEC[q]
        assert time.perf_counter() - start < 60

        start = time.perf_counter()
        res7 = spectrum(7, trials=10**6, seed=0)
        assert set(res7.values()) == SPEC[7]
        assert time.perf_counter() - start < 600

        for q in (8, 9):
            res = spectrum(q, trials=10**6, seed=0, probe=(q == 9))
            missing = SPEC[q] - set(res.values())
            assert not missing, f"q={q} missing {sorted(missing)}"
            assert max(res.values()) == q * (q - 1) // 2
        cert = max_value_probe(q=9)
        assert cert.holds and cert.excluded == 34


def test_criterion_3_cubics():
    with criterion(3, "cubic non-hitting indices and two-secant counts, exact"):
        for q in (5, 7, 11, 13, 25):
            F = field_of_order(q)
            v = poly_distribution(Polynomial.monomial(F, 3))
            assert v[0] == (q * q - 1) // 3
            assert v[2] == q - 1
            assert v == cubic_distribution(q, False)
        for q in (9, 27):
            F = field_of_order(q)
            x3 = Polynomial.monomial(F, 3)
            v_plain = poly_distribution(x3)
            v_sq = poly_distribution(x3 + Polynomial.monomial(F, 2))
            assert v_sq[0] == q * q // 3 and v_plain[0] == q * (q - 1) // 3
            assert v_plain[2] == 0 and v_sq[2] == q
            assert v_plain == cubic_distribution(q, False) and v_sq == cubic_distribution(q, True)


def test_criterion_4_irreducible_counts():
    with criterion(4, "irreducible cubic counts with fixed x^2 coefficient, q <= 13, exact"):
        for q in prime_powers_upto(13):
            F = field_of_order(q)
            slow = SlowField(F.p, F.modulus)
            for gamma in range(q):
                brute = sum(
                    cubic_is_irreducible(slow, (c, b, gamma, 1)) for b in range(q) for c in range(q)
                )
                assert count_irreducible_cubics_fixed_trace(F, gamma) == brute, (q, gamma)


def test_criterion_5_constructions():
    with criterion(5, "every construction with q <= 13 and 5 seeds matches its prediction, < 5 min"):
        start = time.perf_counter()
        for q in prime_powers_upto(13):
            seen = set()
            for seed in range(5):
                for partition in PARTITIONS:
                    for spec in valid_specs(q, seed, partition):
                        if partition == "random" and spec.family != "TwoLinesTwoPoints":
                            continue
                        assert verify(spec).ok, spec
                        seen.add(spec.family)
            expected = {f for f in FAMILIES if f != "TwoLinesTwoPoints" or q % 2}
            # tiny fields leave some parameter ranges empty
            assert seen == expected or q < 7, (q, expected - seen)
        assert time.perf_counter() - start < 300


def test_criterion_6_bound_sweep():
    with criterion(6, "bounds sound for every q <= 49 and 2 <= d <= q-1, < 15 min"):
        start = time.perf_counter()
        pairs = 0
        for q in prime_powers_upto(49):
            F = field_of_order(q)
            for d in range(2, q):
                r = bound_report(F, d)
                assert r.lower.value <= r.brute_force <= r.upper.value, (q, d)
                for b in r.exact_candidates:
                    assert b.value == r.brute_force, (q, d, b)
                pairs += 1
        assert pairs == sum(q - 2 for q in prime_powers_upto(49))
        assert time.perf_counter() - start < 900


def test_criterion_7_equivalence():
    with criterion(7, "transforms keep distributions; x^4 -> x^8 on GF(11); inverse flags true"):
        for q in (5, 7, 8, 9):
            F = field_of_order(q)
            rng = random.Random(q)
            for _ in range(500):
                f = random_poly(F, rng)
                t = EquivTransform(
                    a=rng.randrange(1, q),
                    b=rng.randrange(q),
                    c=rng.randrange(q),
                    d=rng.randrange(q),
                    e=rng.randrange(1, q),
                    sigma=rng.randrange(F.s),
                )
                assert poly_distribution(transform(f, t)) == poly_distribution(f)
        F11 = field_of_order(11)
        assert nucleus_swap(Polynomial.monomial(F11, 4)).same_function(Polynomial.monomial(F11, 8))
        for q in prime_powers_upto(13):
            F = field_of_order(q)
            for d in range(1, q):
                f = Polynomial.monomial(F, d)
                if is_permutation(f):
                    assert inverse_comparison(f).equal, (q, d)


def test_criterion_8_identities():
    with criterion(8, "identities, conversions and tail completion for 200 random polynomials per q <= 9"):
        for q in prime_powers_upto(9):
            F = field_of_order(q)
            rng = random.Random(1000 + q)
            for _ in range(200):
                f = random_poly(F, rng)
                v = poly_distribution(f)
                u = set_distribution(graph_set(f))
                assert v.satisfies_identities() and u.satisfies_identities()
                assert convert(u) == v and convert(v) == u
                tail = {i: c for i, c in v.nonzero().items() if i >= 3}
                assert complete_from_tail(tail, q, "v") == v


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:  # noqa: BLE001 - the criterion line already says FAIL
                failed += 1
    sys.exit(1 if failed else 0)
