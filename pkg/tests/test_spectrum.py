import itertools
import json

import numpy as np
import pytest

from interdist import kernels
from interdist.constructions import ConstructionSpec, build
from interdist.distribution import set_distribution
from interdist.errors import (
    DegenerateInputError,
    InconsistentDistributionError,
    MissingArcRepresentativesError,
    TooLargeError,
    TooSmallForClaimError,
)
from interdist.field import field_of_order
from interdist.geometry import PointSet, graph_set, plane
from interdist.poly import Polynomial
from interdist.spectrum import (
    QUADRANGLE,
    Attained,
    SpectrumResult,
    arcs_through_quadrangle,
    check_small_degree,
    construction_values,
    degree_bound_checks,
    exhaustive_spectrum,
    lower_entries,
    max_value_probe,
    random_search,
    spectrum,
    walk_search,
)

# rows of the published table of non-hitting spectra
SPEC = {
    2: {0, 1},
    3: {0, 2, 3},
    4: {0, 3, 4, 5, 6},
    5: {0, 4, 6, 7, 8, 9, 10},
    7: {0, 6, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 21},
    8: {0, 7, 12, 13, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 28},
    9: {0, 8, 14, 15, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 36},
}
BOLD = {
    7: {6, 10, 11, 12, 13, 14, 15, 16, 18},
    8: {0, 7, 12, 13, 15, 16, 17, 18, 19, 21, 22},
    9: {0, 8, 14, 15, 18, 20, 22, 23, 24, 26, 28, 30},
}


def brute_spectrum(q):
    """u0 of every (q+1)-subset of PG(2,q), straight from incidence."""
    F = field_of_order(q)
    pl = plane(F)
    out = set()
    for combo in itertools.combinations(range(pl.n), q + 1):
        member = np.zeros(pl.n, dtype=bool)
        member[list(combo)] = True
        out.add(int((~member[pl.line_points].any(axis=1)).sum()))
    return out


@pytest.mark.parametrize("q", [2, 3])
def test_brute_force_oracle_small(q):
    assert brute_spectrum(q) == SPEC[q]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_exhaustive_matches_table(q):
    res = exhaustive_spectrum(q)
    assert set(res.values()) == SPEC[q]
    for v, a in res.attained.items():
        assert set_distribution(a.witness)[0] == v
    holes = [v for v in range(max(SPEC[q]) + 1) if v not in SPEC[q]]
    gapped = {v for lo, hi in res.gaps_certified for v in range(lo, hi + 1)}
    assert set(holes) <= gapped


def test_exhaustive_cap():
    with pytest.raises(TooLargeError):
        exhaustive_spectrum(7)


def test_lower_entries_examples():
    assert lower_entries(7).values[:5] == (0, 6, 10, 11, 12)
    assert lower_entries(9).values[:5] == (0, 8, 14, 15, 18)
    assert lower_entries(17).values[:9] == (0, 16, 30, 31, 42, 43, 44, 45, 52)
    with pytest.raises(TooSmallForClaimError):
        lower_entries(5)
    for q in (7, 9, 11, 16, 17):
        for v, (_, D) in lower_entries(q).witnesses.items():
            assert set_distribution(D)[0] == v


@pytest.mark.parametrize("q", [7, 8, 9])
def test_lower_entries_within_constructions(q):
    vals = set(construction_values(q)) | {0}
    assert set(lower_entries(q).values) <= vals


def test_construction_values_bold_entries():
    # with the corrected odd-q parallel-nucleus row, bold 13 (q=7) and 22 (q=9) move to 17 and 21, 25, 27
    assert set(construction_values(7)) == (BOLD[7] - {13}) | {0, 17}
    assert set(construction_values(8)) == BOLD[8]
    assert set(construction_values(9)) == (BOLD[9] - {22}) | {21, 25, 27}
    assert 24 in construction_values(9)  # the t = 0 excl row: ((q+1)/2)^2 - 1
    for q in (7, 8, 9):
        assert set(construction_values(q)) <= SPEC[q]
        for v, (_, D) in construction_values(q).items():
            assert set_distribution(D)[0] == v


def test_small_degree_relations():
    for q in (5, 7, 9, 11):
        F = field_of_order(q)
        u = set_distribution(graph_set(Polynomial.monomial(F, 2)))
        m3, _ = check_small_degree(u)
        assert u[0] == q * (q - 1) // 2 and m3 > 0
        rep = degree_bound_checks(q, samples=30)
        assert rep.checked_degree3 > 0 and rep.checked_degree4 > 0
    bad = set_distribution(graph_set(Polynomial.monomial(field_of_order(7), 3)))
    forged = type(bad)(bad.kind, bad.q, (bad[0] + 1, bad[1] - 2, bad[2] + 1) + bad.counts[3:])
    with pytest.raises(InconsistentDistributionError):
        check_small_degree(forged)


def test_random_search_within_table_q7():
    res = random_search(7, 20000, seed=3)
    assert set(res.values()) <= SPEC[7]
    assert 0 < res.mean_u0 < 21


def test_random_search_deterministic_across_workers():
    a = random_search(8, 3 * 8192 + 5, seed=11, workers=1)
    b = random_search(8, 3 * 8192 + 5, seed=11, workers=3)
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())
    assert random_search(8, 1000, seed=11).to_dict() == random_search(8, 1000, seed=11).to_dict()


def test_quadrangle_forced_by_default():
    res = random_search(7, 5000, seed=0)
    for a in res.attained.values():
        assert all(P in a.witness for P in QUADRANGLE)


def test_walk_reaches_sparse_extremes():
    res = walk_search(7, [19, 21], seed=0)
    assert {19, 21} <= set(res.values())
    res.verify()


def test_result_json_round_trip():
    res = spectrum(5, trials=2000, seed=1)
    doc = json.loads(json.dumps(res.to_dict()))
    back = SpectrumResult.from_dict(doc)
    assert back.to_dict() == res.to_dict()
    back.verify()


def test_verify_rejects_bad_witness():
    F = field_of_order(5)
    res = SpectrumResult(5)
    res.add(Attained(3, "Construction", graph_set(Polynomial.monomial(F, 2))))
    with pytest.raises(InconsistentDistributionError):
        res.verify()


def test_arcs_through_quadrangle_are_arcs():
    F = field_of_order(9)
    pl = plane(F)
    arcs = arcs_through_quadrangle(F, 8)
    assert len(arcs) == len(set(arcs))
    quad = {pl.index[P] for P in QUADRANGLE}
    for arc in arcs[:40]:
        assert quad <= set(arc)
        member = np.zeros(pl.n, dtype=np.int32)
        member[list(arc)] = 1
        assert kernels.line_counts(member, pl.line_points).max() == 2


def test_probe_single_arc_against_batch_kernel():
    F = field_of_order(9)
    pl = plane(F)
    arc = arcs_through_quadrangle(F, 8)[0]
    rep = PointSet(F, tuple(pl.points[i] for i in arc))
    cert = max_value_probe([rep], q=9)
    outside = [i for i in range(pl.n) if i not in arc]
    sets = np.array([list(arc) + [a, b] for a, b in itertools.combinations(outside, 2)])
    u0 = kernels.implementations("batch_u0")["numpy"](sets, pl.point_lines, pl.n)
    assert cert.sets_checked == len(sets)
    assert cert.attained_max == int(u0.max())
    assert cert.holds == (not (u0 == 34).any())


def test_probe_full():
    cert = max_value_probe(q=9)
    assert cert.holds and cert.excluded == 34
    assert cert.attained_max == 36


def test_probe_inputs():
    with pytest.raises(MissingArcRepresentativesError):
        max_value_probe([], q=9)
    F = field_of_order(9)
    line = PointSet.of(F, [(x, 0, 1) for x in range(8)])
    with pytest.raises(DegenerateInputError):
        max_value_probe([line], q=9)


def test_ten_arc_reaches_maximum():
    F = field_of_order(9)
    assert set_distribution(graph_set(Polynomial.monomial(F, 2)))[0] == 36


def test_constructions_feed_the_spectrum():
    D = build(ConstructionSpec("TwoLinesIncl", 8, 1)).points
    assert set_distribution(D)[0] in SPEC[8]
