"""The non-hitting spectrum: which u0 values (q+1)-sets of PG(2,q) attain.

Every reported value carries a witness set, and every witness is re-checked by
recomputing its distribution before it is accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from ._parallel import ordered_map
from .constructions import (
    ConstructionSpec,
    build,
    degenerate_families,
    predicted_non_hitting,
    valid_specs,
)
from .distribution import SET, IntersectionDistribution, degree, set_distribution
from .errors import (
    DegenerateInputError,
    InconsistentDistributionError,
    MissingArcRepresentativesError,
    ParameterOutOfRangeError,
    TooLargeError,
    TooSmallForClaimError,
)
from .field import FieldCtx, field_of_order
from .geometry import PointSet, graph_set, plane
from .poly import Polynomial

PROVENANCES = ("ClosedForm", "Construction", "Exhaustive", "RandomSearch")
QUADRANGLE = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))
BLOCK = 8192  # trials per independently seeded block
EXHAUSTIVE_MAX_Q = 5


@dataclass(frozen=True)
class Attained:
    u0: int
    provenance: str
    witness: PointSet
    source: str = ""


@dataclass
class SpectrumResult:
    q: int
    attained: dict = field(default_factory=dict)  # u0 -> Attained
    trials: int = 0
    seed: int = 0
    gaps_certified: list = field(default_factory=list)
    mean_u0: Optional[float] = None
    probe: Optional["ProbeCertificate"] = None

    def add(self, item: Attained) -> None:
        """Keep the first witness recorded for each value."""
        self.attained.setdefault(item.u0, item)

    def merge(self, other: "SpectrumResult") -> None:
        for a in other.attained.values():
            self.add(a)
        self.gaps_certified = sorted(set(map(tuple, self.gaps_certified + other.gaps_certified)))
        self.gaps_certified = [list(g) for g in self.gaps_certified]

    def values(self) -> list[int]:
        return sorted(self.attained)

    def verify(self) -> "SpectrumResult":
        for v, a in self.attained.items():
            if len(a.witness) != self.q + 1 or set_distribution(a.witness)[0] != v:
                raise InconsistentDistributionError(f"witness for u0={v} does not reproduce it")
        return self

    def to_dict(self) -> dict:
        from .geometry import format_point_set

        doc = {
            "q": self.q,
            "attained": [
                {
                    "u0": v,
                    "provenance": a.provenance,
                    "source": a.source,
                    "witness": format_point_set(a.witness),
                }
                for v, a in sorted(self.attained.items())
            ],
            "gaps_certified": [list(g) for g in self.gaps_certified],
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.mean_u0 is not None:
            doc["mean_u0"] = self.mean_u0
        if self.probe is not None:
            doc["probe"] = self.probe.to_dict()
        return doc

    @classmethod
    def from_dict(cls, doc: dict, ctx: FieldCtx | None = None) -> "SpectrumResult":
        from .geometry import parse_triple

        F = ctx if ctx is not None else field_of_order(doc["q"])
        out = cls(doc["q"], trials=doc.get("trials", 0), seed=doc.get("seed", 0))
        for item in doc["attained"]:
            pts = PointSet.of(F, [parse_triple(F, s) for s in item["witness"]])
            out.add(Attained(item["u0"], item["provenance"], pts, item.get("source", "")))
        out.gaps_certified = [list(g) for g in doc.get("gaps_certified", [])]
        out.mean_u0 = doc.get("mean_u0")
        return out


def _u0(D: PointSet) -> int:
    return int(set_distribution(D)[0])


# -- guaranteed small values ---------------------------------------------------------------


@dataclass(frozen=True)
class LowerEntries:
    q: int
    values: tuple
    witnesses: dict  # value -> (label, PointSet)
    gaps: tuple  # closed intervals containing no attained value


def lower_entries(q: int) -> LowerEntries:
    """The first five (q >= 7) or nine (q >= 16) entries of the spectrum, with witnesses."""
    if q < 7:
        raise TooSmallForClaimError("the initial-entry claims need q >= 7")
    F = field_of_order(q)
    fams = {
        0: degenerate_families(F, "line"),
        q - 1: degenerate_families(F, "line_point"),
        2 * q - 4: degenerate_families(F, "two_lines_incl"),
        2 * q - 3: degenerate_families(F, "two_lines_excl"),
    }
    for k in range(4):
        fams[3 * q - 6 - k] = degenerate_families(F, "degree_q2_triangle", k)
    witnesses = {v: (fam.name, fam.points) for v, fam in fams.items()}
    gaps = [(1, q - 2), (q, 2 * q - 5)]
    wanted = [0, q - 1, 2 * q - 4, 2 * q - 3, 3 * q - 9]
    if q > 7:
        gaps.append((2 * q - 2, 3 * q - 10))
    if q >= 16:
        wanted += [3 * q - 8, 3 * q - 7, 3 * q - 6, 4 * q - 16]
        spec = ConstructionSpec("TwoLinesIncl", q, q // 2 - 4)
        witnesses[4 * q - 16] = ("TwoLinesIncl", build(spec, F).points)
        gaps.append((3 * q - 5, 4 * q - 17))
    for v in wanted:
        assert _u0(witnesses[v][1]) == v
    return LowerEntries(q, tuple(wanted), {v: witnesses[v] for v in wanted}, tuple(gaps))


# -- values from the two-line constructions ----------------------------------------------


def construction_values(q: int, seed: int = 0) -> dict[int, tuple[str, PointSet]]:
    """u0 values of the two-line families, each confirmed on a built witness."""
    F = field_of_order(q)
    out: dict[int, tuple[str, PointSet]] = {}
    for name in ("line", "line_point", "two_lines_incl", "two_lines_excl"):
        if q < 3 and name.startswith("two"):
            continue
        fam = degenerate_families(F, name)
        out.setdefault(fam.predicted[0], (name, fam.points))
    for spec in valid_specs(q, seed):
        v = predicted_non_hitting(spec)
        if v in out:
            continue
        label = f"{spec.family} t={spec.t}" + (f" c={spec.c}" if spec.family == "TwoLinesTwoPoints" else "")
        out[v] = (label, build(spec, F).points)
    for v, (label, D) in out.items():
        if _u0(D) != v:
            raise InconsistentDistributionError(f"{label}: built set has u0 != {v}")
    return dict(sorted(out.items()))


# -- relations for sets of degree at most 3 or 4 -----------------------------------------


@dataclass(frozen=True)
class DegreeCheckReport:
    q: int
    checked_degree3: int
    checked_degree4: int
    tightest_degree3: Optional[int]  # min over sets of 3*u0 - q(q-2)
    tightest_degree4: Optional[int]  # min over sets of 4*u0 - (q^2 - 3q + 2c)


def check_small_degree(u: IntersectionDistribution) -> tuple[Optional[int], Optional[int]]:
    """Check the closed relations for one u; returns the bound margins that apply."""
    q = u.q
    deg = degree(u)
    u0, u1, u2, u3, u4 = (u[i] for i in range(5))
    m3 = m4 = None
    if deg <= 3:
        ok = (
            2 * u1 == 3 * q * q - q + 2 - 6 * u0
            and u2 == 3 * u0 - q * (q - 2)
            and 2 * u3 == q * (q - 1) - 2 * u0
        )
        m3 = 3 * u0 - q * (q - 2)
        if not ok or m3 < 0:
            raise InconsistentDistributionError(f"degree <= 3 relations fail for {u.counts}")
    if deg <= 4:
        c = u3
        ok = (
            3 * u1 == 4 * q * q - q + 3 + c - 8 * u0
            and 2 * u2 == 4 * u0 - 2 * c - q * (q - 3)
            and 6 * u4 == q * (q - 1) - 2 * c - 2 * u0
        )
        m4 = 4 * u0 - (q * q - 3 * q + 2 * c)
        if not ok or m4 < 0:
            raise InconsistentDistributionError(f"degree <= 4 relations fail for {u.counts}")
    return m3, m4


def degree_bound_checks(
    q: int, sets: Iterable[PointSet] | None = None, samples: int = 200, seed: int = 0
) -> DegreeCheckReport:
    """By default checks random cubic and quartic graphs, the conic and the constructions."""
    F = field_of_order(q)
    if sets is None:
        rng = np.random.default_rng([seed, q])
        pool = [graph_set(Polynomial.monomial(F, 2))]
        for d in (3, 4):
            for _ in range(samples):
                coeffs = [int(c) for c in rng.integers(0, q, d)] + [1]
                pool.append(graph_set(Polynomial(F, tuple(coeffs))))
        pool += [build(s, F).points for s in valid_specs(q, seed)]
        sets = pool
    n3 = n4 = 0
    t3 = t4 = None
    for D in sets:
        m3, m4 = check_small_degree(set_distribution(D))
        if m3 is not None:
            n3 += 1
            t3 = m3 if t3 is None else min(t3, m3)
        if m4 is not None:
            n4 += 1
            t4 = m4 if t4 is None else min(t4, m4)
    return DegreeCheckReport(q, n3, n4, t3, t4)


# -- exhaustive enumeration ----------------------------------------------------------------


def exhaustive_spectrum(q: int) -> SpectrumResult:
    if q > EXHAUSTIVE_MAX_Q:
        raise TooLargeError(f"exhaustive enumeration is limited to q <= {EXHAUSTIVE_MAX_Q}")
    F = field_of_order(q)
    pl = plane(F)
    found, witness = kernels.exhaustive(pl.n, q + 1, pl.point_lines, pl.n)
    res = SpectrumResult(q)
    for v in np.flatnonzero(found):
        D = PointSet(F, tuple(pl.points[i] for i in witness[v]))
        res.add(Attained(int(v), "Exhaustive", D, "all (q+1)-subsets"))
    vals = res.values()
    res.gaps_certified = [[a, b] for a, b in _holes(vals)]
    return res.verify()


def _holes(vals: Sequence[int]) -> list[tuple[int, int]]:
    return [(a + 1, b - 1) for a, b in zip(vals, vals[1:]) if b - a > 1]


# -- seeded random search ---------------------------------------------------------------


def _free_pool(pl, fix_quadrangle: bool) -> tuple[np.ndarray, np.ndarray]:
    fixed = np.array([pl.index[P] for P in QUADRANGLE] if fix_quadrangle else [], dtype=np.int32)
    pool = np.setdiff1d(np.arange(pl.n, dtype=np.int32), fixed)
    return fixed, pool


def _block(args):
    q, pl, fixed, pool, seed, b, size = args
    rng = np.random.default_rng([seed, b])
    k = q + 1 - len(fixed)
    keys = rng.random((size, len(pool)))
    pick = np.argpartition(keys, k - 1, axis=1)[:, :k]
    sets = np.concatenate([np.broadcast_to(fixed, (size, len(fixed))), pool[pick]], axis=1)
    u0 = kernels.batch_u0(sets, pl.point_lines, pl.n)
    vals, first = np.unique(u0, return_index=True)
    return {int(v): sets[i].copy() for v, i in zip(vals, first)}, int(u0.sum())


def random_search(
    q: int,
    trials: int,
    seed: int = 0,
    fix_quadrangle: bool = True,
    workers: int = 1,
) -> SpectrumResult:
    """Uniform (q+1)-subsets, optionally forced through the fundamental quadrangle.

    Trials run in fixed blocks seeded by (seed, block index), so results do not depend
    on ``workers``; the witness for a value is the first hit in block order.
    """
    if trials < 0:
        raise ParameterOutOfRangeError("trials must be non-negative")
    F = field_of_order(q)
    pl = plane(F)
    fixed, pool = _free_pool(pl, fix_quadrangle)
    sizes = [min(BLOCK, trials - lo) for lo in range(0, trials, BLOCK)]
    jobs = [(q, pl, fixed, pool, seed, b, s) for b, s in enumerate(sizes)]
    res = SpectrumResult(q, trials=trials, seed=seed)
    total = 0
    for hits, s in ordered_map(_block, jobs, workers):
        total += s
        for v, row in hits.items():
            if v not in res.attained:
                D = PointSet(F, tuple(pl.points[i] for i in row))
                res.add(Attained(v, "RandomSearch", D, "uniform"))
    if trials:
        res.mean_u0 = total / trials
    return res.verify()


def walk_search(
    q: int,
    targets: Iterable[int],
    seed: int = 0,
    steps: int = 200,
    restarts: int = 20,
    fix_quadrangle: bool = True,
) -> SpectrumResult:
    """Local search towards each target u0 by single-point swaps.

    Aimed at the sparse ends of the spectrum, which uniform sampling rarely reaches.
    Each step moves to a best swap (ties broken by the seeded generator); a step
    that cannot get closer takes a random swap instead.
    """
    F = field_of_order(q)
    pl = plane(F)
    fixed, pool = _free_pool(pl, fix_quadrangle)
    k = q + 1 - len(fixed)
    res = SpectrumResult(q, seed=seed)
    for target in sorted(set(targets)):
        rng = np.random.default_rng([seed, q, target])
        for _ in range(restarts):
            free = rng.choice(pool, size=k, replace=False)
            cur = _walk_u0(fixed, free, pl)
            for _ in range(steps):
                if cur == target:
                    break
                outside = np.setdiff1d(pool, free)
                cand = np.repeat(free[None, :], k * len(outside), axis=0)
                pos = np.repeat(np.arange(k), len(outside))
                cand[np.arange(len(cand)), pos] = np.tile(outside, k)
                full = np.concatenate([np.broadcast_to(fixed, (len(cand), len(fixed))), cand], axis=1)
                u0 = kernels.batch_u0(full, pl.point_lines, pl.n)
                gap = np.abs(u0 - target)
                if gap.min() < abs(cur - target):
                    choice = rng.choice(np.flatnonzero(gap == gap.min()))
                else:
                    choice = rng.integers(len(cand))
                free, cur = cand[choice], int(u0[choice])
            if cur == target:
                pts = np.concatenate([fixed, free])
                D = PointSet(F, tuple(pl.points[i] for i in pts))
                res.add(Attained(target, "RandomSearch", D, "walk"))
                break
    return res.verify()


def _walk_u0(fixed, free, pl) -> int:
    row = np.concatenate([fixed, free])[None, :]
    return int(kernels.batch_u0(row, pl.point_lines, pl.n)[0])


# -- the q = 9 maximum probe -------------------------------------------------------------


@dataclass(frozen=True)
class ProbeCertificate:
    q: int
    excluded: int
    arcs_checked: int
    sets_checked: int
    attained_max: int  # largest u0 seen among the extended sets
    holds: bool

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "excluded_u0": self.excluded,
            "arcs_checked": self.arcs_checked,
            "sets_checked": self.sets_checked,
            "max_u0_seen": self.attained_max,
            "no_set_attains_excluded": self.holds,
        }


def _line_of(pl) -> np.ndarray:
    n = pl.n
    out = np.full((n, n), -1, dtype=np.int32)
    for l in range(n):
        pts = pl.line_points[l]
        out[np.ix_(pts, pts)] = l
    return out


def _is_arc(pl, idx: Sequence[int]) -> bool:
    return bool(pl.line_counts([pl.points[i] for i in idx]).max() <= 2)


def arcs_through_quadrangle(ctx: FieldCtx, size: int) -> list[tuple[int, ...]]:
    """Every ``size``-arc containing the fundamental quadrangle, as point indices.

    Any arc with at least four points is projectively equivalent to one of these.
    """
    pl = plane(ctx)
    line_of = _line_of(pl)
    quad = [pl.index[P] for P in QUADRANGLE]
    covered = {int(line_of[a, b]) for a, b in combinations(quad, 2)}
    cand = [p for p in range(pl.n) if p not in quad and not covered & set(pl.point_lines[p].tolist())]
    out: list[tuple[int, ...]] = []

    def grow(arc, cov, start):
        if len(arc) == size:
            out.append(tuple(arc))
            return
        for j in range(start, len(cand)):
            p = cand[j]
            if cov & set(pl.point_lines[p].tolist()):
                continue
            grow(arc + [p], cov | {int(line_of[p, a]) for a in arc}, j + 1)

    grow(quad, covered, 0)
    return out


def max_value_probe(
    representatives: Sequence[PointSet] | None = None, q: int = 9, excluded: int | None = None
) -> ProbeCertificate:
    """Extend each 8-arc by two points in every way; no extension may reach ``excluded``.

    Without ``representatives`` all 8-arcs through the fundamental quadrangle are used,
    which covers every projective class.
    """
    F = field_of_order(q)
    pl = plane(F)
    if excluded is None:
        excluded = q * (q - 1) // 2 - 2
    size = q - 1
    if representatives is None:
        arcs = arcs_through_quadrangle(F, size)
    else:
        if len(representatives) == 0:
            raise MissingArcRepresentativesError("no arc representatives supplied")
        arcs = []
        for D in representatives:
            idx = tuple(int(i) for i in D.indices())
            if len(idx) != size or not _is_arc(pl, idx):
                raise DegenerateInputError(f"representative is not a {size}-arc")
            arcs.append(idx)
    line_of = _line_of(pl)
    n_sets = 0
    best = -1
    hit = False
    for arc in arcs:
        member = np.zeros(pl.n, dtype=np.int32)
        member[list(arc)] = 1
        missed = kernels.line_counts(member, pl.line_points) == 0
        outside = np.flatnonzero(member == 0)
        # lines newly met by adding one point, and the line shared by two added points
        gain = missed[pl.point_lines[outside]].sum(axis=1)
        both = missed[line_of[np.ix_(outside, outside)]]
        u0 = int(missed.sum()) - gain[:, None] - gain[None, :] + both
        iu = np.triu_indices(len(outside), 1)
        vals = u0[iu]
        n_sets += len(vals)
        best = max(best, int(vals.max()))
        hit = hit or bool((vals == excluded).any())
    return ProbeCertificate(q, excluded, len(arcs), n_sets, best, not hit)


# -- everything together -----------------------------------------------------------------

def default_trials(q: int) -> int:
    return 10**6 if q <= 9 else 10**5


def spectrum(
    q: int,
    trials: int | None = None,
    seed: int = 0,
    fix_quadrangle: bool = True,
    workers: int = 1,
    exhaustive: bool = False,
    walk: bool = True,
    probe: bool = False,
) -> SpectrumResult:
    """Closed forms, constructions, optional exhaustive search, then random search."""
    res = SpectrumResult(q, seed=seed)
    if q >= 7:
        low = lower_entries(q)
        for v, (label, D) in low.witnesses.items():
            res.add(Attained(v, "ClosedForm", D, label))
        res.gaps_certified = [list(g) for g in low.gaps]
    for v, (label, D) in construction_values(q, seed).items():
        res.add(Attained(v, "Construction", D, label))
    if exhaustive:
        res.merge(exhaustive_spectrum(q))
    n = default_trials(q) if trials is None else trials
    rnd = random_search(q, n, seed, fix_quadrangle, workers)
    res.merge(rnd)
    res.trials, res.mean_u0 = n, rnd.mean_u0
    if walk:
        res.merge(walk_search(q, _open_targets(res), seed, fix_quadrangle=fix_quadrangle))
    if probe:
        cert = max_value_probe(q=q) if q == 9 else None
        res.probe = cert
        if cert is not None and cert.holds:
            res.gaps_certified = sorted(res.gaps_certified + [[cert.excluded, cert.excluded]])
    return res.verify()


def _open_targets(res: SpectrumResult) -> list[int]:
    """Values up to q(q-1)/2 neither attained nor inside a certified gap."""
    top = res.q * (res.q - 1) // 2
    gaps = [range(lo, hi + 1) for lo, hi in res.gaps_certified]
    return [v for v in range(top + 1) if v not in res.attained and not any(v in g for g in gaps)]


def to_json(res: SpectrumResult) -> str:
    return json.dumps(res.to_dict())


__all__ = [
    "Attained",
    "DegreeCheckReport",
    "LowerEntries",
    "PROVENANCES",
    "ProbeCertificate",
    "QUADRANGLE",
    "SpectrumResult",
    "arcs_through_quadrangle",
    "check_small_degree",
    "construction_values",
    "default_trials",
    "degree_bound_checks",
    "exhaustive_spectrum",
    "lower_entries",
    "max_value_probe",
    "random_search",
    "spectrum",
    "walk_search",
]
