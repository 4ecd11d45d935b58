"""(q+1)-sets contained in two lines (plus one or two extra points), with their
closed-form intersection distributions.

Coinciding subscripts in a closed form are merged by adding their counts, so e.g.
a line carrying two points of the set contributes to the 2-secant count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distribution import (
    POLY,
    SET,
    IntersectionDistribution,
    complete_from_tail,
    poly_distribution,
    set_distribution,
)
from .errors import EvenFieldError, InfeasibleParityError, ParameterOutOfRangeError
from .field import FieldCtx, field_of_order
from .geometry import INF, PointSet, graph_set, plane
from .poly import Polynomial, from_values, indicator_polynomial

FAMILIES = (
    "TwoLinesExcl",
    "TwoLinesIncl",
    "TwoLinesNucleus",
    "TwoLinesParallelNucleus",
    "TwoLinesTwoPoints",
)
POLYNOMIAL_FAMILIES = FAMILIES[2:]
PARTITIONS = ("canonical", "random")


def _ceil_half(n: int) -> int:
    return -(-n // 2)


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    q: int
    t: int = 0
    c: int = 0
    seed: int = 0
    partition: str = "canonical"  # Q+/Q- choice for TwoLinesTwoPoints

    def sizes(self) -> tuple[int, int]:
        """Points placed on the two lines (not counting their intersection)."""
        q, t = self.q, self.t
        if self.family == "TwoLinesExcl":
            return _ceil_half(q + 1) + t, (q + 1) // 2 - t
        if self.family == "TwoLinesIncl":
            return _ceil_half(q) + t, q // 2 - t
        if self.family in ("TwoLinesNucleus", "TwoLinesTwoPoints"):
            return _ceil_half(q - 1) + t, (q - 1) // 2 - t
        return _ceil_half(q) + t, q // 2 - t

    def t_range(self) -> range:
        q = self.q
        top = {
            "TwoLinesExcl": (q + 1) // 2 - 2,
            "TwoLinesIncl": q // 2 - 1,
            "TwoLinesNucleus": (q - 1) // 2 - 1,
            "TwoLinesParallelNucleus": q // 2 - 2,
            "TwoLinesTwoPoints": (q - 1) // 2 - 2,
        }[self.family]
        return range(0, top + 1)

    def validate(self) -> "ConstructionSpec":
        if self.family not in FAMILIES:
            raise ParameterOutOfRangeError(f"unknown family {self.family!r}")
        if self.partition not in PARTITIONS:
            raise ParameterOutOfRangeError(f"unknown partition {self.partition!r}")
        if self.family == "TwoLinesTwoPoints":
            if self.q % 2 == 0:
                raise EvenFieldError("TwoLinesTwoPoints needs odd q")
        if self.t not in self.t_range():
            r = self.t_range()
            raise ParameterOutOfRangeError(
                f"t={self.t} outside {r.start}..{r.stop - 1} for {self.family} at q={self.q}"
            )
        if self.family == "TwoLinesTwoPoints":
            A, B = self.sizes()
            if not 0 <= self.c <= B:
                raise ParameterOutOfRangeError(f"c={self.c} outside 0..{B}")
            if (A - self.c) % 2:
                raise InfeasibleParityError(f"{A} - c must be even")
        elif self.c:
            raise ParameterOutOfRangeError("c only applies to TwoLinesTwoPoints")
        return self

    def rng(self) -> np.random.Generator:
        key = [FAMILIES.index(self.family), self.q, self.t, self.c, self.seed]
        return np.random.default_rng(np.random.SeedSequence(key))


def valid_specs(q: int, seed: int = 0, partition: str = "canonical") -> list[ConstructionSpec]:
    """Every (family, t[, c]) allowed at q."""
    out = []
    for fam in FAMILIES:
        if fam == "TwoLinesTwoPoints" and q % 2 == 0:
            continue
        for t in ConstructionSpec(fam, q).t_range():
            if fam == "TwoLinesTwoPoints":
                A, B = ConstructionSpec(fam, q, t).sizes()
                for c in range(B + 1):
                    if (A - c) % 2 == 0:
                        out.append(ConstructionSpec(fam, q, t, c, seed, partition))
            else:
                out.append(ConstructionSpec(fam, q, t, 0, seed))
    return out


@dataclass(frozen=True)
class Construction:
    spec: ConstructionSpec
    points: PointSet
    polynomial: Optional[Polynomial] = None


def _split(rng: np.random.Generator, pool: list[int], first: int) -> tuple[list[int], list[int]]:
    order = rng.permutation(len(pool))
    chosen = sorted(pool[i] for i in order[:first])
    rest = sorted(pool[i] for i in order[first:])
    return chosen, rest


def _plus_minus_partition(F: FieldCtx, spec: ConstructionSpec, rng) -> list[int]:
    """Q+: one element from each pair {x, -x} of nonzero elements."""
    half = (F.q - 1) // 2
    if spec.partition == "random":
        reps = [F.alpha_pow(i) for i in range(half)]
        return sorted(r if rng.integers(2) else F.neg(r) for r in reps)
    if F.q % 4 == 3:
        return sorted(x for x in range(1, F.q) if F.is_square(x))
    # -1 is a square here, so squares are closed under negation; use half the log range
    return sorted(F.alpha_pow(i) for i in range(half))


def build(spec: ConstructionSpec, ctx: FieldCtx | None = None) -> Construction:
    spec.validate()
    F = ctx if ctx is not None else field_of_order(spec.q)
    q = F.q
    A, B = spec.sizes()
    rng = spec.rng()
    fam = spec.family

    if fam in ("TwoLinesExcl", "TwoLinesIncl"):
        # l: y = 0 and m: x = 0, meeting in (0,0,1)
        on_l = [(1, 0, 0)] + [(x, 0, 1) for x in range(1, q)]
        on_m = [INF] + [(0, y, 1) for y in range(1, q)]
        pick_l = rng.permutation(len(on_l))[:A]
        pick_m = rng.permutation(len(on_m))[:B]
        pts = [on_l[i] for i in pick_l] + [on_m[i] for i in pick_m]
        if fam == "TwoLinesIncl":
            pts.append((0, 0, 1))
        return Construction(spec, PointSet.of(F, pts))

    vals = [0] * q
    if fam == "TwoLinesNucleus":
        # l: y = x and m: y = -x (y = 0 when q is even), meeting in (0,0,1)
        on_l, on_m = _split(rng, list(range(1, q)), A)
        for x in on_l:
            vals[x] = x
        for x in on_m:
            vals[x] = F.neg(x) if q % 2 else 0
        f = from_values(F, vals)
    elif fam == "TwoLinesParallelNucleus":
        # l: y = 0 and m: y = 1; f is the indicator of the abscissae on m
        _, on_m = _split(rng, list(range(q)), A)
        f = indicator_polynomial(F, on_m)
    else:
        # l: y = 1 and m: y = -1, plus (0,0,1)
        plus = _plus_minus_partition(F, spec, rng)
        order = [plus[i] for i in rng.permutation(len(plus))]
        c, k = spec.c, (A - spec.c) // 2
        one, minus_one = 1, F.neg(1)
        for th in order[:c]:
            vals[th], vals[F.neg(th)] = one, minus_one
        for th in order[c : c + k]:
            vals[th] = vals[F.neg(th)] = one
        for th in order[c + k :]:
            vals[th] = vals[F.neg(th)] = minus_one
        f = from_values(F, vals)
    return Construction(spec, graph_set(f), f)


def _dist(kind: str, q: int, entries: list[tuple[int, int]]) -> IntersectionDistribution:
    width = q + 1 if kind == POLY else q + 2
    counts = [0] * width
    for i, v in entries:
        counts[i] += v
    return IntersectionDistribution(kind, q, tuple(counts)).validate()


def predicted_distribution(spec: ConstructionSpec) -> IntersectionDistribution:
    """u for the two set-only families, v for the three polynomial families."""
    spec.validate()
    q, c = spec.q, spec.c
    A, B = spec.sizes()
    AB = A * B
    fam = spec.family
    if fam == "TwoLinesExcl":
        return _dist(SET, q, [(A, 1), (B, 1), (2, AB), (1, q * q + q - 2 * AB), (0, AB - 1)])
    if fam == "TwoLinesIncl":
        e = [(A + 1, 1), (B + 1, 1), (2, AB), (1, q * q - 2 * AB + q - 1), (0, AB)]
        return _dist(SET, q, e)
    if fam == "TwoLinesNucleus":
        e = [(A + 1, 1), (B + 1, 1), (2, AB), (1, (q - 1) ** 2 - 2 * AB + q - 2), (0, q - 1 + AB)]
        return _dist(POLY, q, e)
    if fam == "TwoLinesParallelNucleus":
        return _dist(POLY, q, [(A, 1), (B, 1), (2, AB), (1, q * q - q - 2 * AB), (0, q - 2 + AB)])
    e = [
        (A, 1),
        (B, 1),
        (3, c),
        (2, AB - 3 * c + q - 1),
        (1, 1 + 3 * c + (q - 2) * (q - 1) - 2 * AB),
        (0, 2 * q - 4 - c + AB),
    ]
    return _dist(POLY, q, e)


def predicted_non_hitting(spec: ConstructionSpec) -> int:
    """u0 of the built set (equal to v0 for the polynomial families)."""
    return predicted_distribution(spec).non_hitting_index


def count_three_secants_off_lines(con: Construction) -> int:
    """3-secants of a TwoLinesTwoPoints set other than y = z and y = -z."""
    D = con.points
    F = D.ctx
    pl = plane(F)
    counts = D.line_counts()
    skip = {pl.index[(0, 1, F.neg(1))], pl.index[(0, 1, 1)]}
    return int(sum(1 for i, n in enumerate(counts) if n == 3 and i not in skip))


@dataclass(frozen=True)
class Verification:
    spec: ConstructionSpec
    predicted: IntersectionDistribution
    computed: IntersectionDistribution
    from_polynomial: Optional[IntersectionDistribution]
    three_secants: Optional[int]

    @property
    def ok(self) -> bool:
        good = self.predicted == self.computed
        if self.from_polynomial is not None:
            good = good and self.from_polynomial == self.computed
        if self.three_secants is not None:
            good = good and self.three_secants == self.spec.c
        return good


def verify(spec: ConstructionSpec) -> Verification:
    con = build(spec)
    pred = predicted_distribution(spec)
    u = set_distribution(con.points)
    if spec.family in POLYNOMIAL_FAMILIES:
        from .distribution import convert

        computed = convert(u)
        fpoly = poly_distribution(con.polynomial)
    else:
        computed, fpoly = u, None
    three = count_three_secants_off_lines(con) if spec.family == "TwoLinesTwoPoints" else None
    return Verification(spec, pred, computed, fpoly, three)


# -- monomials whose graphs lie on two lines ----------------------------------------------


@dataclass(frozen=True)
class MonomialStructure:
    exponent: int
    lines: dict  # (a, b) of y = a x + b -> affine points of S_f on it
    extra_points: tuple
    v3: int
    distribution: IntersectionDistribution


def monomial_structure(ctx: FieldCtx, which: str) -> MonomialStructure:
    """x^((q+1)/2) ("HalfPlusOne") or x^((q-1)/2) ("HalfMinusOne") as two lines plus points."""
    q = ctx.q
    if q % 2 == 0:
        raise EvenFieldError("the half-exponent monomials need odd q")
    F = ctx
    if which == "HalfPlusOne":
        d = (q + 1) // 2
        line_keys = [(1, 0), (F.neg(1), 0)]  # y = x, y = -x
    elif which == "HalfMinusOne":
        d = (q - 1) // 2
        line_keys = [(0, 1), (0, F.neg(1))]  # y = 1, y = -1
    else:
        raise ParameterOutOfRangeError(f"unknown monomial {which!r}")
    f = Polynomial.monomial(F, d)
    vals = f.values()
    lines = {}
    for a, b in line_keys:
        lines[(a, b)] = tuple(
            (x, int(vals[x])) for x in range(q) if vals[x] == F.add(F.mul(a, x), b)
        )
    covered = {P for pts in lines.values() for P in pts}
    extra = tuple((x, int(vals[x])) for x in range(q) if (x, int(vals[x])) not in covered)
    dist = poly_distribution(f)
    half = (q - 1) // 2
    if which == "HalfPlusOne":
        assert all(len(p) == half + 1 for p in lines.values()) and extra == ()
    else:
        assert all(len(p) == half for p in lines.values()) and extra == ((0, 0),)
    return MonomialStructure(d, lines, extra, dist[3], dist)


# -- degenerate families with the smallest non-hitting indices ------------------------------

DEGENERATE_FAMILIES = (
    "line",
    "line_point",
    "two_lines_incl",
    "two_lines_excl",
    "degree_q2_collinear_incl",
    "degree_q2_collinear_excl",
    "degree_q2_triangle",
)


@dataclass(frozen=True)
class DegenerateFamily:
    name: str
    predicted: IntersectionDistribution
    points: PointSet
    polynomial: Optional[Polynomial] = None
    predicted_v: Optional[IntersectionDistribution] = None


def _tail(*entries: tuple[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, v in entries:
        if v:
            out[i] = out.get(i, 0) + v
    return out


def _triangle_set(F: FieldCtx, k: int) -> PointSet:
    """q-2 points of y=0 plus a triangle, with k sides meeting y=0 inside the set."""
    q = F.q
    triangle = [(0, 1, 1), (1, 1, 1), INF]
    sides_on_l = [(1, 0, 0), (0, 0, 1), (1, 0, 1)]
    others = [(x, 0, 1) for x in range(2, q)]
    excluded = sides_on_l[k:] + others[:k]
    on_l = [P for P in [(1, 0, 0)] + [(x, 0, 1) for x in range(q)] if P not in excluded]
    return PointSet.of(F, on_l + triangle)


def degenerate_families(ctx: FieldCtx, which: str, k: int = 0) -> DegenerateFamily:
    """Closed forms for lines, line plus point, the two-line extremes and the degree q-2 catalogue.

    ``k`` (0..3) is the number of triangle sides meeting the line inside the set.
    """
    F = ctx
    q = F.q
    if which not in DEGENERATE_FAMILIES:
        raise ParameterOutOfRangeError(f"unknown degenerate family {which!r}")
    if which == "line":
        pts = [(1, 0, 0)] + [(x, 0, 1) for x in range(q)]
        return DegenerateFamily(which, _dist(SET, q, [(q + 1, 1), (1, q * q + q)]), PointSet.of(F, pts))
    if which == "line_point":
        f = Polynomial.zero(F)
        u = _dist(SET, q, [(q, 1), (2, q), (1, q * q - q + 1), (0, q - 1)])
        v = _dist(POLY, q, [(q, 1), (1, q * q - q), (0, q - 1)])
        return DegenerateFamily(which, u, graph_set(f), f, v)
    if which == "two_lines_incl":
        if q < 3:
            raise ParameterOutOfRangeError("needs q >= 3")
        u = _dist(SET, q, [(q - 1, 1), (3, 1), (2, 2 * q - 4), (1, q * q - 3 * q + 7), (0, 2 * q - 4)])
        pts = [(x, 0, 1) for x in range(q - 1)] + [(0, 1, 1), INF]
        return DegenerateFamily(which, u, PointSet.of(F, pts))
    if which == "two_lines_excl":
        if q < 3:
            raise ParameterOutOfRangeError("needs q >= 3")
        f = Polynomial.monomial(F, q - 1)
        u = _dist(SET, q, [(q - 1, 1), (2, 2 * q - 1), (1, q * q - 3 * q + 4), (0, 2 * q - 3)])
        v = _dist(POLY, q, [(q - 1, 1), (2, q - 1), (1, q * q - 3 * q + 3), (0, 2 * q - 3)])
        return DegenerateFamily(which, u, graph_set(f), f, v)
    if q < 5:
        raise ParameterOutOfRangeError("the degree q-2 catalogue needs q >= 5")
    if which == "degree_q2_collinear_incl":
        # q-3 further points on y=0, 3 on x=0, and their meet (0,0,1)
        pts = [(x, 0, 1) for x in range(q - 2)] + [(0, 1, 1), INF, (0, F.alpha_pow(1), 1)]
        u = complete_from_tail(_tail((q - 2, 1), (4, 1)), q, SET)
        return DegenerateFamily(which, u, PointSet.of(F, pts))
    if which == "degree_q2_collinear_excl":
        pts = [(x, 0, 1) for x in range(1, q - 1)] + [(0, 1, 1), INF, (0, F.alpha_pow(1), 1)]
        u = complete_from_tail(_tail((q - 2, 1), (3, 1)), q, SET)
        return DegenerateFamily(which, u, PointSet.of(F, pts))
    if not 0 <= k <= 3:
        raise ParameterOutOfRangeError("k counts triangle sides, 0..3")
    u = complete_from_tail(_tail((q - 2, 1), (3, k)), q, SET)
    return DegenerateFamily(f"{which}_{k}", u, _triangle_set(F, k))


def degenerate_catalogue(ctx: FieldCtx) -> list[DegenerateFamily]:
    out = [degenerate_families(ctx, w) for w in DEGENERATE_FAMILIES[:4]]
    if ctx.q >= 5:
        out += [degenerate_families(ctx, w) for w in DEGENERATE_FAMILIES[4:6]]
        out += [degenerate_families(ctx, "degree_q2_triangle", k) for k in range(4)]
    return out


__all__ = [
    "Construction",
    "ConstructionSpec",
    "DEGENERATE_FAMILIES",
    "DegenerateFamily",
    "FAMILIES",
    "MonomialStructure",
    "build",
    "count_three_secants_off_lines",
    "degenerate_catalogue",
    "degenerate_families",
    "monomial_structure",
    "predicted_distribution",
    "predicted_non_hitting",
    "valid_specs",
    "verify",
]
