"""Degree bounds for the graph sets of monomials x^d.

Every bound carries a rule tag from :data:`RULES`.  Lines are split by type: horizontal
(y = b), through the origin (y = a x), and general (a, b both nonzero); the horizontal
and origin lines are described exactly by gcds, general lines only through caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._parallel import ordered_map
from .distribution import degree, line_hit_table
from .errors import ShapeMismatchError, TooLargeError
from .field import FieldCtx, build_field, divisors
from .poly import Polynomial, distinct_roots

RULES = (
    "DegBound",
    "Ubound",
    "QminusPi",
    "HorizGcd",
    "OriginGcd",
    "DivisorCase",
    "Lacunary",
    "Trace",
    "KelleyOwen",
    "Combined",
    "BruteForce",
)


@dataclass(frozen=True)
class Bound:
    value: int
    rule: str
    detail: str = ""


# -- horizontal lines and lines through the origin -------------------------------------


@dataclass(frozen=True)
class LineFamily:
    """Lines of one type that meet the graph, with their hit sets."""

    gcd: int
    hits: dict  # line parameter -> sorted x-values on it
    empty: tuple  # parameters of lines of this type meeting the graph in no point
    # only the origin, for lines through (0,0); only (0,0) for y=0 when horizontal


def horizontal_analysis(ctx: FieldCtx, d: int) -> LineFamily:
    """Lines y = alpha^(i d) meet y = x^d in m = gcd(d, q-1) points; other y = b != 0 miss it."""
    q = ctx.q
    m = math.gcd(d, q - 1)
    vals = Polynomial.monomial(ctx, d).values()
    levels = sorted({ctx.alpha_pow(i * d) for i in range((q - 1) // m)})
    hits = {b: sorted(int(x) for x in np.flatnonzero(vals == b)) for b in levels}
    assert all(len(xs) == m for xs in hits.values())
    empty = tuple(b for b in range(1, q) if b not in hits)
    assert all(not (vals == b).any() for b in empty)
    assert list(np.flatnonzero(vals == 0)) == [0]
    return LineFamily(m, hits, empty)


def origin_analysis(ctx: FieldCtx, d: int) -> LineFamily:
    """Lines y = alpha^((d-1) i) x meet y = x^d in m'+1 points (origin included)."""
    q = ctx.q
    m = math.gcd(d - 1, q - 1)
    vals = Polynomial.monomial(ctx, d).values()
    xs = np.arange(q)
    slopes = sorted({ctx.alpha_pow(i * (d - 1)) for i in range((q - 1) // m)})
    hits = {}
    mul = ctx.mul_table
    for a in range(1, q):
        on = [int(x) for x in np.flatnonzero(vals == mul[a, xs])]
        if a in slopes:
            assert len(on) == m + 1
            hits[a] = on
        else:
            assert on == [0]
    empty = tuple(a for a in range(1, q) if a not in hits)
    return LineFamily(m, hits, empty)


# -- bounds -----------------------------------------------------------------------------


def lower_bound(ctx: FieldCtx, d: int) -> Bound:
    q = ctx.q
    horiz = math.gcd(d, q - 1)
    origin = math.gcd(d - 1, q - 1) + 1
    if horiz >= origin:
        return Bound(horiz, "HorizGcd", f"gcd({d},{q - 1})")
    return Bound(origin, "OriginGcd", f"gcd({d - 1},{q - 1})+1")


def kelley_owen_cap(q: int) -> int:
    """floor(1/2 + sqrt(q-1)) in exact integer arithmetic."""
    return (math.isqrt(4 * (q - 1)) + 1) // 2


@dataclass(frozen=True)
class UpperBounds:
    overall: Bound
    candidates: tuple  # every applicable Bound on deg(S_f)
    general_line_caps: tuple  # Bounds on |line ∩ graph| for y = ax + b, a,b != 0
    ubound_breakdown: Optional[dict]  # per line type caps when Ubound applies


def _lacunary_caps(q: int, d: int) -> list[Bound]:
    caps = []
    for e in divisors(q - 1):
        if d <= e:
            ell = e - d
            if d >= 2:
                caps.append(Bound((ell + 1) * (q - 1) // e, "Lacunary", f"(i) e={e} l={ell}"))
        else:
            m = d - e
            caps.append(Bound(m * (q - 1) // e, "Lacunary", f"(ii) e={e} m={m}"))
    return caps


def _q_minus_p_power(ctx: FieldCtx, d: int) -> Optional[int]:
    for i in range(1, ctx.s):
        if ctx.s % i == 0 and d == ctx.q - ctx.p**i:
            return i
    return None


def upper_bounds(ctx: FieldCtx, d: int) -> UpperBounds:
    q = ctx.q
    horiz = math.gcd(d, q - 1)
    origin = math.gcd(d - 1, q - 1) + 1
    flat = max(horiz, origin)
    cands: list[Bound] = [Bound(d, "DegBound", "deg f")]
    general: list[Bound] = [Bound(d, "DegBound", "deg f")]
    breakdown = None
    if 2 < d < q - 1:
        cands.append(Bound(min(d, q - d + 1), "Ubound", "min(d, q-d+1)"))
        breakdown = {"a!=0,b=0": q - d + 1, "a,b!=0": q - d, "a=0,b!=0": q - d - 1}
        general.append(Bound(q - d, "Ubound", "(ii) q-d"))
    i = _q_minus_p_power(ctx, d)
    if i is not None:
        pi = ctx.p**i
        cands.append(Bound(pi, "QminusPi", f"d = q - p^{i}"))
        general.append(Bound(pi, "QminusPi", f"d = q - p^{i}"))
    ko = kelley_owen_cap(q)
    cands.append(Bound(max(flat, ko), "KelleyOwen", f"max(gcds, {ko})"))
    general.append(Bound(ko, "KelleyOwen", "floor(1/2+sqrt(q-1))"))
    lac = _lacunary_caps(q, d)
    if lac:
        best = min(lac, key=lambda b: b.value)
        cands.append(Bound(max(flat, best.value), "Lacunary", best.detail))
        general.extend(lac)
    gen_best = min(general, key=lambda b: b.value)
    cands.append(Bound(max(flat, gen_best.value), "Combined", f"general lines via {gen_best.rule}"))
    overall = min(cands, key=lambda b: (b.value, RULES.index(b.rule)))
    return UpperBounds(overall, tuple(cands), tuple(general), breakdown)


def exact_divisor_cases(ctx: FieldCtx, d: int) -> list[Bound]:
    """Every closed-form exact degree that applies (possibly several, always equal)."""
    q = ctx.q
    out: list[Bound] = []
    if d == q - 1:
        out.append(Bound(q - 1, "DivisorCase", "(i) x^(q-1)"))
    proper = [e for e in divisors(q - 1) if e < q - 1]
    for e in proper:
        if d == e and e >= 2:
            out.append(Bound(e, "DivisorCase", f"(ii) e={e}"))
        if d == e + 1:
            out.append(Bound(e + 1, "DivisorCase", f"(iii) e={e}"))
        if d == q - e and e >= 2:
            out.append(Bound(e + 1, "DivisorCase", f"(iv) e={e}"))
    m = math.gcd(d, q - 1)
    if m * (m - 1) >= q - 1:
        out.append(Bound(m, "HorizGcd", f"m={m}, m(m-1) >= q-1"))
    m1 = math.gcd(d - 1, q - 1)
    if m1 * (m1 + 1) >= q - 1:
        out.append(Bound(m1 + 1, "OriginGcd", f"m'={m1}, m'(m'+1) >= q-1"))
    if ctx.s == 2 and d == q - ctx.p:
        out.append(Bound(ctx.p, "Trace", "q = p^2, d = q - p"))
    ko = kelley_owen_cap(q)
    flat = max(m, m1 + 1)
    if ko <= flat:
        out.append(Bound(flat, "KelleyOwen", f"floor(1/2+sqrt(q-1)) = {ko} <= {flat}"))
    return out


# -- lacunary root partition -----------------------------------------------------------


@dataclass(frozen=True)
class ClassPiece:
    index: int
    reduced: Polynomial
    roots: frozenset  # roots of h lying in C_index


@dataclass(frozen=True)
class LacunaryPartition:
    case: str  # "i" or "ii"
    classes: int
    shift: int  # l for case (i), m for case (ii)
    pieces: tuple

    def all_roots(self) -> frozenset:
        out = frozenset()
        for p in self.pieces:
            out |= p.roots
        return out


def lacunary_partition(h: Polynomial, classes: int) -> LacunaryPartition:
    """Split the nonzero roots of h = x^n + g by cyclotomic class of order ``classes``."""
    F = h.ctx
    q = F.q
    if classes < 1 or (q - 1) % classes:
        raise ShapeMismatchError(f"{classes} does not divide q-1")
    if h.lead != 1:
        raise ShapeMismatchError("h must be monic")
    if h.coeff(0) == 0:
        raise ShapeMismatchError("h(0) must be nonzero")
    n = h.degree
    g = h - Polynomial.monomial(F, n)
    if g.degree < 1:
        raise ShapeMismatchError("the lower part g must have positive degree")
    e = (q - 1) // classes
    cls = F.cyclotomic_classes(classes)
    pieces = []
    if n <= e:
        case, shift = "i", e - n
        for i in range(classes):
            k = Polynomial.monomial(F, shift) * g + Polynomial.const(F, F.alpha_pow(i * e))
            pieces.append((i, k))
    else:
        case, shift = "ii", n - e
        for i in range(classes):
            k = Polynomial.monomial(F, shift, F.alpha_pow(i * e)) + g
            pieces.append((i, k))
    out = []
    for i, k in pieces:
        rk = distinct_roots(k).roots if not k.is_zero() else frozenset(range(q))
        out.append(ClassPiece(i, k, frozenset(r for r in rk if r in cls[i])))
    result = LacunaryPartition(case, classes, shift, tuple(out))
    assert result.all_roots() == distinct_roots(h).roots - {0}
    return result


# -- trace witness -----------------------------------------------------------------------


@dataclass(frozen=True)
class TraceWitness:
    ctx: FieldCtx
    line: tuple  # (a, b) for y = a x + b
    roots: frozenset


def trace_witness(p: int, ctx: FieldCtx | None = None) -> TraceWitness:
    """The p points where y = -x - 1 meets y = x^(p^2 - p)."""
    F = ctx if ctx is not None else build_field(p, 2)
    if F.p != p or F.s != 2:
        raise ShapeMismatchError("the trace witness lives in GF(p^2)")
    q = F.q
    minus_one = F.neg(1)
    h = Polynomial.from_terms(F, {q - p: 1, 1: 1, 0: 1})
    roots = distinct_roots(h).roots
    from_trace = frozenset(F.inv(t) for t in range(1, q) if F.trace(t) == minus_one)
    assert roots == from_trace and len(roots) == p
    return TraceWitness(F, (minus_one, minus_one), roots)


# -- the full table ---------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    q: int
    d: int
    lower: Bound
    upper: Bound
    exact: Optional[Bound]
    brute_force: int
    sample_line: tuple  # (a, b)
    upper_candidates: tuple = field(default=())
    exact_candidates: tuple = field(default=())

    @property
    def sandwiched(self) -> bool:
        ok = self.lower.value <= self.brute_force <= self.upper.value
        return ok and all(b.value == self.brute_force for b in self.exact_candidates)


def _log_rank(ctx: FieldCtx) -> np.ndarray:
    rank = np.empty(ctx.q, dtype=np.int64)
    rank[np.array(ctx.by_log())] = np.arange(ctx.q)
    return rank


def sample_line(ctx: FieldCtx, hits: np.ndarray) -> tuple[int, int]:
    """First (a, b) reaching the maximum, ordering elements 0, alpha^0, alpha^1, ..."""
    rank = _log_rank(ctx)
    a_idx, b_idx = np.nonzero(hits == hits.max())
    best = min(zip(rank[a_idx], rank[b_idx]))
    order = ctx.by_log()
    return order[best[0]], order[best[1]]


def bound_report(ctx: FieldCtx, d: int) -> BoundReport:
    hits = line_hit_table(Polynomial.monomial(ctx, d))
    brute = int(hits.max())
    lo = lower_bound(ctx, d)
    ub = upper_bounds(ctx, d)
    exacts = exact_divisor_cases(ctx, d)
    exact = exacts[0] if exacts else None
    if exact is None and lo.value == ub.overall.value:
        exact = Bound(lo.value, ub.overall.rule, "lower and upper bounds meet")
    return BoundReport(
        ctx.q, d, lo, ub.overall, exact, brute, sample_line(ctx, hits), ub.candidates, tuple(exacts)
    )


DEFAULT_TABLE_CAP = 49


def degree_table(ctx: FieldCtx, cap: int = DEFAULT_TABLE_CAP, workers: int = 1) -> list[BoundReport]:
    if ctx.q > cap:
        raise TooLargeError(f"degree table capped at q <= {cap}")
    return ordered_map(lambda d: bound_report(ctx, d), list(range(2, ctx.q)), workers)


def format_line(ctx: FieldCtx, line: tuple[int, int]) -> str:
    from .field import format_element

    a, b = line
    if a == 0:
        return f"y={format_element(ctx, b)}"
    left = "x" if a == 1 else f"{format_element(ctx, a)}*x"
    return f"y={left}" if b == 0 else f"y={left}+{format_element(ctx, b)}"


def monomial_degree(ctx: FieldCtx, d: int) -> int:
    return int(line_hit_table(Polynomial.monomial(ctx, d)).max())


__all__ = [
    "Bound",
    "BoundReport",
    "RULES",
    "bound_report",
    "degree",
    "degree_table",
    "exact_divisor_cases",
    "format_line",
    "kelley_owen_cap",
    "monomial_degree",
    "sample_line",
    "horizontal_analysis",
    "lacunary_partition",
    "lower_bound",
    "origin_analysis",
    "trace_witness",
    "upper_bounds",
]
