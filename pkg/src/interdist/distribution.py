"""Intersection distributions of polynomials (v) and (q+1)-sets (u).

``v[i]`` counts pairs (a, b) for which y = ax + b meets the graph of f in exactly i
points; ``u[i]`` counts projective lines meeting a set in exactly i points.  Both are
computed by brute force and always satisfy the three counting identities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from ._parallel import ordered_map, split_range
from .errors import (
    EmptyDistributionError,
    InconsistentDistributionError,
    InfeasibleTailError,
    NonPrimeError,
    ParseError,
    WrongCardinalityError,
)
from .field import prime_power
from .geometry import PointSet
from .poly import Polynomial

POLY = "v"
SET = "u"


@dataclass(frozen=True)
class IntersectionDistribution:
    kind: str  # "v" (indices 0..q) or "u" (indices 0..q+1)
    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (POLY, SET):
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        width = self.q + 1 if self.kind == POLY else self.q + 2
        c = [int(v) for v in self.counts]
        if len(c) > width:
            if any(c[width:]):
                raise InconsistentDistributionError(
                    f"index beyond {width - 1} for kind {self.kind}"
                )
            c = c[:width]
        object.__setattr__(self, "counts", tuple(c + [0] * (width - len(c))))

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    @property
    def non_hitting_index(self) -> int:
        return self.counts[0]

    @property
    def degree(self) -> int:
        return degree(self)

    def nonzero(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.counts) if c}

    def identity_sums(self) -> tuple[int, int, int]:
        c = self.counts
        return (
            sum(c),
            sum(i * v for i, v in enumerate(c)),
            sum(i * (i - 1) * v for i, v in enumerate(c)),
        )

    def expected_sums(self) -> tuple[int, int, int]:
        q = self.q
        if self.kind == POLY:
            return (q * q, q * q, q * (q - 1))
        return (q * q + q + 1, (q + 1) ** 2, q * (q + 1))

    def satisfies_identities(self) -> bool:
        return min(self.counts) >= 0 and self.identity_sums() == self.expected_sums()

    def validate(self) -> "IntersectionDistribution":
        if not self.satisfies_identities():
            raise InconsistentDistributionError(
                f"sums {self.identity_sums()} differ from {self.expected_sums()}"
            )
        return self

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "q": self.q,
            "counts": list(self.counts),
            "nonzero": {str(i): c for i, c in self.nonzero().items()},
            "degree": degree(self),
            "non_hitting_index": self.non_hitting_index,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "IntersectionDistribution":
        try:
            return cls(d["kind"], int(d["q"]), tuple(d["counts"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"not a distribution document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "IntersectionDistribution":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc


def line_hit_table(f: Polynomial, workers: int = 1) -> np.ndarray:
    """``hits[a, b]`` = #{x : f(x) = a x + b}, indexed by element encodings."""
    F = f.ctx
    vals = f.values()
    sub, mul = F.sub_table, F.mul_table
    chunks = split_range(F.q, workers)
    parts = ordered_map(lambda r: kernels.line_hits(vals, sub, mul[r[0] : r[1]]), chunks, workers)
    return np.concatenate(parts, axis=0)


def poly_distribution(f: Polynomial, workers: int = 1) -> IntersectionDistribution:
    q = f.ctx.q
    hits = line_hit_table(f, workers)
    counts = np.bincount(hits.ravel(), minlength=q + 1)
    return IntersectionDistribution(POLY, q, tuple(int(c) for c in counts))


def set_distribution(D: PointSet) -> IntersectionDistribution:
    q = D.ctx.q
    if len(D) != q + 1:
        raise WrongCardinalityError(f"expected {q + 1} points, got {len(D)}")
    counts = np.bincount(D.line_counts(), minlength=q + 2)
    return IntersectionDistribution(SET, q, tuple(int(c) for c in counts))


def convert(dist: IntersectionDistribution) -> IntersectionDistribution:
    """u of S_f <-> v of f: shift index 1 by one and index 2 by q."""
    q = dist.q
    c = list(dist.counts)
    if dist.kind == SET:
        if c[q + 1]:
            raise InconsistentDistributionError("a set with a (q+1)-secant is not a graph set")
        c = c[: q + 1]
        c[1] -= 1
        c[2] -= q
        out = IntersectionDistribution(POLY, q, tuple(c)) if min(c) >= 0 else None
    else:
        c = c + [0]
        c[1] += 1
        c[2] += q
        out = IntersectionDistribution(SET, q, tuple(c))
    if out is None or not out.satisfies_identities():
        raise InconsistentDistributionError("conversion produced an inconsistent distribution")
    return out


def complete_from_tail(
    tail: Mapping[int, int] | Sequence[int], q: int, kind: str
) -> IntersectionDistribution:
    """Fill indices 0, 1, 2 from the counts at indices >= 3.

    ``tail`` is either ``{index: count}`` or a dense sequence starting at index 3.
    """
    if not isinstance(tail, Mapping):
        tail = {i + 3: v for i, v in enumerate(tail)}
    top = q if kind == POLY else q + 1
    for i, v in tail.items():
        if i < 3 or i > top:
            raise InfeasibleTailError(f"tail index {i} outside 3..{top}")
        if v < 0:
            raise InfeasibleTailError(f"negative tail count at index {i}")
    t0 = sum(tail.values())
    t1 = sum(i * v for i, v in tail.items())
    t2 = sum(i * (i - 1) * v for i, v in tail.items())
    if kind == POLY:
        A, B, C = q * q - t0, q * q - t1, q * (q - 1) - t2
    else:
        A, B, C = q * q + q + 1 - t0, (q + 1) ** 2 - t1, q * (q + 1) - t2
    if C % 2:
        raise InfeasibleTailError("the 2-secant count would not be an integer")
    c2 = C // 2
    c1 = B - C
    c0 = A - B + c2
    if min(c0, c1, c2) < 0:
        raise InfeasibleTailError(f"negative fill (u0, u1, u2) = ({c0}, {c1}, {c2})")
    counts = [0] * (top + 1)
    counts[0], counts[1], counts[2] = c0, c1, c2
    for i, v in tail.items():
        counts[i] += v
    return IntersectionDistribution(kind, q, tuple(counts))


def degree(dist: IntersectionDistribution) -> int:
    nz = [i for i, c in enumerate(dist.counts) if c]
    if not nz:
        raise EmptyDistributionError("distribution has no nonzero entry")
    return nz[-1]


def cubic_non_hitting(q: int, has_x2_term: bool) -> int:
    pp = prime_power(q)
    if pp is None:
        raise NonPrimeError(f"{q} is not a prime power")
    if pp[0] != 3:
        return (q * q - 1) // 3
    return q * q // 3 if has_x2_term else q * (q - 1) // 3


def cubic_distribution(q: int, has_x2_term: bool) -> IntersectionDistribution:
    """Closed-form distribution of x^3 (+ a x^2 with a != 0)."""
    v0 = cubic_non_hitting(q, has_x2_term)
    v3 = q * (q - 1) // 2 - v0
    v2 = 3 * v0 - q * (q - 1)
    v1 = q * q + q * (q - 1) // 2 - 3 * v0
    counts = [v0, v1, v2, v3] + [0] * max(q - 3, 0)
    if q == 2:  # x^3 acts as x on GF(2), and v3 comes out 0
        counts = counts[:3]
    return IntersectionDistribution(POLY, q, tuple(counts)).validate()
