"""The projective plane PG(2,q).

Points and lines are both plain normalized triples ``(x, y, z)`` of encoded field
elements whose first nonzero entry is 1; a line ``(a, b, c)`` is ``ax + by + cz = 0``.
:func:`plane` builds the full incidence structure once per field and caches it.
"""

from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    DegenerateInputError,
    NotAnInternalNucleusError,
    ParseError,
    SingularMatrixError,
    WrongCardinalityError,
)
from .field import FieldCtx, format_element
from .poly import Polynomial, from_values, parse_element

Triple = tuple[int, int, int]
ProjPoint = Triple
ProjLine = Triple

INF = (0, 1, 0)  # the point at infinity of every S_f


def normalize(ctx: FieldCtx, v: Sequence[int]) -> Triple:
    a, b, c = (int(t) for t in v)
    for lead in (a, b, c):
        if lead:
            k = ctx.inv(lead)
            return (ctx.mul(a, k), ctx.mul(b, k), ctx.mul(c, k))
    raise DegenerateInputError("the zero vector is not a projective point")


def dot(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for s, t in zip(u, v):
        acc = ctx.add(acc, ctx.mul(s, t))
    return acc


def incident(ctx: FieldCtx, point: Sequence[int], line: Sequence[int]) -> bool:
    return dot(ctx, point, line) == 0


def cross(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> Triple:
    """Line through two points, or meet of two lines; equal inputs are an error."""
    F = ctx
    w = (
        F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
        F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
        F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])),
    )
    if w == (0, 0, 0):
        raise DegenerateInputError("cross product of proportional triples")
    return normalize(F, w)


line_through = cross
meet = cross


def _canonical_triples(q: int) -> list[Triple]:
    out: list[Triple] = [(0, 0, 1)]
    out += [(0, 1, z) for z in range(q)]
    out += [(1, y, z) for y in range(q) for z in range(q)]
    return out


class Plane:
    """All points and lines of PG(2,q) with incidence tables.

    ``line_points[l]`` lists the q+1 point indices on line l, ``point_lines[p]`` the
    q+1 lines through point p.  Points and lines use the same canonical ordering.
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        q = ctx.q
        self.q = q
        self.points: list[Triple] = _canonical_triples(q)
        self.lines: list[Triple] = self.points
        self.index = {t: i for i, t in enumerate(self.points)}
        self.n = len(self.points)
        coords = np.array(self.points, dtype=np.int64)
        self.coords = coords
        add, mul = ctx.add_table, ctx.mul_table
        line_points = np.empty((self.n, q + 1), dtype=np.int32)
        chunk = max(1, 2_000_000 // self.n)
        for lo in range(0, self.n, chunk):
            L = coords[lo : lo + chunk]
            d = add[
                add[mul[L[:, None, 0], coords[None, :, 0]], mul[L[:, None, 1], coords[None, :, 1]]],
                mul[L[:, None, 2], coords[None, :, 2]],
            ]
            rows, cols = np.nonzero(d == 0)
            line_points[lo : lo + chunk] = cols.reshape(-1, q + 1)
        self.line_points = line_points
        order = np.argsort(line_points.ravel(), kind="stable")
        self.point_lines = (order // (q + 1)).reshape(self.n, q + 1).astype(np.int32)

    def point_index(self, P: Sequence[int]) -> int:
        return self.index[normalize(self.ctx, P)]

    def membership(self, points: Iterable[Sequence[int]]) -> np.ndarray:
        m = np.zeros(self.n, dtype=np.int32)
        for P in points:
            m[self.point_index(P)] = 1
        return m

    def line_counts(self, points: Iterable[Sequence[int]]) -> np.ndarray:
        """|D ∩ l| for every line l, in canonical line order."""
        return kernels.line_counts(self.membership(points), self.line_points)


@functools.lru_cache(maxsize=16)
def plane(ctx: FieldCtx) -> Plane:
    return Plane(ctx)


def enumerate_plane(ctx: FieldCtx) -> tuple[list[Triple], list[Triple]]:
    P = plane(ctx)
    return list(P.points), list(P.lines)


# -- point sets -------------------------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    ctx: FieldCtx
    points: tuple[Triple, ...]

    def __post_init__(self):
        pts = tuple(sorted({normalize(self.ctx, P) for P in self.points}))
        if len(pts) != len(self.points):
            raise DegenerateInputError("point set contains repeated points")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, ctx: FieldCtx, points: Iterable[Sequence[int]]) -> "PointSet":
        return cls(ctx, tuple(normalize(ctx, P) for P in points))

    def __len__(self):
        return len(self.points)

    def __contains__(self, P):
        return normalize(self.ctx, P) in self.points

    def __iter__(self):
        return iter(self.points)

    def indices(self) -> np.ndarray:
        pl = plane(self.ctx)
        return np.array([pl.index[P] for P in self.points], dtype=np.int32)

    def line_counts(self) -> np.ndarray:
        return plane(self.ctx).line_counts(self.points)


def graph_set(f: Polynomial) -> PointSet:
    F = f.ctx
    vals = f.values()
    return PointSet(F, tuple((x, int(vals[x]), 1) for x in range(F.q)) + (INF,))


def _require_q_plus_one(D: PointSet):
    if len(D) != D.ctx.q + 1:
        raise WrongCardinalityError(f"expected {D.ctx.q + 1} points, got {len(D)}")


def secant_profile(D: PointSet, P: Sequence[int]) -> list[tuple[Triple, int]]:
    """(line, |D ∩ line|) for each of the q+1 lines through P."""
    pl = plane(D.ctx)
    counts = D.line_counts()
    return [(pl.lines[l], int(counts[l])) for l in pl.point_lines[pl.point_index(P)]]


def internal_nuclei(D: PointSet) -> list[Triple]:
    _require_q_plus_one(D)
    pl = plane(D.ctx)
    counts = D.line_counts()
    out = []
    for P in D.points:
        through = counts[pl.point_lines[pl.index[P]]]
        if through.max() <= 2 and int((through == 1).sum()) == 1:
            out.append(P)
    return out


def external_nuclei(D: PointSet) -> list[Triple]:
    _require_q_plus_one(D)
    pl = plane(D.ctx)
    counts = D.line_counts()
    members = set(D.points)
    ones = (counts[pl.point_lines] == 1).all(axis=1)
    return [pl.points[i] for i in np.flatnonzero(ones) if pl.points[i] not in members]


# -- collineations ----------------------------------------------------------------------


def _det3(F: FieldCtx, m: Sequence[int]) -> int:
    a, b, c, d, e, f, g, h, i = m
    t1 = F.mul(a, F.sub(F.mul(e, i), F.mul(f, h)))
    t2 = F.mul(b, F.sub(F.mul(d, i), F.mul(f, g)))
    t3 = F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))
    return F.add(F.sub(t1, t2), t3)


@dataclass(frozen=True)
class Homography:
    """Invertible 3x3 matrix up to scalars, stored row-major with first nonzero entry 1."""

    ctx: FieldCtx
    matrix: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.matrix)
        if len(m) != 9:
            raise ValueError("a homography needs 9 entries")
        if _det3(self.ctx, m) == 0:
            raise SingularMatrixError("matrix is singular")
        lead = next(v for v in m if v)
        k = self.ctx.inv(lead)
        object.__setattr__(self, "matrix", tuple(self.ctx.mul(v, k) for v in m))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "Homography":
        return cls(ctx, (1, 0, 0, 0, 1, 0, 0, 0, 1))

    @classmethod
    def from_columns(cls, ctx: FieldCtx, cols: Sequence[Sequence[int]]) -> "Homography":
        return cls(ctx, tuple(cols[j][i] for i in range(3) for j in range(3)))

    def apply(self, P: Sequence[int]) -> Triple:
        F, m = self.ctx, self.matrix
        return normalize(F, [dot(F, m[3 * r : 3 * r + 3], P) for r in range(3)])

    def inverse(self) -> "Homography":
        F = self.ctx
        a, b, c, d, e, f, g, h, i = self.matrix
        adj = (
            F.sub(F.mul(e, i), F.mul(f, h)),
            F.sub(F.mul(c, h), F.mul(b, i)),
            F.sub(F.mul(b, f), F.mul(c, e)),
            F.sub(F.mul(f, g), F.mul(d, i)),
            F.sub(F.mul(a, i), F.mul(c, g)),
            F.sub(F.mul(c, d), F.mul(a, f)),
            F.sub(F.mul(d, h), F.mul(e, g)),
            F.sub(F.mul(b, g), F.mul(a, h)),
            F.sub(F.mul(a, e), F.mul(b, d)),
        )
        return Homography(F, adj)

    def __matmul__(self, other: "Homography") -> "Homography":
        F = self.ctx
        A, B = self.matrix, other.matrix
        return Homography(
            F,
            tuple(
                dot(F, A[3 * r : 3 * r + 3], B[c::3]) for r in range(3) for c in range(3)
            ),
        )


def apply_collineation(D: PointSet, h: Homography, sigma: int = 0) -> PointSet:
    """Image of D under the homography h followed by the Frobenius power sigma."""
    F = D.ctx
    out = []
    for P in D.points:
        x, y, z = h.apply(P)
        out.append((F.frobenius(x, sigma), F.frobenius(y, sigma), F.frobenius(z, sigma)))
    return PointSet.of(F, out)


def set_to_polynomial(D: PointSet, nucleus: Sequence[int]) -> tuple[Homography, Polynomial]:
    """Homography sending D onto some S_f, with the given internal nucleus going to (0,1,0).

    The unisecant through the nucleus is sent to z = 0.  When D is already a graph set
    and the nucleus is (0,1,0), the homography is the identity.
    """
    F = D.ctx
    I = normalize(F, nucleus)
    if I not in internal_nuclei(D):
        raise NotAnInternalNucleusError(f"{I} is not an internal nucleus of the set")
    pl = plane(F)
    uni = next(L for L, c in secant_profile(D, I) if c == 1)
    on_line = [pl.points[i] for i in pl.line_points[pl.index[uni]]]
    p1 = next(P for P in on_line if P != I)
    p3 = (0, 0, 1) if not incident(F, (0, 0, 1), uni) else next(
        P for P in pl.points if not incident(F, P, uni)
    )
    theta = Homography.from_columns(F, [p1, I, p3]).inverse()
    image = apply_collineation(D, theta)
    vals = [0] * F.q
    for x, y, z in image.points:
        if z:
            k = F.inv(z)
            vals[F.mul(x, k)] = F.mul(y, k)
    f = from_values(F, vals)
    assert graph_set(f) == image
    return theta, f


# -- text format ------------------------------------------------------------------------


def affine(ctx: FieldCtx, P: Sequence[int]) -> tuple[int, int] | None:
    """(x/z, y/z), or None for points on z = 0."""
    if P[2] == 0:
        return None
    k = ctx.inv(P[2])
    return ctx.mul(P[0], k), ctx.mul(P[1], k)


def format_triple(ctx: FieldCtx, t: Sequence[int]) -> str:
    return "(" + ":".join(format_element(ctx, v) for v in t) + ")"


_TRIPLE_RE = re.compile(r"^\(([^:]+):([^:]+):([^:]+)\)$")


def parse_triple(ctx: FieldCtx, text: str) -> Triple:
    m = _TRIPLE_RE.match(text.replace(" ", ""))
    if not m:
        raise ParseError(f"cannot parse point {text!r}; expected (x:y:z)")
    return normalize(ctx, [parse_element(ctx, g) for g in m.groups()])


def parse_point_set(ctx: FieldCtx, text: str) -> PointSet:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"point set must be a JSON array: {exc}") from exc
    if not isinstance(items, list):
        raise ParseError("point set must be a JSON array of '(x:y:z)' strings")
    return PointSet.of(ctx, [parse_triple(ctx, s) for s in items])


def format_point_set(D: PointSet) -> list[str]:
    return [format_triple(D.ctx, P) for P in D.points]
