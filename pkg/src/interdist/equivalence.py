"""Transforms that send a polynomial to a projectively equivalent one.

Equality of polynomials here means equality as functions on F_q; every output is
reduced to degree < q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .distribution import IntersectionDistribution, poly_distribution
from .errors import (
    InvalidTransformError,
    NotAnInternalNucleusError,
    NotAPermutationError,
    NotDecomposableError,
    NucleusMissingError,
    PointAtInfinityError,
)
from .field import FieldCtx
from .geometry import (
    Homography,
    apply_collineation,
    graph_set,
    internal_nuclei,
    normalize,
    secant_profile,
)
from .poly import Polynomial, from_values, is_permutation, perm_inverse

ORIGIN = (0, 0, 1)


@dataclass(frozen=True)
class EquivTransform:
    """g = e * f^sigma(a x + b) + c x + d, with a, e nonzero."""

    a: int = 1
    b: int = 0
    c: int = 0
    d: int = 0
    e: int = 1
    sigma: int = 0

    def check(self, ctx: FieldCtx) -> "EquivTransform":
        if self.a == 0 or self.e == 0:
            raise InvalidTransformError("a and e must be nonzero")
        for v in (self.a, self.b, self.c, self.d, self.e):
            if not 0 <= v < ctx.q:
                raise InvalidTransformError(f"{v} is not an element of GF({ctx.q})")
        if not 0 <= self.sigma < ctx.s:
            raise InvalidTransformError(f"sigma must lie in 0..{ctx.s - 1}")
        return self

    def then(self, other: "EquivTransform", ctx: FieldCtx) -> "EquivTransform":
        """The single transform equal to applying self, then other (both with sigma = 0)."""
        if self.sigma or other.sigma:
            raise InvalidTransformError("composition formula is for sigma = 0 only")
        F = ctx
        return EquivTransform(
            a=F.mul(self.a, other.a),
            b=F.add(F.mul(self.a, other.b), self.b),
            c=F.add(F.mul(other.e, F.mul(self.c, other.a)), other.c),
            d=F.add(F.add(F.mul(other.e, F.mul(self.c, other.b)), F.mul(other.e, self.d)), other.d),
            e=F.mul(self.e, other.e),
        )


def transform(f: Polynomial, t: EquivTransform) -> Polynomial:
    F = f.ctx
    t.check(F)
    inner = Polynomial(F, (t.b, t.a))
    g = f.frobenius(t.sigma).compose(inner).scale(t.e) + Polynomial(F, (t.d, t.c))
    return g.reduced()


def normalize_nucleus(f: Polynomial, nucleus: Sequence[int]) -> Polynomial:
    """Move the internal nucleus (a, b, 1) of S_f to the origin, its unisecant to y = 0."""
    F = f.ctx
    N = normalize(F, nucleus)
    if N[2] == 0:
        raise PointAtInfinityError("the nucleus must be an affine point (a, b, 1)")
    D = graph_set(f)
    if N not in internal_nuclei(D):
        raise NotAnInternalNucleusError(f"{N} is not an internal nucleus of S_f")
    a, b = F.div(N[0], N[2]), F.div(N[1], N[2])
    line = next(L for L, c in secant_profile(D, N) if c == 1)
    # the unisecant is d x + y - (d a + b) z = 0; it is never vertical
    d = F.div(line[0], line[1])
    M = Homography(F, (1, 0, F.neg(a), d, 1, F.neg(F.add(F.mul(d, a), b)), 0, 0, 1))
    image = apply_collineation(D, M)
    vals = [0] * F.q
    for x, y, z in image.points:
        if z:
            k = F.inv(z)
            vals[F.mul(x, k)] = F.mul(y, k)
    return from_values(F, vals)


def xg_decompose(f: Polynomial) -> Polynomial:
    """The permutation g with g(0) = 0 and f = x g on F_q."""
    F = f.ctx
    if ORIGIN not in internal_nuclei(graph_set(f)):
        raise NucleusMissingError("(0,0,1) is not an internal nucleus of S_f")
    vals = f.values()
    g = [0] + [F.div(int(vals[x]), x) for x in range(1, F.q)]
    gp = from_values(F, g)
    if not is_permutation(gp):
        raise NotDecomposableError("f/x is not a permutation despite the nucleus at the origin")
    return gp


def nucleus_swap(f: Polynomial) -> Polynomial:
    """x h with h(x) = 1 / g^{-1}(1/x), where f = x g: exchanges (0,0,1) and (0,1,0)."""
    F = f.ctx
    g = xg_decompose(f)
    gv = g.values()
    ginv = [0] * F.q
    for x in range(F.q):
        ginv[int(gv[x])] = x
    out = [0] * F.q
    for x in range(1, F.q):
        h = F.inv(ginv[F.inv(x)])
        out[x] = F.mul(x, h)
    result = from_values(F, out)
    swap = Homography(F, (1, 0, 0, 0, 0, 1, 0, 1, 0))
    assert apply_collineation(graph_set(f), swap) == graph_set(result)
    return result


@dataclass(frozen=True)
class InverseReport:
    f: Polynomial
    inverse: Polynomial
    dist_f: IntersectionDistribution
    dist_inverse: IntersectionDistribution

    @property
    def equal(self) -> bool:
        return self.dist_f == self.dist_inverse

    def to_dict(self) -> dict:
        return {
            "f": str(self.f),
            "inverse": str(self.inverse),
            "dist_f": self.dist_f.to_dict(),
            "dist_inverse": self.dist_inverse.to_dict(),
            "distributions_equal": self.equal,
        }


def inverse_comparison(f: Polynomial) -> InverseReport:
    if not is_permutation(f):
        raise NotAPermutationError("inverse comparison needs a permutation polynomial")
    inv = perm_inverse(f)
    return InverseReport(f, inv, poly_distribution(f), poly_distribution(inv))


__all__ = [
    "EquivTransform",
    "InverseReport",
    "inverse_comparison",
    "normalize_nucleus",
    "nucleus_swap",
    "transform",
    "xg_decompose",
]
