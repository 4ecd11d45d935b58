"""Univariate polynomials over a :class:`FieldCtx`.

Coefficients are stored dense, constant term first, as encoded field elements.  Two
polynomials compare equal only if their coefficient tuples match; use
:meth:`Polynomial.same_function` for equality as maps on F_q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateAbscissaError,
    MixedFieldsError,
    NotAPermutationError,
    ParseError,
    ZeroPolynomialError,
)
from .field import FieldCtx, divisors, format_element, prime_factors

ZERO_DEGREE = -1  # degree reported for the zero polynomial


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    # -- constructors -----------------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Polynomial":
        return cls(ctx, ())

    @classmethod
    def const(cls, ctx: FieldCtx, c: int) -> "Polynomial":
        return cls(ctx, (c,))

    @classmethod
    def monomial(cls, ctx: FieldCtx, d: int, c: int = 1) -> "Polynomial":
        return cls(ctx, (0,) * d + (c,))

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Polynomial":
        return cls.monomial(ctx, 1)

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: dict[int, int]) -> "Polynomial":
        """Build from ``{exponent: coefficient}``; repeated exponents are not merged."""
        n = max(terms, default=-1) + 1
        c = [0] * n
        for k, v in terms.items():
            c[k] = ctx.add(c[k], v)
        return cls(ctx, c)

    # -- basic properties ---------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def terms(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def monomial_exponent(self) -> int | None:
        """d if this is exactly x^d, else None."""
        t = self.terms()
        if len(t) == 1:
            (k, c), = t.items()
            if c == 1:
                return k
        return None

    def _same(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise MixedFieldsError("polynomials over different fields")
        return other

    # -- ring operations ----------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.ctx, self.ctx.from_int(other))
        other = self._same(other)
        F = self.ctx
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(F, [F.add(self.coeff(k), other.coeff(k)) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.ctx, self.ctx.from_int(other))
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ctx, [self.ctx.mul(c, a) for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ctx.from_int(other))
        other = self._same(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.ctx)
        F = self.ctx
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Polynomial(F, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        other = self._same(other)
        if other.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial")
        F = self.ctx
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = F.inv(other.lead)
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            t = F.mul(c, inv_lead)
            quot[k - dq] = t
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = F.sub(rem[k - dq + j], F.mul(t, b))
        return Polynomial(F, quot), Polynomial(F, rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lead))

    def compose(self, g: "Polynomial") -> "Polynomial":
        """f(g(x)) by Horner."""
        g = self._same(g)
        acc = Polynomial.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * g + Polynomial.const(self.ctx, c)
        return acc

    def frobenius(self, sigma: int) -> "Polynomial":
        """Apply x -> x^(p^sigma) to every coefficient."""
        return Polynomial(self.ctx, [self.ctx.frobenius(c, sigma) for c in self.coeffs])

    def reduced(self) -> "Polynomial":
        """Representative of degree < q of the same function (x^q = x)."""
        q = self.ctx.q
        if self.degree < q:
            return self
        out = [0] * q
        for k, c in enumerate(self.coeffs):
            j = k if k < q else (k - 1) % (q - 1) + 1
            out[j] = self.ctx.add(out[j], c)
        return Polynomial(self.ctx, out)

    # -- evaluation ---------------------------------------------------------------------

    def __call__(self, x: int) -> int:
        F = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def values(self) -> np.ndarray:
        """Value table ``[f(0), f(1), ..., f(q-1)]`` indexed by element encoding."""
        F = self.ctx
        if F.q > 2048:
            return np.array([self(x) for x in range(F.q)], dtype=np.int32)
        add, mul = F.add_table, F.mul_table
        xs = np.arange(F.q)
        acc = np.zeros(F.q, dtype=np.int32)
        for c in reversed(self.coeffs):
            acc = add[mul[acc, xs], c]
        return acc

    def same_function(self, other: "Polynomial") -> bool:
        return bool(np.array_equal(self.values(), self._same(other).values()))

    # -- text ---------------------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial(GF({self.ctx.q}), {format_poly(self)!r})"


def evaluate(f: Polynomial, x) -> int:
    if hasattr(x, "ctx"):
        if x.ctx is not f.ctx:
            raise MixedFieldsError("point and polynomial over different fields")
        x = x.value
    return f(int(x))


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor (Euclid)."""
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _x_pow_mod(n: int, m: Polynomial) -> Polynomial:
    ctx = m.ctx
    result = Polynomial.const(ctx, 1) % m
    base = Polynomial.x(ctx) % m
    while n:
        if n & 1:
            result = (result * base) % m
        base = (base * base) % m
        n >>= 1
    return result


@dataclass(frozen=True)
class RootReport:
    roots: frozenset
    count: int


def distinct_roots(f: Polynomial) -> RootReport:
    """Distinct roots in F_q, listed by evaluation and checked against deg gcd(f, x^q - x)."""
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial vanishes everywhere")
    F = f.ctx
    roots = frozenset(int(x) for x in np.flatnonzero(f.values() == 0))
    if f.degree > 0:
        g = poly_gcd(f, _x_pow_mod(F.q, f) - Polynomial.x(F))
        assert g.degree == len(roots), "gcd degree disagrees with root enumeration"
    return RootReport(roots, len(roots))


# -- interpolation ---------------------------------------------------------------------


def _field_sum(F: FieldCtx, values: np.ndarray, axis: int = 0) -> np.ndarray:
    if F.s == 1:
        return (values.sum(axis=axis) % F.p).astype(np.int32)
    digs = F._digits[values].sum(axis=axis) % F.p
    return (digs @ np.array(F._pw)).astype(np.int32)


def _interpolate_full(F: FieldCtx, ys: np.ndarray) -> Polynomial:
    # f = sum_a y_a (1 - (x-a)^(q-1)) and (x-a)^(q-1) = sum_k a^(q-1-k) x^k
    q = F.q
    a = np.arange(q)
    expo = (q - 1 - np.arange(q))[None, :]
    logs = F._log[a][:, None]
    powers = np.where(a[:, None] == 0, (expo == 0).astype(np.int64), F._exp[(logs * expo) % (q - 1)])
    weighted = F.mul_table[ys[:, None], powers]
    sums = _field_sum(F, weighted)
    coeffs = [int(F.neg_table[c]) for c in sums]
    coeffs[0] = int(ys[0])
    return Polynomial(F, coeffs)


def interpolate(ctx: FieldCtx, pairs: Sequence[tuple[int, int]]) -> Polynomial:
    """Unique polynomial of degree < len(pairs) through the given points."""
    xs = [int(x) for x, _ in pairs]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissaError("interpolation nodes must be distinct")
    if not pairs:
        return Polynomial.zero(ctx)
    if len(xs) == ctx.q and ctx.q <= 2048:
        ys = np.zeros(ctx.q, dtype=np.int64)
        for x, y in pairs:
            ys[int(x)] = int(y)
        return _interpolate_full(ctx, ys)
    # Newton divided differences
    F = ctx
    ys = [int(y) for _, y in pairs]
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    acc = Polynomial.const(F, coef[-1])
    for i in range(n - 2, -1, -1):
        acc = acc * Polynomial(F, (F.neg(xs[i]), 1)) + Polynomial.const(F, coef[i])
    return acc


def from_values(ctx: FieldCtx, values: Sequence[int]) -> Polynomial:
    """Polynomial of degree < q with the given value table."""
    return interpolate(ctx, list(enumerate(values)))


# -- permutations ----------------------------------------------------------------------


def is_permutation(f: Polynomial) -> bool:
    v = f.values()
    return np.unique(v).size == f.ctx.q


def perm_inverse(f: Polynomial) -> Polynomial:
    """Compositional inverse as a polynomial of degree <= q-1."""
    if not is_permutation(f):
        raise NotAPermutationError(f"{format_poly(f)} is not a permutation of GF({f.ctx.q})")
    F = f.ctx
    vals = f.values()
    inv = np.empty(F.q, dtype=np.int64)
    inv[vals] = np.arange(F.q)
    g = from_values(F, inv.tolist())
    d = f.monomial_exponent()
    if d is not None and F.q > 2:
        e = pow(d, -1, F.q - 1)
        fast = Polynomial.monomial(F, e)
        assert fast.same_function(g), "monomial inverse disagrees with interpolation"
        return fast
    return g


def indicator_polynomial(ctx: FieldCtx, subset: Iterable[int]) -> Polynomial:
    """sum over t in T of 1 - (x - t)^(q-1): equals 1 on T and 0 elsewhere."""
    T = sorted({int(t) for t in subset})
    if not T:
        return Polynomial.zero(ctx)
    vals = np.zeros(ctx.q, dtype=np.int64)
    vals[T] = 1
    return from_values(ctx, vals.tolist())


# -- irreducible cubics with fixed x^2 coefficient -------------------------------------


def _mobius(n: int) -> int:
    fs = prime_factors(n)
    m = n
    for r in fs:
        m //= r
        if m % r == 0:
            return 0
    return (-1) ** len(fs)


def count_irreducible_fixed_trace(q: int, p: int, n: int, gamma_is_zero: bool) -> int:
    """Monic irreducibles of degree n over F_q with x^(n-1) coefficient fixed at gamma."""
    k, m = 0, n
    while m % p == 0:
        m //= p
        k += 1
    main = sum(_mobius(d) * q ** (n // d) for d in divisors(m))
    total = main // q  # exact: qn | main and we divide by n below
    if gamma_is_zero and k > 0:
        corr = sum(_mobius(d) * q ** (n // (p * d)) for d in divisors(m))
        return (total - corr) // n
    return total // n


def count_irreducible_cubics_fixed_trace(ctx: FieldCtx, gamma: int) -> int:
    return count_irreducible_fixed_trace(ctx.q, ctx.p, 3, int(gamma) == 0)


def count_irreducible_cubics_brute(ctx: FieldCtx, gamma: int) -> int:
    """Root-free monic cubics x^3 + gamma x^2 + b x + c, by exhaustive evaluation."""
    F = ctx
    if F.q > 2048:
        raise ValueError("brute force limited to small fields")
    xs = np.arange(F.q)
    cube_plus = F.add_table[F.mul_table[F.mul_table[xs, xs], xs], F.mul_table[gamma, F.mul_table[xs, xs]]]
    count = 0
    for b in range(F.q):
        partial = F.add_table[cube_plus, F.mul_table[b, xs]]
        # root-free iff -c is never hit by partial
        hit = np.zeros(F.q, dtype=bool)
        hit[partial] = True
        count += int(F.q - hit.sum())
    return count


# -- text format -----------------------------------------------------------------------

_ELEM_RE = re.compile(r"^(?:(\d+)|(?:a|α)(?:\^(-?\d+))?)$")


def parse_element(ctx: FieldCtx, text: str) -> int:
    """Integers (reduced mod p, must be < q in encoding form for extension fields) or a^k."""
    t = text.strip().replace(" ", "")
    neg = False
    while t.startswith("-"):
        neg = not neg
        t = t[1:]
    m = _ELEM_RE.match(t)
    if not m:
        raise ParseError(f"cannot parse field element {text!r}")
    if m.group(1) is not None:
        n = int(m.group(1))
        val = n % ctx.p if ctx.s == 1 else ctx.from_int(n)
    else:
        k = int(m.group(2)) if m.group(2) is not None else 1
        val = ctx.alpha_pow(k)
    return ctx.neg(val) if neg else val


def format_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(f.coeffs):
        if c == 0:
            continue
        cs = format_element(f.ctx, c)
        if k == 0:
            parts.append(cs)
            continue
        mono = "x" if k == 1 else f"x^{k}"
        parts.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(parts)


_TERM_SPLIT = re.compile(r"(?<![\^*])(?=[+-])")


def parse_poly(ctx: FieldCtx, text: str) -> Polynomial:
    """Parse ``"c0 + c1*x + ... "``; coefficients are ints or ``a^k``; ``x^d`` allowed."""
    src = text.replace(" ", "").replace("**", "^")
    if not src:
        raise ParseError("empty polynomial")
    terms: dict[int, int] = {}
    for raw in _TERM_SPLIT.split(src):
        if not raw:
            continue
        sign = 1
        body = raw
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coef, expo = 1, 0
        for factor in body.split("*"):
            if not factor:
                raise ParseError(f"bad term {raw!r}")
            m = re.fullmatch(r"(\d*)x(?:\^(\d+))?", factor)
            if m:
                if m.group(1):
                    coef = ctx.mul(coef, parse_element(ctx, m.group(1)))
                expo += int(m.group(2)) if m.group(2) else 1
                continue
            coef = ctx.mul(coef, parse_element(ctx, factor))
        if sign < 0:
            coef = ctx.neg(coef)
        terms[expo] = ctx.add(terms.get(expo, 0), coef)
    return Polynomial.from_terms(ctx, terms)
