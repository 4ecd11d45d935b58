"""Arithmetic in GF(p^s).

Elements are plain ints in ``range(q)``: the element ``c0 + c1*x + ... + c_{s-1}*x^{s-1}``
of the polynomial basis is encoded as ``c0 + c1*p + ... + c_{s-1}*p^(s-1)``.  Zero is 0
and one is 1 in every field.  Multiplication and inversion go through discrete-log
tables built from the designated primitive element.

:class:`FieldElement` is a thin operator-overloading wrapper for interactive use; the
algorithms in this package work on the raw ints.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZeroError,
    FieldTooLargeError,
    MixedFieldsError,
    NonPrimeError,
    NotADivisorError,
    NotPrimitiveError,
    ReducibleModulusError,
)

MAX_Q = 2**16
# dense q*q tables above this size would cost more memory than they save
MAX_TABLE_Q = 2048
_SCALAR_TABLE_Q = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % k for k in range(3, math.isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, s)`` with ``q == p**s``, or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    s = round(math.log(q, p))
    while p**s < q:
        s += 1
    while p**s > q:
        s -= 1
    return (p, s) if p**s == q else None


def prime_powers_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if prime_power(q)]


# -- arithmetic in GF(p)[x]/(modulus) on digit lists, used only while bootstrapping ----


def _ring_mul(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    s = len(mod) - 1
    prod = [0] * (2 * s - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, s - 1, -1):
        c = prod[k]
        if c:
            # mod is monic: x^s = -(m_0 + ... + m_{s-1} x^{s-1})
            for i in range(s):
                prod[k - s + i] = (prod[k - s + i] - c * mod[i]) % p
            prod[k] = 0
    return prod[:s]


def _ring_pow(a: Sequence[int], n: int, mod: Sequence[int], p: int) -> list[int]:
    s = len(mod) - 1
    result = [1] + [0] * (s - 1)
    base = list(a)
    while n:
        if n & 1:
            result = _ring_mul(result, base, mod, p)
        base = _ring_mul(base, base, mod, p)
        n >>= 1
    return result


def _has_full_order(a: Sequence[int], mod: Sequence[int], p: int, q: int) -> bool:
    one = [1] + [0] * (len(mod) - 2)
    if not any(a):
        return False
    if _ring_pow(a, q - 1, mod, p) != one:
        return False
    return all(_ring_pow(a, (q - 1) // r, mod, p) != one for r in prime_factors(q - 1))


def _poly_divides(d: Sequence[int], m: Sequence[int], p: int) -> bool:
    """True iff monic ``d`` divides ``m`` over GF(p); both low-to-high."""
    r = list(m)
    dd = len(d) - 1
    for k in range(len(r) - 1, dd - 1, -1):
        c = r[k] % p
        if c:
            for i in range(dd + 1):
                r[k - dd + i] = (r[k - dd + i] - c * d[i]) % p
    return not any(x % p for x in r[:dd])


def is_irreducible_mod_p(m: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    s = len(m) - 1
    if s <= 1:
        return s == 1
    for deg in range(1, s // 2 + 1):
        for tail in _lex_tuples(p, deg):
            if _poly_divides(list(tail) + [1], m, p):
                return False
    return True


def _lex_tuples(p: int, n: int) -> Iterable[tuple[int, ...]]:
    """All n-tuples over range(p), ordered lexicographically with index 0 most significant."""
    if n == 0:
        yield ()
        return
    for first in range(p):
        for rest in _lex_tuples(p, n - 1):
            yield (first,) + rest


class FieldCtx:
    """A concrete realisation of GF(p^s); immutable after construction."""

    def __init__(self, p: int, s: int, modulus: tuple[int, ...], primitive: int):
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = modulus
        q = self.q
        self._pw = [p**i for i in range(s)]
        digits = np.zeros((q, s), dtype=np.int64)
        rem = np.arange(q, dtype=np.int64)
        for i in range(s):
            digits[:, i] = rem % p
            rem //= p
        self._digits = digits

        exp = np.zeros(q - 1, dtype=np.int64)
        if s == 1:
            acc = 1
            for k in range(q - 1):
                exp[k] = acc
                acc = acc * primitive % p
        else:
            g = self.digits(primitive)
            acc = [1] + [0] * (s - 1)
            for k in range(q - 1):
                exp[k] = self._encode(acc)
                acc = _ring_mul(acc, g, modulus, p)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        if (log[1:] < 0).any():
            raise NotPrimitiveError(f"element {primitive} does not generate GF({q})^*")
        self.primitive = primitive
        self._exp = exp
        self._log = log
        self._exp_l = exp.tolist()
        self._log_l = log.tolist()
        self._add_l = None
        if q <= _SCALAR_TABLE_Q:
            self._add_l = self.add_table.tolist()

    # -- encoding ---------------------------------------------------------------------

    def _encode(self, digits: Sequence[int]) -> int:
        return sum(int(c) % self.p * w for c, w in zip(digits, self._pw))

    def digits(self, a: int) -> list[int]:
        return [int(c) for c in self._digits[a]]

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.s:
            raise ValueError(f"too many coordinates for GF({self.q})")
        return self._encode(list(digits) + [0] * (self.s - len(digits)))

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self, self.primitive)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, self._check(value))

    def _check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element encoding of GF({self.q})")
        return a

    def __repr__(self):
        mod = "" if self.s == 1 else f", modulus={self.modulus}"
        return f"FieldCtx(q={self.q}{mod}, primitive={self.primitive})"

    # -- arithmetic ---------------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self._add_l is not None:
            return self._add_l[a][b]
        return self._encode((self._digits[a] + self._digits[b]) % self.p)

    def neg(self, a: int) -> int:
        if self.s == 1:
            return -a % self.p
        return self._encode(-self._digits[a] % self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_l[(self._log_l[a] + self._log_l[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZeroError("zero has no inverse")
        return self._exp_l[-self._log_l[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZeroError("zero to a negative power")
            return 1 if n == 0 else 0
        return self._exp_l[self._log_l[a] * n % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZeroError("discrete log of zero")
        return self._log_l[a]

    def alpha_pow(self, k: int) -> int:
        return self._exp_l[k % (self.q - 1)]

    def frobenius(self, a: int, sigma: int = 1) -> int:
        """x -> x^(p^sigma)."""
        return self.pow(a, self.p ** (sigma % self.s))

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p); the result is returned as a field element."""
        acc = 0
        for i in range(self.s):
            acc = self.add(acc, self.pow(a, self.p**i))
        return acc

    def is_square(self, a: int) -> bool:
        return a == 0 or self.p == 2 or self.log(a) % 2 == 0

    def sqrt(self, a: int) -> int | None:
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        k = self.log(a)
        return self.alpha_pow(k // 2) if k % 2 == 0 else None

    def elements(self) -> range:
        return range(self.q)

    def by_log(self) -> list[int]:
        """Elements ordered 0, alpha^0, alpha^1, ..."""
        return [0] + self._exp_l

    def lex_key(self, a: int) -> tuple[int, ...]:
        """Coefficient tuple low-to-high; defines the default 'smallest element' order."""
        return tuple(self.digits(a))

    # -- dense tables for the numeric kernels -----------------------------------------

    def _require_tables(self):
        if self.q > MAX_TABLE_Q:
            raise FieldTooLargeError(f"dense tables need q <= {MAX_TABLE_Q}, got {self.q}")

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        if self.s == 1:
            r = np.arange(self.q)
            return ((r[:, None] + r[None, :]) % self.p).astype(np.int32)
        d = self._digits
        summed = (d[:, None, :] + d[None, :, :]) % self.p
        return (summed @ np.array(self._pw)).astype(np.int32)

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        return ((-self._digits % self.p) @ np.array(self._pw)).astype(np.int32)

    @functools.cached_property
    def sub_table(self) -> np.ndarray:
        return np.ascontiguousarray(self.add_table[:, self.neg_table])

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        q = self.q
        lg = self._log
        s = (lg[:, None] + lg[None, :]) % (q - 1)
        t = self._exp[s]
        t[0, :] = 0
        t[:, 0] = 0
        return t.astype(np.int32)

    @functools.cached_property
    def inv_table(self) -> np.ndarray:
        t = np.zeros(self.q, dtype=np.int32)
        t[1:] = self._exp[-self._log[1:] % (self.q - 1)]
        return t

    # -- cyclotomy ----------------------------------------------------------------------

    def cyclotomic_classes(self, e: int) -> list["CyclotomicClass"]:
        if e < 1 or (self.q - 1) % e:
            raise NotADivisorError(f"{e} does not divide q-1 = {self.q - 1}")
        size = (self.q - 1) // e
        return [
            CyclotomicClass(e, i, frozenset(self.alpha_pow(k * e + i) for k in range(size)))
            for i in range(e)
        ]

    def class_index(self, a: int, e: int) -> int:
        """Index i with a in C_i^e."""
        return self.log(a) % e


@dataclass(frozen=True)
class CyclotomicClass:
    e: int
    i: int
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.members


@dataclass(frozen=True)
class FieldElement:
    """Operator wrapper around an encoded element; refuses to mix fields."""

    ctx: FieldCtx
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise MixedFieldsError("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, n))

    def inv(self):
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.ctx.q})<{format_element(self.ctx, self.value)}>"


def _default_modulus(p: int, s: int) -> tuple[int, ...]:
    q = p**s
    for tail in _lex_tuples(p, s):
        if tail[0] == 0:
            continue
        mod = list(tail) + [1]
        if _has_full_order([0, 1] + [0] * (s - 2), mod, p, q):
            return tuple(mod)
    raise AssertionError("every finite field has a primitive polynomial")


@functools.lru_cache(maxsize=None)
def _build(p: int, s: int, modulus: tuple[int, ...] | None, primitive: int | None) -> FieldCtx:
    q = p**s
    if s == 1:
        mod = (0, 1)

        def full(a):
            if a % p == 0:
                return False
            return all(pow(a, (q - 1) // r, p) != 1 for r in prime_factors(q - 1))
    else:
        if modulus is None:
            mod = _default_modulus(p, s)
        else:
            mod = modulus
            if not is_irreducible_mod_p(mod, p):
                raise ReducibleModulusError(f"modulus {list(mod)} is reducible over GF({p})")

        def full(a):
            digs = [(a // p**i) % p for i in range(s)]
            return _has_full_order(digs, mod, p, q)

    if primitive is not None:
        if not 0 < primitive < q or not full(primitive):
            raise NotPrimitiveError(f"{primitive} is not a primitive element of GF({q})")
        g = primitive
    else:
        key = lambda a: tuple((a // p**i) % p for i in range(s))  # noqa: E731
        g = min((a for a in range(1, q) if full(a)), key=key)
    return FieldCtx(p, s, mod, g)


def build_field(
    p: int,
    s: int = 1,
    modulus: Sequence[int] | None = None,
    primitive: int | None = None,
) -> FieldCtx:
    """Construct GF(p^s).

    ``modulus`` is the monic defining polynomial, constant term first (ignored for s=1).
    When omitted, the lexicographically smallest primitive polynomial is used, comparing
    coefficient tuples (c0, c1, ...) low-to-high.  The primitive element defaults to the
    smallest element of order q-1 in the same order.  Contexts are cached, so equal
    arguments give the identical object.
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if s < 1:
        raise ValueError("exponent must be positive")
    if p**s > MAX_Q:
        raise FieldTooLargeError(f"q = {p**s} exceeds the cap {MAX_Q}")
    mod = None
    if modulus is not None and s > 1:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != s + 1 or mod[-1] != 1:
            raise ReducibleModulusError(f"modulus must be monic of degree {s}, got {list(modulus)}")
    return _build(p, s, mod, primitive)


def field_of_order(q: int) -> FieldCtx:
    pp = prime_power(q)
    if pp is None:
        raise NonPrimeError(f"{q} is not a prime power")
    return build_field(*pp)


def format_element(ctx: FieldCtx, a: int) -> str:
    """Integers for prime fields, ``a^k`` powers of the primitive element otherwise."""
    if ctx.s == 1:
        return str(a)
    if a == 0:
        return "0"
    return f"a^{ctx.log(a)}"
