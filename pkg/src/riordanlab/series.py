"""Formal power series known modulo t^(N+1) over a ring.

All operations are exact.  Two operands must share ring and precision;
nothing is ever truncated or coerced implicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    InnerNotVanishing,
    NotOne,
    NotUnit,
    NotVanishing,
    ParseError,
    PrecisionMismatch,
    RingMismatch,
    UnsupportedRing,
    WrongRing,
)
from .parsing import parse_expression
from .rings import INFINITE, Quotient, Rationals, RingDescriptor, RingElement

__all__ = [
    "DEFAULT_PRECISION",
    "TruncatedSeries",
    "from_rational",
    "binomial_series",
    "parse_series",
]

DEFAULT_PRECISION = 16


def _raw(ring: RingDescriptor, c) -> object:
    if isinstance(c, RingElement):
        if c.ring != ring:
            raise RingMismatch(f"coefficient from {c.ring} in a series over {ring}")
        return c.value
    if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
        return ring.normalize(ring.from_int(c) if isinstance(c, int) else c)
    raise TypeError(f"cannot use {c!r} as a coefficient")


@dataclass(frozen=True)
class TruncatedSeries:
    """``coeffs`` holds the N+1 raw canonical coefficients c_0..c_N."""

    ring: RingDescriptor
    coeffs: tuple

    # -- construction

    @classmethod
    def from_coeffs(cls, ring: RingDescriptor, coeffs: Iterable, N: int | None = None) -> TruncatedSeries:
        """Build from ints, fractions or ring elements; pads with zeros to
        precision ``N`` (extra terms beyond N are dropped)."""
        raw = [_raw(ring, c) for c in coeffs]
        if N is None:
            N = max(len(raw) - 1, 0)
        raw = raw[: N + 1] + [ring.zero] * (N + 1 - len(raw))
        return cls(ring, tuple(raw))

    @classmethod
    def zero(cls, ring: RingDescriptor, N: int = DEFAULT_PRECISION) -> TruncatedSeries:
        return cls(ring, (ring.zero,) * (N + 1))

    @classmethod
    def constant(cls, ring: RingDescriptor, c, N: int = DEFAULT_PRECISION) -> TruncatedSeries:
        return cls(ring, (_raw(ring, c),) + (ring.zero,) * N)

    @classmethod
    def one(cls, ring: RingDescriptor, N: int = DEFAULT_PRECISION) -> TruncatedSeries:
        return cls.constant(ring, 1, N)

    @classmethod
    def monomial(cls, ring: RingDescriptor, k: int, N: int = DEFAULT_PRECISION, c=1) -> TruncatedSeries:
        """c*t^k, which is the zero series when k > N."""
        coeffs = [ring.zero] * (N + 1)
        if k <= N:
            coeffs[k] = _raw(ring, c)
        return cls(ring, tuple(coeffs))

    @classmethod
    def t(cls, ring: RingDescriptor, N: int = DEFAULT_PRECISION) -> TruncatedSeries:
        return cls.monomial(ring, 1, N)

    # -- basic accessors

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> RingElement:
        return RingElement(self.ring, self.coeffs[k])

    def elements(self) -> list[RingElement]:
        return [RingElement(self.ring, c) for c in self.coeffs]

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(c == z for c in self.coeffs)

    def valuation(self) -> int | float:
        """Index of the first nonzero coefficient.  The zero truncation gives
        ``INFINITE``: it cannot tell 0 apart from a series of order > N."""
        z = self.ring.zero
        for k, c in enumerate(self.coeffs):
            if c != z:
                return k
        return INFINITE

    def truncate(self, n: int) -> TruncatedSeries:
        if n > self.N:
            raise PrecisionMismatch(f"cannot raise precision from {self.N} to {n}")
        return TruncatedSeries(self.ring, self.coeffs[: n + 1])

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by t^k (k >= 0) at the same precision."""
        z = self.ring.zero
        return TruncatedSeries(self.ring, ((z,) * k + self.coeffs)[: self.N + 1])

    # -- arithmetic

    def _check(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"series over {self.ring} and {other.ring}")
        if other.N != self.N:
            raise PrecisionMismatch(f"precisions {self.N} and {other.N} differ")

    def _lift(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RingElement)) and not isinstance(other, bool):
            return TruncatedSeries.constant(self.ring, other, self.N)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        add = self.ring.add
        return TruncatedSeries(self.ring, tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        sub = self.ring.sub
        return TruncatedSeries(self.ring, tuple(sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        neg = self.ring.neg
        return TruncatedSeries(self.ring, tuple(neg(a) for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RingElement)) and not isinstance(other, bool):
            c = _raw(self.ring, other)
            mul = self.ring.mul
            return TruncatedSeries(self.ring, tuple(mul(c, a) for a in self.coeffs))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries(self.ring, _cauchy(self.ring, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncatedSeries.one(self.ring, self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def reciprocal(self) -> TruncatedSeries:
        ring = self.ring
        a = self.coeffs
        if not ring.is_unit(a[0]):
            raise NotUnit(f"constant term {ring.format(a[0])} is not a unit in {ring}")
        inv0 = ring.inverse(a[0])
        add, mul, neg = ring.add, ring.mul, ring.neg
        b = [inv0]
        for k in range(1, len(a)):
            acc = ring.zero
            for i in range(1, k + 1):
                acc = add(acc, mul(a[i], b[k - i]))
            b.append(neg(mul(inv0, acc)))
        return TruncatedSeries(ring, tuple(b))

    def __call__(self, inner: TruncatedSeries) -> TruncatedSeries:
        return self.compose(inner)

    def compose(self, inner: TruncatedSeries) -> TruncatedSeries:
        """self(inner(t)), by Horner's rule; ``inner`` must vanish at 0."""
        self._check(inner)
        ring = self.ring
        if inner.coeffs[0] != ring.zero:
            raise InnerNotVanishing("inner series of a composition must have zero constant term")
        return TruncatedSeries(ring, _compose(ring, self.coeffs, inner.coeffs))

    def compositional_inverse(self) -> TruncatedSeries:
        """The series h with self(h(t)) = h(self(t)) = t.

        Solved degree by degree; only the linear coefficient is ever
        inverted, so this works over any commutative ring.
        """
        ring = self.ring
        f = self.coeffs
        N = self.N
        if f[0] != ring.zero:
            raise NotVanishing("series to invert must have zero constant term")
        if N < 1:
            return self
        if not ring.is_unit(f[1]):
            raise NotUnit(f"linear coefficient {ring.format(f[1])} is not a unit in {ring}")
        add, mul, neg = ring.add, ring.mul, ring.neg
        z = ring.zero
        inv1 = ring.inverse(f[1])
        h = [z] * (N + 1)
        h[1] = inv1
        # powers[j][k] = [t^k] h^j, filled one degree at a time
        powers = [[z] * (N + 1) for _ in range(N + 1)]
        powers[1][1] = inv1
        for j in range(2, N + 1):
            powers[j][j] = mul(powers[j - 1][j - 1], inv1)
        for k in range(2, N + 1):
            acc = z
            for j in range(2, k + 1):
                if j < k:
                    # [t^k] h^j = sum_i h_i [t^(k-i)] h^(j-1); h_k is not needed here
                    s = z
                    pj = powers[j - 1]
                    for i in range(1, k - j + 2):
                        if h[i] != z:
                            s = add(s, mul(h[i], pj[k - i]))
                    powers[j][k] = s
                acc = add(acc, mul(f[j], powers[j][k]))
            h[k] = neg(mul(inv1, acc))
            powers[1][k] = h[k]
        return TruncatedSeries(ring, tuple(h))

    # -- printing

    def __str__(self) -> str:
        return format_series(self.ring, self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.ring}, {self} mod t^{self.N + 1})"


def _cauchy(ring: RingDescriptor, a: Sequence, b: Sequence) -> tuple:
    n = len(a)
    tables = ring._tables if isinstance(ring, Quotient) else None
    if tables is not None:
        # codes 0..size-1 with zero = 0: index the flat tables directly
        add_t, mul_t = tables
        s = ring.size
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                row = x * s
                for j in range(n - i):
                    y = b[j]
                    if y:
                        k = i + j
                        out[k] = add_t[out[k] * s + mul_t[row + y]]
        return tuple(out)
    add, mul = ring.add, ring.mul
    z = ring.zero
    out = [z] * n
    for i, x in enumerate(a):
        if x != z:
            for j in range(n - i):
                y = b[j]
                if y != z:
                    out[i + j] = add(out[i + j], mul(x, y))
    return tuple(out)


def _compose(ring: RingDescriptor, f: Sequence, g: Sequence) -> tuple:
    n = len(f)
    z = ring.zero
    add = ring.add
    acc = [z] * n
    for k in range(n - 1, -1, -1):
        acc = list(_cauchy(ring, acc, g))
        acc[0] = add(acc[0], f[k])
    return tuple(acc)


def _as_series(ring, p, N) -> TruncatedSeries:
    if isinstance(p, TruncatedSeries):
        if p.N != N:
            p = TruncatedSeries.from_coeffs(ring, p.elements(), N)
        return p
    return TruncatedSeries.from_coeffs(ring, p, N)


def from_rational(numerator, denominator, ring: RingDescriptor, N: int = DEFAULT_PRECISION) -> TruncatedSeries:
    """Expand numerator/denominator (coefficient sequences, lowest degree
    first) modulo t^(N+1)."""
    num = _as_series(ring, numerator, N)
    den = _as_series(ring, denominator, N)
    return num * den.reciprocal()


def binomial_series(u: TruncatedSeries, exponent) -> TruncatedSeries:
    """u^exponent for u with constant term 1, over Q, via the binomial
    expansion sum_k C(exponent, k) (u - 1)^k."""
    if not isinstance(u.ring, Rationals):
        raise UnsupportedRing(f"binomial series needs Q, not {u.ring}")
    if u.coeffs[0] != 1:
        raise NotOne("binomial series needs constant term 1")
    e = Fraction(exponent)
    v = u - 1
    result = TruncatedSeries.one(u.ring, u.N)
    term = TruncatedSeries.one(u.ring, u.N)
    binom = Fraction(1)
    for k in range(1, u.N + 1):
        binom = binom * (e - k + 1) / k
        term = term * v
        if term.is_zero():
            break
        result = result + term * binom
    return result


# -- printing -----------------------------------------------------------------


def _monomial(k: int) -> str:
    return "t" if k == 1 else f"t^{k}"


def format_series(ring: RingDescriptor, coeffs: Sequence) -> str:
    signed = not ring.is_finite
    parts: list[tuple[str, str]] = []
    for k, c in enumerate(coeffs):
        if c == ring.zero:
            continue
        sign = "+"
        if signed and c < 0:
            sign, c = "-", -c
        cs = ring.format(c)
        if k == 0:
            body = cs
        elif cs == "1":
            body = _monomial(k)
        elif " " in cs:
            body = f"({cs})*{_monomial(k)}"
        else:
            body = f"{cs}*{_monomial(k)}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- parsing ------------------------------------------------------------------


class _SeriesAlgebra:
    def __init__(self, ring: RingDescriptor, N: int):
        self.ring, self.N = ring, N

    def const(self, n):
        return TruncatedSeries.constant(self.ring, n, self.N)

    def symbol(self, name):
        if name == "t":
            return TruncatedSeries.t(self.ring, self.N)
        if name == "X":
            if not isinstance(self.ring, Quotient):
                raise WrongRing(f"symbol X is not defined in {self.ring}")
            return TruncatedSeries.constant(self.ring, RingElement(self.ring, self.ring.generator), self.N)
        raise ParseError(f"unknown symbol {name!r} in series expression")

    def div(self, a, b):
        return a / b

    def pow(self, a, e):
        if e.denominator == 1:
            return a ** int(e)
        return binomial_series(a, e)


def parse_series(ring: RingDescriptor, text: str, N: int = DEFAULT_PRECISION) -> TruncatedSeries:
    """Parse an expression in ``t`` such as ``t/(1-3t)`` or
    ``(1+27t^3)^(-1/3)``.  A trailing ``(mod t^K)`` sets the precision to
    K - 1 and overrides ``N``."""
    body, N = _strip_mod_suffix(text, N)
    return parse_expression(body, _SeriesAlgebra(ring, N))


def _strip_mod_suffix(text: str, N: int) -> tuple[str, int]:
    import re

    m = re.search(r"\(\s*mod\s+t\s*\^\s*(\d+)\s*\)\s*$", text)
    if m is None:
        return text, N
    k = int(m.group(1))
    if k < 1:
        raise ParseError("mod t^0 leaves no coefficients")
    return text[: m.start()], k - 1


def series_arith(op: str, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def is_infinite(v) -> bool:
    return isinstance(v, float) and math.isinf(v)
