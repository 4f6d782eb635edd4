"""Riordan arrays as pairs (g, f) of truncated series.

The group law is ``(g1, f1) * (g2, f2) = (g1 * g2(f1), f2(f1))`` with identity
``(1, t)``.  Pairs are proper: g_0 and f_1 must be units and f_0 = 0.
Equality is coefficientwise at the shared precision; nothing here claims
anything about the untruncated arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotUnit, NotVanishing, ParseError, PrecisionMismatch, PrecisionTooLow, RingMismatch
from .parsing import split_top_level
from .rings import Rationals, RingDescriptor
from .series import DEFAULT_PRECISION, TruncatedSeries, binomial_series, parse_series

__all__ = ["RiordanPair", "parse_pair", "pascal", "catalan"]


@dataclass(frozen=True)
class RiordanPair:
    g: TruncatedSeries
    f: TruncatedSeries

    def __post_init__(self):
        g, f = self.g, self.f
        if g.ring != f.ring:
            raise RingMismatch(f"g over {g.ring}, f over {f.ring}")
        if g.N != f.N:
            raise PrecisionMismatch(f"g has precision {g.N}, f has {f.N}")
        ring = g.ring
        if not ring.is_unit(g.coeffs[0]):
            raise NotUnit(f"g_0 = {g[0]} is not a unit")
        if f.coeffs[0] != ring.zero:
            raise NotVanishing(f"f_0 = {f[0]} must be zero")
        if f.N >= 1 and not ring.is_unit(f.coeffs[1]):
            raise NotUnit(f"f_1 = {f[1]} is not a unit")

    @classmethod
    def identity(cls, ring: RingDescriptor, N: int = DEFAULT_PRECISION) -> RiordanPair:
        return cls(TruncatedSeries.one(ring, N), TruncatedSeries.t(ring, N))

    @classmethod
    def appell(cls, g: TruncatedSeries) -> RiordanPair:
        return cls(g, TruncatedSeries.t(g.ring, g.N))

    @classmethod
    def lagrange(cls, f: TruncatedSeries) -> RiordanPair:
        return cls(TruncatedSeries.one(f.ring, f.N), f)

    @property
    def ring(self) -> RingDescriptor:
        return self.g.ring

    @property
    def N(self) -> int:
        return self.g.N

    def is_identity(self) -> bool:
        return self == RiordanPair.identity(self.ring, self.N)

    def is_appell(self) -> bool:
        return self.f == TruncatedSeries.t(self.ring, self.N)

    def is_lagrange(self) -> bool:
        return self.g == TruncatedSeries.one(self.ring, self.N)

    def is_substitution(self) -> bool:
        return self.is_lagrange() and (self.N < 1 or self.f.coeffs[1] == self.ring.one)

    # -- group law

    def __mul__(self, other: RiordanPair) -> RiordanPair:
        if not isinstance(other, RiordanPair):
            return NotImplemented
        return RiordanPair(self.g * other.g.compose(self.f), other.f.compose(self.f))

    def inverse(self) -> RiordanPair:
        fbar = self.f.compositional_inverse()
        return RiordanPair(self.g.compose(fbar).reciprocal(), fbar)

    def __pow__(self, k: int) -> RiordanPair:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = RiordanPair.identity(self.ring, self.N)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, n: int) -> RiordanPair:
        return RiordanPair(self.g.truncate(n), self.f.truncate(n))

    # -- derived objects

    def to_matrix(self, n: int | None = None):
        """The (n+1)x(n+1) truncation with d[i][k] = [t^i] g f^k."""
        from .truncated import TruncatedRiordanMatrix

        if n is None:
            n = self.N
        if n > self.N:
            raise PrecisionTooLow(f"level {n} needs precision >= {n}, have {self.N}")
        g, f = self.g.truncate(n), self.f.truncate(n)
        cols = []
        col = g
        for _ in range(n + 1):
            cols.append(col.coeffs)
            col = col * f
        rows = tuple(tuple(cols[k][i] for k in range(i + 1)) for i in range(n + 1))
        return TruncatedRiordanMatrix(self.ring, n, rows)

    def a_sequence(self) -> TruncatedSeries:
        """A(t) = t / fbar(t), returned at precision N - 1 (the quotient by t
        uses up one degree)."""
        if self.N < 1:
            raise PrecisionTooLow("the A-sequence needs precision >= 1")
        fbar = self.f.compositional_inverse()
        q = TruncatedSeries(self.ring, fbar.coeffs[1:])
        return q.reciprocal()

    def split(self) -> tuple[RiordanPair, RiordanPair]:
        """(g, f) = (g, t) * (1, f): the Appell and Lagrange factors."""
        return RiordanPair.appell(self.g), RiordanPair.lagrange(self.f)

    def __str__(self) -> str:
        return f"({self.g}, {self.f})"


def appell_lagrange_split(x: RiordanPair) -> tuple[RiordanPair, RiordanPair]:
    return x.split()


def parse_pair(ring: RingDescriptor, text: str, N: int = DEFAULT_PRECISION) -> RiordanPair:
    """Parse ``(g-expr, f-expr)``."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(f"a pair must look like (g, f): {text!r}")
    parts = split_top_level(body[1:-1])
    if len(parts) != 2:
        raise ParseError(f"a pair needs exactly two components: {text!r}")
    return RiordanPair(parse_series(ring, parts[0], N), parse_series(ring, parts[1], N))


def pascal(ring: RingDescriptor, N: int = DEFAULT_PRECISION) -> RiordanPair:
    """(1/(1-t), t/(1-t))."""
    one_minus_t = TruncatedSeries.from_coeffs(ring, [1, -1], N)
    g = one_minus_t.reciprocal()
    return RiordanPair(g, g.shift(1))


def catalan(N: int = DEFAULT_PRECISION) -> RiordanPair:
    """(C(t), t C(t)) over Q with C(t) = (1 - sqrt(1 - 4t)) / (2t)."""
    Q = Rationals()
    root = binomial_series(TruncatedSeries.from_coeffs(Q, [1, -4], N + 1), Fraction(1, 2))
    numer = TruncatedSeries.one(Q, N + 1) - root
    C = TruncatedSeries(Q, numer.coeffs[1:]) * Fraction(1, 2)
    return RiordanPair(C, C.shift(1))
