"""Commutative rings with identity and exact canonical-form arithmetic.

Four constructive families are supported::

    Z                       arbitrary-precision integers
    Q                       rationals (reduced fractions)
    Z/m                     integers modulo m >= 2
    Z/m[X]/(p(X))           quotient by a monic polynomial p over Z/m

A ring descriptor does the arithmetic on *raw* canonical values (``int`` for
Z and Z/m, ``Fraction`` for Q, an integer code for quotients, see
:class:`Quotient`); :class:`RingElement` wraps a raw value
together with its ring and gives it operators.  Series and matrices store raw
values internally and only wrap them at the API boundary.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator

from .errors import (
    InfiniteRing,
    InvalidModulus,
    NonMonicModulus,
    NotUnit,
    ParseError,
    RingMismatch,
    WrongRing,
)
from .parsing import parse_expression

__all__ = [
    "RingDescriptor",
    "Integers",
    "Rationals",
    "Modular",
    "Quotient",
    "RingElement",
    "parse_ring",
    "parse_element",
    "additive_order_of_one",
    "INFINITE",
]

INFINITE = math.inf

# finite rings up to this size get precomputed add/mul tables
_TABLE_LIMIT = 4096


class RingDescriptor:
    """Base class of the four ring families.  Subclasses are frozen dataclasses,
    so equality and hashing are structural."""

    is_finite = False

    # raw arithmetic, overridden per family
    def normalize(self, value: Any) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    @cached_property
    def zero(self):
        return self.from_int(0)

    @cached_property
    def one(self):
        return self.from_int(1)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def element(self, value) -> RingElement:
        if isinstance(value, int) and not isinstance(value, bool):
            value = self.from_int(value)
        return RingElement(self, self.normalize(value))

    def elements(self) -> Iterator[RingElement]:
        """Every element exactly once, in lexicographic order of representatives."""
        if not self.is_finite:
            raise InfiniteRing(f"{self} is infinite")
        return (RingElement(self, v) for v in self.raw_elements)

    @property
    def raw_elements(self) -> tuple:
        raise InfiniteRing(f"{self} is infinite")

    @property
    def size(self) -> int:
        raise InfiniteRing(f"{self} is infinite")

    @cached_property
    def raw_units(self) -> tuple:
        return tuple(v for v in self.raw_elements if self.is_unit(v))

    def index_of(self, a) -> int:
        raise InfiniteRing(f"{self} is infinite")

    def parse(self, text: str) -> RingElement:
        return parse_element(self, text)


@dataclass(frozen=True)
class Integers(RingDescriptor):
    def __str__(self) -> str:
        return "Z"

    def normalize(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ParseError(f"{value} is not an integer")
            return value.numerator
        return int(value)

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a in (1, -1)

    def inverse(self, a):
        if a not in (1, -1):
            raise NotUnit(f"{a} is not a unit in Z")
        return a

    def format(self, a):
        return str(a)


@dataclass(frozen=True)
class Rationals(RingDescriptor):
    def __str__(self) -> str:
        return "Q"

    def normalize(self, value):
        return Fraction(value)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def inverse(self, a):
        if a == 0:
            raise NotUnit("0 is not a unit in Q")
        return 1 / a

    def format(self, a):
        return str(a)


@dataclass(frozen=True)
class Modular(RingDescriptor):
    m: int

    is_finite = True

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise InvalidModulus(f"modulus must be an integer >= 2, got {self.m!r}")

    def __str__(self) -> str:
        return f"Z/{self.m}"

    def normalize(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ParseError(f"fraction {value} in {self}")
            value = value.numerator
        return int(value) % self.m

    def from_int(self, n):
        return n % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def neg(self, a):
        return -a % self.m

    def is_unit(self, a):
        return math.gcd(a, self.m) == 1

    def inverse(self, a):
        if math.gcd(a, self.m) != 1:
            raise NotUnit(f"{a} is not a unit in {self}")
        return pow(a, -1, self.m)

    def format(self, a):
        return str(a)

    @property
    def raw_elements(self):
        return tuple(range(self.m))

    @property
    def size(self):
        return self.m

    def index_of(self, a):
        return a


@dataclass(frozen=True)
class Quotient(RingDescriptor):
    """Z/m[X]/(p(X)); ``modulus`` lists the coefficients of p in increasing
    degree, reduced into [0, m), with leading coefficient 1.

    Raw values are integer codes: the coefficient tuple ``(c0, ..., c_{d-1})``
    of the reduced representative read as base-m digits, ``c0`` most
    significant.  Code order is therefore the lexicographic order of
    representatives, and 0 encodes the zero element.
    """

    m: int
    modulus: tuple[int, ...]

    is_finite = True

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise InvalidModulus(f"modulus must be an integer >= 2, got {self.m!r}")
        p = tuple(c % self.m for c in self.modulus)
        while p and p[-1] == 0:
            p = p[:-1]
        if len(p) < 2:
            raise NonMonicModulus("modulus polynomial must have degree >= 1")
        if p[-1] != 1:
            raise NonMonicModulus(f"modulus polynomial {_format_poly(p)} is not monic")
        object.__setattr__(self, "modulus", p)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def __str__(self) -> str:
        return f"Z/{self.m}[X]/({_format_poly(self.modulus)})"

    # -- coefficient tuples <-> codes

    def encode(self, coeffs) -> int:
        idx = 0
        for c in coeffs:
            idx = idx * self.m + c
        return idx

    def coefficients(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            a, c = divmod(a, self.m)
            out.append(c)
        return tuple(reversed(out))

    def _reduce(self, coeffs: list[int]) -> int:
        m, p, d = self.m, self.modulus, self.degree
        c = list(coeffs)
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k] % m
            if lead:
                for i in range(d):
                    c[k - d + i] -= lead * p[i]
            c[k] = 0
        c = c[:d] + [0] * (d - len(c))
        return self.encode(x % m for x in c)

    def normalize(self, value):
        if isinstance(value, tuple):
            return self._reduce(list(value))
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ParseError(f"fraction {value} in {self}")
            value = value.numerator
        value = int(value)
        if not 0 <= value < self.size:
            raise ValueError(f"code {value} out of range for {self}")
        return value

    def from_int(self, n):
        return self._reduce([n])

    @property
    def generator(self) -> int:
        return self._reduce([0, 1])

    def _slow_add(self, a, b):
        m = self.m
        return self.encode((x + y) % m for x, y in zip(self.coefficients(a), self.coefficients(b)))

    def _slow_mul(self, a, b):
        ca, cb = self.coefficients(a), self.coefficients(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self._reduce(prod)

    @cached_property
    def _tables(self):
        s = self.size
        if s > _TABLE_LIMIT:
            return None
        add = [self._slow_add(a, b) for a in range(s) for b in range(s)]
        mul = [self._slow_mul(a, b) for a in range(s) for b in range(s)]
        return add, mul

    def add(self, a, b):
        t = self._tables
        return t[0][a * self.size + b] if t else self._slow_add(a, b)

    def mul(self, a, b):
        t = self._tables
        return t[1][a * self.size + b] if t else self._slow_mul(a, b)

    @cached_property
    def _neg(self):
        m = self.m
        return tuple(self.encode(-x % m for x in self.coefficients(a)) for a in range(self.size))

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    @cached_property
    def _inverse_table(self) -> dict:
        # Exhaustive scan; gcd/resultant shortcuts are unsound with zero divisors.
        one = self.one
        table = {}
        elems = range(self.size)
        for a in elems:
            for b in elems:
                if self.mul(a, b) == one:
                    table[a] = b
                    break
        return table

    def is_unit(self, a):
        return a in self._inverse_table

    def inverse(self, a):
        try:
            return self._inverse_table[a]
        except KeyError:
            raise NotUnit(f"{self.format(a)} is not a unit in {self}") from None

    def format(self, a):
        return _format_poly_increasing(self.coefficients(a))

    @property
    def raw_elements(self):
        return range(self.size)

    @cached_property
    def size(self):
        return self.m**self.degree

    def index_of(self, a):
        return a


@dataclass(frozen=True)
class RingElement:
    ring: RingDescriptor
    value: Any

    def _other(self, other) -> Any:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self.value
        while k:
            if k & 1:
                result = self.ring.mul(result, base)
            base = self.ring.mul(base, base)
            k >>= 1
        return RingElement(self.ring, result)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def inverse(self) -> RingElement:
        return RingElement(self.ring, self.ring.inverse(self.value))

    def __str__(self) -> str:
        return self.ring.format(self.value)

    def __repr__(self) -> str:
        return f"RingElement({self.ring}, {self})"


def unit_inverse(a: RingElement) -> RingElement:
    return a.inverse()


def arith(op: str, a: RingElement, b: RingElement | None = None) -> RingElement:
    if op == "neg":
        if b is not None:
            raise ValueError("neg takes a single operand")
        return -a
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def additive_order_of_one(ring: RingDescriptor) -> int | float:
    """Least n with n*1 = 0, or ``INFINITE`` in characteristic zero."""
    if not ring.is_finite:
        return INFINITE
    acc, n = ring.one, 1
    while not ring.is_zero(acc):
        acc = ring.add(acc, ring.one)
        n += 1
    return n


# -- formatting ---------------------------------------------------------------


def _monomial(c: int, k: int, var: str = "X") -> str:
    if k == 0:
        return str(c)
    power = var if k == 1 else f"{var}^{k}"
    return power if c == 1 else f"{c}*{power}"


def _format_poly_increasing(coeffs) -> str:
    terms = [_monomial(c, k) for k, c in enumerate(coeffs) if c]
    return " + ".join(terms) if terms else "0"


def _format_poly(coeffs) -> str:
    """Modulus polynomials print in decreasing degree without spaces, as in
    ring specs like ``Z/6[X]/(X^2+X+1)``."""
    terms = [_monomial(c, k) for k, c in reversed(list(enumerate(coeffs))) if c]
    return "+".join(terms) if terms else "0"


# -- parsing ------------------------------------------------------------------


class _ModPoly:
    """Dense polynomial over Z/m, used only while parsing a modulus."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, c: list[int]):
        self.m, self.c = m, [x % m for x in c]

    def _zip(self, other, sign):
        n = max(len(self.c), len(other.c))
        a = self.c + [0] * (n - len(self.c))
        b = other.c + [0] * (n - len(other.c))
        return _ModPoly(self.m, [x + sign * y for x, y in zip(a, b)])

    def __add__(self, other):
        return self._zip(other, 1)

    def __sub__(self, other):
        return self._zip(other, -1)

    def __neg__(self):
        return _ModPoly(self.m, [-x for x in self.c])

    def __mul__(self, other):
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(other.c):
                out[i + j] += x * y
        return _ModPoly(self.m, out)


class _ModPolyAlgebra:
    def __init__(self, m: int):
        self.m = m

    def const(self, n):
        return _ModPoly(self.m, [n])

    def symbol(self, name):
        if name != "X":
            raise ParseError(f"unknown symbol {name!r} in modulus polynomial")
        return _ModPoly(self.m, [0, 1])

    def div(self, a, b):
        raise ParseError("division is not allowed in a modulus polynomial")

    def pow(self, a, e):
        if e.denominator != 1 or e < 0:
            raise ParseError(f"bad exponent {e} in modulus polynomial")
        out = _ModPoly(self.m, [1])
        for _ in range(int(e)):
            out = out * a
        return out


_RING_RE = re.compile(r"^Z/(\d+)(?:\[X\]/\((.*)\))?$")


def parse_ring(spec: str) -> RingDescriptor:
    """Parse ``Z``, ``Q``, ``Z/<m>`` or ``Z/<m>[X]/(<monic polynomial>)``."""
    text = spec.replace(" ", "")
    if text == "Z":
        return Integers()
    if text == "Q":
        return Rationals()
    m = _RING_RE.match(text)
    if m is None:
        raise ParseError(f"not a ring spec: {spec!r}")
    modulus = int(m.group(1))
    if modulus < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
    if m.group(2) is None:
        return Modular(modulus)
    poly = parse_expression(m.group(2), _ModPolyAlgebra(modulus))
    return Quotient(modulus, tuple(poly.c))


class _ElementAlgebra:
    def __init__(self, ring: RingDescriptor):
        self.ring = ring

    def const(self, n):
        return self.ring.element(n)

    def symbol(self, name):
        if name == "X":
            if not isinstance(self.ring, Quotient):
                raise WrongRing(f"symbol X is not defined in {self.ring}")
            return RingElement(self.ring, self.ring.generator)
        raise ParseError(f"unknown symbol {name!r} in ring element")

    def div(self, a, b):
        if not isinstance(self.ring, Rationals):
            raise ParseError(f"'/' is only allowed in Q, not in {self.ring}")
        return a * b.inverse()

    def pow(self, a, e):
        if e.denominator != 1:
            raise ParseError(f"fractional exponent {e} on a ring element")
        return a ** int(e)


def parse_element(ring: RingDescriptor, text: str) -> RingElement:
    return parse_expression(text, _ElementAlgebra(ring))
