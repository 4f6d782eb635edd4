"""Truncated Riordan groups as groups of lower-triangular matrices.

A level-n matrix is the top-left (n+1)x(n+1) block of a Riordan array.
Levels are always explicit: multiplying matrices of different levels is an
error, and going down a level is done with :meth:`TruncatedRiordanMatrix.project`.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .errors import LevelMismatch, NotRiordan, NotUnit, ParseError, RingMismatch
from .rings import RingDescriptor, RingElement, parse_element, parse_ring
from .series import TruncatedSeries

__all__ = [
    "TruncatedRiordanMatrix",
    "P0KernelElement",
    "matrix_arith",
    "kernel_generator_l",
    "lagrange_kernel_generator_j",
    "enumerate_group",
    "group_cardinality",
    "projection_fibers",
    "FAMILIES",
]

FAMILIES = ("R", "A", "L", "J")


@dataclass(frozen=True)
class TruncatedRiordanMatrix:
    """``rows[i]`` holds the raw entries d[i][0..i]; entries above the
    diagonal are implicitly zero."""

    ring: RingDescriptor
    n: int
    rows: tuple

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> TruncatedRiordanMatrix:
        z, one = ring.zero, ring.one
        return cls(ring, n, tuple(tuple(one if j == i else z for j in range(i + 1)) for i in range(n + 1)))

    @classmethod
    def from_entries(cls, ring: RingDescriptor, entries) -> TruncatedRiordanMatrix:
        """From full square rows or lower-triangular rows of ints, ring
        elements or element strings."""
        n = len(entries) - 1
        rows = []
        for i, row in enumerate(entries):
            if len(row) not in (i + 1, n + 1):
                raise ParseError(f"row {i} has {len(row)} entries")
            vals = [_to_raw(ring, e) for e in row]
            if any(v != ring.zero for v in vals[i + 1 :]):
                raise NotRiordan(f"row {i} has a nonzero entry above the diagonal")
            rows.append(tuple(vals[: i + 1]))
        return cls(ring, n, tuple(rows))

    def __getitem__(self, ij: tuple[int, int]) -> RingElement:
        i, j = ij
        if j > i:
            return RingElement(self.ring, self.ring.zero)
        return RingElement(self.ring, self.rows[i][j])

    def _check(self, other: TruncatedRiordanMatrix) -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"matrices over {self.ring} and {other.ring}")
        if other.n != self.n:
            raise LevelMismatch(f"levels {self.n} and {other.n} differ")

    def __mul__(self, other: TruncatedRiordanMatrix) -> TruncatedRiordanMatrix:
        if not isinstance(other, TruncatedRiordanMatrix):
            return NotImplemented
        self._check(other)
        ring = self.ring
        add, mul, z = ring.add, ring.mul, ring.zero
        a, b = self.rows, other.rows
        rows = []
        for i in range(self.n + 1):
            ai = a[i]
            row = []
            for j in range(i + 1):
                acc = z
                for k in range(j, i + 1):
                    acc = add(acc, mul(ai[k], b[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return TruncatedRiordanMatrix(ring, self.n, tuple(rows))

    def inverse(self) -> TruncatedRiordanMatrix:
        ring = self.ring
        add, mul, neg, z = ring.add, ring.mul, ring.neg, ring.zero
        a = self.rows
        diag_inv = []
        for i in range(self.n + 1):
            if not ring.is_unit(a[i][i]):
                raise NotUnit(f"diagonal entry {ring.format(a[i][i])} is not a unit")
            diag_inv.append(ring.inverse(a[i][i]))
        x: list[list] = []
        for i in range(self.n + 1):
            row = [z] * (i + 1)
            row[i] = diag_inv[i]
            for j in range(i):
                acc = z
                for k in range(j, i):
                    acc = add(acc, mul(a[i][k], x[k][j]))
                row[j] = neg(mul(diag_inv[i], acc))
            x.append(row)
        return TruncatedRiordanMatrix(ring, self.n, tuple(tuple(r) for r in x))

    def __pow__(self, k: int) -> TruncatedRiordanMatrix:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = TruncatedRiordanMatrix.identity(self.ring, self.n)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self == TruncatedRiordanMatrix.identity(self.ring, self.n)

    def project(self, level: int | None = None) -> TruncatedRiordanMatrix:
        """Delete the last row and column (or keep the top-left block of the
        given level)."""
        if level is None:
            level = self.n - 1
        if not 0 <= level <= self.n:
            raise LevelMismatch(f"cannot project level {self.n} to level {level}")
        return TruncatedRiordanMatrix(self.ring, level, self.rows[: level + 1])

    def column(self, j: int) -> TruncatedSeries:
        z = self.ring.zero
        return TruncatedSeries(self.ring, tuple(self.rows[i][j] if i >= j else z for i in range(self.n + 1)))

    def reconstruct_pair(self):
        """The unique pair (g, f) at precision n whose level-n matrix is self.

        g is column 0 and f = column 1 / g; every column is then checked
        against d[i][k] = [t^i] g f^k.
        """
        from .riordan import RiordanPair

        ring = self.ring
        g = self.column(0)
        if not ring.is_unit(g.coeffs[0]):
            raise NotUnit(f"d[0][0] = {ring.format(g.coeffs[0])} is not a unit")
        if self.n == 0:
            f = TruncatedSeries.zero(ring, 0)
        else:
            f = self.column(1) * g.reciprocal()
        try:
            pair = RiordanPair(g, f)
        except NotUnit as exc:
            raise NotRiordan(str(exc)) from exc
        if pair.to_matrix(self.n) != self:
            raise NotRiordan("columns do not follow d[i][k] = [t^i] g f^k")
        return pair

    # -- packing for the kernels

    def packed(self) -> list:
        return [v for row in self.rows for v in row]

    @classmethod
    def from_packed(cls, ring: RingDescriptor, n: int, flat) -> TruncatedRiordanMatrix:
        rows = []
        pos = 0
        for i in range(n + 1):
            rows.append(tuple(flat[pos : pos + i + 1]))
            pos += i + 1
        return cls(ring, n, tuple(rows))

    # -- printing and JSON

    def entry_strings(self) -> list[list[str]]:
        fmt, z = self.ring.format, self.ring.zero
        return [[fmt(self.rows[i][j]) if j <= i else fmt(z) for j in range(self.n + 1)] for i in range(self.n + 1)]

    def key(self) -> tuple:
        """Canonical row-major element strings."""
        return tuple(tuple(r) for r in self.entry_strings())

    def __str__(self) -> str:
        fmt = self.ring.format
        return "\n".join("[" + ", ".join(fmt(v) for v in row) + "]" for row in self.rows)

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "n": self.n, "entries": self.entry_strings()}

    @classmethod
    def from_json(cls, data) -> TruncatedRiordanMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        ring = parse_ring(data["ring"])
        m = cls.from_entries(ring, data["entries"])
        if m.n != data["n"]:
            raise ParseError(f"declared level {data['n']} but {m.n + 1} rows given")
        return m


def _to_raw(ring: RingDescriptor, e):
    if isinstance(e, RingElement):
        if e.ring != ring:
            raise RingMismatch(f"entry from {e.ring} in a matrix over {ring}")
        return e.value
    if isinstance(e, str):
        return parse_element(ring, e).value
    return ring.element(e).value


def matrix_arith(op: str, A: TruncatedRiordanMatrix, B: TruncatedRiordanMatrix | None = None):
    if op == "mul":
        if B is None:
            raise ValueError("mul needs two operands")
        return A * B
    if op == "inv":
        return A.inverse()
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class P0KernelElement:
    """The matrix [[1, 0], [b, c]] of ker(P_0), c a unit.

    (b1, c1)(b2, c2) = (b1 + c1 b2, c1 c2).
    """

    b: RingElement
    c: RingElement

    def __post_init__(self):
        if self.b.ring != self.c.ring:
            raise RingMismatch("b and c live in different rings")
        if not self.c.is_unit():
            raise NotUnit(f"c = {self.c} is not a unit")

    @classmethod
    def identity(cls, ring: RingDescriptor) -> P0KernelElement:
        return cls(ring.element(0), ring.element(1))

    def __mul__(self, other: P0KernelElement) -> P0KernelElement:
        return P0KernelElement(self.b + self.c * other.b, self.c * other.c)

    def inverse(self) -> P0KernelElement:
        ci = self.c.inverse()
        return P0KernelElement(-(ci * self.b), ci)

    def to_matrix(self) -> TruncatedRiordanMatrix:
        ring = self.b.ring
        return TruncatedRiordanMatrix(ring, 1, ((ring.one,), (self.b.value, self.c.value)))


def _elem(ring: RingDescriptor, x) -> RingElement:
    return x if isinstance(x, RingElement) else ring.element(x)


def kernel_generator_l(alpha, beta, n: int, ring: RingDescriptor | None = None) -> TruncatedRiordanMatrix:
    """Level n+1 image of (1 + alpha t^(n+1), t + beta t^(n+1)), an element
    of ker(P_n)."""
    from .riordan import RiordanPair

    if n < 1:
        raise ValueError("kernel generators l are defined for n >= 1")
    ring = ring or alpha.ring
    alpha, beta = _elem(ring, alpha), _elem(ring, beta)
    N = n + 1
    g = TruncatedSeries.one(ring, N) + TruncatedSeries.monomial(ring, N, N, alpha)
    f = TruncatedSeries.t(ring, N) + TruncatedSeries.monomial(ring, N, N, beta)
    return RiordanPair(g, f).to_matrix(N)


def lagrange_kernel_generator_j(d, n: int, ring: RingDescriptor | None = None) -> TruncatedRiordanMatrix:
    """Level n+1 image of (1, t + d t^(n+1)), an element of the kernel of
    P_n restricted to the Lagrange subgroup."""
    from .riordan import RiordanPair

    if n < 1:
        raise ValueError("kernel generators j are defined for n >= 1")
    ring = ring or d.ring
    d = _elem(ring, d)
    N = n + 1
    f = TruncatedSeries.t(ring, N) + TruncatedSeries.monomial(ring, N, N, d)
    return RiordanPair.lagrange(f).to_matrix(N)


def _parameter_space(ring: RingDescriptor, n: int, family: str):
    """Free parameters (g_0..g_n, f_1..f_n) for each family, lexicographic."""
    elems = tuple(ring.raw_elements)
    units = ring.raw_units
    one, zero = (ring.one,), (ring.zero,)
    if family == "R":
        g_space = [units] + [elems] * n
        f_space = [units] + [elems] * (n - 1) if n >= 1 else []
    elif family == "A":
        g_space = [units] + [elems] * n
        f_space = [one] + [zero] * (n - 1) if n >= 1 else []
    elif family == "L":
        g_space = [one] + [zero] * n
        f_space = [units] + [elems] * (n - 1) if n >= 1 else []
    elif family == "J":
        g_space = [one] + [zero] * n
        f_space = [one] + [elems] * (n - 1) if n >= 1 else []
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return g_space, f_space


def enumerate_group(ring: RingDescriptor, n: int, family: str = "R") -> Iterator[TruncatedRiordanMatrix]:
    """Each element of R_n, A_n, L_n or J_n exactly once."""
    from .riordan import RiordanPair

    if not ring.is_finite:
        from .errors import InfiniteRing

        raise InfiniteRing(f"cannot enumerate a truncated group over {ring}")
    g_space, f_space = _parameter_space(ring, n, family)
    z = ring.zero
    for params in itertools.product(*g_space, *f_space):
        g = TruncatedSeries(ring, params[: n + 1])
        f = TruncatedSeries(ring, (z,) + params[n + 1 :])
        yield RiordanPair(g, f).to_matrix(n)


def group_cardinality(ring: RingDescriptor, n: int, family: str = "R") -> int:
    """Closed-form orders:  |R_n| = |D*|^2 |D|^(2n-1),  |A_n| = |D*| |D|^n,
    |L_n| = |D*| |D|^(n-1),  |J_n| = |D|^(n-1)  (n >= 1); at n = 0 the
    groups are D*, D*, 1, 1."""
    if not ring.is_finite:
        from .errors import InfiniteRing

        raise InfiniteRing(f"{ring} is infinite")
    d, u = ring.size, len(ring.raw_units)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n == 0:
        return {"R": u, "A": u, "L": 1, "J": 1}[family]
    return {
        "R": u * u * d ** (2 * n - 1),
        "A": u * d**n,
        "L": u * d ** (n - 1),
        "J": d ** (n - 1),
    }[family]


def projection_fibers(ring: RingDescriptor, n: int, family: str = "R") -> Counter:
    """Map each level-n matrix to the number of level-(n+1) elements of the
    family that project onto it."""
    return Counter(m.project() for m in enumerate_group(ring, n + 1, family))
