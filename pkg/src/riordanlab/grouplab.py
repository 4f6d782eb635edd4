"""Finite-group machinery over truncated Riordan matrices.

Closures, element orders, relation checking, minimal faithful truncation,
and the exhaustive or sampled checks behind the obstructions to embedding
A_4 and S_4 (substitution-group relation search, the order-3 leading
coefficient law, the C^3 identity).
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    CapExceeded,
    InfiniteRing,
    LevelMismatch,
    NoFaithfulLevel,
    NotInvolution,
    ParseError,
    PreconditionViolated,
    RingMismatch,
    UnboundName,
    UnsupportedRing,
)
from .kernels import kernel_for
from .riordan import RiordanPair
from .rings import Rationals, RingDescriptor, RingElement
from .series import TruncatedSeries, binomial_series
from .truncated import TruncatedRiordanMatrix, enumerate_group

__all__ = [
    "ClosureResult",
    "closure",
    "element_order",
    "order_profile",
    "EXCEEDS_CAP",
    "parse_word",
    "evaluate_word",
    "check_relations",
    "minimal_faithful_truncation",
    "search_substitution_relations",
    "claim5_check",
    "claim5_sweep",
    "claim5_sweep_generic",
    "involutions",
    "faithfulness_witness",
    "c_cubed_check",
    "free_generators",
    "free_word_eval",
    "first_nontrivial_coefficient",
]


class _ExceedsCap:
    """Returned by :func:`element_order` when no power up to the cap is the
    identity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ExceedsCap"

    def __bool__(self):
        return False


EXCEEDS_CAP = _ExceedsCap()


# -- closure ------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureResult:
    """Elements in breadth-first order, identity first."""

    elements: tuple
    generator_indices: tuple
    index: Mapping = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def cayley_table(self) -> tuple:
        idx = self.index
        els = self.elements
        return tuple(tuple(idx[a * b] for b in els) for a in els)

    @cached_property
    def orders(self) -> tuple:
        table = self.cayley_table
        out = []
        for i in range(len(self.elements)):
            k, cur = 1, i
            while cur != 0:
                cur = table[cur][i]
                k += 1
            out.append(k)
        return tuple(out)

    @property
    def order_stats(self) -> dict:
        return order_profile(self)


def _identity_like(x):
    if isinstance(x, TruncatedRiordanMatrix):
        return TruncatedRiordanMatrix.identity(x.ring, x.n)
    if isinstance(x, RiordanPair):
        return RiordanPair.identity(x.ring, x.N)
    raise TypeError(f"not a group element: {x!r}")


def closure(generators: Sequence[TruncatedRiordanMatrix], cap: int = 10_000) -> ClosureResult:
    """Breadth-first closure of the generators under multiplication."""
    gens = list(generators)
    if not gens:
        raise ValueError("closure needs at least one generator")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    first = gens[0]
    for g in gens[1:]:
        if g.ring != first.ring:
            raise RingMismatch("generators live over different rings")
        if g.n != first.n:
            raise LevelMismatch(f"generator levels {first.n} and {g.n} differ")
    ident = _identity_like(first)
    elements = [ident]
    index = {ident: 0}
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        pos += 1
        for g in gens:
            y = x * g
            if y not in index:
                if len(elements) >= cap:
                    raise CapExceeded(f"closure has more than {cap} elements")
                index[y] = len(elements)
                elements.append(y)
    return ClosureResult(tuple(elements), tuple(index[g] for g in gens), index)


def element_order(x, cap: int = 10_000):
    """Least k <= cap with x^k = identity, else ``EXCEEDS_CAP``."""
    ident = _identity_like(x)
    p = x
    for k in range(1, cap + 1):
        if p == ident:
            return k
        p = p * x
    return EXCEEDS_CAP


def order_profile(c: ClosureResult) -> dict[int, int]:
    return dict(sorted(Counter(c.orders).items()))


# -- words and relations ------------------------------------------------------

_WORD_TOKEN = re.compile(r"\s*(?:([A-Za-z][0-9_]*)|(\^\s*-?\s*\d+)|([()*]))")


def parse_word(text: str) -> list:
    """Parse a word like ``u^2``, ``(uw)^3`` or ``a b a^-1 b^-1``.

    Names are single letters optionally followed by digits, so ``uw`` reads
    as u times w.  A trailing ``=e`` is ignored; ``e`` alone denotes the
    identity.  Returns a nested list of ``(item, exponent)`` pairs where an
    item is a name or a sub-word.
    """
    body = re.sub(r"=\s*e\s*$", "", text.strip())
    tokens = []
    pos = 0
    while pos < len(body):
        m = _WORD_TOKEN.match(body, pos)
        if m is None:
            if body[pos:].strip() == "":
                break
            raise ParseError(f"cannot parse word {text!r} at {body[pos:]!r}")
        pos = m.end()
        if m.group(1):
            tokens.append(("name", m.group(1)))
        elif m.group(2):
            tokens.append(("pow", int(re.sub(r"[\s^]", "", m.group(2)))))
        elif m.group(3) != "*":
            tokens.append(("op", m.group(3)))

    def parse_seq(i: int, closing: bool):
        items = []
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "op" and val == ")":
                if not closing:
                    raise ParseError(f"unbalanced ')' in {text!r}")
                return items, i + 1
            if kind == "name":
                item, i = val, i + 1
            elif kind == "op" and val == "(":
                item, i = parse_seq(i + 1, True)
            else:
                raise ParseError(f"misplaced exponent in {text!r}")
            exp = 1
            if i < len(tokens) and tokens[i][0] == "pow":
                exp, i = tokens[i][1], i + 1
            items.append((item, exp))
        if closing:
            raise ParseError(f"missing ')' in {text!r}")
        return items, i

    word, _ = parse_seq(0, False)
    if not word:
        raise ParseError(f"empty word {text!r}")
    return word


def evaluate_word(word, assignment: Mapping, identity):
    if isinstance(word, str):
        word = parse_word(word)
    result = identity
    for item, exp in word:
        if isinstance(item, str):
            if item in assignment:
                value = assignment[item]
            elif item == "e":
                value = identity
            else:
                raise UnboundName(item)
        else:
            value = evaluate_word(item, assignment, identity)
        result = result * (value**exp)
    return result


@dataclass(frozen=True)
class RelationCheck:
    ok: bool
    failing: str | None = None
    value: object = None


def check_relations(assignment: Mapping, relations: Iterable[str]) -> RelationCheck:
    """Evaluate each relation word; pass iff every one is the identity."""
    relations = list(relations)
    if not relations:
        return RelationCheck(True)
    if not assignment:
        raise UnboundName("no generators bound")
    ident = _identity_like(next(iter(assignment.values())))
    for rel in relations:
        value = evaluate_word(rel, assignment, ident)
        if value != ident:
            return RelationCheck(False, rel, value)
    return RelationCheck(True)


# -- minimal faithful truncation ---------------------------------------------


def minimal_faithful_truncation(generators: Sequence[RiordanPair], N: int | None = None, cap: int = 10_000) -> int:
    """Least level n at which the closure of the generators (computed at the
    working precision N) injects under truncation.

    Distinctness at n is certified.  If it is only reached at N itself the
    working precision may be hiding further elements, and
    :class:`NoFaithfulLevel` is raised instead of guessing.
    """
    gens = list(generators)
    if N is None:
        N = min(g.N for g in gens)
    mats = [g.truncate(N).to_matrix(N) for g in gens]
    c = closure(mats, cap)
    size = len(c)
    for n in range(N + 1):
        if len({m.project(n) for m in c.elements}) == size:
            if n == N and n > 0:
                raise NoFaithfulLevel(f"images are distinct only at the working precision {N}; increase N")
            return n
    raise NoFaithfulLevel(f"no level <= {N} separates the closure")  # pragma: no cover


def faithfulness_witness(generators: Sequence[RiordanPair], level: int, N: int | None = None, cap: int = 10_000):
    """A nonidentity closure element whose level-``level`` image is the
    identity, or None."""
    gens = list(generators)
    if N is None:
        N = min(g.N for g in gens)
    c = closure([g.truncate(N).to_matrix(N) for g in gens], cap)
    ident = TruncatedRiordanMatrix.identity(c.elements[0].ring, level)
    for m in c.elements[1:]:
        if m.project(level) == ident:
            return m
    return None


# -- encoded pairs over finite rings -----------------------------------------
# A pair is (g, f) as lists of ring codes; K is a FiniteRingKernel.


def _pmul(K, x, y):
    xg, xf = x
    yg, yf = y
    return K.series_mul(xg, K.series_compose(yg, xf)), K.series_compose(yf, xf)


def _pident(K, x) -> bool:
    g, f = x
    if g[0] != K.one or any(c != K.zero for c in g[1:]):
        return False
    return K.is_t(f)


def _encode_pair(x: RiordanPair):
    return list(x.g.coeffs), list(x.f.coeffs)


def _decode_pair(ring, x) -> RiordanPair:
    return RiordanPair(TruncatedSeries(ring, tuple(x[0])), TruncatedSeries(ring, tuple(x[1])))


# -- substitution-group relation search ---------------------------------------


@dataclass(frozen=True)
class SearchResult:
    ring: RingDescriptor
    N: int
    solutions: tuple
    nontrivial_f_found: bool

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "N": self.N,
            "solutions": [{"f": str(f), "h": str(h)} for f, h in self.solutions],
            "nontrivial_f_found": self.nontrivial_f_found,
        }


def search_substitution_relations(ring: RingDescriptor, N: int) -> SearchResult:
    """All f, h in J_N with f o f = t, h o h o h = t and (h o f)^(o3) = t.

    Candidates for f are filtered by f o f = t and candidates for h by
    h^(o3) = t before the joint relation is tested.
    """
    import itertools

    if not ring.is_finite:
        raise InfiniteRing(f"cannot search over {ring}")
    if N < 2:
        raise ValueError("search needs N >= 2")
    K = kernel_for(ring)
    z, one = ring.zero, ring.one
    candidates = [[z, one, *tail] for tail in itertools.product(ring.raw_elements, repeat=N - 1)]
    F = [f for f in candidates if K.is_t(K.series_compose(f, f))]
    H = [h for h in candidates if K.is_t(K.series_iterate(h, 3))]
    solutions = []
    for f in F:
        for h in H:
            if K.is_t(K.series_iterate(K.series_compose(h, f), 3)):
                solutions.append((TruncatedSeries(ring, tuple(f)), TruncatedSeries(ring, tuple(h))))
    t = TruncatedSeries.t(ring, N)
    return SearchResult(ring, N, tuple(solutions), any(f != t for f, _ in solutions))


# -- order-3 leading coefficients ---------------------------------------------


@dataclass(frozen=True)
class Claim5Report:
    g0: RingElement
    f1: RingElement
    order_three: bool
    law_holds: bool | None  # None when the product is not of order 3

    @property
    def order_class(self) -> str:
        return "order-3" if self.order_three else "NotOrderThree"


def _as_matrix(x, level=None) -> TruncatedRiordanMatrix:
    if isinstance(x, RiordanPair):
        return x.to_matrix(x.N if level is None else level)
    return x


def claim5_check(x, y) -> Claim5Report:
    """For involutions x, y: if xy has order exactly 3, check that its
    leading coefficients are g_0 = f_1 = 1."""
    X, Y = _as_matrix(x), _as_matrix(y)
    if X.n < 1:
        raise LevelMismatch("need level >= 1 to read f_1")
    for name, M in (("x", X), ("y", Y)):
        if not (M * M).is_identity():
            raise NotInvolution(f"{name}^2 is not the identity")
    P = X * Y
    ring = P.ring
    g0 = P[0, 0]
    f1 = P[1, 1] * g0.inverse()
    order_three = not P.is_identity() and (P * P * P).is_identity()
    law = (g0.value == ring.one and f1.value == ring.one) if order_three else None
    return Claim5Report(g0, f1, order_three, law)


@dataclass(frozen=True)
class SweepReport:
    ring: RingDescriptor
    level: int
    involutions: int
    pairs_checked: int
    order_three: int
    violations: int
    exhaustive: bool

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "level": self.level,
            "involutions": self.involutions,
            "pairs_checked": self.pairs_checked,
            "order_three_products": self.order_three,
            "violations": self.violations,
            "exhaustive": self.exhaustive,
        }


def involutions(ring: RingDescriptor, level: int) -> list[RiordanPair]:
    """All x in R_level with x^2 = I and x != I.

    Built by lifting one degree at a time: x^2 = I at level k forces the same
    at level k-1, so only lifts of the previous solutions are tried.
    """
    return [_decode_pair(ring, x) for x in _encoded_involutions(ring, level)]


def _encoded_involutions(ring, level):
    K = kernel_for(ring)
    elems = list(ring.raw_elements)
    units = list(ring.raw_units)
    z = ring.zero
    # level 0: g = (g0,), f = (0,)
    layer = [([g0], [z]) for g0 in units if ring.mul(g0, g0) == ring.one]
    for k in range(1, level + 1):
        f_choices = units if k == 1 else elems
        nxt = []
        for g, f in layer:
            for gk in elems:
                for fk in f_choices:
                    x = (g + [gk], f + [fk])
                    if _pident(K, _pmul(K, x, x)):
                        nxt.append(x)
        layer = nxt
    return [x for x in layer if not _pident(K, x)]


def claim5_sweep(ring: RingDescriptor, level: int, samples: int | None = None, seed: int = 0) -> SweepReport:
    """Check the order-3 law on pairs of involutions at ``level``.

    With ``samples=None`` every ordered pair is checked; otherwise that many
    pairs are drawn uniformly (with replacement) using ``seed``.
    """
    K = kernel_for(ring)
    invs = _encoded_involutions(ring, level)
    one = ring.one
    if samples is None:
        pairs = ((x, y) for x in invs for y in invs)
        total = len(invs) ** 2
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(invs), rng.choice(invs)) for _ in range(samples))
        total = samples
    order3 = violations = 0
    for x, y in pairs:
        p = _pmul(K, x, y)
        if _pident(K, p):
            continue
        p3 = _pmul(K, _pmul(K, p, p), p)
        if not _pident(K, p3):
            continue
        order3 += 1
        g0 = p[0][0]
        f1 = p[1][1] if level >= 1 else one
        if g0 != one or f1 != one:
            violations += 1
    return SweepReport(ring, level, len(invs), total, order3, violations, samples is None)


def claim5_sweep_generic(ring: RingDescriptor, level: int) -> SweepReport:
    """Exhaustive sweep through :func:`claim5_check`, with the involutions
    found by scanning the enumerated group."""
    invs = [m for m in enumerate_group(ring, level, "R") if not m.is_identity() and (m * m).is_identity()]
    order3 = violations = 0
    for x in invs:
        for y in invs:
            rep = claim5_check(x, y)
            if rep.order_three:
                order3 += 1
                violations += not rep.law_holds
    return SweepReport(ring, level, len(invs), len(invs) ** 2, order3, violations, True)


# -- C^3 identity ------------------------------------------------------------------


@dataclass(frozen=True)
class CCubedReport:
    kernel_element: TruncatedRiordanMatrix
    C: TruncatedRiordanMatrix
    C_cubed: TruncatedRiordanMatrix
    cube_matches: bool
    order: object


def c_cubed_check(x: RiordanPair, alpha, beta, m: int) -> CCubedReport:
    """With K = (1 + alpha t^m, t + beta t^m) and C = Pi_m(K x), check that
    C^3 = Pi_m(K).  Requires 2 alpha = 2 beta = 0, x^3 = I at level m and
    g_0 = f_1 = 1."""
    ring = x.ring
    alpha = alpha if isinstance(alpha, RingElement) else ring.element(alpha)
    beta = beta if isinstance(beta, RingElement) else ring.element(beta)
    if not (2 * alpha).is_zero() or not (2 * beta).is_zero():
        raise PreconditionViolated("need 2*alpha = 2*beta = 0")
    if m < 1 or m > x.N:
        raise PreconditionViolated(f"level m = {m} must be in 1..{x.N}")
    xm = x.truncate(m)
    if not (xm**3).is_identity():
        raise PreconditionViolated("x^3 is not the identity at level m")
    if xm.g.coeffs[0] != ring.one or xm.f.coeffs[1] != ring.one:
        raise PreconditionViolated("need g_0 = f_1 = 1")
    g = TruncatedSeries.one(ring, m) + TruncatedSeries.monomial(ring, m, m, alpha)
    f = TruncatedSeries.t(ring, m) + TruncatedSeries.monomial(ring, m, m, beta)
    Kp = RiordanPair(g, f)
    Km = Kp.to_matrix(m)
    C = (Kp * xm).to_matrix(m)
    C3 = C * C * C
    return CCubedReport(Km, C, C3, C3 == Km, element_order(C, cap=64))


# -- free-group demo -----------------------------------------------------------


def free_generators(N: int = 9) -> dict[str, RiordanPair]:
    """a = (1, t/(1+3t)) and b = (1, t/(1+27t^3)^(1/3)) over Q."""
    Q = Rationals()
    t = TruncatedSeries.t(Q, N)
    a = RiordanPair.lagrange(t / (1 + 3 * t))
    root = binomial_series(TruncatedSeries.from_coeffs(Q, [1, 0, 0, 27], N), Fraction(-1, 3))
    b = RiordanPair.lagrange(t * root)
    return {"a": a, "b": b}


def free_word_eval(word, N: int = 9, ring: RingDescriptor | None = None) -> RiordanPair:
    """Evaluate a word in a, b and their inverses, e.g. ``"a b a^-1 b^-1"``
    or ``["a", "b", "a^-1", "b^-1"]``."""
    if ring is not None and not isinstance(ring, Rationals):
        raise UnsupportedRing(f"the free generators live over Q, not {ring}")
    if N < 3:
        raise ValueError("need N >= 3")
    if not isinstance(word, str):
        word = " ".join(word)
    gens = free_generators(N)
    return evaluate_word(word, gens, RiordanPair.identity(Rationals(), N))


def first_nontrivial_coefficient(x: RiordanPair):
    """First (component, index, coefficient) where x differs from (1, t), or
    None if x is the identity at its precision."""
    ident = RiordanPair.identity(x.ring, x.N)
    for k in range(x.N + 1):
        for name in ("g", "f"):
            mine, ref = getattr(x, name).coeffs[k], getattr(ident, name).coeffs[k]
            if mine != ref:
                return name, k, RingElement(x.ring, mine)
    return None
