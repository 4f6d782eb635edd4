"""Named verification scenarios.

Each scenario runs a fixed list of exact checks and returns a
:class:`ScenarioReport`.  Reports are deterministic for given options;
wall time is recorded but only printed on request.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .errors import UnknownScenario
from .grouplab import (
    c_cubed_check,
    check_relations,
    claim5_check,
    claim5_sweep,
    claim5_sweep_generic,
    closure,
    element_order,
    evaluate_word,
    faithfulness_witness,
    first_nontrivial_coefficient,
    free_generators,
    free_word_eval,
    minimal_faithful_truncation,
    order_profile,
    search_substitution_relations,
)
from .riordan import RiordanPair, catalan, parse_pair, pascal
from .rings import RingDescriptor, parse_ring
from .series import TruncatedSeries, binomial_series
from .truncated import (
    P0KernelElement,
    TruncatedRiordanMatrix,
    enumerate_group,
    group_cardinality,
    kernel_generator_l,
    lagrange_kernel_generator_j,
    projection_fibers,
)

A4_RING = "Z/6[X]/(X^2+X+1)"

# Expected level-2 images of the twelve A_4 words, entries as printed
# (canonicalized on comparison, e.g. 3(1+X^2) reduces to 3*X).
A4_WORDS = {
    "u": [["1", "0", "0"], ["0", "1", "0"], ["0", "3", "1"]],
    "w": [["1", "0", "0"], ["0", "X", "0"], ["0", "0", "X^2"]],
    "w^2": [["1", "0", "0"], ["0", "X^2", "0"], ["0", "0", "X"]],
    "e": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "uw": [["1", "0", "0"], ["0", "X", "0"], ["0", "3X", "X^2"]],
    "wu": [["1", "0", "0"], ["0", "X", "0"], ["0", "3X^2", "X^2"]],
    "uw^2": [["1", "0", "0"], ["0", "X^2", "0"], ["0", "3X^2", "X"]],
    "wuw": [["1", "0", "0"], ["0", "X^2", "0"], ["0", "3", "X"]],
    "uwu": [["1", "0", "0"], ["0", "X", "0"], ["0", "3", "X^2"]],
    "(uw)^2": [["1", "0", "0"], ["0", "X^2", "0"], ["0", "3(1+X^2)", "X"]],
    "wuw^2": [["1", "0", "0"], ["0", "1", "0"], ["0", "3X", "1"]],
    "w^2uw": [["1", "0", "0"], ["0", "1", "0"], ["0", "3X^2", "1"]],
}

CATALAN_NUMBERS = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]


@dataclass
class Check:
    description: str
    expected: str
    actual: str
    ok: bool


@dataclass
class ScenarioReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if all(c.ok for c in self.checks) else "fail"

    def check(self, description: str, expected, actual, ok: bool | None = None) -> bool:
        if ok is None:
            ok = expected == actual
        self.checks.append(Check(description, str(expected), str(actual), bool(ok)))
        return bool(ok)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "checks": [c.__dict__ for c in self.checks],
            "notes": list(self.notes),
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def render(self, timing: bool = False) -> str:
        head = f"[{self.status.upper()}] {self.name}"
        if timing:
            head += f"  ({self.wall_time:.3f} s)"
        lines = [head]
        for c in self.checks:
            mark = "ok" if c.ok else "FAIL"
            lines.append(f"  {mark:4} {c.description}")
            if not c.ok:
                lines.append(f"       expected: {c.expected}")
                lines.append(f"       actual:   {c.actual}")
        lines.extend(f"  note {n}" for n in self.notes)
        return "\n".join(lines)


@dataclass(frozen=True)
class Options:
    ring: str | None = None
    prec: int | None = None
    samples: int | None = None
    seed: int = 0


@dataclass(frozen=True)
class Scenario:
    name: str
    summary: str
    default_ring: str
    run: Callable[[ScenarioReport, Options], None]


CATALOG: dict[str, Scenario] = {}


def scenario(name: str, summary: str, default_ring: str):
    def deco(fn):
        CATALOG[name] = Scenario(name, summary, default_ring, fn)
        return fn

    return deco


def run_scenario(name: str, options: Options | None = None) -> ScenarioReport:
    try:
        sc = CATALOG[name]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}; known: {', '.join(CATALOG)}") from None
    report = ScenarioReport(name)
    start = time.perf_counter()
    sc.run(report, options or Options())
    report.wall_time = time.perf_counter() - start
    return report


def _ring(opts: Options, default: str) -> RingDescriptor:
    return parse_ring(opts.ring or default)


def _a4_generators(ring: RingDescriptor, N: int):
    return parse_pair(ring, "(1, t/(1-3t))", N), parse_pair(ring, "(1, X*t)", N)


# -- scenarios -----------------------------------------------------------------


@scenario("a4-embedding", "closure of u = (1, t/(1-3t)) and w = (1, Xt) is A_4", A4_RING)
def _a4_embedding(r: ScenarioReport, o: Options) -> None:
    ring = _ring(o, A4_RING)
    N = o.prec or 12
    u, w = _a4_generators(ring, N)
    r.check(f"u^2 = (1, t) at N = {N}", True, (u**2).is_identity())
    r.check(f"w^3 = (1, t) at N = {N}", True, (w**3).is_identity())
    r.check(f"(uw)^3 = (1, t) at N = {N}", True, ((u * w) ** 3).is_identity())
    uw_ref = parse_pair(ring, "(1, X*t/(1-3t))", N)
    r.check("uw = (1, Xt/(1-3t))", str(uw_ref), str(u * w))
    U, W = u.to_matrix(2), w.to_matrix(2)
    c = closure([U, W], cap=100)
    r.check("closure size at level 2", 12, len(c))
    expected = {name: TruncatedRiordanMatrix.from_entries(ring, rows) for name, rows in A4_WORDS.items()}
    matched = sum(evaluate_word(word, {"u": U, "w": W}, c.elements[0]) == m for word, m in expected.items())
    r.check("named words match the expected matrices", "12/12", f"{matched}/12")
    r.notes.append(f"{matched}/12 matrices matched")
    r.check(
        "closure equals the expected set (canonical entry strings)",
        sorted(m.key() for m in expected.values()),
        sorted(m.key() for m in c.elements),
    )
    r.check("order profile", {1: 1, 2: 3, 3: 8}, order_profile(c))
    r.check("presentation u^2 = w^3 = (uw)^3 = e", True, check_relations({"u": U, "w": W}, ["u^2", "w^3", "(uw)^3"]).ok)
    r.check("wu differs from uw", True, W * U != U * W)
    K = closure([U, W * U * W.inverse()], cap=100)
    r.check("<u, wuw^-1> is the Klein four-group", {1: 1, 2: 3}, order_profile(K))


@scenario("lemma1-kernel", "kernels of P_0 and P_n: l-generators and the semidirect product", "Z/6")
def _lemma1(r: ScenarioReport, o: Options) -> None:
    ring = _ring(o, "Z/6")
    elems = list(ring.elements())
    for n in (1, 2):
        ls = {(a, b): kernel_generator_l(a, b, n, ring) for a in elems for b in elems}
        ident_n = TruncatedRiordanMatrix.identity(ring, n)
        r.check(f"n={n}: P_n(l(a,b)) = I for all |D|^2 generators", True, all(m.project() == ident_n for m in ls.values()))
        r.check(f"n={n}: l is injective", len(ls), len(set(ls.values())))
        commute = additive = True
        for (a1, b1), m1 in ls.items():
            for (a2, b2), m2 in ls.items():
                p = m1 * m2
                commute &= p == m2 * m1
                additive &= p == ls[(a1 + a2, b1 + b2)]
        r.check(f"n={n}: kernel generators commute pairwise", True, commute)
        r.check(f"n={n}: l(a1,b1) l(a2,b2) = l(a1+a2, b1+b2)", True, additive)
        kernel = [m for m in enumerate_group(ring, n + 1, "R") if m.project() == ident_n]
        r.check(f"n={n}: ker(P_n) is exactly the image of l", sorted(x.key() for x in ls.values()), sorted(x.key() for x in kernel))
    units = [e for e in elems if e.is_unit()]
    p0 = [P0KernelElement(b, c) for b in elems for c in units]
    agree = all((x * y).to_matrix() == x.to_matrix() * y.to_matrix() for x in p0 for y in p0)
    inv_ok = all(x.inverse().to_matrix() == x.to_matrix().inverse() for x in p0)
    r.check("P0 kernel product matches 2x2 matrix product (exhaustive)", True, agree)
    r.check("P0 kernel inverse matches matrix inverse", True, inv_ok)
    ident0 = TruncatedRiordanMatrix.identity(ring, 0)
    ker0 = [m for m in enumerate_group(ring, 1, "R") if m.project() == ident0]
    r.check("ker(P_0) has |D||D*| elements, all of the form [[1,0],[b,c]]", sorted(x.to_matrix().key() for x in p0), sorted(m.key() for m in ker0))


@scenario("lemma3-lagrange", "truncated Appell and Lagrange groups, kernel generators j", "Z/2,Z/3")
def _lemma3(r: ScenarioReport, o: Options) -> None:
    rings = [parse_ring(s) for s in (o.ring or "Z/2,Z/3").split(",")]
    for ring in rings:
        D, U = ring.size, len(ring.raw_units)
        for n in range(0, 4):
            for fam in ("A", "L"):
                count = sum(1 for _ in enumerate_group(ring, n, fam))
                r.check(f"{ring}: |{fam}_{n}| by enumeration = formula", group_cardinality(ring, n, fam), count)
        r.check(f"{ring}: A_0 has |D*| elements", U, sum(1 for _ in enumerate_group(ring, 0, "A")))
        r.check(f"{ring}: L_0 is trivial", 1, sum(1 for _ in enumerate_group(ring, 0, "L")))
        r.check(f"{ring}: L_1 has |D*| elements", U, sum(1 for _ in enumerate_group(ring, 1, "L")))
        for n in (1, 2):
            elems = list(ring.elements())
            js = {d: lagrange_kernel_generator_j(d, n, ring) for d in elems}
            ident_n = TruncatedRiordanMatrix.identity(ring, n)
            kernel = [m for m in enumerate_group(ring, n + 1, "L") if m.project() == ident_n]
            r.check(f"{ring}, n={n}: ker(P_n|L_(n+1)) = {{j(d)}}", sorted(m.key() for m in js.values()), sorted(m.key() for m in kernel))
            r.check(f"{ring}, n={n}: kernel has |D| elements", D, len(kernel))
            additive = all(js[a] * js[b] == js[a + b] for a in elems for b in elems)
            r.check(f"{ring}, n={n}: j(d1) j(d2) = j(d1 + d2)", True, additive)
            # the exponent-n form (1, t + d t^n) is not in the kernel once d != 0
            literal = [
                RiordanPair.lagrange(TruncatedSeries.t(ring, n + 1) + TruncatedSeries.monomial(ring, n, n + 1, d)).to_matrix(n + 1)
                for d in elems
                if not d.is_zero() and (n > 1 or (d + 1).is_unit())
            ]
            outside = all(m.project() != ident_n for m in literal)
            r.check(f"{ring}, n={n}: (1, t + d t^n) with d != 0 lies outside the kernel", True, outside)
    r.notes.append("kernel generators are j_(n+1)(d) = (1, t + d t^(n+1)); the exponent-n form is not a kernel element")


@scenario("diagram-exactness", "cardinalities and fibers of the truncation tower", "Z/2,Z/3")
def _exactness(r: ScenarioReport, o: Options) -> None:
    rings = [parse_ring(s) for s in (o.ring or "Z/2,Z/3").split(",")]
    top = o.prec or 3
    for ring in rings:
        D = ring.size
        for n in range(0, top + 1):
            counts = {fam: sum(1 for _ in enumerate_group(ring, n, fam)) for fam in ("R", "A", "L")}
            r.check(f"{ring}: |R_{n}| by enumeration = formula", group_cardinality(ring, n, "R"), counts["R"])
            r.check(f"{ring}: |R_{n}| = |A_{n}| |L_{n}|", counts["R"], counts["A"] * counts["L"])
        for n in range(1, top):
            for fam, size in (("R", D * D), ("A", D), ("L", D)):
                fibers = projection_fibers(ring, n, fam)
                image = set(enumerate_group(ring, n, fam))
                r.check(f"{ring}: P_{n} maps {fam}_{n + 1} onto {fam}_{n}", True, set(fibers) == image)
                r.check(f"{ring}: fibers of P_{n} on {fam}_{n + 1} all have size {size}", {size}, set(fibers.values()))


def _random_pair(ring, N, rng: random.Random) -> RiordanPair:
    elems = list(ring.raw_elements)
    units = list(ring.raw_units)
    g = (rng.choice(units),) + tuple(rng.choice(elems) for _ in range(N))
    f = (ring.zero, rng.choice(units)) + tuple(rng.choice(elems) for _ in range(N - 1))
    return RiordanPair(TruncatedSeries(ring, g), TruncatedSeries(ring, f))


@scenario("diagram-commute", "truncation homomorphisms and group laws on random pairs", A4_RING)
def _commute(r: ScenarioReport, o: Options) -> None:
    ring = _ring(o, A4_RING)
    N = o.prec or 8
    samples = o.samples or 1000
    rng = random.Random(o.seed)
    hom = tower = inv = conj = split = True
    for _ in range(samples):
        x, y = _random_pair(ring, N, rng), _random_pair(ring, N, rng)
        xy = x * y
        for n in range(N + 1):
            hom &= xy.to_matrix(n) == x.to_matrix(n) * y.to_matrix(n)
        for n in range(N):
            tower &= x.to_matrix(n) == x.to_matrix(n + 1).project()
        xi, yi = x.inverse(), y.inverse()
        inv &= xy.inverse() == yi * xi
        inv &= (x * xi).is_identity() and (xi * x).is_identity()
        a = RiordanPair.appell(y.g)
        c = x * a * xi
        conj &= c.is_appell() and c.g == y.g.compose(x.f)
        ga, lf = x.split()
        split &= ga.is_appell() and lf.is_lagrange() and ga * lf == x
    r.check(f"Pi_n(xy) = Pi_n(x) Pi_n(y) for n <= {N}, {samples} pairs", True, hom)
    r.check(f"Pi_n = P_n o Pi_(n+1) for n < {N}", True, tower)
    r.check("(xy)^-1 = y^-1 x^-1 and x x^-1 = x^-1 x = I", True, inv)
    r.check("h a h^-1 is Appell with g-part g_a o f_h", True, conj)
    r.check("(g, f) = (g, t)(1, f)", True, split)


@scenario("prop2-minimal-level", "least faithful truncation level of the A_4 embedding", A4_RING)
def _prop2(r: ScenarioReport, o: Options) -> None:
    ring = _ring(o, A4_RING)
    N = o.prec or 8
    u, w = _a4_generators(ring, N)
    r.check("minimal faithful level of <u, w>", 2, minimal_faithful_truncation([u, w], N))
    r.check("Pi_1(u) = I witnesses level-1 unfaithfulness", True, u.to_matrix(1).is_identity())
    r.check("some nonidentity element is trivial at level 1", True, faithfulness_witness([u, w], 1, N) is not None)
    r.check("<(1, Xt)> is faithful at level 1", 1, minimal_faithful_truncation([w], N))
    r.check("the trivial group is faithful at level 0", 0, minimal_faithful_truncation([RiordanPair.identity(ring, N)], N))


@scenario("note1-counterexample", "(1 + t)^(2^k) = 1 + t^(2^k) over Z/2", "Z/2")
def _note1(r: ScenarioReport, o: Options) -> None:
    ring = _ring(o, "Z/2")
    N = o.prec or 4
    x = parse_pair(ring, "(1+t, t)", N)
    x4 = x**4
    r.check(f"(1+t, t)^4 = (1+t^4, t) at N = {N}", str(parse_pair(ring, "(1+t^4, t)", N)), str(x4))
    r.check("(1+t, t)^4 is not the identity", True, not x4.is_identity())
    r.check("Pi_3((1+t, t)^4) = I", True, x4.to_matrix(3).is_identity())
    big = parse_pair(ring, "(1+t, t)", 8)
    for k in range(4):
        r.check(f"(1+t)^(2^{k}) = 1 + t^(2^{k}) at N = 8", str(parse_pair(ring, f"(1+t^{2**k}, t)", 8)), str(big ** (2**k)))
        r.check(f"Pi_n kills (1+t)^(2^{k}) exactly for n < 2^{k}", True,
                all((big ** (2**k)).to_matrix(n).is_identity() == (n < 2**k) for n in range(9)))


@scenario("claim5-sweep", "products of two involutions of order 3 have g_0 = f_1 = 1 (level 1; level 2 sampled over Z/6[X]/(X^2+X+1))", "Z/6")
def _claim5(r: ScenarioReport, o: Options) -> None:
    ring = _ring(o, "Z/6")
    generic = claim5_sweep_generic(ring, 1)
    fast = claim5_sweep(ring, 1)
    r.check(f"exhaustive over involution pairs in R_1({ring}): violations", 0, generic.violations)
    r.check("kernel sweep agrees with the generic sweep", generic, fast)
    r.notes.append(f"R_1({ring}): {generic.involutions} involutions, {generic.order_three} order-3 products")
    Z6 = parse_ring("Z/6")
    rep = claim5_check(parse_pair(Z6, "(1, -t)", 6), parse_pair(Z6, "(1, -t/(1-2t))", 6))
    r.check("(1,-t)(1,-t/(1-2t)) has order 3 with g_0 = f_1 = 1", (True, True), (rep.order_three, rep.law_holds))
    big = parse_ring(A4_RING)
    samples = o.samples or 100_000
    sampled = claim5_sweep(big, 2, samples=samples, seed=o.seed)
    r.check(f"sampled sweep at level 2 over {big} ({samples} pairs): violations", 0, sampled.violations)
    r.notes.append(f"level 2: {sampled.involutions} involutions, {sampled.order_three} order-3 products sampled")


@scenario("theorem4-c3", "C^3 = (1 + a t^m, t + b t^m)_m for an order-3 element", "Z/6")
def _c3(r: ScenarioReport, o: Options) -> None:
    ring = _ring(o, "Z/6")
    x = parse_pair(ring, "(1, t/(1-2t))", o.prec or 6)
    halves = [e for e in ring.elements() if (2 * e).is_zero()]
    for a, b in itertools.product(halves, repeat=2):
        for m in (2, 3, 4):
            rep = c_cubed_check(x, a, b, m)
            trivial = a.is_zero() and b.is_zero()
            r.check(f"alpha={a}, beta={b}, m={m}: C^3 = Pi_m((1 + alpha t^m, t + beta t^m))", True, rep.cube_matches)
            r.check(f"alpha={a}, beta={b}, m={m}: order(C)", 3 if trivial else 6, rep.order)


def _search_checks(r: ScenarioReport, instances) -> None:
    for spec, N in instances:
        res = search_substitution_relations(parse_ring(spec), N)
        r.check(f"J_{N}({spec}): f o f = t, h^3 = t, (h o f)^3 = t admits no f != t", False, res.nontrivial_f_found)
        r.notes.append(f"J_{N}({spec}): {len(res.solutions)} solutions, all with f = t")


@scenario("theorem8-search", "no A_4 relations in substitution groups (finite instances)", "Z/2:4,Z/6:3")
def _t8(r: ScenarioReport, o: Options) -> None:
    if o.ring:
        _search_checks(r, [(o.ring, o.prec or 3)])
    else:
        _search_checks(r, [("Z/2", 4), ("Z/6", 3)])


@scenario("nottingham-search", "no A_4 relations in Nottingham groups over small fields", "Z/3:4,Z/5:3,F_4:3")
def _nott(r: ScenarioReport, o: Options) -> None:
    if o.ring:
        _search_checks(r, [(o.ring, o.prec or 3)])
    else:
        _search_checks(r, [("Z/3", 4), ("Z/5", 3), ("Z/2[X]/(X^2+X+1)", 3)])


@scenario("catalan", "first column of (C(t), tC(t)) is the Catalan numbers", "Q")
def _catalan(r: ScenarioReport, o: Options) -> None:
    N = o.prec or 10
    col = [int(c.value) for c in catalan(N).to_matrix(N).column(0).elements()[: N]]
    oracle = [1]
    while len(oracle) < N:
        oracle.append(sum(oracle[i] * oracle[len(oracle) - 1 - i] for i in range(len(oracle))))
    r.check("column 0 equals the convolution recurrence", oracle, col)
    r.notes.append("column (" + ",".join(map(str, col)) + ")")
    if N >= 10:
        r.check("first ten entries", CATALAN_NUMBERS, col[:10])


@scenario("free-group-demo", "the commutator of the two free generators is nontrivial", "Q")
def _free(r: ScenarioReport, o: Options) -> None:
    N = o.prec or 9
    gens = free_generators(N)
    t = TruncatedSeries.t(gens["a"].ring, N)
    r.check("a = (1, t/(1+3t))", str(RiordanPair.lagrange(t / (1 + 3 * t))), str(free_word_eval("a", N)))
    r.check("a a^-1 = I", True, free_word_eval("a a^-1", N).is_identity())
    r.check("b b^-1 = I", True, free_word_eval("b b^-1", N).is_identity())
    root = binomial_series(TruncatedSeries.from_coeffs(t.ring, [1, 0, 0, 27], N), "1/3")
    r.check("(1 + 27t^3)^(1/3) cubed is 1 + 27t^3", str(TruncatedSeries.from_coeffs(t.ring, [1, 0, 0, 27], N)), str(root**3))
    comm = free_word_eval("a b a^-1 b^-1", N)
    hit = first_nontrivial_coefficient(comm)
    r.check(f"[a, b] is not the identity at N = {N}", True, hit is not None)
    if hit is not None:
        name, k, c = hit
        r.notes.append(f"[a, b]: first deviation from (1, t) in {name} at t^{k}, coefficient {c}")


@scenario("a-sequence", "A-sequences and the row recurrence", "Q")
def _aseq(r: ScenarioReport, o: Options) -> None:
    Q = parse_ring("Q")
    rows = o.prec or 10
    P = pascal(Q, rows + 1)
    r.check("A(Pascal) = 1 + t", "1 + t", str(P.a_sequence()))
    r.check("A(identity) = 1", "1", str(RiordanPair.identity(Q, rows + 1).a_sequence()))
    for name, x in (("Pascal", P), ("Catalan", catalan(rows + 1))):
        r.check(f"{name}: d[n+1][k+1] = sum_j a_j d[n][k+j] through row {rows}", True, row_recurrence_holds(x, rows))
    Z6 = parse_ring("Z/6")
    u = parse_pair(Z6, "(1, t/(1-3t))", 8)
    r.check("A(u) over Z/6 = 1 + 3t", "1 + 3*t", str(u.a_sequence()))
    r.check("recurrence holds for u over Z/6", True, row_recurrence_holds(u, 7))


def row_recurrence_holds(x: RiordanPair, rows: int) -> bool:
    """Check d[n+1][k+1] = sum_j a_j d[n][k+j] for all n < rows."""
    ring = x.ring
    A = x.a_sequence()
    M = x.to_matrix(rows)
    for n in range(rows):
        for k in range(n + 1):
            acc = ring.element(0)
            for j in range(n - k + 1):
                acc = acc + A[j] * M[n, k + j]
            if acc != M[n + 1, k + 1]:
                return False
    return True


SCENARIO_NAMES = tuple(CATALOG)
