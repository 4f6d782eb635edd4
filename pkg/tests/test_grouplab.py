import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from helpers import OMEGA, ring
from riordanlab import RiordanPair, TruncatedRiordanMatrix, parse_pair
from riordanlab.errors import (
    CapExceeded,
    InfiniteRing,
    LevelMismatch,
    NoFaithfulLevel,
    NotInvolution,
    ParseError,
    PreconditionViolated,
    UnboundName,
    UnsupportedRing,
)
from riordanlab.grouplab import (
    EXCEEDS_CAP,
    c_cubed_check,
    check_relations,
    claim5_check,
    claim5_sweep,
    claim5_sweep_generic,
    closure,
    element_order,
    evaluate_word,
    first_nontrivial_coefficient,
    free_word_eval,
    involutions,
    minimal_faithful_truncation,
    order_profile,
    parse_word,
    search_substitution_relations,
)
from riordanlab.truncated import enumerate_group

Q, Z2, Z3, Z6 = ring("Q"), ring("Z/2"), ring("Z/3"), ring("Z/6")
W6 = ring(OMEGA)


@pytest.fixture(scope="module")
def gens():
    u = parse_pair(W6, "(1, t/(1-3t))", 8)
    w = parse_pair(W6, "(1, X*t)", 8)
    return u, w


@pytest.fixture(scope="module")
def a4(gens):
    u, w = gens
    return closure([u.to_matrix(2), w.to_matrix(2)], cap=100)


class TestClosure:
    def test_a4(self, a4):
        assert len(a4) == 12
        assert order_profile(a4) == {1: 1, 2: 3, 3: 8}
        assert a4.elements[0].is_identity()
        assert a4.order_stats == {1: 1, 2: 3, 3: 8}

    def test_cyclic(self, gens):
        _, w = gens
        c = closure([w.to_matrix(2)])
        W = w.to_matrix(2)
        assert set(c.elements) == {W**0, W, W**2}

    def test_cap(self):
        with pytest.raises(CapExceeded):
            closure([parse_pair(Q, "(1+t, t)", 4).to_matrix(4)], cap=50)

    def test_level_mismatch(self, gens):
        u, w = gens
        with pytest.raises(LevelMismatch):
            closure([u.to_matrix(2), w.to_matrix(3)])

    def test_klein(self, gens):
        u, w = gens
        U, W = u.to_matrix(2), w.to_matrix(2)
        K = closure([U, W * U * W.inverse()])
        assert order_profile(K) == {1: 1, 2: 3}

    def test_trivial(self):
        assert order_profile(closure([TruncatedRiordanMatrix.identity(Z6, 3)])) == {1: 1}

    def test_cayley_table_is_latin(self, a4):
        T = a4.cayley_table
        idx = set(range(len(a4)))
        for row in T:
            assert set(row) == idx
        for col in zip(*T):
            assert set(col) == idx

    def test_idempotent_and_lagrange(self, a4):
        again = closure(list(a4.elements), cap=100)
        assert set(again.elements) == set(a4.elements)
        for k in a4.orders:
            assert len(a4) % k == 0

    def test_closed(self, a4):
        S = set(a4.elements)
        for x, y in itertools.product(a4.elements, repeat=2):
            assert x * y in S
        for x in a4.elements:
            assert x.inverse() in S

    @pytest.mark.parametrize("spec, n", [("Z/2", 2), ("Z/3", 1), ("Z/2", 3)])
    def test_whole_group(self, spec, n):
        # the closure of the full enumeration is itself, with orders dividing |G|
        r = ring(spec)
        G = list(enumerate_group(r, n, "R"))
        c = closure(G, cap=10_000)
        assert set(c.elements) == set(G)
        assert all(len(G) % k == 0 for k in c.orders)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.sampled_from(list(enumerate_group(ring("Z/3"), 2, "R"))), min_size=1, max_size=3))
    def test_subgroup_orders_divide(self, gs):
        c = closure(gs)
        assert 108 % len(c) == 0
        brute = Counter(element_order(x) for x in c.elements)
        assert dict(brute) == order_profile(c)


class TestOrder:
    def test_examples(self, gens):
        u, w = gens
        assert element_order(w.to_matrix(2)) == 3
        assert element_order(u.to_matrix(2)) == 2
        assert element_order(TruncatedRiordanMatrix.identity(Z6, 2)) == 1
        assert element_order(u) == 2
        assert element_order(w) == 3

    def test_cap_value(self):
        k = element_order(parse_pair(Q, "(1+t, t)", 4), cap=20)
        assert k is EXCEEDS_CAP
        assert not k

    def test_note1(self):
        assert element_order(parse_pair(Z2, "(1+t, t)", 4)) == 8
        assert element_order(parse_pair(Z2, "(1+t, t)", 3)) == 4


class TestWords:
    def test_parse(self, gens):
        u, w = gens
        A = {"u": u, "w": w}
        e = RiordanPair.identity(W6, 8)
        ev = lambda s: evaluate_word(s, A, e)  # noqa: E731
        assert ev("u^2") == ev("uu") == ev("u u")
        assert ev("(uw)^3=e") == ev("uwuwuw") == ev("u*w*u*w*u*w")
        assert ev("w^-2") == ev("w")
        assert ev("e") == e and ev("u e u") == e
        with pytest.raises(ParseError):
            parse_word("u^")
        with pytest.raises(ParseError):
            parse_word("(uw")

    def test_evaluate(self, gens):
        u, w = gens
        e = RiordanPair.identity(W6, 8)
        assert evaluate_word("w^-1", {"u": u, "w": w}, e) == w**2
        assert evaluate_word("(uw)^2 w^-1", {"u": u, "w": w}, e) == u * w * u
        with pytest.raises(UnboundName):
            evaluate_word("v", {"u": u}, e)

    def test_relations(self, gens):
        u, w = gens
        A = {"u": u.to_matrix(2), "w": w.to_matrix(2)}
        assert check_relations(A, ["u^2", "w^3", "(uw)^3"]).ok
        bad = check_relations(A, ["u^2", "(uw)^2"])
        assert not bad.ok and bad.failing == "(uw)^2"
        assert check_relations(A, []).ok
        assert check_relations({"u": u, "w": w}, ["u^2", "w^3", "(uw)^3"]).ok


class TestFaithful:
    def test_examples(self, gens):
        u, w = gens
        assert minimal_faithful_truncation([u, w], 8) == 2
        assert minimal_faithful_truncation([w], 8) == 1
        assert minimal_faithful_truncation([RiordanPair.identity(W6, 8)], 8) == 0

    def test_definition(self, gens):
        u, w = gens
        n = minimal_faithful_truncation([u, w], 8)
        full = closure([u.to_matrix(8), w.to_matrix(8)])
        images = lambda k: [m.project(k) for m in full.elements]  # noqa: E731
        assert len(set(images(n))) == len(full)
        assert len(set(images(n - 1))) < len(full)

    def test_only_at_working_precision(self):
        # (1+t, t) over Z/2 has order 2^k at level N with 2^(k-1) <= N < 2^k;
        # every lower level collapses part of the cyclic group, so no
        # level below N is faithful and the answer is not guessed
        for N in (1, 2, 4):
            with pytest.raises(NoFaithfulLevel):
                minimal_faithful_truncation([parse_pair(Z2, "(1+t, t)", N)], N)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            minimal_faithful_truncation([parse_pair(Q, "(1+t, t)", 4)], 4, cap=10)


class TestSearch:
    # oracle values frozen from tests/oracle.py before the main build
    FROZEN = {("Z/2", 4): 1, ("Z/3", 4): 27, ("Z/6", 3): 9, ("Z/2", 5): 1, ("Z/3", 5): 45, ("Z/6", 4): 27}

    @pytest.mark.parametrize("spec, N", [("Z/2", 4), ("Z/3", 4), ("Z/6", 3)])
    def test_examples(self, spec, N):
        res = search_substitution_relations(ring(spec), N)
        assert res.nontrivial_f_found is False
        assert all(str(f) == "t" for f, _ in res.solutions)
        assert len(res.solutions) == self.FROZEN[(spec, N)]

    @pytest.mark.parametrize("spec, N", [("Z/2", 5), ("Z/3", 5), ("Z/6", 4)])
    def test_larger_frozen(self, spec, N):
        res = search_substitution_relations(ring(spec), N)
        assert (len(res.solutions), res.nontrivial_f_found) == (self.FROZEN[(spec, N)], False)

    @pytest.mark.parametrize("m, N", [(2, 3), (2, 4), (3, 3), (4, 3), (5, 3), (6, 3)])
    def test_against_live_oracle(self, m, N):
        _, _, count, nontrivial = oracle.substitution_search(oracle.zmod(m), N)
        res = search_substitution_relations(Z2 if m == 2 else ring(f"Z/{m}"), N)
        assert (len(res.solutions), res.nontrivial_f_found) == (count, nontrivial)

    def test_f4_against_oracle(self):
        _, _, count, nontrivial = oracle.substitution_search(oracle.f4(), 3)
        res = search_substitution_relations(ring("Z/2[X]/(X^2+X+1)"), 3)
        assert (len(res.solutions), res.nontrivial_f_found) == (count, nontrivial)

    def test_solutions_satisfy_relations(self):
        res = search_substitution_relations(Z3, 4)
        t = parse_pair(Z3, "(1, t)", 4).f
        for f, h in res.solutions:
            assert f.compose(f) == t
            assert h.compose(h).compose(h) == t
            hf = h.compose(f)
            assert hf.compose(hf).compose(hf) == t

    def test_json(self):
        data = search_substitution_relations(Z2, 4).to_json()
        assert data == {"ring": "Z/2", "N": 4, "solutions": [{"f": "t", "h": "t"}], "nontrivial_f_found": False}

    def test_infinite(self):
        with pytest.raises(InfiniteRing):
            search_substitution_relations(Q, 3)


class TestClaim5:
    def test_examples(self):
        x, y = parse_pair(Z6, "(1, -t)", 6), parse_pair(Z6, "(1, -t/(1-2t))", 6)
        assert x * y == parse_pair(Z6, "(1, t/(1+2t))", 6)
        rep = claim5_check(x, y)
        assert rep.order_three and rep.law_holds
        assert (rep.g0.value, rep.f1.value) == (1, 1)
        same = claim5_check(x, x)
        assert same.order_class == "NotOrderThree" and same.law_holds is None
        with pytest.raises(NotInvolution):
            claim5_check(parse_pair(Q, "(1, t+t^2)", 6), parse_pair(Q, "(1, -t)", 6))

    def test_exhaustive_level1_matches_oracle(self):
        inv, pairs, order3, bad = oracle.level1_claim5(6)
        generic = claim5_sweep_generic(Z6, 1)
        fast = claim5_sweep(Z6, 1)
        for rep in (generic, fast):
            assert (rep.involutions, rep.pairs_checked, rep.order_three, rep.violations) == (inv, pairs, order3, bad)
        assert bad == 0

    @pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/4", "Z/2[X]/(X^2+X+1)"])
    def test_other_rings_level2(self, spec):
        r = ring(spec)
        g, f = claim5_sweep_generic(r, 2), claim5_sweep(r, 2)
        assert g == f
        assert g.violations == 0

    def test_involutions_are_order_two(self):
        invs = involutions(W6, 2)
        assert len(invs) == len(set(invs))
        for x in invs[:200]:
            assert element_order(x.to_matrix(2)) == 2
        brute = [m for m in enumerate_group(Z6, 2, "R") if element_order(m) == 2]
        assert {x.to_matrix(2) for x in involutions(Z6, 2)} == set(brute)

    def test_sampled_deterministic(self):
        a = claim5_sweep(W6, 2, samples=2000, seed=3)
        b = claim5_sweep(W6, 2, samples=2000, seed=3)
        assert a == b and a.violations == 0 and not a.exhaustive


class TestCCubed:
    @pytest.mark.parametrize("a, b", [(0, 3), (3, 0), (3, 3)])
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_nontrivial(self, a, b, m):
        x = parse_pair(Z6, "(1, t/(1-2t))", 6)
        rep = c_cubed_check(x, a, b, m)
        assert rep.cube_matches and rep.order == 6

    def test_example_values(self):
        x = parse_pair(Z6, "(1, t/(1-2t))", 6)
        rep = c_cubed_check(x, 3, 3, 2)
        assert rep.C_cubed == parse_pair(Z6, "(1+3t^2, t+3t^2)", 2).to_matrix(2)

    def test_trivial(self):
        rep = c_cubed_check(parse_pair(Z6, "(1, t/(1-2t))", 6), 0, 0, 3)
        assert rep.C_cubed.is_identity() and rep.order == 3

    def test_preconditions(self):
        x = parse_pair(Z6, "(1, t/(1-2t))", 6)
        with pytest.raises(PreconditionViolated):
            c_cubed_check(x, 1, 0, 2)
        with pytest.raises(PreconditionViolated):
            c_cubed_check(parse_pair(Z6, "(1, t/(1-t))", 6), 0, 0, 2)
        with pytest.raises(PreconditionViolated):
            c_cubed_check(parse_pair(Z6, "(1, -t)", 6), 0, 0, 2)


class TestFreeWords:
    def test_examples(self):
        assert free_word_eval(["a"], 6) == parse_pair(Q, "(1, t/(1+3t))", 6)
        assert free_word_eval(["a", "a^-1"], 6).is_identity()
        comm = free_word_eval(["a", "b", "a^-1", "b^-1"], 9)
        assert not comm.is_identity()
        name, k, c = first_nontrivial_coefficient(comm)
        assert not c.is_zero()
        assert getattr(comm, name)[k] == c

    def test_unsupported(self):
        with pytest.raises(UnsupportedRing):
            free_word_eval("a", 6, ring=Z6)

    def test_b_generator(self):
        b = free_word_eval("b", 9)
        assert str(b.f) == "t - 9*t^4 + 162*t^7"

    def test_commutator_coefficient_by_hand(self):
        # independent oracle: compose the four substitutions with Fractions
        from fractions import Fraction

        N = 9
        one = Fraction(1)

        def mul(p, q):
            out = [Fraction(0)] * (N + 1)
            for i, x in enumerate(p):
                for j in range(N + 1 - i):
                    out[i + j] += x * q[j]
            return out

        def comp(f, g):
            out = [Fraction(0)] * (N + 1)
            pw = [one] + [Fraction(0)] * N
            for k in range(N + 1):
                out = [o + f[k] * p for o, p in zip(out, pw)]
                pw = mul(pw, g)
            return out

        def series_a(sign):
            # t / (1 + 3 sign t) = sum (-3 sign)^k t^(k+1)
            return [Fraction(0)] + [Fraction((-3 * sign) ** k) for k in range(N)]

        a, ainv = series_a(1), series_a(-1)
        b = free_word_eval("b", N).f.coeffs
        binv = free_word_eval("b^-1", N).f.coeffs
        assert comp(b, binv) == [Fraction(0), one] + [Fraction(0)] * (N - 1)
        # (1, f1)(1, f2) = (1, f2 o f1): the word a b a^-1 b^-1 has f = binv(ainv(b(a)))
        f = comp(binv, comp(ainv, comp(b, a)))
        assert list(free_word_eval("a b a^-1 b^-1", N).f.coeffs) == f
