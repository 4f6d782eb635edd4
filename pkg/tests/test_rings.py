import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from riordanlab import additive_order_of_one, parse_element, parse_ring
from riordanlab.errors import (
    InfiniteRing,
    InvalidModulus,
    NonMonicModulus,
    NotUnit,
    ParseError,
    RingMismatch,
    WrongRing,
)
from riordanlab.rings import Integers, Modular, Quotient, Rationals, arith, unit_inverse

W = "Z/6[X]/(X^2+X+1)"
FINITE = ["Z/2", "Z/3", "Z/6", "Z/2[X]/(X^2+X+1)", "Z/3[X]/(X^2+1)", W]


@pytest.fixture(scope="module")
def omega():
    return parse_ring(W)


class TestParseRing:
    def test_families(self):
        assert parse_ring("Z/6") == Modular(6)
        assert parse_ring(W) == Quotient(6, (1, 1, 1))
        assert parse_ring("Q") == Rationals()
        assert parse_ring("Z") == Integers()

    def test_coefficients_canonicalized(self):
        assert parse_ring("Z/6[X]/(X^2+7X-5)") == parse_ring(W)

    @pytest.mark.parametrize("spec", ["Z", "Q", "Z/2", "Z/6", W, "Z/4[X]/(X^3+2X+3)"])
    def test_print_round_trip(self, spec):
        r = parse_ring(spec)
        assert parse_ring(str(r)) == r

    def test_errors(self):
        with pytest.raises(InvalidModulus):
            parse_ring("Z/1")
        with pytest.raises(NonMonicModulus):
            parse_ring("Z/6[X]/(2X^2+1)")
        with pytest.raises(NonMonicModulus):
            parse_ring("Z/6[X]/(7)")
        with pytest.raises(ParseError):
            parse_ring("R")
        with pytest.raises(ParseError):
            parse_ring("Z/6[Y]/(Y+1)")


class TestParseElement:
    def test_reduction_in_quotient(self, omega):
        assert str(parse_element(omega, "X^2")) == "5 + 5*X"
        assert parse_element(omega, "X^3") == omega.element(1)
        assert parse_element(omega, "3(1+X^2)") == parse_element(omega, "3X")

    def test_canonical_representative(self):
        assert str(parse_element(Modular(6), "-1")) == "5"
        assert parse_element(Rationals(), "4/6").value == Fraction(2, 3)

    def test_wrong_ring(self):
        with pytest.raises(WrongRing):
            parse_element(Modular(6), "X+1")
        with pytest.raises(ParseError):
            parse_element(Modular(6), "1/5")

    @pytest.mark.parametrize("spec", FINITE)
    def test_print_parse_round_trip(self, spec):
        ring = parse_ring(spec)
        for a in ring.elements():
            assert parse_element(ring, str(a)) == a


class TestArith:
    def test_examples(self, omega):
        one_x = parse_element(omega, "1+X")
        assert arith("mul", one_x, one_x) == parse_element(omega, "X")
        Z6 = Modular(6)
        assert arith("add", Z6.element(3), Z6.element(4)) == Z6.element(1)
        assert arith("neg", Rationals().element(Fraction(2, 3))).value == Fraction(-2, 3)
        assert arith("sub", Z6.element(1), Z6.element(4)) == Z6.element(3)

    def test_mismatch(self):
        with pytest.raises(RingMismatch):
            Modular(6).element(1) + Modular(5).element(1)

    def test_identities_in_omega(self, omega):
        X = parse_element(omega, "X")
        assert (1 + X + X * X).is_zero()
        assert X**3 == omega.element(1)
        assert X**-1 == X**2


class TestUnits:
    def test_examples(self, omega):
        assert unit_inverse(Modular(6).element(5)) == Modular(6).element(5)
        assert str(unit_inverse(parse_element(omega, "X"))) == "5 + 5*X"
        with pytest.raises(NotUnit):
            unit_inverse(Modular(6).element(2))
        assert unit_inverse(Integers().element(-1)).value == -1
        with pytest.raises(NotUnit):
            unit_inverse(Integers().element(2))
        with pytest.raises(NotUnit):
            unit_inverse(Rationals().element(0))

    @pytest.mark.parametrize("spec", FINITE)
    def test_every_unit_inverts(self, spec):
        ring = parse_ring(spec)
        units = [a for a in ring.elements() if a.is_unit()]
        assert units
        for a in units:
            assert a * a.inverse() == ring.element(1)
        # non-units have no inverse anywhere in the ring
        for a in ring.elements():
            if not a.is_unit():
                assert all(a * b != ring.element(1) for b in ring.elements())

    def test_omega_unit_count(self, omega):
        # units of Z/6[w] = units of F_4 x units of Z/3[X]/(X^2+X+1): 3 * 6
        assert sum(a.is_unit() for a in omega.elements()) == 18


class TestEnumerate:
    def test_examples(self, omega):
        assert [a.value for a in Modular(2).elements()] == [0, 1]
        assert len(list(omega.elements())) == 36
        with pytest.raises(InfiniteRing):
            list(Rationals().elements())
        with pytest.raises(InfiniteRing):
            list(Integers().elements())

    def test_lexicographic_order(self):
        ring = parse_ring("Z/3[X]/(X^2+1)")
        reps = [ring.coefficients(a.value) for a in ring.elements()]
        assert reps == sorted(reps)
        assert len(set(reps)) == 9

    def test_additive_order(self, omega):
        assert additive_order_of_one(Modular(6)) == 6
        assert additive_order_of_one(omega) == 6
        assert additive_order_of_one(Rationals()) == math.inf
        assert additive_order_of_one(Integers()) == math.inf


@pytest.mark.parametrize("spec", FINITE)
def test_ring_axioms_exhaustive(spec):
    ring = parse_ring(spec)
    E = list(ring.elements())
    zero, one = ring.element(0), ring.element(1)
    for a in E:
        assert one * a == a
        assert a + zero == a
        assert a + (-a) == zero
    for a, b in itertools.product(E, repeat=2):
        assert a * b == b * a
        assert a + b == b + a
    for a, b, c in itertools.product(E, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


rationals = st.fractions(max_denominator=50).map(lambda q: Rationals().element(q))


@given(rationals, rationals, rationals)
def test_rational_axioms_sampled(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(st.integers(2, 40), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_modular_matches_int_arithmetic(m, x, y):
    ring = Modular(m)
    a, b = ring.element(x), ring.element(y)
    assert (a * b).value == (x * y) % m
    assert (a - b).value == (x - y) % m
    assert a.is_unit() == (math.gcd(x, m) == 1)
