"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from riordanlab import RiordanPair, TruncatedSeries, parse_ring

OMEGA = "Z/6[X]/(X^2+X+1)"


def raw_element(ring):
    if ring.is_finite:
        return st.sampled_from(list(ring.raw_elements))
    if str(ring) == "Q":
        return st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
    return st.integers(-20, 20)


def raw_unit(ring):
    if ring.is_finite:
        return st.sampled_from(list(ring.raw_units))
    if str(ring) == "Q":
        return raw_element(ring).filter(lambda q: q != 0)
    return st.sampled_from([1, -1])


def series(ring, N, min_valuation=0):
    return st.lists(raw_element(ring), min_size=N + 1 - min_valuation, max_size=N + 1 - min_valuation).map(
        lambda cs: TruncatedSeries(ring, tuple([ring.zero] * min_valuation + [ring.normalize(c) for c in cs]))
    )


def unit_series(ring, N):
    return st.tuples(raw_unit(ring), st.lists(raw_element(ring), min_size=N, max_size=N)).map(
        lambda p: TruncatedSeries(ring, tuple(ring.normalize(c) for c in (p[0], *p[1])))
    )


def delta_series(ring, N):
    """f with f_0 = 0 and f_1 a unit."""
    return st.tuples(raw_unit(ring), st.lists(raw_element(ring), min_size=N - 1, max_size=N - 1)).map(
        lambda p: TruncatedSeries(ring, tuple(ring.normalize(c) for c in (0, p[0], *p[1])))
    )


def pairs(ring, N):
    return st.builds(RiordanPair, unit_series(ring, N), delta_series(ring, N))


def ring(spec):
    return parse_ring(spec)


__all__ = ["OMEGA", "Fraction", "pairs", "series", "unit_series", "delta_series", "ring", "raw_element", "raw_unit"]
