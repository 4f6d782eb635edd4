"""Riordan groups over commutative rings with exact arithmetic."""

from .errors import RiordanError
from .rings import RingElement, additive_order_of_one, parse_element, parse_ring
from .series import DEFAULT_PRECISION, TruncatedSeries, binomial_series, from_rational, parse_series
from .riordan import RiordanPair, catalan, parse_pair, pascal
from .truncated import (
    P0KernelElement,
    TruncatedRiordanMatrix,
    enumerate_group,
    group_cardinality,
    kernel_generator_l,
    lagrange_kernel_generator_j,
)

__version__ = "0.1.0"
