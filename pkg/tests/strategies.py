"""Hypothesis strategies for field elements and Moebius maps."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from ppconj import QuadExt, make_moebius

FIELDS = (1, 2, 3, 5)

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def quads(draw, d: int | None = None):
    d = draw(st.sampled_from(FIELDS)) if d is None else d
    p = draw(small_rationals)
    q = draw(small_rationals) if d > 1 else Fraction(0)
    return QuadExt(p, q, d)


@st.composite
def quad_pairs(draw):
    d = draw(st.sampled_from(FIELDS))
    return draw(quads(d)), draw(quads(d))


@st.composite
def moebius_maps(draw, d: int = 1):
    a, b, c, e = (draw(quads(d)) for _ in range(4))
    det = a * e - b * c
    assume(det)
    if det.sign() < 0:
        a, b = -a, -b
    return make_moebius(a, b, c, e)


seeds = st.integers(min_value=0, max_value=2**63 - 1)
