"""Double-precision differential oracle.

Maps are re-evaluated with plain floats, independently of the exact
arithmetic, and compared on a grid.  A composition is given as a sequence of
maps applied right to left, so ``(g, z)`` means ``g o z``.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from typing import Sequence, Union

from .errors import PreconditionViolated
from .exactnum import QuadExt
from .pmap import PiecewiseProjMap

__all__ = ["GRID_SHIFT", "float_eval", "sample_grid", "numeric_oracle"]

# grid points are pushed off the nodes by this fraction of the step
GRID_SHIFT = Fraction(1, 7919)

Chain = Union[PiecewiseProjMap, Sequence[PiecewiseProjMap]]


def _as_chain(f: Chain) -> tuple[PiecewiseProjMap, ...]:
    return (f,) if isinstance(f, PiecewiseProjMap) else tuple(f)


class _FloatMap:
    def __init__(self, f: PiecewiseProjMap):
        self.bps = [float(b) for b in f.breakpoints]
        self.coeffs = [tuple(float(c) for c in p.coefficients()) for p in f.pieces]

    def __call__(self, t: float) -> float:
        a, b, c, d = self.coeffs[bisect_left(self.bps, t)]
        return (a * t + b) / (c * t + d)


def float_eval(f: Chain, t: float) -> float:
    for m in reversed(_as_chain(f)):
        t = _FloatMap(m)(t)
    return t


def sample_grid(lo: Fraction, hi: Fraction, samples: int) -> list[Fraction]:
    """``samples`` rationals spread over ``[lo, hi]``, none on a grid node."""
    if samples < 2:
        raise PreconditionViolated("need at least two samples")
    step = (hi - lo) / (samples - 1)
    return [lo + step * (i + GRID_SHIFT) for i in range(samples - 1)] + [hi - step * GRID_SHIFT]


def _default_range(maps) -> tuple[Fraction, Fraction]:
    pts = [Fraction(float(b)) for m in maps for b in m.breakpoints]
    if not pts:
        return Fraction(-1), Fraction(1)
    return min(pts) - 1, max(pts) + 1


def numeric_oracle(f: Chain, g: Chain, samples: int = 1000,
                   span: tuple | None = None) -> float:
    """Largest ``|f(t) - g(t)|`` over the grid, evaluated in double precision."""
    fs, gs = _as_chain(f), _as_chain(g)
    if span is None:
        lo, hi = _default_range(fs + gs)
    else:
        lo, hi = (Fraction(float(x)) if isinstance(x, QuadExt) else Fraction(x) for x in span)
    ffs = [_FloatMap(m) for m in reversed(fs)]
    ggs = [_FloatMap(m) for m in reversed(gs)]
    worst = 0.0
    for t in sample_grid(lo, hi, samples):
        x = y = float(t)
        for m in ffs:
            x = m(x)
        for m in ggs:
            y = m(y)
        worst = max(worst, abs(x - y))
    return worst
