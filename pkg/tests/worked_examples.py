"""Maps shared by several test modules."""

from __future__ import annotations

from fractions import Fraction as F

from ppconj import make_pmap, PiecewiseProjMap

H = F(1, 2)


def stair_working_y() -> PiecewiseProjMap:
    return PiecewiseProjMap.affine(1, -1)


def stair_working_z() -> PiecewiseProjMap:
    # t-1 | (2t-2)/(-3/2 t+2) on [0,1] | (-2t+2)/(-3/2 t+1) on [1,2] | t-1
    return make_pmap([0, 1, 2], [(1, -1, 0, 1), (2, -2, -3 * H, 2), (-2, 2, -3 * H, 1), (1, -1, 0, 1)])


def stair_working_g() -> PiecewiseProjMap:
    return make_pmap([0, 1], [(1, -1, 0, 1), (2, -2, -3 * H, 2), (1, -1, 0, 1)])


def stair_failing_y() -> PiecewiseProjMap:
    return PiecewiseProjMap.affine(1, -1)


def stair_failing_z() -> PiecewiseProjMap:
    return make_pmap([1, 2], [(1, -1, 0, 1), (-2, 2, -3 * H, 1), (1, -1, 0, 1)])


def discrete_z() -> PiecewiseProjMap:
    """Above the diagonal, translation germs, centralizer Z."""
    return make_pmap([0, 1], [(1, 1, 0, 1), (1, -2, 3 * H, -2), (1, 1, 0, 1)])


def continuum_z() -> PiecewiseProjMap:
    """A conjugate of t + 1, so its centralizer is R."""
    return make_pmap([-1, 0, 1], [(1, 1, 0, 1), (2, 2, 3 * H, 2), (1, -2, 3 * H, -2), (1, 1, 0, 1)])


def continuum_conjugator() -> PiecewiseProjMap:
    return make_pmap([0, 1], [(1, 1, 0, 1), (1, -2, 3 * H, -2), (1, 1, 0, 1)])


def translation(b) -> PiecewiseProjMap:
    return PiecewiseProjMap.affine(1, b)
