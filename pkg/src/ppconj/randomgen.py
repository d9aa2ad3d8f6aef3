"""Seeded random elements of H for property tests and the ``random`` command.

Only integer draws from :class:`random.Random` are used, so a seed produces the
same map on every platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exactnum import QuadExt
from .moebius import MoebiusMap, make_moebius
from .pmap import PiecewiseProjMap, _from_segments, pmap_interpolate

__all__ = [
    "ElementClass",
    "RandomSpec",
    "random_element",
    "random_conjugator",
    "moebius_bump",
]


class ElementClass(str, Enum):
    GENERAL = "General"
    H_LESS = "HLess"
    H_GREATER = "HGreater"
    TRANSLATION_GERMS = "TranslationGerms"


@dataclass(frozen=True)
class RandomSpec:
    seed: int = 0
    bump_count: int = 2
    breakpoint_range: tuple[int, int] = (-4, 4)
    coefficient_height: int = 4
    field_d: int = 1


class _Draw:
    """Integer-only sampling helpers over a :class:`random.Random`."""

    def __init__(self, spec: RandomSpec):
        self.spec = spec
        self.rng = random.Random(spec.seed)
        self.d = spec.field_d

    def q(self, x) -> QuadExt:
        return QuadExt(x, 0, self.d)

    def frac01(self) -> Fraction:
        """A rational strictly between 0 and 1 with bounded height."""
        h = max(2, self.spec.coefficient_height)
        den = self.rng.randint(2, h)
        return Fraction(self.rng.randint(1, den - 1), den)

    def slope(self) -> Fraction:
        h = max(2, self.spec.coefficient_height)
        return Fraction(self.rng.randint(1, h), self.rng.randint(1, h))

    def point(self) -> Fraction:
        lo, hi = self.spec.breakpoint_range
        return self.rng.randint(lo, hi) + self.frac01() - Fraction(1, 2)

    def increasing(self, k: int) -> list[Fraction]:
        """``k`` distinct increasing rationals roughly inside the breakpoint range."""
        pts = sorted({self.point() for _ in range(k)})
        while len(pts) < k:
            pts = sorted(set(pts) | {self.point()})
        return pts[:k]


def moebius_bump(a: QuadExt, b: QuadExt, lam: QuadExt) -> PiecewiseProjMap:
    """The map ``phi^-1(lam * phi(t))`` on ``[a, b]`` and the identity outside.

    ``phi(t) = (t - a) / (b - t)`` sends ``a`` to 0 and ``b`` to infinity, so
    the middle piece is hyperbolic with fixed points ``a`` and ``b``.
    """
    d = a.d
    one, zero = QuadExt(1, 0, d), QuadExt(0, 0, d)
    phi = make_moebius(one, -a, -one, b)
    mid = phi.inverse() * make_moebius(lam, zero, zero, one) * phi
    ident = MoebiusMap.identity(d)
    return _from_segments([(None, a, ident), (a, b, mid), (b, None, ident)])


def _random_bump(dr: _Draw) -> PiecewiseProjMap:
    a, b = dr.increasing(2)
    lam = dr.slope()
    if lam == 1:
        lam = Fraction(2)
    return moebius_bump(dr.q(a), dr.q(b), dr.q(lam))


def _random_interpolation(dr: _Draw, k: int) -> PiecewiseProjMap:
    src = dr.increasing(k)
    dst = dr.increasing(k)
    return pmap_interpolate([dr.q(x) for x in src], [dr.q(x) for x in dst], dr.d)


def _conjugator(dr: _Draw) -> PiecewiseProjMap:
    h = _random_interpolation(dr, dr.rng.randint(1, 3))
    for _ in range(dr.spec.bump_count):
        h = _random_bump(dr) * h
    return h


def random_conjugator(spec: RandomSpec) -> PiecewiseProjMap:
    """A random element built from interpolations and Moebius bumps."""
    return _conjugator(_Draw(spec))


def _below_bump(dr: _Draw, end_slopes: tuple[Fraction, Fraction] | None) -> PiecewiseProjMap:
    """A map strictly below the diagonal, linear between nodes, with the given end slopes."""
    k = dr.rng.randint(1, 4)
    lo, _ = dr.spec.breakpoint_range
    ts: list[Fraction] = []
    t = Fraction(lo) + dr.frac01()
    for _ in range(k):
        ts.append(t)
        t += dr.rng.randint(1, 2) + dr.frac01()
    ss = [x - dr.frac01() for x in ts]
    a0, a1 = end_slopes if end_slopes else (1 + dr.slope(), 1 / (1 + dr.slope()))
    q = dr.q
    segs = [(None, q(ts[0]), MoebiusMap.affine(q(a0), q(ss[0] - a0 * ts[0])))]
    for i in range(k - 1):
        m = (ss[i + 1] - ss[i]) / (ts[i + 1] - ts[i])
        segs.append((q(ts[i]), q(ts[i + 1]), MoebiusMap.affine(q(m), q(ss[i] - m * ts[i]))))
    segs.append((q(ts[-1]), None, MoebiusMap.affine(q(a1), q(ss[-1] - a1 * ts[-1]))))
    return _from_segments(segs)


def random_element(spec: RandomSpec, kind: ElementClass | str = ElementClass.GENERAL) -> PiecewiseProjMap:
    """A deterministic pseudo-random element of H of the requested class."""
    kind = ElementClass(kind)
    dr = _Draw(spec)
    if kind is ElementClass.GENERAL:
        f = _random_interpolation(dr, dr.rng.randint(1, 4))
        for _ in range(dr.spec.bump_count):
            h = _random_interpolation(dr, dr.rng.randint(1, 3))
            f = h.inverse() * _random_bump(dr) * h * f
        return f
    slopes = (Fraction(1), Fraction(1)) if kind is ElementClass.TRANSLATION_GERMS else None
    f = _below_bump(dr, slopes)
    h = _conjugator(dr)
    f = h.inverse() * f * h
    if kind is ElementClass.H_LESS:
        return f
    return f.inverse()
