"""The affine group Aff(R) = R_{>0} x| R, home of the germs at +-infinity.

An element ``(a, b)`` acts as ``t -> a*t + b``; the product is composition,
``(a, b)(c, d) = (a*c, b + a*d)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import QuadExt

__all__ = [
    "AffElem",
    "AffCentralizer",
    "aff_mul",
    "aff_inv",
    "aff_are_conjugate",
    "aff_centralizer",
]


def _q(x, d: int) -> QuadExt:
    if isinstance(x, QuadExt):
        return x
    return QuadExt(x, 0, d)


@dataclass(frozen=True)
class AffElem:
    slope: QuadExt
    intercept: QuadExt

    def __post_init__(self):
        d = self.slope.d if isinstance(self.slope, QuadExt) else (
            self.intercept.d if isinstance(self.intercept, QuadExt) else 1)
        object.__setattr__(self, "slope", _q(self.slope, d))
        object.__setattr__(self, "intercept", _q(self.intercept, d))
        if self.slope.sign() <= 0:
            raise ValueError(f"affine germ needs a positive slope, got {self.slope}")

    @classmethod
    def identity(cls, d: int = 1) -> AffElem:
        return cls(QuadExt(1, 0, d), QuadExt(0, 0, d))

    @property
    def d(self) -> int:
        return self.slope.d

    def __mul__(self, other: AffElem) -> AffElem:
        return aff_mul(self, other)

    def inverse(self) -> AffElem:
        return aff_inv(self)

    def __call__(self, t):
        return self.slope * t + self.intercept

    def is_identity(self) -> bool:
        return self.slope == 1 and not self.intercept

    def conjugate_by(self, w: AffElem) -> AffElem:
        """``w^-1 * self * w``."""
        return aff_mul(aff_inv(w), aff_mul(self, w))

    def __str__(self) -> str:
        return f"({self.slope}, {self.intercept})"


Germ = AffElem


def aff_mul(x: AffElem, y: AffElem) -> AffElem:
    return AffElem(x.slope * y.slope, x.intercept + x.slope * y.intercept)


def aff_inv(x: AffElem) -> AffElem:
    inv = 1 / x.slope
    return AffElem(inv, -inv * x.intercept)


def aff_are_conjugate(x: AffElem, y: AffElem) -> tuple[bool, AffElem | None]:
    """Decide whether ``y = w^-1 x w`` for some ``w``; return ``(answer, w)``.

    Conjugating ``(a, b)`` by ``(alpha, beta)`` gives
    ``(a, (b + (a - 1) beta) / alpha)``: when ``a != 1`` the intercept can be
    moved anywhere with ``alpha = 1``; when ``a == 1`` it can only be scaled by
    a positive factor, so its sign is an invariant.
    """
    a, b = x.slope, x.intercept
    if a != y.slope:
        return False, None
    if a != 1:
        beta = (y.intercept - b) / (a - 1)
        return True, AffElem(QuadExt(1, 0, a.d), beta)
    if b.sign() != y.intercept.sign():
        return False, None
    if not b:
        return True, AffElem.identity(a.d)
    return True, AffElem(b / y.intercept, QuadExt(0, 0, a.d))


@dataclass(frozen=True)
class AffCentralizer:
    """Symbolic centralizer of ``base`` in Aff(R).

    ``kind`` is ``"full"`` (base is the identity), ``"line"`` (slope != 1,
    members ``(c, b(c-1)/(a-1))``) or ``"translations"`` (members ``(1, d)``).
    Apart from the full case the group is isomorphic to (R, +).
    """

    kind: str
    base: AffElem

    @property
    def isomorphism_type(self) -> str:
        return "Aff(R)" if self.kind == "full" else "(R,+)"

    def member(self, c, d=None) -> AffElem:
        """The member with parameter ``c`` (and ``d`` for the full group)."""
        a, b = self.base.slope, self.base.intercept
        c = _q(c, a.d)
        if self.kind == "full":
            return AffElem(c, _q(d if d is not None else 0, a.d))
        if self.kind == "line":
            return AffElem(c, b * (c - 1) / (a - 1))
        return AffElem(QuadExt(1, 0, a.d), c)

    def __contains__(self, g: AffElem) -> bool:
        return aff_mul(g, self.base) == aff_mul(self.base, g)


def aff_centralizer(x: AffElem) -> AffCentralizer:
    if x.is_identity():
        return AffCentralizer("full", x)
    if x.slope != 1:
        return AffCentralizer("line", x)
    return AffCentralizer("translations", x)

