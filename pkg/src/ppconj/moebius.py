"""Orientation-preserving Moebius transformations of the projective line.

A map ``t -> (a t + b) / (c t + d)`` is stored by its coefficient quadruple,
scaled so that the first nonzero coefficient is 1.  We require ``ad - bc > 0``
instead of ``ad - bc = 1``: the square root of the determinant may leave the
field, while the projective map is the same.
"""

from __future__ import annotations

from enum import Enum

from .affgroup import AffElem
from .errors import OrientationReversing, SingularMatrix
from .exactnum import QuadExt

__all__ = [
    "INFINITY",
    "ALL_POINTS",
    "MoebiusClass",
    "MoebiusMap",
    "make_moebius",
    "moebius_apply",
    "moebius_compose",
    "moebius_inverse",
    "moebius_classify",
    "moebius_fixed_points",
    "moebius_as_affine",
]


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


class _AllPoints:
    def __repr__(self) -> str:
        return "ALL_POINTS"


ALL_POINTS = _AllPoints()


class MoebiusClass(str, Enum):
    IDENTITY = "Identity"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


def _canonical(a: QuadExt, b: QuadExt, c: QuadExt, d: QuadExt):
    for lead in (a, b, c, d):
        if lead:
            break
    if lead == 1:
        return a, b, c, d
    return a / lead, b / lead, c / lead, d / lead


class MoebiusMap:
    """``t -> (a t + b) / (c t + d)`` in canonical form."""

    __slots__ = ("a", "b", "c", "d", "_hash")

    def __init__(self, a: QuadExt, b: QuadExt, c: QuadExt, d: QuadExt, _canon: bool = True):
        if _canon:
            a, b, c, d = _canonical(a, b, c, d)
        self.a, self.b, self.c, self.d = a, b, c, d
        self._hash = None

    @property
    def field_d(self) -> int:
        return self.a.d

    @classmethod
    def identity(cls, d: int = 1) -> MoebiusMap:
        one, zero = QuadExt(1, 0, d), QuadExt(0, 0, d)
        return cls(one, zero, zero, one, _canon=False)

    @classmethod
    def affine(cls, slope, intercept, field_d: int | None = None) -> MoebiusMap:
        return make_moebius(slope, intercept, 0, 1, field_d)

    def det(self) -> QuadExt:
        return self.a * self.d - self.b * self.c

    def trace(self) -> QuadExt:
        return self.a + self.d

    def is_affine(self) -> bool:
        return not self.c

    def is_identity(self) -> bool:
        return not self.b and not self.c and self.a == self.d

    def __call__(self, t):
        return moebius_apply(self, t)

    def __mul__(self, other: MoebiusMap) -> MoebiusMap:
        return moebius_compose(self, other)

    def inverse(self) -> MoebiusMap:
        return moebius_inverse(self)

    def pole(self):
        """The point sent to infinity (``INFINITY`` itself for affine maps)."""
        if not self.c:
            return INFINITY
        return -self.d / self.c

    def derivative(self, t: QuadExt) -> QuadExt:
        den = self.c * t + self.d
        return self.det() / (den * den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c and self.d == other.d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.a, self.b, self.c, self.d))
        return self._hash

    def coefficients(self) -> tuple[QuadExt, QuadExt, QuadExt, QuadExt]:
        return self.a, self.b, self.c, self.d

    def encode(self) -> dict:
        return {k: v.encode() for k, v in zip("abcd", self.coefficients())}

    def __repr__(self) -> str:
        return f"MoebiusMap({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self) -> str:
        if not self.c:
            return _linear_str(self.a / self.d, self.b / self.d)
        return f"({_linear_str(self.a, self.b)})/({_linear_str(self.c, self.d)})"


def _linear_str(a: QuadExt, b: QuadExt) -> str:
    parts = []
    if a:
        parts.append("t" if a == 1 else "-t" if a == -1 else f"{a}*t" if a.is_rational() else f"({a})*t")
    if b or not parts:
        s = str(b) if b.is_rational() else f"({b})"
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    return "".join(parts)


def _coerce(x, d: int) -> QuadExt:
    if isinstance(x, QuadExt):
        return x
    return QuadExt(x, 0, d)


def make_moebius(a, b, c, d, field_d: int | None = None) -> MoebiusMap:
    """Validate and canonicalize the map with matrix ``[[a, b], [c, d]]``.

    Coefficients may be ``QuadExt``, ``int`` or ``Fraction``; plain numbers are
    embedded in the field of any ``QuadExt`` argument (or ``field_d``).
    """
    fd = field_d
    if fd is None:
        fd = next((x.d for x in (a, b, c, d) if isinstance(x, QuadExt)), 1)
    a, b, c, d = (_coerce(x, fd) for x in (a, b, c, d))
    det = a * d - b * c
    s = det.sign()
    if s == 0:
        raise SingularMatrix(f"determinant of ({a}, {b}, {c}, {d}) is zero")
    if s < 0:
        raise OrientationReversing(f"determinant of ({a}, {b}, {c}, {d}) is negative")
    return MoebiusMap(a, b, c, d)


def moebius_apply(f: MoebiusMap, t):
    if t is INFINITY:
        if not f.c:
            return INFINITY
        return f.a / f.c
    den = f.c * t + f.d
    if not den:
        return INFINITY
    num = f.a * t + f.b
    if not f.c and f.d == 1:
        return num
    return num / den


def moebius_compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """``f o g`` (apply ``g`` first)."""
    a = f.a * g.a + f.b * g.c
    b = f.a * g.b + f.b * g.d
    c = f.c * g.a + f.d * g.c
    d = f.c * g.b + f.d * g.d
    return MoebiusMap(a, b, c, d)


def moebius_inverse(f: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(f.d, -f.b, -f.c, f.a)


def moebius_classify(f: MoebiusMap) -> MoebiusClass:
    if f.is_identity():
        return MoebiusClass.IDENTITY
    tr = f.trace()
    c = (tr * tr - 4 * f.det()).sign()
    if c > 0:
        return MoebiusClass.HYPERBOLIC
    if c == 0:
        return MoebiusClass.PARABOLIC
    return MoebiusClass.ELLIPTIC


def moebius_fixed_points(f: MoebiusMap):
    """Fixed points in the field, sorted, ``INFINITY`` last; ``ALL_POINTS`` for the identity.

    Solves ``c t^2 + (d - a) t - b = 0``.  Raises :class:`FieldEscape` when the
    fixed points are real but irrational over the configured field.
    """
    if f.is_identity():
        return ALL_POINTS
    a, b, c, d = f.coefficients()
    if not c:
        if a == d:
            return (INFINITY,)
        return (b / (d - a), INFINITY)
    disc = (d - a) * (d - a) + 4 * b * c
    s = disc.sign()
    if s < 0:
        return ()
    centre = (a - d) / (2 * c)
    if s == 0:
        return (centre,)
    root = disc.sqrt()
    r1, r2 = centre - root / (2 * c), centre + root / (2 * c)
    return tuple(sorted((r1, r2)))


def moebius_as_affine(f: MoebiusMap) -> AffElem | None:
    if f.c:
        return None
    return AffElem(f.a / f.d, f.b / f.d)

