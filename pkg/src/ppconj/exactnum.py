"""Exact arithmetic in Q and in real quadratic fields Q(sqrt d).

Every coordinate, breakpoint and coefficient handled by the library is a
:class:`QuadExt`.  Rationals are :class:`fractions.Fraction` (always reduced).
Plain ``int`` and ``Fraction`` operands are accepted everywhere and embed into
whatever field the other operand lives in; two ``QuadExt`` values over
different fields never mix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import FieldEscape, FieldMismatch

__all__ = [
    "FieldSpec",
    "QuadExt",
    "QQ",
    "as_fraction",
    "field_arith",
    "field_sign",
    "field_to_decimal",
    "is_squarefree",
]


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ambient field: Q(sqrt d) for squarefree ``d > 1``, or Q when ``d == 1``."""

    d: int = 1

    def __post_init__(self):
        if not isinstance(self.d, int) or not is_squarefree(self.d):
            raise ValueError(f"field parameter must be a positive squarefree integer, got {self.d!r}")

    def __call__(self, p=0, q=0) -> QuadExt:
        return QuadExt(p, q, self.d)

    @property
    def sqrt_d(self) -> QuadExt:
        if self.d == 1:
            return QuadExt(1, 0, 1)
        return QuadExt(0, 1, self.d)


QQ = FieldSpec(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, m = x.numerator, x.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


class QuadExt:
    """The real number ``p + q*sqrt(d)`` with ``p, q`` rational.

    >>> x = QuadExt(1, 1, 2)
    >>> x * QuadExt(1, -1, 2)
    QuadExt(-1, 0, 2)
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d: int = 1):
        p = as_fraction(p)
        q = as_fraction(q)
        if d == 1:
            # sqrt(1) folds into the rational part
            p, q = p + q, Fraction(0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def _raw(cls, p: Fraction, q: Fraction, d: int) -> QuadExt:
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "d", d)
        return obj

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(self.d)

    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt._raw(Fraction(other), Fraction(0), self.d)
        raise TypeError

    def _binary(self, other, fn):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return fn(self, o)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _add(x: QuadExt, y: QuadExt) -> QuadExt:
        return QuadExt._raw(x.p + y.p, x.q + y.q, x.d)

    @staticmethod
    def _sub(x: QuadExt, y: QuadExt) -> QuadExt:
        return QuadExt._raw(x.p - y.p, x.q - y.q, x.d)

    @staticmethod
    def _mul(x: QuadExt, y: QuadExt) -> QuadExt:
        if not x.q and not y.q:
            return QuadExt._raw(x.p * y.p, x.q, x.d)
        return QuadExt._raw(x.p * y.p + x.q * y.q * x.d, x.p * y.q + x.q * y.p, x.d)

    @staticmethod
    def _div(x: QuadExt, y: QuadExt) -> QuadExt:
        if not y.q:
            if not y.p:
                raise ZeroDivisionError("division by zero field element")
            return QuadExt._raw(x.p / y.p, x.q / y.p, x.d)
        norm = y.p * y.p - y.d * y.q * y.q
        # multiply through by the conjugate p - q sqrt d
        num = QuadExt._mul(x, QuadExt._raw(y.p, -y.q, y.d))
        return QuadExt._raw(num.p / norm, num.q / norm, x.d)

    def __add__(self, other):
        return self._binary(other, QuadExt._add)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: QuadExt._add(b, a))

    def __sub__(self, other):
        return self._binary(other, QuadExt._sub)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: QuadExt._sub(b, a))

    def __mul__(self, other):
        return self._binary(other, QuadExt._mul)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: QuadExt._mul(b, a))

    def __truediv__(self, other):
        return self._binary(other, QuadExt._div)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: QuadExt._div(b, a))

    def __neg__(self) -> QuadExt:
        return QuadExt._raw(-self.p, -self.q, self.d)

    def __pos__(self) -> QuadExt:
        return self

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int) -> QuadExt:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return QuadExt._raw(Fraction(1), Fraction(0), self.d) / (self ** -n)
        result = QuadExt._raw(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                result = QuadExt._mul(result, base)
            base = QuadExt._mul(base, base)
            n >>= 1
        return result

    def conjugate(self) -> QuadExt:
        return QuadExt._raw(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.d * self.q * self.q

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        p, q = self.p, self.q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0 or sp == sq:
            return sp if sp else sq
        if sp == 0:
            return sq
        # opposite signs: the term of larger magnitude wins
        c = p * p - self.d * q * q
        return sp if c > 0 else sq

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError
        return diff.sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return self.p == other.p and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return not self.q and self.p == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.q:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __bool__(self) -> bool:
        return bool(self.p) or bool(self.q)

    # -- conversions ------------------------------------------------------
    def is_rational(self) -> bool:
        return not self.q

    def __float__(self) -> float:
        if not self.q:
            return float(self.p)
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def floor(self) -> int:
        """Exact floor of the represented real."""
        if not self.q:
            return math.floor(self.p)
        # integer estimate of q*sqrt(d), then correct with exact comparisons
        q = self.q
        scale = q.denominator
        root = math.isqrt(q.numerator * q.numerator * self.d)
        est = math.floor(self.p + (Fraction(root, scale) if q > 0 else -Fraction(root, scale)))
        while self < est:
            est -= 1
        while self >= est + 1:
            est += 1
        return est

    def sqrt(self) -> QuadExt:
        """Principal square root inside the field, or :class:`FieldEscape`."""
        s = self.sign()
        if s < 0:
            raise FieldEscape(f"square root of negative number {self}")
        if s == 0:
            return self
        if not self.q:
            r = _rational_sqrt(self.p)
            if r is not None:
                return QuadExt._raw(r, Fraction(0), self.d)
            if self.d > 1:
                r = _rational_sqrt(self.p / self.d)
                if r is not None:
                    return QuadExt._raw(Fraction(0), r, self.d)
            raise FieldEscape(f"sqrt({self}) is not in Q(sqrt {self.d})")
        r = _rational_sqrt(self.norm())
        if r is not None:
            for cand in ((self.p + r) / 2, (self.p - r) / 2):
                u = _rational_sqrt(cand)
                if u:
                    root = QuadExt._raw(u, self.q / (2 * u), self.d)
                    return root if root.sign() > 0 else -root
        raise FieldEscape(f"sqrt({self}) is not in Q(sqrt {self.d})")

    def to_decimal(self, precision: int) -> str:
        return field_to_decimal(self, precision)

    def encode(self) -> dict:
        return {"p": _fmt_fraction(self.p), "q": _fmt_fraction(self.q)}

    def __repr__(self) -> str:
        def r(x: Fraction):
            return str(x.numerator) if x.denominator == 1 else f"Fraction({x.numerator}, {x.denominator})"

        return f"QuadExt({r(self.p)}, {r(self.q)}, {self.d})"

    def __str__(self) -> str:
        if not self.q:
            return str(self.p)
        rad = f"√{self.d}"
        qs = "" if abs(self.q) == 1 else str(abs(self.q))
        if not self.p:
            return f"{'-' if self.q < 0 else ''}{qs}{rad}"
        return f"{self.p}{'-' if self.q < 0 else '+'}{qs}{rad}"


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def field_arith(x: QuadExt, y: QuadExt, op: str) -> QuadExt:
    if x.d != y.d:
        raise FieldMismatch(f"Q(sqrt {x.d}) vs Q(sqrt {y.d})")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def field_sign(x: QuadExt) -> int:
    return x.sign()


def field_to_decimal(x: QuadExt, precision: int) -> str:
    """Decimal expansion with ``precision`` digits after the point, rounded half away from zero."""
    if precision < 0:
        raise ValueError("precision must be non-negative")
    neg = x.sign() < 0
    scaled = abs(x) * (10 ** precision) + Fraction(1, 2)
    n = scaled.floor()
    digits = str(n).rjust(precision + 1, "0")
    body = digits if precision == 0 else f"{digits[:-precision]}.{digits[-precision:]}"
    return f"-{body}" if neg and n else body
