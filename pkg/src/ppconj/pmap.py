"""Piecewise projective homeomorphisms of the line (elements of Monod's group H).

A map is stored as strictly increasing breakpoints ``t_0 < ... < t_{n-1}`` and
``n + 1`` Moebius pieces; piece ``i`` acts on ``[t_{i-1}, t_i]`` with the first
and last intervals unbounded.  Maps are kept in a canonical minimal form (no two
adjacent pieces equal), so structural equality is equality of maps.

Composition follows function notation: ``f * g`` is ``f o g`` (apply ``g`` first).
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from enum import Enum
from typing import NamedTuple, Sequence

from .affgroup import AffElem
from .errors import (
    Discontinuous,
    EndPieceNotAffine,
    FieldEscape,
    IntervalNotInvariant,
    InvalidMap,
    LengthMismatch,
    NotIncreasing,
    OrientationReversing,
    PoleInsideInterval,
    SingularMatrix,
)
from .exactnum import QuadExt
from .moebius import INFINITY, MoebiusMap, make_moebius, moebius_as_affine

__all__ = [
    "Interval",
    "End",
    "BumpClass",
    "PiecewiseProjMap",
    "make_pmap",
    "pmap_apply",
    "pmap_compose",
    "pmap_inverse",
    "pmap_power",
    "pmap_germ",
    "pmap_fix_boundary",
    "pmap_one_bump_class",
    "pmap_interpolate",
    "pmap_transport",
    "transporter",
    "restrict_segments",
    "pmap_untransport",
]


class Interval(NamedTuple):
    """An interval of the line; ``None`` stands for an infinite end."""

    lo: QuadExt | None
    hi: QuadExt | None

    def contains(self, t: QuadExt, closed: bool = False) -> bool:
        if self.lo is not None and (t < self.lo if closed else t <= self.lo):
            return False
        if self.hi is not None and (t > self.hi if closed else t >= self.hi):
            return False
        return True

    def is_whole_line(self) -> bool:
        return self.lo is None and self.hi is None

    def __str__(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"({lo}, {hi})"


class End(str, Enum):
    NEG_INF = "NegInf"
    POS_INF = "PosInf"


class BumpClass(str, Enum):
    ABOVE = "Above"
    BELOW = "Below"
    MIXED = "Mixed"
    IDENTITY = "Identity"


# A segment is (lo, hi, piece) with lo/hi None at infinite ends.
Segment = tuple


class PiecewiseProjMap:
    """Canonical piecewise Moebius homeomorphism of the line fixing infinity."""

    __slots__ = ("breakpoints", "pieces", "_hash")

    def __init__(self, breakpoints: tuple, pieces: tuple):
        # trusted constructor: callers guarantee the invariants
        self.breakpoints = breakpoints
        self.pieces = pieces
        self._hash = None

    # -- construction ------------------------------------------------------
    @classmethod
    def identity(cls, d: int = 1) -> PiecewiseProjMap:
        return cls((), (MoebiusMap.identity(d),))

    @classmethod
    def affine(cls, slope, intercept, field_d: int | None = None) -> PiecewiseProjMap:
        return cls((), (MoebiusMap.affine(slope, intercept, field_d),))

    @property
    def field_d(self) -> int:
        return self.pieces[0].field_d

    # -- group structure ---------------------------------------------------
    def __call__(self, t):
        return pmap_apply(self, t)

    def __mul__(self, other: PiecewiseProjMap) -> PiecewiseProjMap:
        return pmap_compose(self, other)

    def __pow__(self, n: int) -> PiecewiseProjMap:
        return pmap_power(self, n)

    def inverse(self) -> PiecewiseProjMap:
        return pmap_inverse(self)

    def is_identity(self) -> bool:
        return not self.breakpoints and self.pieces[0].is_identity()

    def is_affine(self) -> bool:
        return not self.breakpoints

    def segments(self) -> list[Segment]:
        bps = self.breakpoints
        los = (None,) + bps
        his = bps + (None,)
        return list(zip(los, his, self.pieces))

    def piece_at(self, t: QuadExt) -> MoebiusMap:
        return self.pieces[bisect_right(self.breakpoints, t)]

    def germ(self, end: End | str) -> tuple[AffElem, QuadExt | None]:
        return pmap_germ(self, end)

    # -- comparison and display --------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseProjMap):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.pieces == other.pieces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.breakpoints, self.pieces))
        return self._hash

    def __repr__(self) -> str:
        return f"PiecewiseProjMap(breakpoints={[str(b) for b in self.breakpoints]}, pieces={[str(p) for p in self.pieces]})"

    def __str__(self) -> str:
        lines = []
        for lo, hi, piece in self.segments():
            span = Interval(lo, hi)
            lines.append(f"{piece}  on  {_closed_str(span)}")
        return "\n".join(lines)

    def encode(self) -> dict:
        return {
            "field_d": self.field_d,
            "breakpoints": [b.encode() for b in self.breakpoints],
            "pieces": [p.encode() for p in self.pieces],
        }


def _closed_str(span: Interval) -> str:
    lo = "(-inf" if span.lo is None else f"[{span.lo}"
    hi = "+inf)" if span.hi is None else f"{span.hi}]"
    return f"{lo}, {hi}"


# ---------------------------------------------------------------------------
# validation


def _coerce_piece(p, d: int | None, index: int) -> MoebiusMap:
    if isinstance(p, MoebiusMap):
        return p
    try:
        return make_moebius(*p, field_d=d)
    except (OrientationReversing, SingularMatrix) as exc:
        raise NotIncreasing(f"piece {index} is not increasing: {exc}", location=index) from exc


def _pole_in_closed(piece: MoebiusMap, lo, hi) -> bool:
    if not piece.c:
        return False
    pole = piece.pole()
    return (lo is None or pole >= lo) and (hi is None or pole <= hi)


def make_pmap(breakpoints: Sequence, pieces: Sequence, field_d: int | None = None) -> PiecewiseProjMap:
    """Validate and canonicalize a piecewise Moebius map.

    Pieces may be :class:`MoebiusMap` values or coefficient quadruples.  Adjacent
    equal pieces are merged and their common breakpoint dropped.
    """
    if len(pieces) != len(breakpoints) + 1:
        raise InvalidMap(
            f"need {len(breakpoints) + 1} pieces for {len(breakpoints)} breakpoints, got {len(pieces)}"
        )
    if field_d is None:
        field_d = next((x.d for x in breakpoints if isinstance(x, QuadExt)), None)
        if field_d is None:
            field_d = next((p.field_d for p in pieces if isinstance(p, MoebiusMap)), None)
    d = field_d or 1
    bps = tuple(b if isinstance(b, QuadExt) else QuadExt(b, 0, d) for b in breakpoints)
    ps = tuple(_coerce_piece(p, d, i) for i, p in enumerate(pieces))
    for i in range(1, len(bps)):
        if not bps[i - 1] < bps[i]:
            raise NotIncreasing(f"breakpoints not strictly increasing at index {i}", location=i)
    for end, piece in ((0, ps[0]), (len(ps) - 1, ps[-1])):
        if piece.c:
            raise EndPieceNotAffine(f"end piece {end} ({piece}) does not fix infinity", location=end)
    los = (None,) + bps
    his = bps + (None,)
    for i, (lo, hi, piece) in enumerate(zip(los, his, ps)):
        if _pole_in_closed(piece, lo, hi):
            raise PoleInsideInterval(f"piece {i} ({piece}) has its pole {piece.pole()} in its interval", location=i)
    for i, t in enumerate(bps):
        left, right = ps[i](t), ps[i + 1](t)
        if left != right:
            raise Discontinuous(f"discontinuous at {t}: {left} != {right}", location=t)
    return _merge(bps, ps)


def _merge(bps, pieces) -> PiecewiseProjMap:
    out_b: list = []
    out_p: list = [pieces[0]]
    for b, p in zip(bps, pieces[1:]):
        if p == out_p[-1]:
            continue
        out_b.append(b)
        out_p.append(p)
    return PiecewiseProjMap(tuple(out_b), tuple(out_p))


def _from_segments(segs: list[Segment]) -> PiecewiseProjMap:
    return _merge(tuple(s[1] for s in segs[:-1]), tuple(s[2] for s in segs))


# ---------------------------------------------------------------------------
# evaluation and group law


def pmap_apply(f: PiecewiseProjMap, t):
    if t is INFINITY:
        return INFINITY
    if not isinstance(t, QuadExt):
        t = QuadExt(t, 0, f.field_d)
    return f.pieces[bisect_right(f.breakpoints, t)](t)


def _image_end(piece: MoebiusMap, t, at_low: bool):
    """Image of a segment end; ``None`` ends are the limits at -inf / +inf."""
    if t is not None:
        v = piece(t)
        # a transporter piece sends a finite end of its interval to infinity
        return None if v is INFINITY else v
    if not piece.c:
        return None
    return piece.a / piece.c


def _compose_segments(fbps: tuple, fpieces: tuple, gsegs: list[Segment]) -> list[Segment]:
    """Segments of ``f o g`` where ``g`` is given by segments.

    ``f`` is described by its breakpoints and pieces; the image of ``g`` must
    lie in the domain of ``f``.  Cut points are the breakpoints of ``g`` and
    the preimages of breakpoints of ``f``.
    """
    out: list[Segment] = []
    for lo, hi, gp in gsegs:
        ilo = _image_end(gp, lo, True)
        ihi = _image_end(gp, hi, False)
        start = 0 if ilo is None else bisect_right(fbps, ilo)
        stop = len(fbps) if ihi is None else bisect_left(fbps, ihi)
        ginv = gp.inverse() if stop > start else None
        cur = lo
        idx = start
        for j in range(start, stop):
            cut = ginv(fbps[j])
            out.append((cur, cut, fpieces[idx] * gp))
            cur = cut
            idx = j + 1
        out.append((cur, hi, fpieces[idx] * gp))
    return out


def pmap_compose(f: PiecewiseProjMap, g: PiecewiseProjMap) -> PiecewiseProjMap:
    """``f o g``."""
    if not g.breakpoints and g.pieces[0].is_identity():
        return f
    if not f.breakpoints and f.pieces[0].is_identity():
        return g
    return _from_segments(_compose_segments(f.breakpoints, f.pieces, g.segments()))


def pmap_inverse(f: PiecewiseProjMap) -> PiecewiseProjMap:
    bps = tuple(f.pieces[i](b) for i, b in enumerate(f.breakpoints))
    return PiecewiseProjMap(bps, tuple(p.inverse() for p in f.pieces))


def pmap_power(f: PiecewiseProjMap, n: int) -> PiecewiseProjMap:
    if n < 0:
        f, n = pmap_inverse(f), -n
    result = PiecewiseProjMap.identity(f.field_d)
    base = f
    while n:
        if n & 1:
            result = pmap_compose(result, base)
        n >>= 1
        if n:
            base = pmap_compose(base, base)
    return result


def pmap_germ(f: PiecewiseProjMap, end: End | str) -> tuple[AffElem, QuadExt | None]:
    """Affine germ at an end and the threshold beyond which ``f`` equals it."""
    end = End(end)
    if end is End.NEG_INF:
        piece, thr = f.pieces[0], (f.breakpoints[0] if f.breakpoints else None)
    else:
        piece, thr = f.pieces[-1], (f.breakpoints[-1] if f.breakpoints else None)
    return moebius_as_affine(piece), thr


# ---------------------------------------------------------------------------
# fixed points and position relative to the diagonal


def _displacement_poly(piece: MoebiusMap):
    """Coefficients ``(A, B, C)`` of the numerator of ``piece(t) - t``."""
    a, b, c, d = piece.coefficients()
    return -c, a - d, b


def _poly_at(poly, t) -> QuadExt:
    A, B, C = poly
    return (A * t + B) * t + C


def _poly_sign_at(poly, t, toward_pos: bool) -> int:
    """Sign at ``t``; ``None`` means the limit at +inf (``toward_pos``) or -inf."""
    A, B, C = poly
    if t is not None:
        return _poly_at(poly, t).sign()
    if A:
        return A.sign()
    if B:
        return B.sign() if toward_pos else -B.sign()
    return C.sign()


def _between(t, lo, hi) -> bool:
    return (lo is None or t > lo) and (hi is None or t < hi)


def _exact_roots(poly) -> list | None:
    """Sorted real roots in the field, or ``None`` when they are irrational."""
    A, B, C = poly
    if not A:
        if not B:
            return []
        return [-C / B]
    disc = B * B - 4 * A * C
    s = disc.sign()
    if s < 0:
        return []
    if s == 0:
        return [-B / (2 * A)]
    try:
        root = disc.sqrt()
    except FieldEscape:
        return None
    r1, r2 = (-B - root) / (2 * A), (-B + root) / (2 * A)
    return sorted((r1, r2))


def _count_open_roots(poly, lo, hi) -> int:
    """Number of roots in the open interval ``(lo, hi)``, computed without square roots."""
    roots = _exact_roots(poly)
    if roots is not None:
        return sum(1 for r in roots if _between(r, lo, hi))
    A, B, _ = poly
    # two distinct irrational roots; they never coincide with a field endpoint
    s_lo = _poly_sign_at(poly, lo, False)
    s_hi = _poly_sign_at(poly, hi, True)
    if s_lo != s_hi:
        return 1
    vertex = -B / (2 * A)
    if s_lo == A.sign() and _between(vertex, lo, hi):
        return 2
    return 0


def _sample_point(lo, hi, d: int) -> QuadExt:
    if lo is None and hi is None:
        return QuadExt(0, 0, d)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def pmap_fix_boundary(f: PiecewiseProjMap) -> tuple[list[QuadExt], list[Interval]]:
    """Boundary of the fixed-point set and the maximal fixed intervals with interior.

    Raises :class:`FieldEscape` when an isolated fixed point is irrational over
    the field.
    """
    intervals: list[list] = []
    isolated: list[QuadExt] = []
    for lo, hi, piece in f.segments():
        if piece.is_identity():
            if intervals and intervals[-1][1] == lo and lo is not None:
                intervals[-1][1] = hi
            else:
                intervals.append([lo, hi])
            continue
        poly = _displacement_poly(piece)
        roots = _exact_roots(poly)
        if roots is None:
            if _count_open_roots(poly, lo, hi):
                raise FieldEscape(f"fixed point of {piece} inside {Interval(lo, hi)} is not in the field")
            continue
        for r in roots:
            if (lo is None or r >= lo) and (hi is None or r <= hi):
                isolated.append(r)
    fixed = [Interval(lo, hi) for lo, hi in intervals]
    points = set()
    for iv in fixed:
        for e in (iv.lo, iv.hi):
            if e is not None:
                points.add(e)
    for r in isolated:
        if not any(iv.contains(r, closed=True) for iv in fixed):
            points.add(r)
    return sorted(points), fixed


def pmap_one_bump_class(f: PiecewiseProjMap, interval: Interval | tuple | None = None) -> BumpClass:
    """Where the graph of ``f`` lies on the open ``interval`` relative to the diagonal."""
    iv = Interval(*interval) if interval is not None else Interval(None, None)
    d = f.field_d
    signs = set()
    for lo, hi, piece in f.segments():
        slo = lo if iv.lo is None or (lo is not None and lo >= iv.lo) else iv.lo
        shi = hi if iv.hi is None or (hi is not None and hi <= iv.hi) else iv.hi
        if slo is not None and shi is not None and slo >= shi:
            continue
        if piece.is_identity():
            signs.add(0)
            continue
        poly = _displacement_poly(piece)
        if _count_open_roots(poly, slo, shi):
            return BumpClass.MIXED
        # closed ends that are interior to the interval must not be fixed
        for e in (slo, shi):
            if e is not None and _between(e, iv.lo, iv.hi) and not _poly_at(poly, e):
                return BumpClass.MIXED
        t = _sample_point(slo, shi, d)
        signs.add((piece(t) - t).sign())
    if signs == {0}:
        return BumpClass.IDENTITY
    if signs == {1}:
        return BumpClass.ABOVE
    if signs == {-1}:
        return BumpClass.BELOW
    return BumpClass.MIXED


# ---------------------------------------------------------------------------
# constructions


def pmap_interpolate(sources: Sequence, targets: Sequence, field_d: int | None = None) -> PiecewiseProjMap:
    """A map of H sending ``sources[i]`` to ``targets[i]``, affine between the nodes."""
    if len(sources) != len(targets):
        raise LengthMismatch(f"{len(sources)} sources vs {len(targets)} targets")
    if field_d is None:
        field_d = next((x.d for x in (*sources, *targets) if isinstance(x, QuadExt)), 1)
    d = field_d
    ts = [x if isinstance(x, QuadExt) else QuadExt(x, 0, d) for x in sources]
    ss = [x if isinstance(x, QuadExt) else QuadExt(x, 0, d) for x in targets]
    for seq, name in ((ts, "sources"), (ss, "targets")):
        for i in range(1, len(seq)):
            if not seq[i - 1] < seq[i]:
                raise NotIncreasing(f"{name} not strictly increasing at index {i}", location=i)
    if not ts:
        return PiecewiseProjMap.identity(d)
    one = QuadExt(1, 0, d)
    pieces = [MoebiusMap.affine(one, ss[0] - ts[0])]
    for i in range(len(ts) - 1):
        slope = (ss[i + 1] - ss[i]) / (ts[i + 1] - ts[i])
        pieces.append(MoebiusMap.affine(slope, ss[i] - slope * ts[i]))
    pieces.append(MoebiusMap.affine(one, ss[-1] - ts[-1]))
    return _merge(tuple(ts), tuple(pieces))


def transporter(lo: QuadExt | None, hi: QuadExt | None, d: int = 1) -> tuple[tuple, tuple]:
    """Canonical increasing bijection from ``(lo, hi)`` onto the line.

    Returned as interior breakpoints and pieces over ``(lo, hi)``: a reciprocal
    piece at each finite end and an affine middle.  Half-lines use anchors at
    ``lo + 1`` or ``hi - 1``; bounded intervals use ``h = min(1, width/2)``.
    """
    one, zero = QuadExt(1, 0, d), QuadExt(0, 0, d)
    if lo is None and hi is None:
        return (), (MoebiusMap.identity(d),)
    if hi is None:
        p = lo
        left = make_moebius(one, -p - 1, one, -p)
        return (p + 1,), (left, MoebiusMap.affine(one, -p - 1))
    if lo is None:
        q = hi
        right = make_moebius(one, -q + 1, -one, q)
        return (q - 1,), (MoebiusMap.affine(one, -q + 1), right)
    p, q = lo, hi
    width = q - p
    h = min(one, width / 2)
    m = width - 2 * h
    left = make_moebius(one, -p - h, one, -p)
    right = make_moebius(one - m, -q + h + m * q, -one, q)
    if not m:
        return (p + h,), (left, right)
    return (p + h, q - h), (left, MoebiusMap.affine(one, -p - h), right)


def pmap_transport(z: PiecewiseProjMap, interval: Interval | tuple) -> PiecewiseProjMap:
    """Conjugate ``z`` restricted to an invariant interval to a map of the whole line."""
    iv = Interval(*interval)
    d = z.field_d
    for e in (iv.lo, iv.hi):
        if e is not None and z(e) != e:
            raise IntervalNotInvariant(f"z({e}) = {z(e)} != {e}")
    if iv.is_whole_line():
        return z
    tb, tp = transporter(iv.lo, iv.hi, d)
    # tau^-1 as segments over the whole line
    inv_b = tuple(tp[i](b) for i, b in enumerate(tb))
    inv_p = tuple(p.inverse() for p in tp)
    inv_segs = list(zip((None,) + inv_b, inv_b + (None,), inv_p))
    zs = _compose_segments(z.breakpoints, z.pieces, inv_segs)
    ws = _compose_segments(tb, tp, zs)
    w = _from_segments(ws)
    return make_pmap(w.breakpoints, w.pieces)


def restrict_segments(f: PiecewiseProjMap, lo: QuadExt | None, hi: QuadExt | None) -> list[Segment]:
    """Segments of ``f`` clipped to ``[lo, hi]`` (``None`` for an infinite end)."""
    out = []
    for slo, shi, piece in f.segments():
        if lo is not None and shi is not None and shi <= lo:
            continue
        if hi is not None and slo is not None and slo >= hi:
            continue
        a = slo if lo is None or (slo is not None and slo > lo) else lo
        b = shi if hi is None or (shi is not None and shi < hi) else hi
        out.append((a, b, piece))
    return out


def pmap_untransport(w: PiecewiseProjMap, interval: Interval | tuple) -> PiecewiseProjMap:
    """The map equal to ``tau^-1 w tau`` on ``interval`` and to the identity elsewhere.

    Inverse of :func:`pmap_transport` for maps of the interval subgroup.
    """
    iv = Interval(*interval)
    if iv.is_whole_line():
        return w
    d = w.field_d
    tb, tp = transporter(iv.lo, iv.hi, d)
    inv_b = tuple(tp[i](b) for i, b in enumerate(tb))
    inv_p = tuple(p.inverse() for p in tp)
    tau_segs = list(zip((iv.lo,) + tb, tb + (iv.hi,), tp))
    inner = _compose_segments(w.breakpoints, w.pieces, tau_segs)
    mid = _compose_segments(inv_b, inv_p, inner)
    ident = MoebiusMap.identity(d)
    segs = ([(None, iv.lo, ident)] if iv.lo is not None else []) + mid
    if iv.hi is not None:
        segs.append((iv.hi, None, ident))
    return _from_segments(segs)
