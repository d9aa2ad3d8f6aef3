"""Command-line front end: ``ppconj <command> ...``.

Exit status: 0 for success or an affirmative verdict, 1 for a negative verdict
or an invalid map, 2 for usage and other errors.  Numbers are printed exactly
unless ``--decimal P`` asks for P decimal places.  Maps go to stdout as text,
or to ``-o FILE`` as canonical JSON.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .affgroup import AffElem
from .centralizer import classify_centralizer
from .conjugacy import compute_boxes, stair
from .errors import ParseError, PPConjError, ValidationError
from .exactnum import QuadExt, field_to_decimal
from .mapfile import MapDocument, load_document, load_map_ref, save_document
from .mather import decide_conjugacy_translation_class, mather_invariant, rotations_matching
from .oracle import numeric_oracle
from .pmap import PiecewiseProjMap, pmap_interpolate, pmap_power
from .randomgen import ElementClass, RandomSpec, random_element

EXIT_OK, EXIT_NO, EXIT_ERR = 0, 1, 2


class _Out:
    """Formats exact values, honouring ``--decimal``."""

    def __init__(self, decimal: int | None, stream=None):
        self.decimal = decimal
        self.stream = stream or sys.stdout

    def num(self, x) -> str:
        if x is None:
            return "inf"
        if self.decimal is not None and isinstance(x, QuadExt):
            return field_to_decimal(x, self.decimal)
        return str(x)

    def piece(self, p) -> str:
        if self.decimal is None:
            return str(p)
        a, b, c, d = (self.num(v) for v in p.coefficients())
        return f"({a}*t + {b})/({c}*t + {d})"

    def map_text(self, f) -> str:
        lines = []
        for lo, hi, p in f.segments():
            left = "(-inf" if lo is None else f"[{self.num(lo)}"
            right = "+inf)" if hi is None else f"{self.num(hi)}]"
            lines.append(f"{self.piece(p)}  on  {left}, {right}")
        return "\n".join(lines)

    def line(self, text: str = "") -> None:
        print(text, file=self.stream)

    def kv(self, key: str, value) -> None:
        self.line(f"{key}: {value if isinstance(value, str) else self.num(value)}")


def _parse_number(text: str, d: int) -> QuadExt:
    """``p`` or ``p,q`` (the value p + q sqrt d) with rational parts."""
    parts = text.split(",")
    try:
        vals = [Fraction(s.strip()) for s in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {text!r}") from exc
    if len(vals) == 1:
        return QuadExt(vals[0], 0, d)
    if len(vals) == 2:
        return QuadExt(vals[0], vals[1], d)
    raise ParseError(f"bad number {text!r}")


def _parse_list(text: str, d: int) -> list[QuadExt]:
    """Comma-separated rationals, or semicolon-separated when elements use ``p,q``."""
    if not text.strip():
        return []
    return [_parse_number(s, d) for s in text.split(";")] if ";" in text else \
        [_parse_number(s, d) for s in text.split(",")]


def _emit_map(out: _Out, f: PiecewiseProjMap, path: str | None, name: str = "map") -> None:
    if path:
        save_document(MapDocument(f.field_d, {name: f}), path)
        out.line(f"wrote {path}")
    else:
        out.line(out.map_text(f))


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args, out: _Out) -> int:
    try:
        doc = load_document(args.file)
    except ValidationError as exc:
        out.line(f"invalid: {exc}")
        return EXIT_NO
    names = [args.map] if args.map else sorted(doc.maps)
    for name in names:
        if name not in doc.maps:
            raise ParseError(f"no map named {name!r}", args.file)
        f = doc.maps[name]
        out.line(f"{name}: valid, {len(f.breakpoints)} breakpoint(s), field_d={f.field_d}")
    return EXIT_OK


def cmd_compose(args, out: _Out) -> int:
    maps = [load_map_ref(r) for r in args.maps]
    f = maps[0]
    for g in maps[1:]:
        f = f * g
    _emit_map(out, f, args.output, "composition")
    return EXIT_OK


def cmd_invert(args, out: _Out) -> int:
    _emit_map(out, load_map_ref(args.map).inverse(), args.output, "inverse")
    return EXIT_OK


def cmd_power(args, out: _Out) -> int:
    _emit_map(out, pmap_power(load_map_ref(args.map), args.n), args.output, "power")
    return EXIT_OK


def cmd_apply(args, out: _Out) -> int:
    f = load_map_ref(args.map)
    for text in args.points:
        t = _parse_number(text, f.field_d)
        out.line(f"{out.num(t)} -> {out.num(f(t))}")
    return EXIT_OK


def cmd_boxes(args, out: _Out) -> int:
    y, z = load_map_ref(args.y), load_map_ref(args.z)
    box = compute_boxes(y, z)
    out.kv("L", box.L)
    out.kv("R", box.R)
    return EXIT_OK


def _germ(text: str, d: int) -> AffElem:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"--germ expects SLOPE,INTERCEPT, got {text!r}")
    return AffElem(_parse_number(parts[0], d), _parse_number(parts[1], d))


def cmd_stair(args, out: _Out) -> int:
    y, z = load_map_ref(args.y), load_map_ref(args.z)
    res = stair(y, z, _germ(args.germ, y.field_d), max_N=args.max_n, force_N=args.force_n)
    out.line(res.kind if res.reason is None else f"{res.kind}: {res.reason}")
    if res.N is not None:
        out.kv("N", str(res.N))
    for note in res.notes:
        out.kv("note", note)
    if res.witness is not None:
        out.kv("witness", f"[{out.num(res.witness.lo)}, {out.num(res.witness.hi)}]")
    if res.is_conjugator:
        _emit_map(out, res.g, args.output, "g")
        return EXIT_OK
    if args.show_candidate and res.candidate is not None:
        out.line("candidate:")
        for lo, hi, p in res.candidate.segments():
            out.line(f"  {out.piece(p)}  on  [{out.num(lo)}, {out.num(hi)}]")
    return EXIT_NO


def cmd_translation_class(args, out: _Out) -> int:
    y, z = load_map_ref(args.y), load_map_ref(args.z)
    v = decide_conjugacy_translation_class(y, z)
    out.line("conjugate" if v.conjugate else f"not conjugate: {v.reason}")
    for note in v.notes:
        out.kv("note", note)
    if v.conjugate:
        _emit_map(out, v.g, args.output, "g")
        return EXIT_OK
    return EXIT_NO


def cmd_mather(args, out: _Out) -> int:
    z = load_map_ref(args.z)
    inv = mather_invariant(z)
    out.kv("N", str(inv.N))
    out.kv("L", inv.L)
    out.line("lift on [-1, 0]:")
    lift = inv.lift
    for i, p in enumerate(lift.pieces):
        lo = "-1" if i == 0 else out.num(lift.breakpoints[i - 1])
        hi = "0" if i == len(lift.pieces) - 1 else out.num(lift.breakpoints[i])
        out.line(f"  {out.piece(p)}  on  [{lo}, {hi}]")
    out.kv("circle breakpoints", ", ".join(out.num(b) for b in lift.circle_breakpoints()) or "none")
    rot = rotations_matching(inv, inv)
    if rot.all_rotations:
        out.kv("self-rotations", "all")
    else:
        out.kv("self-rotations", ", ".join(f"({out.num(a)}, {out.num(b)})" for a, b in rot.pairs))
    if args.plot:
        from .plotting import plot_lift_svg

        plot_lift_svg(lift, args.plot, title="Mather invariant (lift)")
        out.line(f"wrote {args.plot}")
    return EXIT_OK


def cmd_centralizer(args, out: _Out) -> int:
    sig = classify_centralizer(load_map_ref(args.z))
    out.line(str(sig))
    for r in sig.reports:
        out.line(f"  {r}")
    return EXIT_OK


def cmd_transitive(args, out: _Out) -> int:
    d = args.field_d
    f = pmap_interpolate(_parse_list(args.sources, d), _parse_list(args.targets, d), d)
    _emit_map(out, f, args.output, "interpolant")
    return EXIT_OK


def _range(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"--range expects LO,HI, got {text!r}")
    try:
        return Fraction(parts[0]), Fraction(parts[1])
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad range {text!r}") from exc


def cmd_plot(args, out: _Out) -> int:
    from .plotting import plot_svg

    f = load_map_ref(args.map)
    if args.range:
        lo, hi = _range(args.range)
    elif f.breakpoints:
        lo, hi = Fraction(f.breakpoints[0].floor() - 1), Fraction(f.breakpoints[-1].floor() + 2)
    else:
        lo, hi = Fraction(-2), Fraction(2)
    plot_svg(f, lo, hi, args.output, title=args.title)
    out.line(f"wrote {args.output}")
    return EXIT_OK


def cmd_random(args, out: _Out) -> int:
    lo, hi = (int(x) for x in _range(args.range))
    spec = RandomSpec(seed=args.seed, bump_count=args.bumps, breakpoint_range=(lo, hi),
                      coefficient_height=args.height, field_d=args.field_d)
    f = random_element(spec, ElementClass(args.kind))
    _emit_map(out, f, args.output, f"random_{args.seed}")
    return EXIT_OK


def cmd_oracle(args, out: _Out) -> int:
    f, g = load_map_ref(args.f), load_map_ref(args.g)
    dev = numeric_oracle(f, g, samples=args.samples)
    out.kv("max deviation", f"{dev:.3e}")
    return EXIT_OK if dev < args.tol else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--decimal", type=int, metavar="P", help="print numbers with P decimal places")
    # repeated on each subcommand; suppressed so it does not mask a top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--decimal", type=int, metavar="P", default=argparse.SUPPRESS,
                        help="print numbers with P decimal places")

    p = argparse.ArgumentParser(prog="ppconj", parents=[top],
                                description="Exact computations in the group of piecewise projective homeomorphisms.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    def with_output(sp):
        sp.add_argument("-o", "--output", help="write the resulting map as JSON")
        return sp

    sp = add("check", cmd_check, "validate a map file")
    sp.add_argument("file")
    sp.add_argument("map", nargs="?")

    sp = with_output(add("compose", cmd_compose, "compose maps right to left (f g = f o g)"))
    sp.add_argument("maps", nargs="+", metavar="MAP")

    sp = with_output(add("invert", cmd_invert, "inverse map"))
    sp.add_argument("map")

    sp = with_output(add("power", cmd_power, "integer power"))
    sp.add_argument("map")
    sp.add_argument("n", type=int)

    sp = add("apply", cmd_apply, "evaluate a map at points (p or p,q for p + q sqrt d)")
    sp.add_argument("map")
    sp.add_argument("points", nargs="+")

    sp = add("boxes", cmd_boxes, "initial and final box thresholds")
    sp.add_argument("y")
    sp.add_argument("z")

    sp = with_output(add("stair", cmd_stair, "conjugator with a prescribed initial germ"))
    sp.add_argument("y")
    sp.add_argument("z")
    sp.add_argument("--germ", required=True, metavar="SLOPE,INTERCEPT")
    sp.add_argument("--max-n", type=int, default=256)
    sp.add_argument("--force-n", type=int)
    sp.add_argument("--show-candidate", action="store_true", help="print the candidate on failure")

    sp = with_output(add("conjugate-translation-class", cmd_translation_class,
                         "decide conjugacy of one-bump maps with translation germs"))
    sp.add_argument("y")
    sp.add_argument("z")

    sp = add("mather", cmd_mather, "Mather invariant of a one-bump map with translation germs")
    sp.add_argument("z")
    sp.add_argument("--plot", metavar="FILE.svg")

    sp = add("centralizer", cmd_centralizer, "centralizer signature Z^n x R^m x H^k")
    sp.add_argument("z")

    sp = with_output(add("transitive", cmd_transitive, "map sending one increasing tuple to another"))
    sp.add_argument("--from", dest="sources", required=True, metavar="LIST")
    sp.add_argument("--to", dest="targets", required=True, metavar="LIST")
    sp.add_argument("--field-d", type=int, default=1)

    sp = add("plot", cmd_plot, "SVG graph of a map with the diagonal")
    sp.add_argument("map")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--range", metavar="LO,HI")
    sp.add_argument("--title")

    sp = with_output(add("random", cmd_random, "seeded random element"))
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--kind", choices=[c.value for c in ElementClass], default="General")
    sp.add_argument("--bumps", type=int, default=2)
    sp.add_argument("--range", default="-4,4", metavar="LO,HI")
    sp.add_argument("--height", type=int, default=4)
    sp.add_argument("--field-d", type=int, default=1)

    sp = add("oracle", cmd_oracle, "floating-point comparison of two maps")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--tol", type=float, default=1e-9)
    return p


# options whose values often start with a minus sign ("--range -2,3")
_SIGNED_VALUE_OPTIONS = ("--range", "--germ", "--from", "--to")


def _attach_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_values(argv))
    out = _Out(args.decimal)
    try:
        return args.fn(args, out)
    except ValidationError as exc:
        print(f"error: ValidationError: {exc}", file=sys.stderr)
        return EXIT_NO
    except PPConjError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERR
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERR


if __name__ == "__main__":
    sys.exit(main())
