"""JSON map files.

A single map::

    {"field_d": 1, "breakpoints": [Q, ...], "pieces": [{"a": Q, "b": Q, "c": Q, "d": Q}, ...]}

or a document of named maps::

    {"field_d": 1, "maps": {"z": {"breakpoints": [...], "pieces": [...]}, ...}}

where each ``Q`` is ``{"p": "num/den", "q": "num/den"}`` (the value p + q sqrt d);
a bare string or integer is read as a rational.
"""

from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import (
    InvalidMap,
    NotIncreasing,
    OrientationReversing,
    ParseError,
    SingularMatrix,
    ValidationError,
)
from .exactnum import QuadExt, is_squarefree
from .moebius import make_moebius
from .pmap import PiecewiseProjMap, make_pmap

__all__ = [
    "MapDocument",
    "decode_quad",
    "decode_map",
    "loads_document",
    "load_document",
    "dumps_document",
    "save_document",
    "load_map_ref",
    "ENV_FIELD_D",
]

ENV_FIELD_D = "PPCONJ_FIELD_D"


@dataclass
class MapDocument:
    field_d: int = 1
    maps: dict[str, PiecewiseProjMap] = field(default_factory=dict)

    def __getitem__(self, name: str) -> PiecewiseProjMap:
        return self.maps[name]


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"expected a rational, got {x!r}", where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}", where) from exc
    raise ParseError(f"expected a rational string or integer, got {x!r}", where)


def decode_quad(obj, d: int, where: str = "") -> QuadExt:
    if isinstance(obj, dict):
        extra = set(obj) - {"p", "q"}
        if extra or "p" not in obj:
            raise ParseError(f"field element needs keys p and optional q, got {sorted(obj)}", where)
        p = _rational(obj["p"], f"{where}.p")
        q = _rational(obj.get("q", 0), f"{where}.q")
        if d == 1 and q:
            raise ParseError("nonzero q over the rationals (field_d = 1)", where)
        return QuadExt(p, q, d)
    return QuadExt(_rational(obj, where), 0, d)


def decode_map(obj, d: int, name: str = "map") -> PiecewiseProjMap:
    if not isinstance(obj, dict):
        raise ParseError("map must be an object", name)
    for key in ("breakpoints", "pieces"):
        if not isinstance(obj.get(key), list):
            raise ParseError(f"missing list {key!r}", name)
    bps = [decode_quad(b, d, f"{name}.breakpoints[{i}]") for i, b in enumerate(obj["breakpoints"])]
    pieces = []
    for i, p in enumerate(obj["pieces"]):
        where = f"{name}.pieces[{i}]"
        if not isinstance(p, dict) or set(p) != set("abcd"):
            raise ParseError("piece needs exactly the keys a, b, c, d", where)
        pieces.append(tuple(decode_quad(p[k], d, f"{where}.{k}") for k in "abcd"))
    try:
        checked = []
        for i, coeffs in enumerate(pieces):
            try:
                checked.append(make_moebius(*coeffs, field_d=d))
            except (SingularMatrix, OrientationReversing) as exc:
                raise NotIncreasing(f"piece {i}: {exc}", location=i) from exc
        return make_pmap(bps, checked, field_d=d)
    except InvalidMap as exc:
        raise ValidationError(name, exc) from exc


def _resolve_field(file_d, env: dict | None = None) -> int:
    env = os.environ if env is None else env
    raw = env.get(ENV_FIELD_D)
    env_d = None
    if raw:
        try:
            env_d = int(raw)
        except ValueError as exc:
            raise ParseError(f"{ENV_FIELD_D}={raw!r} is not an integer") from exc
    if file_d is None:
        d = env_d if env_d is not None else 1
    else:
        if isinstance(file_d, bool) or not isinstance(file_d, int):
            raise ParseError(f"field_d must be an integer, got {file_d!r}", "field_d")
        d = file_d
        if env_d is not None and env_d != file_d:
            warnings.warn(f"{ENV_FIELD_D}={env_d} ignored: file declares field_d={file_d}", stacklevel=3)
    if not is_squarefree(d):
        raise ParseError(f"field_d must be a positive squarefree integer, got {d}", "field_d")
    return d


def loads_document(text: str, env: dict | None = None, default_name: str = "map") -> MapDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    d = _resolve_field(obj.get("field_d"), env)
    if "maps" in obj:
        if not isinstance(obj["maps"], dict):
            raise ParseError("'maps' must be an object", "maps")
        maps = {name: decode_map(m, d, name) for name, m in obj["maps"].items()}
        return MapDocument(d, maps)
    return MapDocument(d, {default_name: decode_map(obj, d, default_name)})


def load_document(path: str | Path, env: dict | None = None) -> MapDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", str(path)) from exc
    return loads_document(text, env, default_name=path.stem)


def _map_body(f: PiecewiseProjMap) -> dict:
    enc = f.encode()
    return {"breakpoints": enc["breakpoints"], "pieces": enc["pieces"]}


def dumps_document(doc: MapDocument | PiecewiseProjMap) -> str:
    """Canonical JSON text; loading and re-saving it reproduces the same bytes."""
    if isinstance(doc, PiecewiseProjMap):
        obj = {"field_d": doc.field_d, **_map_body(doc)}
    else:
        obj = {"field_d": doc.field_d, "maps": {k: _map_body(v) for k, v in sorted(doc.maps.items())}}
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def save_document(doc: MapDocument | PiecewiseProjMap, path: str | Path) -> None:
    Path(path).write_text(dumps_document(doc), encoding="utf-8")


def load_map_ref(ref: str, env: dict | None = None) -> PiecewiseProjMap:
    """Load ``FILE`` (a single-map file or a one-map document) or ``FILE:NAME``."""
    path, name = ref, None
    if not Path(ref).exists() and ":" in ref:
        path, name = ref.rsplit(":", 1)
    doc = load_document(path, env)
    if name is None:
        if len(doc.maps) != 1:
            raise ParseError(f"document holds {len(doc.maps)} maps; select one with FILE:NAME", path)
        return next(iter(doc.maps.values()))
    if name not in doc.maps:
        raise ParseError(f"no map named {name!r} (have {sorted(doc.maps)})", path)
    return doc.maps[name]
