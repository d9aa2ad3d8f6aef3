"""SVG graphs of maps and Mather lifts, drawn with matplotlib."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import PreconditionViolated  # noqa: E402
from .exactnum import QuadExt, field_to_decimal  # noqa: E402
from .mather import CircleMapLift  # noqa: E402
from .oracle import sample_grid  # noqa: E402
from .pmap import PiecewiseProjMap  # noqa: E402

__all__ = ["SIZE_PX", "SAMPLES", "sample_map", "plot_svg", "plot_lift_svg"]

SIZE_PX = 640
SAMPLES = 512
_DPI = 72


def _to_float(x: QuadExt) -> float:
    return float(field_to_decimal(x, 17))


def sample_map(f, lo, hi, samples: int = SAMPLES, d: int = 1) -> tuple[list[float], list[float]]:
    """Exact evaluation on the plotting grid, then rounded for drawing."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise PreconditionViolated(f"empty plot range [{lo}, {hi}]")
    xs, ys = [], []
    for t in sample_grid(lo, hi, samples):
        x = QuadExt(t, 0, d)
        xs.append(_to_float(x))
        ys.append(_to_float(f(x)))
    return xs, ys


def _figure(title: str | None):
    fig, ax = plt.subplots(figsize=(SIZE_PX / _DPI, SIZE_PX / _DPI), dpi=_DPI)
    if title:
        ax.set_title(title)
    ax.grid(True, linewidth=0.3)
    return fig, ax


def _finish(fig, ax, lo: float, hi: float, output) -> Path:
    ax.plot([lo, hi], [lo, hi], color="0.5", linestyle="--", linewidth=1, label="diagonal")
    ax.legend(loc="upper left")
    path = Path(output)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def plot_svg(f: PiecewiseProjMap, lo, hi, output, title: str | None = None) -> Path:
    """Graph of ``f`` over ``[lo, hi]`` with the diagonal and the breakpoints in range."""
    d = f.field_d
    xs, ys = sample_map(f, lo, hi, d=d)
    fig, ax = _figure(title)
    ax.plot(xs, ys, color="tab:blue", linewidth=1.5, label="map")
    flo, fhi = float(lo), float(hi)
    bx = [b for b in f.breakpoints if flo <= float(b) <= fhi]
    if bx:
        ax.plot([_to_float(b) for b in bx], [_to_float(f(b)) for b in bx], "o",
                color="tab:red", markersize=5, label="breakpoints")
    return _finish(fig, ax, flo, fhi, output)


def plot_lift_svg(lift: CircleMapLift, output, title: str | None = None) -> Path:
    """Graph of a circle-map lift over one period ``[-1, 0]``."""
    d = lift.field_d
    xs, ys = sample_map(lift, -1, 0, d=d)
    fig, ax = _figure(title)
    ax.plot(xs, ys, color="tab:blue", linewidth=1.5, label="lift")
    bx = [b for b in lift.breakpoints if -1 <= float(b) <= 0]
    if bx:
        ax.plot([_to_float(b) for b in bx], [_to_float(lift(b)) for b in bx], "o",
                color="tab:red", markersize=5, label="breakpoints")
    ylo, yhi = min(ys + [-1.0]), max(ys + [0.0])
    return _finish(fig, ax, min(-1.0, ylo), max(0.0, yhi), output)
