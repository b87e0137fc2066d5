"""Deterministic SVG output for cyclic polygon plots, glyph layouts, PCPs and radar charts.

Documents are assembled as text with a fixed element order and coordinates
printed to 6 decimals, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape

import numpy as np

from .model import DataError, Dataset, GlyphLayout, ScaleSpec, Scheme, Strategy, Transform, validate_dataset
from .scheme import select

# light/dark pairs of five hues
PAIRED10 = (
    "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99",
    "#e31a1c", "#fdbf6f", "#ff7f00", "#cab2d6", "#6a3d9a",
)

AXIS_COLOR = "#333333"
TICK_LEN = 6.0
LINEAR_TICKS = 5

PLACEMENT_AXES = {
    Strategy.INTRINSIC: ("x", "y"),
    Strategy.GEOMETRIC: ("area", "circumference"),
    Strategy.ANGULAR: ("counter-clockwise angle sum", "clockwise angle sum"),
    Strategy.STATISTICAL: ("mean", "standard deviation"),
}


class ColorBy(str, enum.Enum):
    CLASS_LABEL = "class"
    ITEM_INDEX = "index"


@dataclass(frozen=True)
class RenderStyle:
    width: int = 600
    height: int = 600
    dot_radius: float = 3.0
    stroke_width: float = 1.0
    dot_opacity: float = 0.6
    palette: tuple[str, ...] = PAIRED10
    color_by: Optional[ColorBy] = None   # None: by class when labels exist, else by index
    show_arrows: bool = True
    show_dots: bool = True
    margin: float = 56.0

    def __post_init__(self):
        if not 0 < self.dot_opacity <= 1:
            raise ValueError("dot_opacity must be in (0, 1]")
        if not self.palette:
            raise ValueError("palette needs at least one color")
        if self.color_by is not None:
            object.__setattr__(self, "color_by", ColorBy(self.color_by))

    @property
    def gap(self) -> float:
        """Clearance between the axes and the data marks."""
        return 3.0 * self.dot_radius + 2.0 * self.stroke_width + 4.0


def fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _colors(ds_len: int, labels: Optional[Sequence[str]], style: RenderStyle) -> list[str]:
    by = style.color_by or (ColorBy.CLASS_LABEL if labels is not None else ColorBy.ITEM_INDEX)
    pal = style.palette
    if by is ColorBy.CLASS_LABEL and labels is not None:
        index = {c: i for i, c in enumerate(dict.fromkeys(labels))}
        return [pal[index[lab] % len(pal)] for lab in labels]
    return [pal[i % len(pal)] for i in range(ds_len)]


def auto_scale(points, transform: Union[Transform, str] = Transform.LINEAR, square: bool = False) -> ScaleSpec:
    """Tight data-domain bounds; degenerate spans are widened so the ScaleSpec stays valid."""
    transform = Transform(transform)
    p = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    lo, hi = p.min(axis=0), p.max(axis=0)
    if square:
        lo[:], hi[:] = lo.min(), hi.max()
    for i in range(2):
        if lo[i] == hi[i]:
            if transform is Transform.LOG10:
                lo[i], hi[i] = lo[i] / 10.0, hi[i] * 10.0
            else:
                lo[i], hi[i] = lo[i] - 1.0, hi[i] + 1.0
    return ScaleSpec(transform, float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1]))


def _check_positive(points_by_row, transform: Transform) -> None:
    if transform is not Transform.LOG10:
        return
    bad = [i for i, pts in enumerate(points_by_row) if np.any(np.asarray(pts) <= 0)]
    if bad:
        shown = ", ".join(map(str, bad[:20])) + (" ..." if len(bad) > 20 else "")
        raise DataError(f"log scale needs positive values; non-positive values in rows {shown}", row=bad[0])


class _Frame:
    """Maps a 2D data domain into the content box inside the axis pair."""

    def __init__(self, scale: ScaleSpec, style: RenderStyle):
        self.scale = scale
        self.style = style
        m, g = style.margin, style.gap
        self.axis_x = m                      # ordinate line
        self.axis_y = style.height - m       # abscissa line
        self.left, self.right = m + g, style.width - m / 2 - g
        self.top, self.bottom = m / 2 + g, style.height - m - g

    def _t(self, v, lo, hi):
        if self.scale.transform is Transform.LOG10:
            return (math.log10(v) - math.log10(lo)) / (math.log10(hi) - math.log10(lo))
        return (v - lo) / (hi - lo)

    def px(self, x: float, y: float) -> tuple[float, float]:
        s = self.scale
        u = self._t(x, s.x_min, s.x_max)
        w = self._t(y, s.y_min, s.y_max)
        return (self.left + u * (self.right - self.left), self.bottom - w * (self.bottom - self.top))


def _ticks(lo: float, hi: float, transform: Transform) -> list[float]:
    if transform is Transform.LOG10:
        decades = [10.0 ** e for e in range(math.ceil(math.log10(lo) - 1e-12), math.floor(math.log10(hi) + 1e-12) + 1)]
        return decades if len(decades) >= 2 else sorted(set([lo] + decades + [hi]))
    return [lo + (hi - lo) * i / (LINEAR_TICKS - 1) for i in range(LINEAR_TICKS)]


def _axis_pair(frame: _Frame, x_label: str, y_label: str) -> list[str]:
    st = frame.style
    s = frame.scale
    sw = fmt(st.stroke_width)
    out = ['<g id="x-axis" class="axis abscissa">']
    out.append(f'<line class="axis-line" x1="{fmt(frame.axis_x)}" y1="{fmt(frame.axis_y)}" '
               f'x2="{fmt(st.width - st.margin / 2)}" y2="{fmt(frame.axis_y)}" stroke="{AXIS_COLOR}" stroke-width="{sw}"/>')
    for v in _ticks(s.x_min, s.x_max, s.transform):
        x, _ = frame.px(v, s.y_min)
        out.append(f'<line class="tick" x1="{fmt(x)}" y1="{fmt(frame.axis_y)}" x2="{fmt(x)}" '
                   f'y2="{fmt(frame.axis_y + TICK_LEN)}" stroke="{AXIS_COLOR}" stroke-width="{sw}"/>')
        out.append(f'<text class="tick-label" x="{fmt(x)}" y="{fmt(frame.axis_y + TICK_LEN + 12)}" '
                   f'font-size="10" text-anchor="middle">{v:.4g}</text>')
    out.append(f'<text class="axis-label" x="{fmt((frame.left + frame.right) / 2)}" '
               f'y="{fmt(frame.axis_y + TICK_LEN + 30)}" font-size="12" text-anchor="middle">{escape(x_label)}</text>')
    out.append('</g>')
    out.append('<g id="y-axis" class="axis ordinate">')
    out.append(f'<line class="axis-line" x1="{fmt(frame.axis_x)}" y1="{fmt(frame.axis_y)}" '
               f'x2="{fmt(frame.axis_x)}" y2="{fmt(st.margin / 2)}" stroke="{AXIS_COLOR}" stroke-width="{sw}"/>')
    for v in _ticks(s.y_min, s.y_max, s.transform):
        _, y = frame.px(s.x_min, v)
        out.append(f'<line class="tick" x1="{fmt(frame.axis_x - TICK_LEN)}" y1="{fmt(y)}" x2="{fmt(frame.axis_x)}" '
                   f'y2="{fmt(y)}" stroke="{AXIS_COLOR}" stroke-width="{sw}"/>')
        out.append(f'<text class="tick-label" x="{fmt(frame.axis_x - TICK_LEN - 2)}" y="{fmt(y + 3)}" '
                   f'font-size="10" text-anchor="end">{v:.4g}</text>')
    cy = (frame.top + frame.bottom) / 2
    out.append(f'<text class="axis-label" x="{fmt(12)}" y="{fmt(cy)}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 {fmt(12)} {fmt(cy)})">{escape(y_label)}</text>')
    out.append('</g>')
    return out


def _document(style: RenderStyle, body: list[str], kind: str) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.width}" height="{style.height}" '
        f'viewBox="0 0 {style.width} {style.height}" class="{kind}">',
        f'<rect class="background" x="0" y="0" width="{style.width}" height="{style.height}" fill="#ffffff"/>',
    ]
    return "\n".join(head + body + ["</svg>", ""])


def _path(pts: Sequence[tuple[float, float]], closed: bool = True) -> str:
    d = " ".join(("M" if i == 0 else "L") + f" {fmt(x)} {fmt(y)}" for i, (x, y) in enumerate(pts))
    return d + (" Z" if closed else "")


def arrow_points(tip_from: tuple[float, float], toward: tuple[float, float], side: float) -> list[tuple[float, float]]:
    """Equilateral triangle of the given side centred on ``tip_from``, apex toward ``toward``.

    Coincident endpoints point along +x.
    """
    dx, dy = toward[0] - tip_from[0], toward[1] - tip_from[1]
    norm = math.hypot(dx, dy)
    ux, uy = (dx / norm, dy / norm) if norm > 0 else (1.0, 0.0)
    px, py = -uy, ux
    h = side * math.sqrt(3) / 2
    cx, cy = tip_from
    apex = (cx + ux * 2 * h / 3, cy + uy * 2 * h / 3)
    base = (cx - ux * h / 3, cy - uy * h / 3)
    return [apex, (base[0] + px * side / 2, base[1] + py * side / 2), (base[0] - px * side / 2, base[1] - py * side / 2)]


def default_cpp_scale(ds: Dataset, transform: Union[Transform, str] = Transform.LINEAR) -> ScaleSpec:
    """One shared domain for both axes so the diagonal stays at 45 degrees."""
    _check_positive(ds.rows, Transform(transform))
    a = np.asarray(ds.array)
    return auto_scale(np.column_stack([a.ravel(), a.ravel()]), transform, square=True)


def render_cpp(ds: Dataset, scheme: Union[Scheme, str] = Scheme.ABBC, scale: Optional[ScaleSpec] = None,
               style: RenderStyle = RenderStyle()) -> str:
    validate_dataset(ds)
    polys = [select(r, scheme) for r in ds.rows]
    transform = scale.transform if scale else Transform.LINEAR
    _check_positive([p.vertices for p in polys], transform)
    scale = scale or default_cpp_scale(ds, transform)
    frame = _Frame(scale, style)
    colors = _colors(len(ds), ds.labels, style)
    body = _axis_pair(frame, "x", "y")
    pix = [[frame.px(x, y) for x, y in p.vertices] for p in polys]
    sw = fmt(style.stroke_width)
    body.append('<g id="polygons">')
    for i, pts in enumerate(pix):
        body.append(f'<path class="polygon" data-item="{i}" d="{_path(pts)}" fill="none" '
                    f'stroke="{colors[i]}" stroke-width="{sw}" stroke-linejoin="round"/>')
    body.append('</g>')
    if style.show_dots:
        body.append('<g id="dots">')
        for i, pts in enumerate(pix):
            for x, y in pts:
                body.append(f'<circle class="dot" data-item="{i}" cx="{fmt(x)}" cy="{fmt(y)}" '
                            f'r="{fmt(style.dot_radius)}" fill="{colors[i]}" fill-opacity="{fmt(style.dot_opacity)}"/>')
        body.append('</g>')
    if style.show_arrows:
        body.append('<g id="arrows">')
        for i, pts in enumerate(pix):
            tri = arrow_points(pts[0], pts[1 % len(pts)], 2 * style.dot_radius)
            body.append(f'<path class="arrow" data-item="{i}" d="{_path(tri)}" fill="{colors[i]}" stroke="none"/>')
        body.append('</g>')
    return _document(style, body, "cpp")


def render_glyphs(layout: GlyphLayout, scale: Optional[ScaleSpec] = None, style: RenderStyle = RenderStyle(),
                  labels: Optional[Sequence[str]] = None) -> str:
    verts = [e.polygon.vertices for e in layout.entries]
    transform = scale.transform if scale else Transform.LINEAR
    _check_positive(verts, transform)
    if scale is None:
        scale = auto_scale(np.concatenate(verts) if verts else np.zeros((1, 2)), transform)
    frame = _Frame(scale, style)
    colors = _colors(len(layout), labels, style)
    body = _axis_pair(frame, *PLACEMENT_AXES[layout.strategy])
    sw = fmt(style.stroke_width)
    body.append('<g id="glyphs">')
    for i, entry in enumerate(layout.entries):
        pts = [frame.px(x, y) for x, y in entry.polygon.vertices]
        body.append(f'<path class="glyph" data-item="{i}" d="{_path(pts)}" fill="none" '
                    f'stroke="{colors[i]}" stroke-width="{sw}"/>')
        if np.ptp(entry.polygon.vertices, axis=0).max() == 0.0:
            cx, cy = frame.px(*entry.centroid)
            body.append(f'<circle class="glyph-dot" data-item="{i}" cx="{fmt(cx)}" cy="{fmt(cy)}" '
                        f'r="{fmt(style.stroke_width)}" fill="{colors[i]}"/>')
    body.append('</g>')
    return _document(style, body, f"glyphs {layout.strategy.value}")


def pcp_positions(ds: Dataset, style: RenderStyle, shared_scale: bool) -> np.ndarray:
    """Pixel coordinates (m, n, 2) of every polyline vertex."""
    a = np.asarray(ds.array)
    m = style.margin
    top, bottom = m / 2, style.height - m
    left, right = m, style.width - m
    if shared_scale:
        lo = np.full(ds.n, a.min())
        hi = np.full(ds.n, a.max())
    else:
        lo, hi = a.min(axis=0), a.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    t = (a - lo) / span
    xs = left + np.arange(ds.n) * (right - left) / (ds.n - 1)
    ys = bottom - t * (bottom - top)
    return np.stack([np.broadcast_to(xs, ys.shape), ys], axis=2)


def render_pcp(ds: Dataset, style: RenderStyle = RenderStyle(), shared_scale: bool = True) -> str:
    validate_dataset(ds)
    pos = pcp_positions(ds, style, shared_scale)
    colors = _colors(len(ds), ds.labels, style)
    m = style.margin
    names = ds.attribute_names or tuple(f"d{j}" for j in range(ds.n))
    body = ['<g id="pcp-axes">']
    for j in range(ds.n):
        x = pos[0, j, 0]
        body.append(f'<line class="pcp-axis" x1="{fmt(x)}" y1="{fmt(m / 2)}" x2="{fmt(x)}" '
                    f'y2="{fmt(style.height - m)}" stroke="{AXIS_COLOR}" stroke-width="{fmt(style.stroke_width)}"/>')
        body.append(f'<text class="axis-label" x="{fmt(x)}" y="{fmt(style.height - m + 16)}" font-size="10" '
                    f'text-anchor="middle">{escape(names[j])}</text>')
    body.append('</g>')
    body.append('<g id="polylines">')
    for i in range(len(ds)):
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pos[i])
        body.append(f'<polyline class="pcp-line" data-item="{i}" points="{pts}" fill="none" '
                    f'stroke="{colors[i]}" stroke-width="{fmt(style.stroke_width)}"/>')
    body.append('</g>')
    return _document(style, body, "pcp")


def rc_radii(ds: Dataset) -> np.ndarray:
    """Per-axis min-max normalized radii; constant axes sit at radius 1."""
    a = np.asarray(ds.array)
    lo, hi = a.min(axis=0), a.max(axis=0)
    span = hi - lo
    return np.where(span > 0, (a - lo) / np.where(span > 0, span, 1.0), 1.0)


def render_rc(ds: Dataset, style: RenderStyle = RenderStyle()) -> str:
    validate_dataset(ds)
    if ds.n < 3:
        raise DataError(f"radar chart needs at least 3 dimensions, got {ds.n}")
    r = rc_radii(ds)
    cx, cy = style.width / 2, style.height / 2
    radius = min(style.width, style.height) / 2 - style.margin
    ang = 2 * math.pi * np.arange(ds.n) / ds.n
    ux, uy = np.cos(ang), -np.sin(ang)
    colors = _colors(len(ds), ds.labels, style)
    names = ds.attribute_names or tuple(f"d{j}" for j in range(ds.n))
    body = ['<g id="rc-axes">']
    for j in range(ds.n):
        body.append(f'<line class="rc-axis" x1="{fmt(cx)}" y1="{fmt(cy)}" x2="{fmt(cx + radius * ux[j])}" '
                    f'y2="{fmt(cy + radius * uy[j])}" stroke="{AXIS_COLOR}" stroke-width="{fmt(style.stroke_width)}"/>')
        body.append(f'<text class="axis-label" x="{fmt(cx + (radius + 14) * ux[j])}" y="{fmt(cy + (radius + 14) * uy[j])}" '
                    f'font-size="10" text-anchor="middle">{escape(names[j])}</text>')
    body.append('</g>')
    body.append('<g id="radar-polygons">')
    for i in range(len(ds)):
        pts = [(cx + radius * r[i, j] * ux[j], cy + radius * r[i, j] * uy[j]) for j in range(ds.n)]
        body.append(f'<path class="rc-polygon" data-item="{i}" d="{_path(pts)}" fill="none" '
                    f'stroke="{colors[i]}" stroke-width="{fmt(style.stroke_width)}"/>')
    body.append('</g>')
    return _document(style, body, "rc")
