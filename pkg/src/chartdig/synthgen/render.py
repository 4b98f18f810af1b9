"""Deterministic chart rasterizer with exact per-curve instance masks.

Everything is drawn with hard edges (no anti-aliasing) so the instance
masks are exact: a mask pixel is set iff the curve's stroke painted it.
Per-curve masks are lossless (they keep pixels later occluded by other
curves, legend boxes, or labels); the layered instance mask reflects what
is actually visible, later-drawn curve winning at overlaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import RenderError
from . import font
from .spec import AxisSpec, ChartSpec, CurveSpec, axis_fraction_to_data

FRAME_COLOR = (40, 40, 40)
TEXT_COLOR = (30, 30, 30)
TICK_LEN = 3
GRID_DARKEN = 16

# dash pattern: (on_px, off_px) along arc length
DASH_PATTERNS = {"solid": None, "dashed": (6.0, 4.0), "dotted": (2.0, 3.0)}


@dataclass
class RasterChart:
    image: np.ndarray                    # H,W,3 uint8
    instance_mask: np.ndarray            # H,W uint16; 0 = background
    curve_masks: tuple[np.ndarray, ...]  # per-curve bool masks, lossless
    plot_area_px: tuple[int, int, int, int]  # x0, y0, x1, y1 inclusive
    spec: ChartSpec
    # per curve: (x_data, y_data) ground-truth sample arrays
    gt_points: tuple[tuple[np.ndarray, np.ndarray], ...]


@dataclass
class _Layout:
    scale: int
    plot: tuple[int, int, int, int]
    x_ticks: list[tuple[float, str]]  # (axis fraction, label)
    y_ticks: list[tuple[float, str]]


def _fmt_tick(v: float, max_chars: int) -> str:
    if v == 0:
        return "0"
    av = abs(v)
    if 0.01 <= av < 10000:
        for fmt in (f"{v:.2f}", f"{v:.1f}", f"{v:.0f}"):
            s = fmt.rstrip("0").rstrip(".") if "." in fmt else fmt
            if len(s) <= max_chars:
                return s
    e = int(math.floor(math.log10(av)))
    m = v / 10.0**e
    return f"{m:.0f}E{e}"


def _tick_values(axis: AxisSpec, max_ticks: int) -> list[float]:
    if axis.scale == "log":
        lo = int(math.ceil(math.log10(axis.min) - 1e-9))
        hi = int(math.floor(math.log10(axis.max) + 1e-9))
        decades = list(range(lo, hi + 1))
        if len(decades) < 2:
            return [axis.min, axis.max]
        if len(decades) > max_ticks:
            idx = np.linspace(0, len(decades) - 1, max_ticks).round().astype(int)
            decades = [decades[i] for i in sorted(set(idx.tolist()))]
        return [10.0**d for d in decades]
    for n in (5, 4, 3, 2):
        if n <= max_ticks:
            return list(np.linspace(axis.min, axis.max, n))
    return [axis.min, axis.max]


def _fraction_of(axis: AxisSpec, value: float) -> float:
    if axis.scale == "log":
        return (math.log10(value) - math.log10(axis.min)) / (
            math.log10(axis.max) - math.log10(axis.min)
        )
    return (value - axis.min) / (axis.max - axis.min)


def compute_layout(spec: ChartSpec) -> _Layout:
    h, w = spec.image_size
    s = 1 if min(h, w) < 256 else 2
    max_chars = 4 if s == 1 else 6

    y_vals = _tick_values(spec.y_axis, 5)
    y_ticks = [(_fraction_of(spec.y_axis, v), _fmt_tick(v, max_chars)) for v in y_vals]
    y_label_w = max(font.text_width(lbl, s) for _, lbl in y_ticks)

    x0 = 2 + y_label_w + 2 + TICK_LEN + 1
    y0 = 19 * s
    y1 = h - (14 * s + 8)
    if spec.legend_style == "external":
        label_w = max(font.text_width(c.label, s) for c in spec.curves)
        legend_w = min(10 + 2 + label_w + 4, int(0.30 * w))
        x1 = w - legend_w - 2
    else:
        x1 = w - 1 - 3 * s

    max_x_ticks = max(2, (x1 - x0) // (font.text_width("0" * max_chars, s) + 8))
    x_vals = _tick_values(spec.x_axis, min(5, max_x_ticks))
    x_ticks = [(_fraction_of(spec.x_axis, v), _fmt_tick(v, max_chars)) for v in x_vals]

    return _Layout(scale=s, plot=(x0, y0, x1, y1), x_ticks=x_ticks, y_ticks=y_ticks)


def _densify(pts: np.ndarray, t: np.ndarray, max_step: float = 0.6):
    """Subdivide a polyline so consecutive points are <= max_step apart.

    Returns (points M x 2, arc length M, parameter M).
    """
    deltas = np.diff(pts, axis=0)
    seg_len = np.hypot(deltas[:, 0], deltas[:, 1])
    n_sub = np.maximum(1, np.ceil(seg_len / max_step).astype(int))
    seg_idx = np.repeat(np.arange(len(seg_len)), n_sub)
    starts = np.repeat(np.concatenate(([0], np.cumsum(n_sub)))[:-1], n_sub)
    frac = (np.arange(seg_idx.size) - starts + 0.0) / n_sub[seg_idx]
    q = pts[seg_idx] + frac[:, None] * deltas[seg_idx]
    q = np.vstack([q, pts[-1:]])
    cum = np.concatenate(([0.0], np.cumsum(seg_len)))
    s = np.append(cum[seg_idx] + frac * seg_len[seg_idx], cum[-1])
    tq = np.append(t[seg_idx] + frac * (t[seg_idx + 1] - t[seg_idx]), t[-1])
    return q, s, tq


def _stamp_offsets(width: int) -> list[tuple[int, int]]:
    if width <= 1:
        return [(0, 0)]
    if width == 2:
        return [(0, 0), (0, 1), (1, 0), (1, 1)]
    return [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1)]


def _stamp_curve(
    canvas: np.ndarray, q: np.ndarray, on: np.ndarray, width: int, interior: tuple[int, int, int, int]
) -> None:
    """Mark stroke pixels of the densified path `q` on a boolean canvas."""
    ix0, iy0, ix1, iy1 = interior
    qq = q[on]
    if qq.size == 0:
        return
    if width == 2:
        base_c = np.floor(qq[:, 0] - 0.5).astype(int)
        base_r = np.floor(qq[:, 1] - 0.5).astype(int)
    else:
        base_c = np.rint(qq[:, 0]).astype(int)
        base_r = np.rint(qq[:, 1]).astype(int)
    for dy, dx in _stamp_offsets(width):
        r = base_r + dy
        c = base_c + dx
        ok = (r >= iy0) & (r <= iy1) & (c >= ix0) & (c <= ix1)
        canvas[r[ok], c[ok]] = True


def _hline(img: np.ndarray, y: int, x0: int, x1: int, color) -> None:
    h, w = img.shape[:2]
    if 0 <= y < h:
        img[y, max(x0, 0) : min(x1 + 1, w)] = color


def _vline(img: np.ndarray, x: int, y0: int, y1: int, color) -> None:
    h, w = img.shape[:2]
    if 0 <= x < w:
        img[max(y0, 0) : min(y1 + 1, h), x] = color


def _rect_outline(img: np.ndarray, x0: int, y0: int, x1: int, y1: int, color) -> None:
    _hline(img, y0, x0, x1, color)
    _hline(img, y1, x0, x1, color)
    _vline(img, x0, y0, y1, color)
    _vline(img, x1, y0, y1, color)


def _draw_swatch(img: np.ndarray, x: int, y: int, curve: CurveSpec, length: int = 10) -> None:
    w = max(1, min(curve.style.width_px, 2))
    img[y : y + w, x : x + length] = curve.style.color


def render_chart(spec: ChartSpec) -> RasterChart:
    """Render a ChartSpec to an image with exact instance masks."""
    spec.validate()
    h, w = spec.image_size
    lay = compute_layout(spec)
    s = lay.scale
    x0, y0, x1, y1 = lay.plot
    interior = (x0 + 1, y0 + 1, x1 - 1, y1 - 1)

    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:] = spec.background
    layered = np.zeros((h, w), dtype=np.uint16)

    if spec.grid:
        grid_color = tuple(max(0, c - GRID_DARKEN) for c in spec.background)
        for f, _ in lay.x_ticks:
            gx = int(round(x0 + f * (x1 - x0)))
            if x0 < gx < x1:
                _vline(img, gx, y0 + 1, y1 - 1, grid_color)
        for f, _ in lay.y_ticks:
            gy = int(round(y1 - f * (y1 - y0)))
            if y0 < gy < y1:
                _hline(img, gy, x0 + 1, x1 - 1, grid_color)

    _rect_outline(img, x0, y0, x1, y1, FRAME_COLOR)

    for f, lbl in lay.x_ticks:
        tx = int(round(x0 + f * (x1 - x0)))
        _vline(img, tx, y1 + 1, y1 + TICK_LEN, FRAME_COLOR)
        font.draw_text(img, tx - font.text_width(lbl, s) // 2, y1 + TICK_LEN + 2, lbl, TEXT_COLOR, s)
    for f, lbl in lay.y_ticks:
        ty = int(round(y1 - f * (y1 - y0)))
        _hline(img, ty, x0 - TICK_LEN, x0 - 1, FRAME_COLOR)
        font.draw_text(
            img, x0 - TICK_LEN - 2 - font.text_width(lbl, s), ty - 3 * s, lbl, TEXT_COLOR, s
        )

    title = spec.title[: max(1, (w - 4) // ((font.GLYPH_W + 1) * s))]
    font.draw_text(img, (w - font.text_width(title, s)) // 2, 1 * s, title, TEXT_COLOR, s)
    font.draw_text(img, 2, 1 * s + 9 * s, spec.y_axis.name, TEXT_COLOR, s)
    xn = spec.x_axis.name
    font.draw_text(
        img, x0 + ((x1 - x0) - font.text_width(xn, s)) // 2, h - 8 * s - 2, xn, TEXT_COLOR, s
    )

    # --- curves ---
    curve_masks: list[np.ndarray] = []
    gt_points: list[tuple[np.ndarray, np.ndarray]] = []
    n_base = max(16, 3 * (x1 - x0))
    for k, curve in enumerate(spec.curves, start=1):
        t = np.linspace(0.0, 1.0, n_base)
        v = curve.fractions(t)
        if not np.all(np.isfinite(v)):
            raise RenderError(f"curve {curve.label!r} evaluates non-finite in range")
        px = x0 + t * (x1 - x0)
        py = y1 - v * (y1 - y0)
        q, arc, tq = _densify(np.column_stack([px, py]), t)

        pattern = DASH_PATTERNS[curve.style.dash]
        if pattern is None:
            on = np.ones(len(q), dtype=bool)
        else:
            on_len, off_len = pattern
            on = (arc % (on_len + off_len)) < on_len

        mask = np.zeros((h, w), dtype=bool)
        _stamp_curve(mask, q, on, curve.style.width_px, interior)
        img[mask] = curve.style.color
        layered[mask] = k
        curve_masks.append(mask)

        # ground-truth samples; for dashed styles, snap parameters onto
        # painted arcs so every stored point sits on a mask pixel
        n_gt = 200
        t_gt = np.linspace(0.0, 1.0, n_gt)
        if pattern is not None:
            on_ts = tq[on]
            pos = np.clip(np.searchsorted(on_ts, t_gt), 1, len(on_ts) - 1)
            left, right = on_ts[pos - 1], on_ts[pos]
            t_gt = np.where(np.abs(t_gt - left) <= np.abs(right - t_gt), left, right)
            t_gt = np.unique(t_gt)
        v_gt = curve.fractions(t_gt)
        x_data = axis_fraction_to_data(spec.x_axis, t_gt)
        y_data = axis_fraction_to_data(spec.y_axis, v_gt)
        gt_points.append((np.asarray(x_data), np.asarray(y_data)))

    # --- legend ---
    if spec.legend_style == "external":
        lx = x1 + 4
        ly = y0 + 2
        for curve in spec.curves:
            _draw_swatch(img, lx, ly + 3 * s, curve)
            font.draw_text(img, lx + 12, ly, curve.label, TEXT_COLOR, s)
            ly += 9 * s
    elif spec.legend_style == "inplot":
        label_w = max(font.text_width(c.label, s) for c in spec.curves)
        bw = min(4 + 10 + 2 + label_w + 3, x1 - x0 - 2)
        bh = min(4 + 9 * s * len(spec.curves), y1 - y0 - 2)
        cands = [
            (x1 - 2 - bw, y0 + 2),
            (x0 + 2, y0 + 2),
            (x1 - 2 - bw, y1 - 2 - bh),
            (x0 + 2, y1 - 2 - bh),
        ]
        cands = [(max(px_, x0 + 1), max(py_, y0 + 1)) for px_, py_ in cands]
        best = min(cands, key=lambda p: int((layered[p[1] : p[1] + bh, p[0] : p[0] + bw] > 0).sum()))
        bx, by = best
        img[by : by + bh, bx : bx + bw] = spec.background
        layered[by : by + bh, bx : bx + bw] = 0
        _rect_outline(img, bx, by, bx + bw - 1, by + bh - 1, FRAME_COLOR)
        ey = by + 3
        for curve in spec.curves:
            _draw_swatch(img, bx + 3, ey + 3 * s, curve)
            font.draw_text(img, bx + 3 + 12, ey, curve.label, TEXT_COLOR, s)
            ey += 9 * s
    else:  # direct labeling with leader line
        for k, curve in enumerate(spec.curves):
            tk = (k + 0.7) / (len(spec.curves) + 0.7)
            vk = float(curve.fractions(np.array([tk]))[0])
            cx = int(round(x0 + tk * (x1 - x0)))
            cy = int(round(y1 - vk * (y1 - y0)))
            tw = font.text_width(curve.label, s)
            lx = int(np.clip(cx - tw // 2, x0 + 2, x1 - tw - 2))
            above = cy - y0 > 14 * s
            ty = cy - (7 * s + 6) if above else cy + 6
            ty = int(np.clip(ty, y0 + 2, y1 - 7 * s - 2))
            written = font.draw_text(img, lx, ty, curve.label, curve.style.color, s)
            layered[written] = 0
            ly0, ly1 = (ty + 7 * s, cy - 2) if above else (cy + 2, ty - 1)
            if ly1 > ly0:
                _vline(img, cx, ly0, ly1, curve.style.color)
                layered[ly0 : ly1 + 1, cx] = 0

    return RasterChart(
        image=img,
        instance_mask=layered,
        curve_masks=tuple(curve_masks),
        plot_area_px=(x0, y0, x1, y1),
        spec=spec,
        gt_points=tuple(gt_points),
    )
