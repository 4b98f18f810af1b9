"""Training-time chart augmentations.

Geometric ops warp the image, every mask, and the plot rectangle with the
same matrix (nearest-neighbor inverse warp, image size preserved, exposed
pixels filled with the chart background / mask zero). Photometric ops
never touch masks or geometry.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, asdict, replace
from typing import Any

import numpy as np
from scipy import ndimage

from .render import RasterChart

try:
    from PIL import Image

    _HAVE_JPEG = True
except ImportError:  # pragma: no cover
    _HAVE_JPEG = False

# test hook: force the no-codec block-quantization path
_FORCE_BLOCK_FALLBACK = False


@dataclass(frozen=True)
class AugConfig:
    p_scale: float = 0.3
    p_translate: float = 0.3
    p_affine: float = 0.2
    p_color: float = 0.4
    p_blur: float = 0.25
    p_jpeg: float = 0.25
    scale_range: tuple[float, float] = (0.85, 1.15)
    translate_frac: float = 0.06
    rotate_deg: float = 2.5
    shear: float = 0.04
    brightness: float = 0.08
    contrast: tuple[float, float] = (0.9, 1.1)
    blur_sigma: tuple[float, float] = (0.4, 1.2)
    jpeg_quality: tuple[int, int] = (40, 90)

    @staticmethod
    def none() -> "AugConfig":
        return AugConfig(p_scale=0, p_translate=0, p_affine=0, p_color=0, p_blur=0, p_jpeg=0)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "AugConfig":
        kw = dict(d)
        for key in ("scale_range", "contrast", "blur_sigma", "jpeg_quality"):
            if key in kw:
                kw[key] = tuple(kw[key])
        return AugConfig(**kw)


def _affine_matrix(rng: np.random.Generator, cfg: AugConfig, h: int, w: int) -> np.ndarray | None:
    """Compose output<-input pixel transform about the image center; None = identity."""
    m = np.eye(3)
    applied = False
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0

    def about_center(core: np.ndarray) -> np.ndarray:
        t1 = np.array([[1, 0, -cx], [0, 1, -cy], [0, 0, 1.0]])
        t2 = np.array([[1, 0, cx], [0, 1, cy], [0, 0, 1.0]])
        return t2 @ core @ t1

    if rng.random() < cfg.p_scale:
        f = float(rng.uniform(*cfg.scale_range))
        m = about_center(np.diag([f, f, 1.0])) @ m
        applied = True
    if rng.random() < cfg.p_affine:
        th = float(np.deg2rad(rng.uniform(-cfg.rotate_deg, cfg.rotate_deg)))
        sh = float(rng.uniform(-cfg.shear, cfg.shear))
        core = np.array(
            [[np.cos(th), -np.sin(th) + sh, 0], [np.sin(th), np.cos(th), 0], [0, 0, 1.0]]
        )
        m = about_center(core) @ m
        applied = True
    if rng.random() < cfg.p_translate:
        tx = float(np.rint(rng.uniform(-cfg.translate_frac, cfg.translate_frac) * w))
        ty = float(np.rint(rng.uniform(-cfg.translate_frac, cfg.translate_frac) * h))
        m = np.array([[1, 0, tx], [0, 1, ty], [0, 0, 1.0]]) @ m
        applied = True
    return m if applied else None


def _warp_nearest(arr: np.ndarray, m_inv: np.ndarray, fill) -> np.ndarray:
    h, w = arr.shape[:2]
    ys, xs = np.mgrid[0:h, 0:w]
    src_x = m_inv[0, 0] * xs + m_inv[0, 1] * ys + m_inv[0, 2]
    src_y = m_inv[1, 0] * xs + m_inv[1, 1] * ys + m_inv[1, 2]
    sx = np.rint(src_x).astype(int)
    sy = np.rint(src_y).astype(int)
    valid = (sx >= 0) & (sx < w) & (sy >= 0) & (sy < h)
    out = np.empty_like(arr)
    out[:] = fill
    out[valid] = arr[sy[valid], sx[valid]]
    return out


def _block_quantize(img: np.ndarray, quality: int) -> np.ndarray:
    """Crude 8x8 block quantization standing in for a JPEG codec."""
    step = max(2, int(round((100 - quality) / 3)))
    h, w = img.shape[:2]
    ph, pw = (-h) % 8, (-w) % 8
    padded = np.pad(img, ((0, ph), (0, pw), (0, 0)), mode="edge").astype(np.int32)
    blocks = padded.reshape(padded.shape[0] // 8, 8, padded.shape[1] // 8, 8, 3)
    means = blocks.mean(axis=(1, 3), keepdims=True)
    resid = blocks - means
    quant = np.rint(resid / step) * step
    out = np.clip(means + quant, 0, 255).astype(np.uint8)
    return out.reshape(padded.shape)[:h, :w]


def _jpeg_roundtrip(img: np.ndarray, quality: int) -> np.ndarray:
    if _HAVE_JPEG and not _FORCE_BLOCK_FALLBACK:
        buf = io.BytesIO()
        Image.fromarray(img).save(buf, format="JPEG", quality=quality)
        buf.seek(0)
        return np.asarray(Image.open(buf).convert("RGB"))
    return _block_quantize(img, quality)


def augment(raster: RasterChart, rng_seed: int, config: AugConfig) -> RasterChart:
    """Apply a randomized subset of augmentations; pure in (raster, seed, config)."""
    rng = np.random.default_rng(np.random.SeedSequence(rng_seed))
    h, w = raster.image.shape[:2]
    img = raster.image
    layered = raster.instance_mask
    curve_masks = raster.curve_masks
    plot = raster.plot_area_px

    m = _affine_matrix(rng, config, h, w)
    if m is not None:
        m_inv = np.linalg.inv(m)
        img = _warp_nearest(img, m_inv, np.asarray(raster.spec.background, dtype=np.uint8))
        layered = _warp_nearest(layered, m_inv, 0)
        curve_masks = tuple(_warp_nearest(cm, m_inv, False) for cm in curve_masks)
        x0, y0, x1, y1 = plot
        corners = np.array([[x0, y0, 1], [x1, y0, 1], [x1, y1, 1], [x0, y1, 1]], dtype=float)
        tc = (m @ corners.T).T
        plot = (
            int(np.clip(np.floor(tc[:, 0].min()), 0, w - 1)),
            int(np.clip(np.floor(tc[:, 1].min()), 0, h - 1)),
            int(np.clip(np.ceil(tc[:, 0].max()), 0, w - 1)),
            int(np.clip(np.ceil(tc[:, 1].max()), 0, h - 1)),
        )

    if rng.random() < config.p_color:
        gain = rng.uniform(0.95, 1.05, size=3)
        contrast = float(rng.uniform(*config.contrast))
        bright = float(rng.uniform(-config.brightness, config.brightness)) * 255.0
        f = (img.astype(np.float64) - 128.0) * contrast + 128.0 + bright
        img = np.clip(f * gain[None, None, :], 0, 255).astype(np.uint8)

    if rng.random() < config.p_blur:
        sigma = float(rng.uniform(*config.blur_sigma))
        img = np.stack(
            [ndimage.gaussian_filter(img[..., c].astype(np.float64), sigma) for c in range(3)],
            axis=-1,
        )
        img = np.clip(np.rint(img), 0, 255).astype(np.uint8)

    if rng.random() < config.p_jpeg:
        quality = int(rng.integers(config.jpeg_quality[0], config.jpeg_quality[1] + 1))
        img = _jpeg_roundtrip(np.ascontiguousarray(img), quality)

    return replace(
        raster, image=img, instance_mask=layered, curve_masks=curve_masks, plot_area_px=plot
    )
