"""Chart specification types and the randomized spec sampler."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Any

import numpy as np

from ..errors import InvalidConfig
from .families import FAMILIES, FAMILY_IDS, family_by_id

DASH_STYLES = ("solid", "dashed", "dotted")
LEGEND_STYLES = ("external", "inplot", "direct")
SCALES = ("linear", "log")

# Tableau-ish palette; curves sample from a prefix of this list.
PALETTE: tuple[tuple[int, int, int], ...] = (
    (214, 39, 40),
    (31, 119, 180),
    (44, 160, 44),
    (255, 127, 14),
    (148, 103, 189),
    (140, 86, 75),
    (227, 119, 194),
    (23, 190, 207),
    (188, 189, 34),
    (64, 64, 64),
)

LABEL_WORDS = (
    "revenue", "cost", "profit", "baseline", "control", "test", "train", "val",
    "alpha", "beta", "gamma", "delta", "sensor a", "sensor b", "model a",
    "model b", "run 1", "run 2", "phase 1", "phase 2", "signal", "noise",
    "east", "west",
)

X_NAMES = (
    "time (s)", "epoch", "step", "frequency (hz)", "distance (m)", "input",
    "iteration", "day", "sample", "depth (m)", "voltage (v)", "angle (deg)",
)

Y_NAMES = (
    "value", "loss", "error", "accuracy", "power (w)", "rate", "gain (db)",
    "energy (j)", "score", "amplitude", "output", "pressure (pa)",
)

TITLE_WORDS_A = (
    "signal", "training", "sensor", "growth", "frequency", "model", "decay",
    "system", "channel", "field",
)
TITLE_WORDS_B = (
    "response", "curves", "drift", "comparison", "sweep", "performance",
    "profiles", "throughput", "summary", "trends",
)


@dataclass(frozen=True)
class CurveStyle:
    color: tuple[int, int, int]
    width_px: int
    dash: str

    def to_dict(self) -> dict[str, Any]:
        return {"color": list(self.color), "width_px": self.width_px, "dash": self.dash}

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "CurveStyle":
        return CurveStyle(tuple(int(c) for c in d["color"]), int(d["width_px"]), str(d["dash"]))


@dataclass(frozen=True)
class CurveSpec:
    family_id: str
    params: dict[str, float]
    label: str
    style: CurveStyle
    # vertical placement of the (shape-normalized) curve, as fractions of
    # the plot interior height: lo <= fraction <= hi
    band: tuple[float, float]

    def fractions(self, t: np.ndarray) -> np.ndarray:
        """Evaluate the curve as plot-height fractions over t in [0, 1]."""
        fam = family_by_id(self.family_id)
        raw = fam.evaluate(np.asarray(t, dtype=np.float64), self.params)
        grid = fam.evaluate(np.linspace(0.0, 1.0, 513), self.params)
        lo_v, hi_v = float(np.min(grid)), float(np.max(grid))
        lo_b, hi_b = self.band
        if hi_v - lo_v < 1e-9:
            return np.full_like(raw, 0.5 * (lo_b + hi_b))
        return lo_b + (hi_b - lo_b) * (raw - lo_v) / (hi_v - lo_v)

    def to_dict(self) -> dict[str, Any]:
        return {
            "family_id": self.family_id,
            "params": {k: float(v) for k, v in self.params.items()},
            "label": self.label,
            "style": self.style.to_dict(),
            "band": [float(self.band[0]), float(self.band[1])],
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "CurveSpec":
        return CurveSpec(
            family_id=str(d["family_id"]),
            params={k: float(v) for k, v in d["params"].items()},
            label=str(d["label"]),
            style=CurveStyle.from_dict(d["style"]),
            band=(float(d["band"][0]), float(d["band"][1])),
        )


@dataclass(frozen=True)
class AxisSpec:
    name: str
    min: float
    max: float
    scale: str  # "linear" | "log"

    def validate(self) -> None:
        if not self.min < self.max:
            raise InvalidConfig(f"axis {self.name!r}: min {self.min} !< max {self.max}")
        if self.scale not in SCALES:
            raise InvalidConfig(f"axis {self.name!r}: unknown scale {self.scale!r}")
        if self.scale == "log" and self.min <= 0:
            raise InvalidConfig(f"axis {self.name!r}: log scale requires min > 0")

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "min": self.min, "max": self.max, "scale": self.scale}

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "AxisSpec":
        return AxisSpec(str(d["name"]), float(d["min"]), float(d["max"]), str(d["scale"]))


@dataclass(frozen=True)
class ChartSpec:
    curves: tuple[CurveSpec, ...]
    x_axis: AxisSpec
    y_axis: AxisSpec
    title: str
    grid: bool
    background: tuple[int, int, int]
    image_size: tuple[int, int]  # (H, W)
    seed: int
    legend_style: str = "external"

    def validate(self) -> None:
        self.x_axis.validate()
        self.y_axis.validate()
        if not 1 <= len(self.curves) <= 8:
            raise InvalidConfig(f"curve count {len(self.curves)} outside 1..8")
        labels = [c.label for c in self.curves]
        if len(set(labels)) != len(labels) or any(not l for l in labels):
            raise InvalidConfig("curve labels must be non-empty and unique")
        if self.legend_style not in LEGEND_STYLES:
            raise InvalidConfig(f"unknown legend style {self.legend_style!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "curves": [c.to_dict() for c in self.curves],
            "x_axis": self.x_axis.to_dict(),
            "y_axis": self.y_axis.to_dict(),
            "title": self.title,
            "grid": self.grid,
            "background": list(self.background),
            "image_size": list(self.image_size),
            "seed": self.seed,
            "legend_style": self.legend_style,
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "ChartSpec":
        return ChartSpec(
            curves=tuple(CurveSpec.from_dict(c) for c in d["curves"]),
            x_axis=AxisSpec.from_dict(d["x_axis"]),
            y_axis=AxisSpec.from_dict(d["y_axis"]),
            title=str(d["title"]),
            grid=bool(d["grid"]),
            background=tuple(int(c) for c in d["background"]),
            image_size=(int(d["image_size"][0]), int(d["image_size"][1])),
            seed=int(d["seed"]),
            legend_style=str(d["legend_style"]),
        )


@dataclass(frozen=True)
class GenConfig:
    image_size: tuple[int, int] = (512, 512)
    curve_count: tuple[int, int] = (1, 8)
    width_px: tuple[int, int] = (1, 3)
    color_pool: int = 8          # curves sample (with replacement) from PALETTE[:color_pool]
    log_x_prob: float = 0.15
    log_y_prob: float = 0.2
    grid_prob: float = 0.5
    legend_styles: tuple[str, ...] = LEGEND_STYLES
    band_height: tuple[float, float] = (0.35, 0.9)
    gt_points: int = 200

    def validate(self) -> None:
        for name, (lo, hi) in (
            ("curve_count", self.curve_count),
            ("width_px", self.width_px),
            ("band_height", self.band_height),
        ):
            if lo > hi:
                raise InvalidConfig(f"{name} range inverted: {lo} > {hi}")
        if not 1 <= self.curve_count[0] or not self.curve_count[1] <= 8:
            raise InvalidConfig("curve_count must lie in 1..8")
        if not 1 <= self.width_px[0] or not self.width_px[1] <= 3:
            raise InvalidConfig("width_px must lie in 1..3")
        if not 1 <= self.color_pool <= len(PALETTE):
            raise InvalidConfig(f"color_pool must lie in 1..{len(PALETTE)}")
        if not self.legend_styles or any(s not in LEGEND_STYLES for s in self.legend_styles):
            raise InvalidConfig(f"legend_styles must be a non-empty subset of {LEGEND_STYLES}")
        if self.image_size[0] < 64 or self.image_size[1] < 64:
            raise InvalidConfig("image_size must be at least 64x64")
        if self.gt_points < 2:
            raise InvalidConfig("gt_points must be >= 2")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "GenConfig":
        kw = dict(d)
        for key in ("image_size", "curve_count", "width_px", "band_height", "legend_styles"):
            if key in kw:
                kw[key] = tuple(kw[key])
        return GenConfig(**kw)


def _sample_linear_range(rng: np.random.Generator) -> tuple[float, float]:
    exp = int(rng.integers(-1, 3))
    span = float(rng.choice([1.0, 2.0, 4.0, 5.0, 10.0])) * 10.0**exp
    start_kind = rng.random()
    if start_kind < 0.55:
        lo = 0.0
    elif start_kind < 0.8:
        lo = -span / 2.0
    else:
        lo = float(rng.choice([1.0, 2.0, 5.0])) * 10.0**exp
    return lo, lo + span


def _sample_log_range(rng: np.random.Generator) -> tuple[float, float]:
    a = int(rng.integers(-2, 2))
    decades = int(rng.integers(2, 5))
    return 10.0**a, 10.0 ** (a + decades)


def _sample_axis(rng: np.random.Generator, name: str, log_prob: float) -> AxisSpec:
    if rng.random() < log_prob:
        lo, hi = _sample_log_range(rng)
        return AxisSpec(name, lo, hi, "log")
    lo, hi = _sample_linear_range(rng)
    return AxisSpec(name, lo, hi, "linear")


def sample_chart_spec(rng_seed: int, config: GenConfig) -> ChartSpec:
    """Draw a complete chart specification; pure function of (rng_seed, config)."""
    config.validate()
    rng = np.random.default_rng(np.random.SeedSequence(rng_seed))

    n_curves = int(rng.integers(config.curve_count[0], config.curve_count[1] + 1))
    label_pool = list(LABEL_WORDS)
    labels = [label_pool[i] for i in rng.choice(len(label_pool), size=min(n_curves, len(label_pool)), replace=False)]
    while len(labels) < n_curves:
        labels.append(f"series {len(labels) + 1}")

    curves = []
    for k in range(n_curves):
        fam = FAMILIES[FAMILY_IDS[int(rng.integers(0, len(FAMILY_IDS)))]]
        params = fam.sample_params(rng)
        color = PALETTE[int(rng.integers(0, config.color_pool))]
        width = int(rng.integers(config.width_px[0], config.width_px[1] + 1))
        dash = DASH_STYLES[int(rng.integers(0, len(DASH_STYLES)))]
        h = float(rng.uniform(*config.band_height))
        lo = float(rng.uniform(0.03, 0.97 - h))
        curves.append(
            CurveSpec(fam.family_id, params, labels[k], CurveStyle(color, width, dash), (lo, lo + h))
        )

    x_axis = _sample_axis(rng, X_NAMES[int(rng.integers(0, len(X_NAMES)))], config.log_x_prob)
    y_axis = _sample_axis(rng, Y_NAMES[int(rng.integers(0, len(Y_NAMES)))], config.log_y_prob)
    title = (
        f"{TITLE_WORDS_A[int(rng.integers(0, len(TITLE_WORDS_A)))]} "
        f"{TITLE_WORDS_B[int(rng.integers(0, len(TITLE_WORDS_B)))]}"
    )
    bg_base = int(rng.integers(244, 256))
    background = (bg_base, bg_base, min(255, bg_base + int(rng.integers(0, 3))))
    legend_style = config.legend_styles[int(rng.integers(0, len(config.legend_styles)))]

    spec = ChartSpec(
        curves=tuple(curves),
        x_axis=x_axis,
        y_axis=y_axis,
        title=title,
        grid=bool(rng.random() < config.grid_prob),
        background=background,
        image_size=config.image_size,
        seed=int(rng_seed),
        legend_style=legend_style,
    )
    spec.validate()
    return spec


def axis_fraction_to_data(axis: AxisSpec, frac: np.ndarray | float):
    """Map a fraction in [0, 1] along an axis to a data value."""
    f = np.asarray(frac, dtype=np.float64)
    if axis.scale == "log":
        lo, hi = math.log10(axis.min), math.log10(axis.max)
        out = 10.0 ** (lo + f * (hi - lo))
    else:
        out = axis.min + f * (axis.max - axis.min)
    return out if isinstance(frac, np.ndarray) else float(out)


def data_to_axis_fraction(axis: AxisSpec, value: np.ndarray | float):
    """Inverse of axis_fraction_to_data."""
    v = np.asarray(value, dtype=np.float64)
    if axis.scale == "log":
        lo, hi = math.log10(axis.min), math.log10(axis.max)
        out = (np.log10(v) - lo) / (hi - lo)
    else:
        out = (v - axis.min) / (axis.max - axis.min)
    return out if isinstance(value, np.ndarray) else float(out)
