"""Synthetic chart generation: spec sampling, rendering, augmentation, datasets."""

from .augment import AugConfig, augment
from .dataset import (
    ChartRecord,
    DatasetManifest,
    chart_seed,
    generate_dataset,
    iter_charts,
    load_chart,
    save_chart,
)
from .families import CATEGORIES, FAMILIES, FAMILY_IDS, Family, family_by_id
from .render import RasterChart, compute_layout, render_chart
from .spec import (
    AxisSpec,
    ChartSpec,
    CurveSpec,
    CurveStyle,
    GenConfig,
    axis_fraction_to_data,
    data_to_axis_fraction,
    sample_chart_spec,
)

__all__ = [
    "AugConfig",
    "AxisSpec",
    "CATEGORIES",
    "ChartRecord",
    "ChartSpec",
    "CurveSpec",
    "CurveStyle",
    "DatasetManifest",
    "FAMILIES",
    "FAMILY_IDS",
    "Family",
    "GenConfig",
    "RasterChart",
    "augment",
    "axis_fraction_to_data",
    "chart_seed",
    "compute_layout",
    "data_to_axis_fraction",
    "family_by_id",
    "generate_dataset",
    "iter_charts",
    "load_chart",
    "render_chart",
    "sample_chart_spec",
    "save_chart",
]
