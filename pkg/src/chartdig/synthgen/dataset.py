"""On-disk dataset generation: charts/, masks/, meta/, manifest.json."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

import numpy as np
from PIL import Image

from .render import RasterChart, render_chart
from .spec import ChartSpec, GenConfig, sample_chart_spec

MANIFEST_VERSION = 1
META_VERSION = 1


@dataclass(frozen=True)
class DatasetManifest:
    version: int
    seed: int
    entries: tuple[tuple[str, str], ...]  # (chart id, "train" | "val")

    def ids(self, split: str | None = None) -> list[str]:
        return [cid for cid, s in self.entries if split is None or s == split]

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "seed": self.seed,
            "entries": [{"id": cid, "split": s} for cid, s in self.entries],
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "DatasetManifest":
        return DatasetManifest(
            version=int(d["version"]),
            seed=int(d["seed"]),
            entries=tuple((str(e["id"]), str(e["split"])) for e in d["entries"]),
        )

    def save(self, path: Path) -> None:
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")

    @staticmethod
    def load(path: Path) -> "DatasetManifest":
        return DatasetManifest.from_dict(json.loads(Path(path).read_text()))


def chart_seed(dataset_seed: int, index: int) -> int:
    """Stable per-chart seed derived from the dataset seed."""
    return int(np.random.SeedSequence([dataset_seed, index]).generate_state(1, np.uint64)[0])


def save_chart(out_dir: Path, chart_id: str, raster: RasterChart) -> None:
    out_dir = Path(out_dir)
    (out_dir / "charts").mkdir(parents=True, exist_ok=True)
    (out_dir / "masks").mkdir(parents=True, exist_ok=True)
    (out_dir / "meta").mkdir(parents=True, exist_ok=True)

    Image.fromarray(raster.image, mode="RGB").save(out_dir / "charts" / f"{chart_id}.png")
    lay = Image.fromarray(raster.instance_mask.astype(np.uint16))
    lay.save(out_dir / "masks" / f"{chart_id}.png")
    for k, cm in enumerate(raster.curve_masks, start=1):
        Image.fromarray((cm * np.uint8(255))).save(out_dir / "masks" / f"{chart_id}.curve{k}.png")

    meta = {
        "version": META_VERSION,
        "spec": raster.spec.to_dict(),
        "plot_area_px": list(raster.plot_area_px),
        "points": [
            {"label": c.label, "x": x.tolist(), "y": y.tolist()}
            for c, (x, y) in zip(raster.spec.curves, raster.gt_points)
        ],
    }
    (out_dir / "meta" / f"{chart_id}.json").write_text(
        json.dumps(meta, indent=1, sort_keys=True) + "\n"
    )


@dataclass
class ChartRecord:
    chart_id: str
    image: np.ndarray
    instance_mask: np.ndarray
    curve_masks: tuple[np.ndarray, ...]
    plot_area_px: tuple[int, int, int, int]
    spec: ChartSpec
    gt_points: tuple[tuple[np.ndarray, np.ndarray], ...]

    def as_raster(self) -> RasterChart:
        return RasterChart(
            image=self.image,
            instance_mask=self.instance_mask,
            curve_masks=self.curve_masks,
            plot_area_px=self.plot_area_px,
            spec=self.spec,
            gt_points=self.gt_points,
        )


def load_chart(dataset_dir: Path, chart_id: str) -> ChartRecord:
    dataset_dir = Path(dataset_dir)
    image = np.asarray(Image.open(dataset_dir / "charts" / f"{chart_id}.png").convert("RGB"))
    layered = np.asarray(Image.open(dataset_dir / "masks" / f"{chart_id}.png")).astype(np.uint16)
    meta = json.loads((dataset_dir / "meta" / f"{chart_id}.json").read_text())
    spec = ChartSpec.from_dict(meta["spec"])
    curve_masks = tuple(
        np.asarray(Image.open(dataset_dir / "masks" / f"{chart_id}.curve{k}.png")) > 0
        for k in range(1, len(spec.curves) + 1)
    )
    gt_points = tuple(
        (np.asarray(p["x"], dtype=np.float64), np.asarray(p["y"], dtype=np.float64))
        for p in meta["points"]
    )
    return ChartRecord(
        chart_id=chart_id,
        image=image,
        instance_mask=layered,
        curve_masks=curve_masks,
        plot_area_px=tuple(int(v) for v in meta["plot_area_px"]),
        spec=spec,
        gt_points=gt_points,
    )


def iter_charts(dataset_dir: Path, split: str | None = None) -> Iterator[ChartRecord]:
    manifest = DatasetManifest.load(Path(dataset_dir) / "manifest.json")
    for cid in manifest.ids(split):
        yield load_chart(dataset_dir, cid)


def generate_dataset(n: int, seed: int, out_dir: Path, config: GenConfig) -> DatasetManifest:
    """Render n charts into out_dir with an 80/20 train/val split manifest."""
    config.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    ids = [f"chart_{i:05d}" for i in range(n)]
    order = np.random.default_rng(np.random.SeedSequence(seed)).permutation(n)
    n_train = math.ceil(0.8 * n)
    split_of = {ids[j]: ("train" if rank < n_train else "val") for rank, j in enumerate(order)}

    for i, cid in enumerate(ids):
        spec = sample_chart_spec(chart_seed(seed, i), config)
        raster = render_chart(spec)
        save_chart(out_dir, cid, raster)

    manifest = DatasetManifest(
        version=MANIFEST_VERSION,
        seed=seed,
        entries=tuple((cid, split_of[cid]) for cid in ids),
    )
    manifest.save(out_dir / "manifest.json")
    return manifest
