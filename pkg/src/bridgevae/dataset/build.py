"""Dataset assembly: render, augment, write PNGs and the manifest; reload."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import cv2
import numpy as np

from ..imageio import load_png, save_png
from .augment import AugmentParams, augment, augment_grid
from .render import RENDERER_VERSION, animate_frames
from .subtypes import LABEL_DICTIONARY, N_FRAMES, SUBTYPE_NAMES


@dataclass
class ManifestEntry:
    path: str
    label: int
    subtype: str
    frame: int
    rotation_deg: float
    hscale: float
    vscale: float


@dataclass
class DatasetManifest:
    label_dictionary: dict[str, int]
    seed: int
    renderer_version: str
    entries: list[ManifestEntry]

    def to_json(self) -> str:
        doc = {
            "label_dictionary": self.label_dictionary,
            "seed": self.seed,
            "renderer_version": self.renderer_version,
            "entries": [asdict(e) for e in self.entries],
        }
        return json.dumps(doc, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DatasetManifest":
        doc = json.loads(text)
        return cls(
            label_dictionary=doc["label_dictionary"],
            seed=doc["seed"],
            renderer_version=doc["renderer_version"],
            entries=[ManifestEntry(**e) for e in doc["entries"]],
        )

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> "DatasetManifest":
        return cls.from_json(Path(path).read_text())


def _fmt(x: float) -> str:
    return f"{x:g}"


def build_dataset(out_dir, seed: int = 0, subtypes=None) -> DatasetManifest:
    """Render every subtype, sweep the augmentation grid, write PNGs.

    Per subtype: 16 frames x 75 augmentations = 1200 images, laid out as
    ``<out_dir>/<subtype>/<frame>_<rot>_<hs>_<vs>.png``. The pipeline has no
    random component; the seed is recorded in the manifest for provenance.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    subtypes = list(subtypes) if subtypes is not None else SUBTYPE_NAMES
    grid = augment_grid()
    entries: list[ManifestEntry] = []
    for subtype in subtypes:
        label = LABEL_DICTIONARY[subtype]
        sub_dir = out / subtype
        sub_dir.mkdir(exist_ok=True)
        for frame, base in enumerate(animate_frames(subtype)):
            for p in grid:
                rot, hs, vs = round(p.rotation_deg, 6), round(p.hscale, 6), round(p.vscale, 6)
                name = f"{frame:02d}_{_fmt(rot)}_{_fmt(hs)}_{_fmt(vs)}.png"
                rel = f"{subtype}/{name}"
                try:
                    save_png(augment(base, p), sub_dir / name)
                except OSError as exc:
                    raise OSError(f"failed writing {sub_dir / name}: {exc}") from exc
                entries.append(ManifestEntry(
                    path=rel, label=label, subtype=subtype, frame=frame,
                    rotation_deg=rot, hscale=hs, vscale=vs))
    manifest = DatasetManifest(
        label_dictionary=dict(LABEL_DICTIONARY), seed=seed,
        renderer_version=RENDERER_VERSION, entries=entries)
    manifest.save(out / "manifest.json")
    return manifest


def subset_entries(manifest: DatasetManifest, labels=None, per_label: int | None = None):
    """Deterministic slice of the manifest: filter labels, spread per label.

    With ``per_label`` the entries of each label are taken with an even
    stride, so all animation frames stay represented.
    """
    by_label: dict[int, list[ManifestEntry]] = {}
    for e in manifest.entries:
        if labels is None or e.label in labels:
            by_label.setdefault(e.label, []).append(e)
    picked = []
    for label in sorted(by_label):
        group = by_label[label]
        if per_label is not None and per_label < len(group):
            stride = len(group) // per_label
            group = group[::stride][:per_label]
        picked.extend(group)
    return picked


def load_images(root, entries, resize_hw: tuple[int, int] | None = None) -> np.ndarray:
    """Load manifest entries as a float32 (N, H, W, 1) array in [0, 1]."""
    root = Path(root)
    out = None
    for i, e in enumerate(entries):
        try:
            img = load_png(root / e.path)
        except (OSError, ValueError) as exc:
            raise OSError(f"failed loading dataset entry {e.path!r}: {exc}") from exc
        if resize_hw is not None and img.shape != resize_hw:
            img = cv2.resize(img, (resize_hw[1], resize_hw[0]), interpolation=cv2.INTER_AREA)
        if out is None:
            out = np.empty((len(entries),) + img.shape + (1,), np.float32)
        out[i, :, :, 0] = img
    if out is None:
        raise ValueError("no entries to load")
    return out


def load_dataset(manifest_path, resize_hw: tuple[int, int] | None = None,
                 labels=None, per_label: int | None = None):
    """Images plus label vector for a manifest on disk, in manifest order."""
    manifest_path = Path(manifest_path)
    manifest = DatasetManifest.load(manifest_path)
    entries = subset_entries(manifest, labels=labels, per_label=per_label)
    images = load_images(manifest_path.parent, entries, resize_hw=resize_hw)
    y = np.array([e.label for e in entries], np.int64)
    return images, y
