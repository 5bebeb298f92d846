"""Procedural bridge facade dataset: rendering, augmentation, manifest."""

from .augment import HSCALES, ROTATIONS_DEG, VSCALES, AugmentParams, augment, augment_grid
from .build import (
    DatasetManifest,
    ManifestEntry,
    build_dataset,
    load_dataset,
    load_images,
    subset_entries,
)
from .render import RENDERER_VERSION, animate_frames, render_bridge
from .subtypes import (
    CANVAS_HEIGHT,
    CANVAS_WIDTH,
    ID_TO_NAME,
    LABEL_DICTIONARY,
    MEMBER_RANGE,
    N_FRAMES,
    SUBTYPE_NAMES,
    BridgeRenderSpec,
    spec_for,
)

__all__ = [
    "AugmentParams", "augment", "augment_grid", "ROTATIONS_DEG", "HSCALES", "VSCALES",
    "DatasetManifest", "ManifestEntry", "build_dataset", "load_dataset",
    "load_images", "subset_entries",
    "RENDERER_VERSION", "animate_frames", "render_bridge",
    "BridgeRenderSpec", "spec_for", "LABEL_DICTIONARY", "SUBTYPE_NAMES", "ID_TO_NAME",
    "MEMBER_RANGE", "N_FRAMES", "CANVAS_WIDTH", "CANVAS_HEIGHT",
]
