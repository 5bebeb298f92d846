"""Bridge subtype registry: labels, span layouts, animated member ranges."""

from __future__ import annotations

from dataclasses import dataclass

# Fixed label ids for the eight subtypes.
LABEL_DICTIONARY = {
    "Arch Bottom_bear": 0,
    "Arch Top_bear": 1,
    "Beam Three_span": 2,
    "Beam V_type": 3,
    "Cable Fan_shaped": 4,
    "Cable Harp_shaped": 5,
    "Suspension Diagonal_sling": 6,
    "Suspension Vertical_sling": 7,
}

SUBTYPE_NAMES = sorted(LABEL_DICTIONARY, key=LABEL_DICTIONARY.get)
ID_TO_NAME = {v: k for k, v in LABEL_DICTIONARY.items()}

CANVAS_WIDTH = 512
CANVAS_HEIGHT = 128
N_FRAMES = 16

# 300 m of bridge plus 15 m margins mapped onto the canvas width.
WORLD_WIDTH_M = 330.0
MARGIN_M = 15.0
PX_PER_M = CANVAS_WIDTH / WORLD_WIDTH_M
METERS_PER_PIXEL = 1.0 / PX_PER_M
DECK_ROW = 88.0  # pixel row of the deck line

# Span layout: beams are 80+140+80, every other family 67+166+67.
SPANS_BEAM = (80.0, 140.0, 80.0)
SPANS_OTHER = (67.0, 166.0, 67.0)

# (min, max) width in meters of the member animated across the 16 frames.
MEMBER_RANGE = {
    "Beam Three_span": (1.0, 4.0),          # girder depth
    "Beam V_type": (1.0, 4.0),              # girder depth
    "Arch Top_bear": (1.0, 3.0),            # rib thickness
    "Arch Bottom_bear": (1.0, 3.0),         # rib thickness
    "Cable Harp_shaped": (0.5, 1.4),        # stay width (towers follow)
    "Cable Fan_shaped": (0.5, 1.4),         # stay width (towers follow)
    "Suspension Vertical_sling": (0.5, 1.5),  # main cable width (hangers follow)
    "Suspension Diagonal_sling": (0.5, 1.5),  # main cable width (hangers follow)
}


def spans_for(subtype: str) -> tuple[float, float, float]:
    return SPANS_BEAM if subtype.startswith("Beam") else SPANS_OTHER


@dataclass(frozen=True)
class BridgeRenderSpec:
    """Everything the renderer needs for one base image."""

    subtype: str
    frame: int
    member_width: float
    canvas_width: int = CANVAS_WIDTH
    canvas_height: int = CANVAS_HEIGHT
    meters_per_pixel: float = METERS_PER_PIXEL

    def __post_init__(self):
        if self.subtype not in LABEL_DICTIONARY:
            raise ValueError(f"unknown subtype: {self.subtype!r}")
        if not 0 <= self.frame < N_FRAMES:
            raise ValueError(f"frame must be in [0, {N_FRAMES}), got {self.frame}")
        lo, hi = MEMBER_RANGE[self.subtype]
        if not lo <= self.member_width <= hi:
            raise ValueError(
                f"member_width {self.member_width} outside [{lo}, {hi}] for {self.subtype}")


def spec_for(subtype: str, frame: int) -> BridgeRenderSpec:
    """Render spec for an animation frame, width interpolated linearly."""
    if subtype not in MEMBER_RANGE:
        raise ValueError(f"unknown subtype: {subtype!r}")
    if not 0 <= frame < N_FRAMES:
        raise ValueError(f"frame must be in [0, {N_FRAMES}), got {frame}")
    lo, hi = MEMBER_RANGE[subtype]
    width = lo + (hi - lo) * frame / (N_FRAMES - 1)
    return BridgeRenderSpec(subtype=subtype, frame=frame, member_width=width)
