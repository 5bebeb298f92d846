"""Procedural rasterizer for the eight bridge facade silhouettes.

Geometry lives in meter space: u runs 0..300 along the bridge, h is height in
meters above the deck line (negative below). Members are filled polygons on an
8x supersampled canvas with 4 extra fixed-point coordinate bits, then box
downsampling produces the anti-aliased 512x128 grayscale image. Rendering is
pure geometry, so identical specs give bit-identical images.

Silhouette recipes: beams are a deck slab on piers (vertical or V struts);
arches a parabolic rib under the deck on spandrel columns (top bearing) or
over it on hangers (bottom bearing); cable-stayed bridges twin towers with
parallel (harp) or converging (fan) stays; suspension bridges a main cable
over the towers with vertical or inclined hangers.
"""

from __future__ import annotations

import math

import cv2
import numpy as np

from .subtypes import (
    BridgeRenderSpec,
    CANVAS_HEIGHT,
    CANVAS_WIDTH,
    DECK_ROW,
    MARGIN_M,
    N_FRAMES,
    PX_PER_M,
    spec_for,
)

RENDERER_VERSION = "1"

_SS = 8       # supersampling factor
_SHIFT = 4    # extra fixed-point bits handed to OpenCV
_FIXED = _SS * (1 << _SHIFT)

DECK_DEPTH_M = 2.5      # deck slab depth for non-beam subtypes
PIER_FOOT_M = -20.0     # bottom of piers/towers, meters below deck


def _to_px(u: float, h: float) -> tuple[float, float]:
    """Bridge coordinate (u along deck, h above deck line) -> canvas pixels."""
    return (u + MARGIN_M) * PX_PER_M, DECK_ROW - h * PX_PER_M


class _Raster:
    def __init__(self):
        self.canvas = np.zeros((CANVAS_HEIGHT * _SS, CANVAS_WIDTH * _SS), np.uint8)

    def fill(self, pts_m: np.ndarray) -> None:
        """Fill a polygon given as (k, 2) array of (u, h) meter coordinates."""
        px = np.array([_to_px(u, h) for u, h in pts_m], np.float64)
        fixed = np.round(px * _FIXED).astype(np.int32)
        cv2.fillPoly(self.canvas, [fixed.reshape(-1, 1, 2)], 255, shift=_SHIFT)

    def rect(self, u0: float, u1: float, h0: float, h1: float) -> None:
        self.fill(np.array([(u0, h0), (u1, h0), (u1, h1), (u0, h1)]))

    def seg(self, p0, p1, width_m: float) -> None:
        """Thick straight member from p0 to p1 (meter coords)."""
        (u0, h0), (u1, h1) = p0, p1
        du, dh = u1 - u0, h1 - h0
        norm = math.hypot(du, dh)
        if norm == 0:
            return
        nu, nh = -dh / norm * width_m / 2, du / norm * width_m / 2
        self.fill(np.array([
            (u0 + nu, h0 + nh), (u1 + nu, h1 + nh),
            (u1 - nu, h1 - nh), (u0 - nu, h0 - nh),
        ]))

    def band(self, pts, width_m: float) -> None:
        """Thick curved member along a sampled centerline."""
        pts = np.asarray(pts, np.float64)
        tang = np.empty_like(pts)
        tang[1:-1] = pts[2:] - pts[:-2]
        tang[0] = pts[1] - pts[0]
        tang[-1] = pts[-1] - pts[-2]
        tang /= np.linalg.norm(tang, axis=1, keepdims=True)
        normals = np.stack([-tang[:, 1], tang[:, 0]], axis=1) * (width_m / 2)
        self.fill(np.concatenate([pts + normals, (pts - normals)[::-1]]))

    def image(self) -> np.ndarray:
        sub = self.canvas.reshape(CANVAS_HEIGHT, _SS, CANVAS_WIDTH, _SS)
        return (sub.mean(axis=(1, 3)) / 255.0).astype(np.float32)


def _parabola(u0: float, u1: float, y_of_u, n: int = 48) -> np.ndarray:
    us = np.linspace(u0, u1, n)
    return np.stack([us, y_of_u(us)], axis=1)


def _draw_beam_three_span(r: _Raster, depth: float) -> None:
    r.rect(0, 300, 0, -depth)
    for u in (80, 220):
        r.rect(u - 1.5, u + 1.5, -depth, PIER_FOOT_M)


def _draw_beam_v_type(r: _Raster, depth: float) -> None:
    r.rect(0, 300, 0, -depth)
    for u in (80, 220):
        r.seg((u, -19.0), (u - 22, -depth), 2.5)
        r.seg((u, -19.0), (u + 22, -depth), 2.5)
        r.rect(u - 2.5, u + 2.5, -18.0, PIER_FOOT_M)


def _draw_arch_top_bear(r: _Raster, rib: float) -> None:
    r.rect(0, 300, 0, -DECK_DEPTH_M)

    def y(us):
        return -4.0 - 16.0 * np.square((us - 150.0) / 83.0)

    r.band(_parabola(67, 233, y), rib)
    for u in range(79, 222, 13):
        r.seg((u, float(y(np.array(u)))), (u, -DECK_DEPTH_M), 1.2)
    for u in (67, 233):
        r.rect(u - 1.5, u + 1.5, -DECK_DEPTH_M, PIER_FOOT_M)
    for u in (25, 275):
        r.rect(u - 1.5, u + 1.5, -DECK_DEPTH_M, -18.0)


def _draw_arch_bottom_bear(r: _Raster, rib: float) -> None:
    r.rect(0, 300, 0, -DECK_DEPTH_M)

    def y(us):
        return 40.0 * (1.0 - np.square((us - 150.0) / 83.0))

    r.band(_parabola(67, 233, y), rib)
    for u in range(79, 222, 12):
        r.seg((u, float(y(np.array(u)))), (u, 0.0), 0.5)
    for u in (67, 233):
        r.rect(u - 1.5, u + 1.5, -DECK_DEPTH_M, PIER_FOOT_M)


def _draw_cable_stayed(r: _Raster, stay: float, fan: bool) -> None:
    r.rect(0, 300, 0, -DECK_DEPTH_M)
    tower_w = 2.0 + (stay - 0.5) / 0.9 * 1.5  # 2.0 -> 3.5 m across the frames
    offsets = (16.0, 32.0, 48.0, 64.0)
    heights = (36.0, 39.0, 42.0, 45.0) if fan else (9.0, 18.0, 27.0, 36.0)
    for u in (67, 233):
        r.rect(u - tower_w / 2, u + tower_w / 2, 45.0, PIER_FOOT_M)
        for d, h in zip(offsets, heights):
            r.seg((u, h), (u - d, 0.0), stay)
            r.seg((u, h), (u + d, 0.0), stay)


def _draw_suspension(r: _Raster, cable: float, diagonal: bool) -> None:
    r.rect(0, 300, 0, -DECK_DEPTH_M)
    hanger = 0.35 + (cable - 0.5) * 0.65  # follows the cable width
    for u in (67, 233):
        r.rect(u - 1.5, u + 1.5, 42.0, PIER_FOOT_M)

    def y(us):
        return 6.0 + 36.0 * np.square((us - 150.0) / 83.0)

    r.band(_parabola(67, 233, y), cable)
    r.seg((0, 1.0), (67, 42.0), cable)
    r.seg((233, 42.0), (300, 1.0), cable)

    sign = 1
    for u in range(79, 222, 12):
        du = 6.0 * sign if diagonal else 0.0
        r.seg((u, float(y(np.array(u)))), (u + du, 0.0), hanger)
        sign = -sign
    for k in (13, 26, 39, 52):
        for u, h in ((k, 1.0 + 41.0 * k / 67.0), (300 - k, 1.0 + 41.0 * k / 67.0)):
            du = 6.0 * sign if diagonal else 0.0
            r.seg((u, h), (u + du, 0.0), hanger)
            sign = -sign


_DRAWERS = {
    "Beam Three_span": _draw_beam_three_span,
    "Beam V_type": _draw_beam_v_type,
    "Arch Top_bear": _draw_arch_top_bear,
    "Arch Bottom_bear": _draw_arch_bottom_bear,
    "Cable Harp_shaped": lambda r, w: _draw_cable_stayed(r, w, fan=False),
    "Cable Fan_shaped": lambda r, w: _draw_cable_stayed(r, w, fan=True),
    "Suspension Vertical_sling": lambda r, w: _draw_suspension(r, w, diagonal=False),
    "Suspension Diagonal_sling": lambda r, w: _draw_suspension(r, w, diagonal=True),
}


def render_bridge(spec: BridgeRenderSpec) -> np.ndarray:
    """Render one facade silhouette: float32 (128, 512) in [0, 1]."""
    drawer = _DRAWERS.get(spec.subtype)
    if drawer is None:
        raise ValueError(f"unknown subtype: {spec.subtype!r}")
    raster = _Raster()
    drawer(raster, spec.member_width)
    return raster.image()


def animate_frames(subtype: str) -> list[np.ndarray]:
    """The 16 base images of a subtype, member width swept min -> max."""
    return [render_bridge(spec_for(subtype, k)) for k in range(N_FRAMES)]
