"""Deterministic SVG and binary PGM emission for patterns and level sets.

SVG output uses only rect and polyline elements; byte-identical output for
identical inputs is guaranteed (fixed element order, fixed formatting).
Cell (0, 0) renders at the bottom-left.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .patterns import Cell, white_grid

DEFAULT_PIXEL_BUDGET = 64_000_000


class RenderError(ValueError):
    """Invalid render request (overlay out of range, budget exceeded)."""


@dataclass(frozen=True)
class Palette:
    white: str = "#ffffff"
    black: str = "#000000"
    path_highlight: str = "#bbbbbb"
    gridline: str = "#888888"
    # gray levels for PGM rasters
    white_gray: int = 255
    black_gray: int = 0
    highlight_gray: int = 180


@dataclass(frozen=True)
class RenderSpec:
    cell_pixels: int = 10
    palette: Palette = field(default_factory=Palette)
    overlay: tuple[Cell, ...] | None = None
    draw_grid: bool = False
    coarse_grid_every: int | None = None
    pixel_budget: int = DEFAULT_PIXEL_BUDGET

    def __post_init__(self):
        if self.cell_pixels < 1:
            raise RenderError("cell_pixels must be >= 1")


def _check(obj, spec: RenderSpec) -> np.ndarray:
    g = white_grid(obj)
    s, m = g.shape
    if m * s * spec.cell_pixels * spec.cell_pixels > spec.pixel_budget:
        raise RenderError(
            f"{m}x{s} grid at {spec.cell_pixels} px/cell exceeds the pixel budget"
        )
    if spec.overlay:
        for (i, j) in spec.overlay:
            if not (0 <= i < m and 0 <= j < s):
                raise RenderError(f"overlay cell ({i}, {j}) outside {m}x{s} grid")
    return g


def render_svg(obj, spec: RenderSpec) -> str:
    """SVG 1.1 document (rect and polyline only)."""
    g = _check(obj, spec)
    s, m = g.shape
    cp = spec.cell_pixels
    width, height = m * cp, s * cp
    pal = spec.palette

    def cell_rect(i: int, j: int, color: str) -> str:
        x = i * cp
        y = (s - 1 - j) * cp
        return (f'<rect x="{x}" y="{y}" width="{cp}" height="{cp}" '
                f'fill="{color}"/>')

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="{pal.white}"/>',
    ]
    for j in range(s - 1, -1, -1):
        for i in range(m):
            if not g[j, i]:
                parts.append(cell_rect(i, j, pal.black))
    if spec.overlay:
        for (i, j) in spec.overlay:
            parts.append(cell_rect(i, j, pal.path_highlight))
    if spec.draw_grid:
        for i in range(m + 1):
            x = min(i * cp, width - 1)
            parts.append(f'<polyline points="{x},0 {x},{height}" '
                         f'stroke="{pal.gridline}" stroke-width="1" fill="none"/>')
        for j in range(s + 1):
            y = min(j * cp, height - 1)
            parts.append(f'<polyline points="0,{y} {width},{y}" '
                         f'stroke="{pal.gridline}" stroke-width="1" fill="none"/>')
    if spec.coarse_grid_every:
        k = spec.coarse_grid_every
        for i in range(0, m + 1, k):
            x = min(i * cp, width - 1)
            parts.append(f'<polyline points="{x},0 {x},{height}" '
                         f'stroke="{pal.black}" stroke-width="2" fill="none"/>')
        for j in range(0, s + 1, k):
            y = min(j * cp, height - 1)
            parts.append(f'<polyline points="0,{y} {width},{y}" '
                         f'stroke="{pal.black}" stroke-width="2" fill="none"/>')
    if spec.overlay and len(spec.overlay) > 1:
        pts = " ".join(
            f"{i * cp + cp // 2},{(s - 1 - j) * cp + cp // 2}"
            for (i, j) in spec.overlay
        )
        parts.append(f'<polyline points="{pts}" stroke="{pal.black}" '
                     f'stroke-width="1" fill="none"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_pgm(obj, spec: RenderSpec) -> bytes:
    """Binary PGM (P5) raster, one byte per pixel, max value 255."""
    g = _check(obj, spec)
    s, m = g.shape
    cp = spec.cell_pixels
    pal = spec.palette
    cells = np.where(g, np.uint8(pal.white_gray), np.uint8(pal.black_gray))
    if spec.overlay:
        cells = cells.copy()
        for (i, j) in spec.overlay:
            cells[j, i] = pal.highlight_gray
    raster = np.repeat(np.repeat(cells[::-1, :], cp, axis=0), cp, axis=1)
    header = f"P5\n{m * cp} {s * cp}\n255\n".encode("ascii")
    return header + raster.tobytes()
