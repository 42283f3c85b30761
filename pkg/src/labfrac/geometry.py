"""Geometric analysis: exit coordinates, arc approximations, box-counting
dimension estimates, and connectivity probes.

Exit coordinates are exact rationals.  The coordinate of the top/bottom exit
of the limit set is the series sum over levels of (exit column of the level
pattern) / m(k); the left/right exit coordinate sums rows against height
products.  Floats appear only in arc lengths and dimension ratios, always
computed from exact integer inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import ndimage

from .compose import (
    DEFAULT_CELL_BUDGET,
    LabyrinthSequence,
    TailRule,
    build_level,
)
from .paths import (
    KINDS,
    KIND_ENDPOINT_SIDES,
    PathMatrix,
    path_matrix,
    substituted_path,
)
from .patterns import Cell, Pattern, find_exits, validate

Point = tuple[Fraction, Fraction]

EXIT_SIDES = ("top", "bottom", "left", "right")


class GeometryError(ValueError):
    """A geometric query violates its preconditions."""


def _require_labyrinth(p: Pattern, k: int) -> None:
    if not validate(p).is_labyrinth:
        raise GeometryError(f"pattern {k} of the sequence is not a labyrinth pattern")


def _exit_anchors(p: Pattern) -> tuple[int, int]:
    """(column of the vertical exit pair, row of the horizontal exit pair)."""
    exits = find_exits(p)
    (top, _), = exits.vertical_pairs
    (left, _), = exits.horizontal_pairs
    return top[0], left[1]


@dataclass(frozen=True)
class ExitCoordinates:
    """Exit points of the limit set: partial series sums with a truncation
    bound, or exact limits (tail_bound 0) when the tail rule closes the
    series."""

    top: Point
    bottom: Point
    left: Point
    right: Point
    tail_bound: Fraction
    exact: bool


def _partial_sums(seq: LabyrinthSequence, n: int) -> tuple[Fraction, Fraction]:
    x = Fraction(0)
    y = Fraction(0)
    mn = 1
    sn = 1
    for k in range(1, n + 1):
        p = seq.pattern(k)
        _require_labyrinth(p, k)
        col, row = _exit_anchors(p)
        mn *= p.m
        sn *= p.s
        x += Fraction(col, mn)
        y += Fraction(row, sn)
    return x, y


def exit_coordinates(seq: LabyrinthSequence, n: int) -> ExitCoordinates:
    """Partial sums of the exit-coordinate series through level n."""
    x, y = _partial_sums(seq, n)
    bound = Fraction(1, min(seq.width_product(n), seq.height_product(n)))
    return ExitCoordinates(
        top=(x, Fraction(1)),
        bottom=(x, Fraction(0)),
        left=(Fraction(0), y),
        right=(Fraction(1), y),
        tail_bound=bound,
        exact=False,
    )


def exit_coordinates_limit(seq: LabyrinthSequence) -> ExitCoordinates:
    """Exact exit coordinates of the limit set, summing the geometric tail of
    a repeat-last or cyclic sequence in closed form."""
    n = len(seq.patterns)
    x, y = _partial_sums(seq, n)
    mn = seq.width_product(n)
    sn = seq.height_product(n)
    if seq.tail is TailRule.REPEAT_LAST:
        last = seq.patterns[-1]
        col, row = _exit_anchors(last)
        if last.m > 1:
            x += Fraction(col, mn * (last.m - 1))
        if last.s > 1:
            y += Fraction(row, sn * (last.s - 1))
    elif seq.tail is TailRule.CYCLE:
        # full sum = (one cycle) * (1 + 1/m(n) + 1/m(n)^2 + ...)
        if mn > 1:
            x *= Fraction(mn, mn - 1)
        if sn > 1:
            y *= Fraction(sn, sn - 1)
    else:
        raise GeometryError("finite sequences define no limit-set exits")
    return ExitCoordinates(
        top=(x, Fraction(1)),
        bottom=(x, Fraction(0)),
        left=(Fraction(0), y),
        right=(Fraction(1), y),
        tail_bound=Fraction(0),
        exact=True,
    )


def exit_point(seq: LabyrinthSequence, side: str) -> Point:
    coords = exit_coordinates_limit(seq)
    return getattr(coords, side)


def _cell_is_white(seq: LabyrinthSequence, n: int, i: int, j: int) -> bool:
    """Membership of the level-n cell (i, j) via per-level digit tests."""
    mn = seq.width_product(n)
    sn = seq.height_product(n)
    ri, rj = i, j
    for k in range(1, n + 1):
        p = seq.pattern(k)
        mn //= p.m
        sn //= p.s
        di, ri = divmod(ri, mn)
        dj, rj = divmod(rj, sn)
        if (di, dj) not in p.white:
            return False
    return True


def _axis_candidates(coord: Fraction, cells: int) -> list[int]:
    scaled = coord * cells
    if scaled.denominator == 1:
        q = int(scaled)
        cand = [q - 1, q]
    else:
        cand = [math.floor(scaled)]
    return [c for c in cand if 0 <= c < cells]


def exit_membership_counts(seq: LabyrinthSequence, side: str,
                           n_max: int) -> list[int]:
    """For each level n <= n_max, how many closed level-n white squares
    contain the limit set's exit point on the given side."""
    if side not in EXIT_SIDES:
        raise GeometryError(f"unknown exit side {side!r}")
    x, y = exit_point(seq, side)
    counts = []
    for n in range(1, n_max + 1):
        mn = seq.width_product(n)
        sn = seq.height_product(n)
        count = sum(
            _cell_is_white(seq, n, i, j)
            for i in _axis_candidates(x, mn)
            for j in _axis_candidates(y, sn)
        )
        counts.append(count)
    return counts


@dataclass(frozen=True)
class ArcApproximation:
    """Level-n polyline representative of the arc between two exits."""

    n: int
    kind: str
    cells: tuple[Cell, ...]
    polyline: tuple[Point, ...]
    euclidean_length: Fraction | float
    lower_bound: Fraction


def _side_midpoint(cell: Cell, side: str, m: int, s: int) -> Point:
    i, j = cell
    if side == "top":
        return (Fraction(2 * i + 1, 2 * m), Fraction(j + 1, s))
    if side == "bottom":
        return (Fraction(2 * i + 1, 2 * m), Fraction(j, s))
    if side == "left":
        return (Fraction(i, m), Fraction(2 * j + 1, 2 * s))
    return (Fraction(i + 1, m), Fraction(2 * j + 1, 2 * s))


def _shared_side_midpoint(a: Cell, b: Cell, m: int, s: int) -> Point:
    (ai, aj), (bi, bj) = a, b
    if ai == bi:  # vertical neighbours: shared horizontal side
        return (Fraction(2 * ai + 1, 2 * m), Fraction(max(aj, bj), s))
    return (Fraction(max(ai, bi), m), Fraction(2 * aj + 1, 2 * s))


def _polyline_length(points) -> Fraction | float:
    total: Fraction | float = Fraction(0)
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        dx, dy = x1 - x0, y1 - y0
        if dx == 0:
            total += abs(dy)
        elif dy == 0:
            total += abs(dx)
        else:
            total += math.hypot(float(dx), float(dy))
    return total


def arc_approximation(seq: LabyrinthSequence, n: int, kind: str,
                      budget: int = DEFAULT_CELL_BUDGET) -> ArcApproximation:
    """Polyline through the level-n path cells: boundary entry point, cell
    centres, side-midpoint crossings between consecutive cells, exit point."""
    path = substituted_path(seq, n, kind, budget=budget)
    mn = seq.width_product(n)
    sn = seq.height_product(n)
    start_side, end_side = KIND_ENDPOINT_SIDES[kind]
    points: list[Point] = [_side_midpoint(path.cells[0], start_side, mn, sn)]
    for idx, (i, j) in enumerate(path.cells):
        points.append((Fraction(2 * i + 1, 2 * mn), Fraction(2 * j + 1, 2 * sn)))
        if idx + 1 < len(path.cells):
            points.append(
                _shared_side_midpoint(path.cells[idx], path.cells[idx + 1], mn, sn)
            )
    points.append(_side_midpoint(path.cells[-1], end_side, mn, sn))
    length = _polyline_length(points)
    k = len(path.cells)
    bound = Fraction(k - 1, 2 * max(mn, sn))
    assert length >= bound, f"arc length {length} below bound {bound}"
    return ArcApproximation(n, kind, path.cells, tuple(points), length, bound)


@dataclass(frozen=True)
class LevelLengths:
    n: int
    lengths: tuple[int, ...]  # six exit-path lengths in kind order
    m_n: int
    s_n: int
    ratio: float  # log(length of the requested kind) / log(m(n))


@dataclass(frozen=True)
class DimensionEstimate:
    kind: str
    per_level: tuple[LevelLengths, ...]
    liminf_estimate: float
    limsup_estimate: float
    window: int  # trailing window the extremes were taken over


def dimension_estimate(seq: LabyrinthSequence, n_max: int, kind: str,
                       window: int | None = None) -> DimensionEstimate:
    """Box-counting dimension diagnostics from exact path lengths.

    Lengths come from the path-matrix product, never from grid expansion, so
    n_max may be large.  The reported liminf/limsup are window extremes over
    the trailing `window` levels (default: the last half), not true limits.
    """
    if kind not in KINDS:
        raise GeometryError(f"unknown path kind {kind!r}")
    if n_max < 1:
        raise GeometryError("n_max must be >= 1")
    records = []
    row = KINDS.index(kind)
    mn = 1
    sn = 1
    matrix = PathMatrix.identity()
    for n in range(1, n_max + 1):
        p = seq.pattern(n)
        matrix = matrix @ path_matrix(p)
        mn *= p.m
        sn *= p.s
        lengths = matrix.row_sums()
        length = lengths[row]
        ratio = math.log(length) / math.log(mn) if mn > 1 and length > 1 else (
            0.0 if length == 1 else float("nan"))
        records.append(LevelLengths(n, lengths, mn, sn, ratio))
    if window is None:
        window = max(1, n_max // 2)
    tail = [r.ratio for r in records[-window:]]
    return DimensionEstimate(kind, tuple(records), min(tail), max(tail), window)


@dataclass(frozen=True)
class CarpetLevelStats:
    n: int
    component_count: int
    max_diameter_normalized: Fraction  # bounding-box extent over grid size


def disconnectedness_probe(seq: LabyrinthSequence, n_max: int,
                           budget: int = DEFAULT_CELL_BUDGET) -> list[CarpetLevelStats]:
    """Component statistics of levels of a complementary-pattern carpet.

    Every pattern must be the complement of a labyrinth pattern.  Shrinking
    normalized diameters are evidence (not proof) of total disconnectedness.
    """
    from .patterns import complement

    for k, p in enumerate(seq.patterns, start=1):
        if not validate(complement(p)).is_labyrinth:
            raise GeometryError(
                f"pattern {k} is not the complement of a labyrinth pattern"
            )
    out = []
    for n in range(1, n_max + 1):
        lvl = build_level(seq, n, budget=budget)
        labels, count = ndimage.label(lvl.grid)
        max_norm = Fraction(0)
        for sl in ndimage.find_objects(labels):
            if sl is None:
                continue
            h = sl[0].stop - sl[0].start
            w = sl[1].stop - sl[1].start
            norm = max(Fraction(w, lvl.m), Fraction(h, lvl.s))
            max_norm = max(max_norm, norm)
        out.append(CarpetLevelStats(n, int(count), max_norm))
    return out


@dataclass(frozen=True)
class ConnectivityRecord:
    n: int
    connected: bool
    component_count: int


def connectivity_probe(seq: LabyrinthSequence, n_max: int,
                       budget: int = DEFAULT_CELL_BUDGET) -> list[ConnectivityRecord]:
    """Connectedness of the white-cell graph at each level n <= n_max."""
    out = []
    for n in range(1, n_max + 1):
        lvl = build_level(seq, n, budget=budget)
        count = int(ndimage.label(lvl.grid)[1])
        out.append(ConnectivityRecord(n, count == 1, count))
    return out
