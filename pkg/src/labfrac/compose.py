"""Substitution of pattern sequences into level-n white-cell sets.

Each refinement step replaces every white cell of the current grid by a full
copy of the next pattern, so the level-n grid has m(1)...m(n) columns and
s(1)...s(n) rows.  All cumulative dimensions are exact Python integers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage

from .patterns import Cell, Pattern, ValidationReport, parse_pattern, validate, white_grid

DEFAULT_CELL_BUDGET = 10**8


class BudgetError(RuntimeError):
    """A composed grid would exceed the configured cell budget."""


class ManifestError(ValueError):
    """Malformed sequence manifest."""


class TailRule(enum.Enum):
    FINITE = "finite"
    REPEAT_LAST = "repeat-last"
    CYCLE = "cycle"


@dataclass(frozen=True)
class LabyrinthSequence:
    """An ordered list of patterns plus a tail rule defining pattern(k) for
    every level k >= 1."""

    patterns: tuple[Pattern, ...]
    tail: TailRule = TailRule.FINITE

    def __post_init__(self):
        if not self.patterns:
            raise ManifestError("sequence needs at least one pattern")

    def pattern(self, k: int) -> Pattern:
        """The level-k pattern, 1-based."""
        if k < 1:
            raise IndexError(f"pattern index {k} < 1")
        if k <= len(self.patterns):
            return self.patterns[k - 1]
        if self.tail is TailRule.REPEAT_LAST:
            return self.patterns[-1]
        if self.tail is TailRule.CYCLE:
            return self.patterns[(k - 1) % len(self.patterns)]
        raise IndexError(f"pattern {k} undefined under finite tail of length "
                         f"{len(self.patterns)}")

    def width_product(self, n: int) -> int:
        """m(n): exact product of the first n widths, m(0) = 1."""
        return math.prod(self.pattern(k).m for k in range(1, n + 1))

    def height_product(self, n: int) -> int:
        """s(n): exact product of the first n heights, s(0) = 1."""
        return math.prod(self.pattern(k).s for k in range(1, n + 1))


@dataclass(frozen=True)
class LevelSet:
    """The set of white cells of level n on its m(n) x s(n) grid."""

    n: int
    m: int
    s: int
    grid: np.ndarray  # (s, m) bool, row 0 at the bottom

    @property
    def white_count(self) -> int:
        return int(self.grid.sum())

    def white_cells(self) -> frozenset[Cell]:
        jj, ii = np.nonzero(self.grid)
        return frozenset(zip(ii.tolist(), jj.tolist()))

    def as_pattern(self) -> Pattern:
        return Pattern(self.m, self.s, self.white_cells())


def _check_budget(m: int, s: int, budget: int) -> None:
    if m * s > budget:
        raise BudgetError(f"{m}x{s} grid ({m * s} cells) exceeds budget of {budget}")


def _as_level(obj, budget: int) -> LevelSet:
    if isinstance(obj, LevelSet):
        return obj
    g = white_grid(obj)
    _check_budget(obj.m, obj.s, budget)
    return LevelSet(1, obj.m, obj.s, g)


def substitute(base, nxt: Pattern, budget: int = DEFAULT_CELL_BUDGET) -> LevelSet:
    """Refine every white cell of `base` by the pattern `nxt`."""
    lvl = _as_level(base, budget)
    m = lvl.m * nxt.m
    s = lvl.s * nxt.s
    _check_budget(m, s, budget)
    grid = np.kron(lvl.grid, nxt.grid())
    grid.setflags(write=False)
    return LevelSet(lvl.n + 1, m, s, grid)


_UNIT = Pattern(1, 1, frozenset({(0, 0)}))


def build_level(seq: LabyrinthSequence, n: int,
                budget: int = DEFAULT_CELL_BUDGET) -> LevelSet:
    """Left fold of substitute over patterns 1..n; n = 0 gives the all-white
    1 x 1 grid."""
    if n < 0:
        raise ValueError("level must be >= 0")
    grid = _UNIT.grid()
    lvl = LevelSet(0, 1, 1, grid)
    for k in range(1, n + 1):
        pat = seq.pattern(k)
        nxt = substitute(lvl, pat, budget=budget)
        lvl = LevelSet(k, nxt.m, nxt.s, nxt.grid)
    return lvl


def level_is_labyrinth(seq: LabyrinthSequence, n: int,
                       budget: int = DEFAULT_CELL_BUDGET) -> ValidationReport:
    """Validate the level-n set viewed as one big pattern."""
    return validate(build_level(seq, n, budget=budget))


@dataclass(frozen=True)
class BlackBorderReport:
    """Border reachability of the black components of a level-n grid, under
    side-or-corner adjacency."""

    n: int
    component_count: int
    all_reach_border: bool
    stranded: tuple[Cell, ...]  # one representative cell per failing component


def black_border_report(seq: LabyrinthSequence, n: int,
                        budget: int = DEFAULT_CELL_BUDGET) -> BlackBorderReport:
    """Check that every black component of level n touches the grid border."""
    lvl = build_level(seq, n, budget=budget)
    black = ~lvl.grid
    if not black.any():
        return BlackBorderReport(n, 0, True, ())
    labels, count = ndimage.label(black, structure=np.ones((3, 3), dtype=bool))
    border = np.zeros_like(black)
    border[0, :] = border[-1, :] = True
    border[:, 0] = border[:, -1] = True
    reaching = set(np.unique(labels[border & black]).tolist()) - {0}
    stranded: list[Cell] = []
    for lab in range(1, count + 1):
        if lab not in reaching:
            jj, ii = np.nonzero(labels == lab)
            stranded.append((int(ii[0]), int(jj[0])))
    return BlackBorderReport(n, int(count), not stranded, tuple(stranded))


def parse_manifest(text: str, base_dir: str | Path = ".") -> LabyrinthSequence:
    """Parse a sequence manifest.

    Line 1 is ``sequence <tail>`` with tail in {finite, repeat-last, cycle};
    the remaining non-comment lines are pattern file paths, resolved relative
    to `base_dir`.
    """
    base = Path(base_dir)
    lines = [ln.strip() for ln in text.split("\n")]
    content = [ln for ln in lines if ln and not ln.startswith("#")]
    if not content:
        raise ManifestError("empty manifest")
    head = content[0].split()
    if len(head) != 2 or head[0] != "sequence":
        raise ManifestError(f"malformed manifest header {content[0]!r}")
    try:
        tail = TailRule(head[1])
    except ValueError:
        raise ManifestError(f"unknown tail rule {head[1]!r}") from None
    patterns = []
    for rel in content[1:]:
        path = base / rel
        try:
            patterns.append(parse_pattern(path.read_text()))
        except OSError as exc:
            raise ManifestError(f"cannot read pattern file {path}: {exc}") from exc
    if not patterns:
        raise ManifestError("manifest lists no pattern files")
    return LabyrinthSequence(tuple(patterns), tail)


def load_manifest(path: str | Path) -> LabyrinthSequence:
    path = Path(path)
    return parse_manifest(path.read_text(), base_dir=path.parent)
