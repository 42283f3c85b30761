"""Grid patterns, their cell graphs, exit systems, and validity checks.

A pattern is an m x s grid whose cells are coloured white or black.
Coordinates are (i, j) with i the column (0-based from the left) and j the
row (0-based from the *bottom*), matching the Cartesian anchors used by the
construction formulas.  The text file format lists rows top-to-bottom and is
converted at parse time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import ndimage

Cell = tuple[int, int]

_FOUR_NEIGHBOURS = ((0, 1), (0, -1), (-1, 0), (1, 0))


class PatternError(ValueError):
    """A pattern violates a structural requirement."""


class PatternFormatError(PatternError):
    """Malformed pattern file; carries the offending line/column (1-based)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Pattern:
    """An m x s grid with a nonempty set of white cells."""

    m: int
    s: int
    white: frozenset[Cell]

    def __post_init__(self):
        if self.m < 1 or self.s < 1:
            raise PatternError(f"grid dimensions must be positive, got {self.m}x{self.s}")
        if not self.white:
            raise PatternError("no white cells")
        for (i, j) in self.white:
            if not (0 <= i < self.m and 0 <= j < self.s):
                raise PatternError(f"white cell ({i}, {j}) outside {self.m}x{self.s} grid")

    @classmethod
    def from_rows(cls, rows: list[str]) -> "Pattern":
        """Build from rows given top-to-bottom, '.' white and '#' black."""
        s = len(rows)
        m = len(rows[0]) if rows else 0
        white = frozenset(
            (i, s - 1 - r)
            for r, row in enumerate(rows)
            for i, ch in enumerate(row)
            if ch == "."
        )
        return cls(m, s, white)

    def grid(self) -> np.ndarray:
        """Boolean array of shape (s, m); grid[j, i] is True iff (i, j) is white."""
        return _grid_of(self)

    def is_white(self, cell: Cell) -> bool:
        return cell in self.white


@lru_cache(maxsize=512)
def _grid_of(p: Pattern) -> np.ndarray:
    g = np.zeros((p.s, p.m), dtype=bool)
    for (i, j) in p.white:
        g[j, i] = True
    g.setflags(write=False)
    return g


def white_grid(obj) -> np.ndarray:
    """Boolean (s, m) white-cell grid of a Pattern or any grid-like object."""
    if isinstance(obj, Pattern):
        return obj.grid()
    return obj.grid if isinstance(obj.grid, np.ndarray) else obj.grid()


_HEADER_RE = re.compile(r"^pattern\s+(\d+)\s+(\d+)\s*$")


def parse_pattern(text: str) -> Pattern:
    """Parse the pattern file format.

    Line 1 is ``pattern <m> <s>``; the following s lines hold exactly m
    characters from {'.', '#'}, rows top-to-bottom.  '#'-prefixed lines before
    the header are comments; trailing blank lines are ignored.
    """
    lines = text.split("\n")
    idx = 0
    while idx < len(lines) and lines[idx].startswith("#"):
        idx += 1
    if idx >= len(lines) or not lines[idx].strip():
        raise PatternFormatError("missing header", line=idx + 1)
    match = _HEADER_RE.match(lines[idx])
    if match is None:
        raise PatternFormatError(f"malformed header {lines[idx]!r}", line=idx + 1)
    m, s = int(match.group(1)), int(match.group(2))
    if m < 1 or s < 1:
        raise PatternFormatError(f"dimensions must be positive, got {m}x{s}", line=idx + 1)
    rows: list[str] = []
    for r in range(s):
        lineno = idx + 2 + r
        if lineno - 1 >= len(lines):
            raise PatternFormatError(f"expected {s} rows, found {r}", line=lineno)
        row = lines[lineno - 1]
        if len(row) != m:
            raise PatternFormatError(
                f"row has {len(row)} characters, expected {m}", line=lineno
            )
        for c, ch in enumerate(row):
            if ch not in ".#":
                raise PatternFormatError(
                    f"illegal character {ch!r}", line=lineno, column=c + 1
                )
        rows.append(row)
    for extra in lines[idx + 1 + s:]:
        if extra.strip():
            raise PatternFormatError("unexpected content after grid rows",
                                     line=idx + 2 + s)
    white = frozenset(
        (i, s - 1 - r) for r, row in enumerate(rows) for i, ch in enumerate(row) if ch == "."
    )
    if not white:
        raise PatternFormatError("no white cells", line=idx + 2)
    return Pattern(m, s, white)


def format_pattern(obj) -> str:
    """Inverse of parse_pattern; accepts a Pattern or a composed level set."""
    g = white_grid(obj)
    s, m = g.shape
    rows = ["".join("." if g[j, i] else "#" for i in range(m)) for j in range(s - 1, -1, -1)]
    return f"pattern {m} {s}\n" + "\n".join(rows) + "\n"


@dataclass
class CellGraph:
    """Side-adjacency graph over the white cells of a grid."""

    vertices: tuple[Cell, ...]
    adjacency: dict[Cell, tuple[Cell, ...]]
    edge_count: int
    is_tree: bool
    is_connected: bool

    def edges(self) -> set[tuple[Cell, Cell]]:
        out: set[tuple[Cell, Cell]] = set()
        for v, nbrs in self.adjacency.items():
            for w in nbrs:
                out.add((v, w) if v <= w else (w, v))
        return out


def _row_major_key(cell: Cell) -> tuple[int, int]:
    i, j = cell
    return (j, i)


def build_graph(obj) -> CellGraph:
    """Side-adjacency graph of the white cells, vertices in row-major order
    from the bottom-left."""
    g = white_grid(obj)
    s, m = g.shape
    jj, ii = np.nonzero(g)
    vertices = tuple(sorted(zip(ii.tolist(), jj.tolist()), key=_row_major_key))
    white = set(vertices)
    adjacency: dict[Cell, tuple[Cell, ...]] = {}
    edge_count = 0
    for v in vertices:
        i, j = v
        nbrs = tuple(
            (i + di, j + dj)
            for di, dj in _FOUR_NEIGHBOURS
            if (i + di, j + dj) in white
        )
        adjacency[v] = tuple(sorted(nbrs, key=_row_major_key))
        edge_count += len(nbrs)
    edge_count //= 2
    components = int(ndimage.label(g)[1])
    connected = components == 1
    tree = connected and edge_count == len(vertices) - 1
    return CellGraph(vertices, adjacency, edge_count, tree, connected)


@dataclass(frozen=True)
class ExitSystem:
    top_exits: tuple[Cell, ...]
    bottom_exits: tuple[Cell, ...]
    left_exits: tuple[Cell, ...]
    right_exits: tuple[Cell, ...]
    vertical_pairs: tuple[tuple[Cell, Cell], ...]
    horizontal_pairs: tuple[tuple[Cell, Cell], ...]


def find_exits(obj) -> ExitSystem:
    """Exit cells and exit pairs per the border-alignment definitions.

    A top exit is a white top-row cell whose column also holds a white
    bottom-row cell; the three other kinds are symmetric.  Lists are sorted
    by column (vertical) and by row (horizontal).
    """
    g = white_grid(obj)
    s, m = g.shape
    v_cols = np.nonzero(g[s - 1] & g[0])[0].tolist()
    h_rows = np.nonzero(g[:, 0] & g[:, m - 1])[0].tolist()
    top = tuple((i, s - 1) for i in v_cols)
    bottom = tuple((i, 0) for i in v_cols)
    left = tuple((0, j) for j in h_rows)
    right = tuple((m - 1, j) for j in h_rows)
    return ExitSystem(
        top_exits=top,
        bottom_exits=bottom,
        left_exits=left,
        right_exits=right,
        vertical_pairs=tuple(zip(top, bottom)),
        horizontal_pairs=tuple(zip(left, right)),
    )


@dataclass(frozen=True)
class ValidationReport:
    property1: bool
    property2: bool
    property3: bool
    wild_property1: bool
    wild_property2: bool
    is_labyrinth: bool
    is_wild_labyrinth: bool
    horizontally_blocked: bool
    vertically_blocked: bool
    witnesses: tuple[str, ...]
    exits: ExitSystem = field(repr=False, default=None)


def _find_cycle(graph: CellGraph) -> list[Cell] | None:
    """One cycle in the graph, or None.  Iterative DFS with parent tracking."""
    parent: dict[Cell, Cell | None] = {}
    for root in graph.vertices:
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            v = stack.pop()
            for w in graph.adjacency[v]:
                if w not in parent:
                    parent[w] = v
                    stack.append(w)
                elif parent[v] != w:
                    # back edge v-w closes a cycle; walk both ancestries
                    pv, pw = [v], [w]
                    seen = {v: 0}
                    x = v
                    while parent[x] is not None:
                        x = parent[x]
                        pv.append(x)
                        seen[x] = len(pv) - 1
                    x = w
                    while x not in seen:
                        x = parent[x]
                        pw.append(x)
                    return pw[::-1] + pv[: seen[x]][::-1]
    return None


def validate(obj) -> ValidationReport:
    """Check the labyrinth, wild-labyrinth and blocked properties of a grid."""
    g = white_grid(obj)
    s, m = g.shape
    n_white = int(g.sum())
    n_edges = int((g[1:] & g[:-1]).sum() + (g[:, 1:] & g[:, :-1]).sum())
    components = int(ndimage.label(g)[1])
    connected = components == 1
    property1 = connected and n_edges == n_white - 1

    exits = find_exits(obj)
    property2 = len(exits.vertical_pairs) == 1 and len(exits.horizontal_pairs) == 1
    wild_property2 = len(exits.vertical_pairs) >= 1 and len(exits.horizontal_pairs) >= 1

    corners = {
        "bottom-left": bool(g[0, 0]),
        "bottom-right": bool(g[0, m - 1]),
        "top-left": bool(g[s - 1, 0]),
        "top-right": bool(g[s - 1, m - 1]),
    }
    bad_diagonals = []
    if corners["bottom-left"] and corners["top-right"]:
        bad_diagonals.append(("bottom-left", "top-right"))
    if corners["bottom-right"] and corners["top-left"]:
        bad_diagonals.append(("bottom-right", "top-left"))
    property3 = not bad_diagonals

    witnesses: list[str] = []
    if not connected:
        witnesses.append(f"graph has {components} connected components")
    if connected and n_edges != n_white - 1:
        cycle = _find_cycle(build_graph(obj))
        if cycle is not None:
            witnesses.append("cycle: " + " ".join(str(c) for c in cycle))
        else:
            witnesses.append(f"{n_edges} edges for {n_white} vertices")
    if not property2:
        witnesses.append(
            f"{len(exits.vertical_pairs)} vertical and "
            f"{len(exits.horizontal_pairs)} horizontal exit pairs"
        )
    for a, b in bad_diagonals:
        witnesses.append(f"white corners at {a} and {b}")

    horizontally_blocked = False
    vertically_blocked = False
    if property2:
        (top, _bottom), = exits.vertical_pairs
        (left, _right), = exits.horizontal_pairs
        vertically_blocked = not bool(g[:, top[0]].all())
        horizontally_blocked = not bool(g[left[1], :].all())
    else:
        witnesses.append("blocked predicates inapplicable: no unique exit pair")

    return ValidationReport(
        property1=property1,
        property2=property2,
        property3=property3,
        wild_property1=connected,
        wild_property2=wild_property2,
        is_labyrinth=property1 and property2 and property3,
        is_wild_labyrinth=connected and wild_property2 and property3,
        horizontally_blocked=horizontally_blocked,
        vertically_blocked=vertically_blocked,
        witnesses=tuple(witnesses),
        exits=exits,
    )


def complement(p: Pattern) -> Pattern:
    """Swap white and black on the same grid; an involution."""
    full = {(i, j) for i in range(p.m) for j in range(p.s)}
    black = full - p.white
    if not black:
        raise PatternError("empty complement")
    return Pattern(p.m, p.s, frozenset(black))


def black_cell_graph(obj) -> CellGraph:
    """Graph over the *black* cells with side-or-corner adjacency."""
    g = white_grid(obj)
    b = ~g
    s, m = b.shape
    jj, ii = np.nonzero(b)
    vertices = tuple(sorted(zip(ii.tolist(), jj.tolist()), key=_row_major_key))
    black = set(vertices)
    adjacency: dict[Cell, tuple[Cell, ...]] = {}
    edge_count = 0
    offsets = [(di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1) if (di, dj) != (0, 0)]
    for v in vertices:
        i, j = v
        nbrs = tuple(
            sorted(((i + di, j + dj) for di, dj in offsets if (i + di, j + dj) in black),
                   key=_row_major_key)
        )
        adjacency[v] = nbrs
        edge_count += len(nbrs)
    edge_count //= 2
    structure = np.ones((3, 3), dtype=bool)
    components = int(ndimage.label(b, structure=structure)[1]) if black else 0
    connected = components <= 1
    tree = connected and edge_count == max(len(vertices) - 1, 0)
    return CellGraph(vertices, adjacency, edge_count, tree, connected)
