"""Exit-to-exit paths, square classification, and path-matrix algebra.

The six exit-pair path kinds are, in fixed order:

    A  top <-> bottom       D  right <-> bottom
    B  left <-> right       E  bottom <-> left
    C  top <-> right        F  left <-> top

A square on a path is classed by the directions of its two neighbours within
the path (exits get a phantom neighbour outside their exit side): A for
vertical, B for horizontal, and C, D, E, F for the four corner turns, in the
same pairing as the path kinds above.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .compose import BudgetError, DEFAULT_CELL_BUDGET, LabyrinthSequence, substitute
from .patterns import (
    Cell,
    CellGraph,
    Pattern,
    build_graph,
    find_exits,
    validate,
)

KINDS = "ABCDEF"

# unit direction vectors
_UP, _DOWN, _LEFT, _RIGHT = (0, 1), (0, -1), (-1, 0), (1, 0)

_SIDE_DIR = {"top": _UP, "bottom": _DOWN, "left": _LEFT, "right": _RIGHT}

KIND_ENDPOINT_SIDES = {
    "A": ("top", "bottom"),
    "B": ("left", "right"),
    "C": ("top", "right"),
    "D": ("right", "bottom"),
    "E": ("bottom", "left"),
    "F": ("left", "top"),
}

_CLASS_OF_DIRS = {
    frozenset((_UP, _DOWN)): "A",
    frozenset((_LEFT, _RIGHT)): "B",
    frozenset((_UP, _RIGHT)): "C",
    frozenset((_RIGHT, _DOWN)): "D",
    frozenset((_DOWN, _LEFT)): "E",
    frozenset((_LEFT, _UP)): "F",
}


class PathError(ValueError):
    """A path query violates its preconditions."""


@dataclass(frozen=True)
class CellPath:
    """An exit-to-exit cell path together with its per-cell square classes."""

    kind: str
    cells: tuple[Cell, ...]
    classes: tuple[str, ...]

    def class_counts(self) -> tuple[int, ...]:
        """Counts of A..F squares, in kind order."""
        return tuple(self.classes.count(k) for k in KINDS)

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class PathMatrix:
    """6x6 nonnegative integer matrix; entry (x, y) counts the y-squares in
    the x-path.  Rows and columns are ordered A..F."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != 6 or any(len(r) != 6 for r in self.rows):
            raise ValueError("path matrix must be 6x6")
        if any(e < 0 for r in self.rows for e in r):
            raise ValueError("path matrix entries must be nonnegative")

    @classmethod
    def identity(cls) -> "PathMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(6)) for i in range(6)))

    def __matmul__(self, other: "PathMatrix") -> "PathMatrix":
        rows = tuple(
            tuple(sum(a * b for a, b in zip(row, col))
                  for col in zip(*other.rows))
            for row in self.rows
        )
        return PathMatrix(rows)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def entry(self, path_kind: str, square_kind: str) -> int:
        return self.rows[KINDS.index(path_kind)][KINDS.index(square_kind)]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(e) for e in r) for r in self.rows) + "\n"

    def to_records(self) -> list[tuple[str, str, int]]:
        return [
            (KINDS[x], KINDS[y], self.rows[x][y])
            for x in range(6)
            for y in range(6)
        ]

    @classmethod
    def from_records(cls, records) -> "PathMatrix":
        rows = [[0] * 6 for _ in range(6)]
        for x, y, count in records:
            rows[KINDS.index(x)][KINDS.index(y)] = int(count)
        return cls(tuple(tuple(r) for r in rows))


def tree_path(g: CellGraph, src: Cell, dst: Cell) -> tuple[Cell, ...]:
    """The unique simple path between two vertices of a tree graph."""
    if not g.is_tree:
        raise PathError("graph is not a tree; use shortest_path")
    return _bfs_path(g, src, dst)


def shortest_path(g: CellGraph, src: Cell, dst: Cell) -> tuple[Cell, ...]:
    """BFS shortest path; ties broken toward the lexicographically smallest
    cell sequence under row-major (bottom-left) order."""
    if src not in g.adjacency or dst not in g.adjacency:
        raise PathError(f"endpoint not in graph: {src} or {dst}")
    dist = {dst: 0}
    queue = deque([dst])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if src not in dist:
        raise PathError(f"no path between {src} and {dst}")
    path = [src]
    cur = src
    while cur != dst:
        cur = min(
            (w for w in g.adjacency[cur] if dist.get(w, -1) == dist[cur] - 1),
            key=lambda c: (c[1], c[0]),
        )
        path.append(cur)
    return tuple(path)


def _bfs_path(g: CellGraph, src: Cell, dst: Cell) -> tuple[Cell, ...]:
    if src not in g.adjacency or dst not in g.adjacency:
        raise PathError(f"endpoint not in graph: {src} or {dst}")
    parent: dict[Cell, Cell | None] = {src: None}
    queue = deque([src])
    while queue and dst not in parent:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    if dst not in parent:
        raise PathError(f"no path between {src} and {dst}")
    path = [dst]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def exit_cell(obj, side: str) -> Cell:
    """The unique exit cell on the given side; requires exactly one pair in
    that orientation."""
    exits = find_exits(obj)
    lists = {
        "top": exits.top_exits,
        "bottom": exits.bottom_exits,
        "left": exits.left_exits,
        "right": exits.right_exits,
    }
    cells = lists[side]
    if len(cells) != 1:
        raise PathError(f"expected exactly one {side} exit, found {len(cells)}")
    return cells[0]


def _kind_endpoints(obj, kind: str) -> tuple[Cell, Cell]:
    sa, sb = KIND_ENDPOINT_SIDES[kind]
    return exit_cell(obj, sa), exit_cell(obj, sb)


def classify_path(obj, cells, kind: str) -> CellPath:
    """Assign a square class to every cell of an exit-to-exit path."""
    if kind not in KINDS:
        raise PathError(f"unknown path kind {kind!r}")
    cells = tuple(cells)
    if not cells:
        raise PathError("empty path")
    start, end = _kind_endpoints(obj, kind)
    if cells[0] != start or cells[-1] != end:
        raise PathError(
            f"{kind}-path endpoints must be {start} and {end}, "
            f"got {cells[0]} and {cells[-1]}"
        )
    sa, sb = KIND_ENDPOINT_SIDES[kind]
    classes = []
    for idx, (i, j) in enumerate(cells):
        dirs = set()
        if idx == 0:
            dirs.add(_SIDE_DIR[sa])
        else:
            pi, pj = cells[idx - 1]
            d = (pi - i, pj - j)
            if abs(d[0]) + abs(d[1]) != 1:
                raise PathError(f"cells {cells[idx - 1]} and {cells[idx]} not adjacent")
            dirs.add(d)
        if idx == len(cells) - 1:
            dirs.add(_SIDE_DIR[sb])
        else:
            ni, nj = cells[idx + 1]
            dirs.add((ni - i, nj - j))
        key = frozenset(dirs)
        if key not in _CLASS_OF_DIRS:
            raise PathError(f"degenerate neighbour directions at cell {(i, j)}")
        classes.append(_CLASS_OF_DIRS[key])
    return CellPath(kind, cells, tuple(classes))


@lru_cache(maxsize=512)
def path_matrix(p: Pattern) -> PathMatrix:
    """The 6x6 path matrix of a labyrinth pattern."""
    report = validate(p)
    if not report.is_labyrinth:
        raise PathError(
            "pattern is not a labyrinth pattern: " + "; ".join(report.witnesses)
        )
    g = build_graph(p)
    rows = []
    for kind in KINDS:
        src, dst = _kind_endpoints(p, kind)
        cp = classify_path(p, tree_path(g, src, dst), kind)
        rows.append(cp.class_counts())
    return PathMatrix(tuple(rows))


def matrix_product(seq: LabyrinthSequence, n: int) -> PathMatrix:
    """M(n): the exact product of the level 1..n path matrices."""
    if n < 0:
        raise ValueError("level must be >= 0")
    out = PathMatrix.identity()
    for k in range(1, n + 1):
        out = out @ path_matrix(seq.pattern(k))
    return out


def path_lengths(matrix: PathMatrix) -> tuple[int, ...]:
    """The six path lengths (number of squares), as row sums in kind order."""
    return matrix.row_sums()


@lru_cache(maxsize=512)
def _exit_paths_by_sides(p: Pattern):
    """For each unordered side pair, the exit-to-exit path and its oriented
    endpoint sides."""
    g = build_graph(p)
    table = {}
    for kind in KINDS:
        sa, sb = KIND_ENDPOINT_SIDES[kind]
        cells = tree_path(g, exit_cell(p, sa), exit_cell(p, sb))
        table[frozenset((sa, sb))] = (cells, sa, sb)
    return table


_DIR_SIDE = {v: k for k, v in _SIDE_DIR.items()}


def _flow_sides(cells, kind: str) -> list[tuple[str, str]]:
    """Per cell, the side the path enters through and the side it leaves by."""
    sa, sb = KIND_ENDPOINT_SIDES[kind]
    out = []
    for idx, (i, j) in enumerate(cells):
        if idx == 0:
            entry = sa
        else:
            pi, pj = cells[idx - 1]
            entry = _DIR_SIDE[(pi - i, pj - j)]
        if idx == len(cells) - 1:
            exit_ = sb
        else:
            ni, nj = cells[idx + 1]
            exit_ = _DIR_SIDE[(ni - i, nj - j)]
        out.append((entry, exit_))
    return out


def substituted_path(seq: LabyrinthSequence, n: int, kind: str,
                     budget: int = DEFAULT_CELL_BUDGET) -> CellPath:
    """The level-n exit path built by iterated substitution: each classed
    square of the coarse path is replaced by the matching path of the next
    pattern.  Equals the unique tree path of the composed graph."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if kind not in KINDS:
        raise PathError(f"unknown path kind {kind!r}")
    p1 = seq.pattern(1)
    g1 = build_graph(p1)
    src, dst = _kind_endpoints(p1, kind)
    cells: tuple[Cell, ...] = tree_path(g1, src, dst)
    m_tot, s_tot = p1.m, p1.s
    for k in range(2, n + 1):
        pat = seq.pattern(k)
        m_tot *= pat.m
        s_tot *= pat.s
        if m_tot * s_tot > budget:
            raise BudgetError(
                f"level {k} grid {m_tot}x{s_tot} exceeds budget of {budget}"
            )
        table = _exit_paths_by_sides(pat)
        refined: list[Cell] = []
        for (ci, cj), (entry, exit_) in zip(cells, _flow_sides(cells, kind)):
            fine, first_side, _last = table[frozenset((entry, exit_))]
            if first_side != entry:
                fine = tuple(reversed(fine))
            refined.extend((ci * pat.m + x, cj * pat.s + y) for x, y in fine)
        cells = tuple(refined)
    # classes recomputed from the raw cell list, with the kind's phantoms
    sa, sb = KIND_ENDPOINT_SIDES[kind]
    classes = []
    for idx, (i, j) in enumerate(cells):
        dirs = set()
        if idx == 0:
            dirs.add(_SIDE_DIR[sa])
        else:
            pi, pj = cells[idx - 1]
            dirs.add((pi - i, pj - j))
        if idx == len(cells) - 1:
            dirs.add(_SIDE_DIR[sb])
        else:
            ni, nj = cells[idx + 1]
            dirs.add((ni - i, nj - j))
        classes.append(_CLASS_OF_DIRS[frozenset(dirs)])
    return CellPath(kind, cells, tuple(classes))


@dataclass(frozen=True)
class WildProbeResult:
    """Whether the level-2 shortest exit path refines the level-1 one."""

    contained: bool
    level1_path: tuple[Cell, ...]
    level2_path: tuple[Cell, ...]
    offending: tuple[Cell, ...]  # level-2 cells outside the level-1 path cells


def wild_containment_probe(p: Pattern,
                           budget: int = DEFAULT_CELL_BUDGET) -> WildProbeResult:
    """Compare the shortest top-to-bottom paths of levels 1 and 2 of the
    self-similar refinement of a wild labyrinth pattern.

    The designated vertical exit pair is the one with the smallest column at
    each level.
    """
    report = validate(p)
    if not report.is_wild_labyrinth:
        raise PathError(
            "pattern is not a wild labyrinth pattern: " + "; ".join(report.witnesses)
        )
    exits1 = find_exits(p)
    if not exits1.vertical_pairs:
        raise PathError("no vertical exit pair")
    top1, bottom1 = exits1.vertical_pairs[0]
    path1 = shortest_path(build_graph(p), top1, bottom1)

    level2 = substitute(p, p, budget=budget)
    exits2 = find_exits(level2)
    top2, bottom2 = exits2.vertical_pairs[0]
    path2 = shortest_path(build_graph(level2), top2, bottom2)

    coarse = set(path1)
    offending = tuple(
        (i, j) for i, j in path2 if (i // p.m, j // p.s) not in coarse
    )
    return WildProbeResult(not offending, path1, path2, offending)
