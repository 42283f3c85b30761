from __future__ import annotations

import random
from collections import deque

import numpy as np
import pytest

from conftest import GOLDEN_DIR
from labfrac.compose import (
    BudgetError,
    LabyrinthSequence,
    ManifestError,
    TailRule,
    black_border_report,
    build_level,
    level_is_labyrinth,
    parse_manifest,
    substitute,
)
from labfrac.corpus import LABYRINTH_NAMES, load_pattern, pattern_text
from labfrac.patterns import Pattern, format_pattern, parse_pattern


class TestSubstitute:
    def test_level2_golden_grid(self):
        lvl = substitute(load_pattern("laby4a"), load_pattern("laby5a"))
        golden = parse_pattern((GOLDEN_DIR / "laby_pair_level2.pat").read_text())
        assert (lvl.m, lvl.s) == (20, 20)
        assert lvl.white_cells() == golden.white

    def test_plus_squared(self, plus):
        lvl = substitute(plus, plus)
        assert (lvl.m, lvl.s) == (9, 9)
        assert lvl.white_count == 25

    def test_identity_substitution(self):
        p = load_pattern("laby4a")
        unit = Pattern(1, 1, frozenset({(0, 0)}))
        assert substitute(p, unit).white_cells() == p.white

    def test_budget_is_enforced(self, plus):
        with pytest.raises(BudgetError):
            substitute(plus, plus, budget=50)


class TestBuildLevel:
    def test_laby_pair_level2(self, pair_seq):
        lvl = build_level(pair_seq, 2)
        assert (lvl.m, lvl.s) == (20, 20)
        assert lvl.white_count == 9 * 14 == 126

    def test_level_zero_is_the_unit_square(self, trio_seq):
        lvl = build_level(trio_seq, 0)
        assert (lvl.m, lvl.s, lvl.white_count) == (1, 1, 1)

    def test_plus_cubed(self, plus_seq):
        lvl = build_level(plus_seq, 3)
        assert (lvl.m, lvl.s) == (27, 27)
        assert lvl.white_count == 125

    def test_white_count_product_rule(self):
        rng = random.Random(3)
        names = list(LABYRINTH_NAMES)
        for _ in range(10):
            pats = tuple(load_pattern(rng.choice(names)) for _ in range(3))
            seq = LabyrinthSequence(pats)
            lvl = build_level(seq, 3)
            expected = 1
            for p in pats:
                expected *= len(p.white)
            assert lvl.white_count == expected

    def test_bracketing_invariance(self, plus):
        a2 = load_pattern("laby5a")
        a1 = load_pattern("laby4a")
        left = substitute(substitute(a1, a2), plus)
        inner = substitute(a2, plus)
        right = substitute(a1, inner.as_pattern())
        assert np.array_equal(left.grid, right.grid)

    def test_finite_tail_runs_out(self):
        seq = LabyrinthSequence((load_pattern("cross3"),), TailRule.FINITE)
        with pytest.raises(IndexError):
            build_level(seq, 2)

    def test_cycle_tail(self):
        a1, a2 = load_pattern("laby4a"), load_pattern("laby5a")
        seq = LabyrinthSequence((a1, a2), TailRule.CYCLE)
        assert seq.pattern(3) == a1
        assert seq.pattern(4) == a2
        assert seq.width_product(4) == 400

    def test_cumulative_widths_beat_powers_of_two(self, trio_seq):
        for n in range(1, 30):
            assert trio_seq.width_product(n) > 2**n


class TestLevelValidation:
    def test_laby_pair_level2_is_a_labyrinth(self, pair_seq):
        assert level_is_labyrinth(pair_seq, 2).is_labyrinth

    def test_plus_level4_is_a_labyrinth(self, plus_seq):
        assert level_is_labyrinth(plus_seq, 4).is_labyrinth

    def test_non_labyrinth_pattern_yields_witnesses(self):
        bad = Pattern(3, 3, frozenset({(0, 0), (2, 2), (1, 1)}))
        seq = LabyrinthSequence((bad,), TailRule.REPEAT_LAST)
        report = level_is_labyrinth(seq, 1)
        assert not report.is_labyrinth
        assert report.witnesses

    def test_random_labyrinth_levels_stay_labyrinths(self):
        rng = random.Random(20240812)
        names = list(LABYRINTH_NAMES)
        for _ in range(20):
            pats = tuple(load_pattern(rng.choice(names)) for _ in range(3))
            seq = LabyrinthSequence(pats)
            for n in (1, 2, 3):
                assert level_is_labyrinth(seq, n).is_labyrinth

    def test_translation_between_refined_cells(self, pair_seq):
        # the white sub-cells of any two level-n white cells coincide as
        # translated sets, one level deeper
        for n in (1, 2):
            base = build_level(pair_seq, n)
            nxt = pair_seq.pattern(n + 1)
            fine = build_level(pair_seq, n + 1)
            cells = sorted(base.white_cells())
            blocks = []
            for (i, j) in cells[:8]:
                block = fine.grid[j * nxt.s:(j + 1) * nxt.s,
                                  i * nxt.m:(i + 1) * nxt.m]
                blocks.append(block)
            for block in blocks[1:]:
                assert np.array_equal(block, blocks[0])


def _flood_reaches_border(grid: np.ndarray) -> bool:
    # independent 8-connectivity flood fill over the black cells
    s, m = grid.shape
    black = ~grid
    seen = np.zeros_like(black)
    for j0 in range(s):
        for i0 in range(m):
            if black[j0, i0] and not seen[j0, i0]:
                queue = deque([(i0, j0)])
                seen[j0, i0] = True
                touches = False
                while queue:
                    i, j = queue.popleft()
                    if i in (0, m - 1) or j in (0, s - 1):
                        touches = True
                    for di in (-1, 0, 1):
                        for dj in (-1, 0, 1):
                            ni, nj = i + di, j + dj
                            if (0 <= ni < m and 0 <= nj < s
                                    and black[nj, ni] and not seen[nj, ni]):
                                seen[nj, ni] = True
                                queue.append((ni, nj))
                if not touches:
                    return False
    return True


class TestBlackBorderReport:
    def test_laby4a_level1(self):
        seq = LabyrinthSequence((load_pattern("laby4a"),), TailRule.REPEAT_LAST)
        assert black_border_report(seq, 1).all_reach_border

    def test_all_white_is_vacuously_true(self):
        unit = Pattern(1, 1, frozenset({(0, 0)}))
        seq = LabyrinthSequence((unit,), TailRule.REPEAT_LAST)
        report = black_border_report(seq, 2)
        assert report.all_reach_border
        assert report.component_count == 0

    def test_laby_pair_level2_against_flood_fill(self, pair_seq):
        report = black_border_report(pair_seq, 2)
        assert report.all_reach_border
        assert _flood_reaches_border(build_level(pair_seq, 2).grid)

    def test_corpus_levels(self):
        for name in LABYRINTH_NAMES:
            seq = LabyrinthSequence((load_pattern(name),), TailRule.REPEAT_LAST)
            for n in (1, 2, 3):
                assert black_border_report(seq, n).all_reach_border, (name, n)

    def test_stranded_component_is_reported(self):
        # a black cell fully enclosed by white cannot reach the border
        p = parse_pattern("pattern 3 3\n...\n.#.\n...\n")
        seq = LabyrinthSequence((p,), TailRule.REPEAT_LAST)
        report = black_border_report(seq, 1)
        assert not report.all_reach_border
        assert report.stranded == ((1, 1),)


class TestManifest:
    def test_roundtrip(self, tmp_path):
        (tmp_path / "a.pat").write_text(pattern_text("laby4a"))
        (tmp_path / "b.pat").write_text(pattern_text("laby5a"))
        text = "# demo\nsequence cycle\na.pat\nb.pat\n"
        seq = parse_manifest(text, base_dir=tmp_path)
        assert seq.tail is TailRule.CYCLE
        assert seq.patterns == (load_pattern("laby4a"), load_pattern("laby5a"))

    def test_bad_header(self):
        with pytest.raises(ManifestError):
            parse_manifest("seq repeat-last\n")

    def test_unknown_tail(self):
        with pytest.raises(ManifestError, match="tail"):
            parse_manifest("sequence forever\nx.pat\n")

    def test_missing_pattern_file(self, tmp_path):
        with pytest.raises(ManifestError, match="cannot read"):
            parse_manifest("sequence finite\nnope.pat\n", base_dir=tmp_path)

    def test_composed_level_text_roundtrip(self, pair_seq):
        lvl = build_level(pair_seq, 2)
        again = parse_pattern(format_pattern(lvl))
        assert again.white == lvl.white_cells()
