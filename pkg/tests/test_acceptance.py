"""End-to-end acceptance checks.

Each test prints a single "ACCEPTANCE <k>: PASS" (or FAIL) line so the suite
doubles as a checklist.  Tolerances are exact unless a runtime bound or an
explicit epsilon is stated in the test body.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from labfrac.compose import LabyrinthSequence, TailRule, build_level
from labfrac.corpus import LABYRINTH_NAMES, load_pattern
from labfrac.geometry import (
    arc_approximation,
    dimension_estimate,
    disconnectedness_probe,
    exit_membership_counts,
    exit_point,
)
from labfrac.paths import (
    KINDS,
    KIND_ENDPOINT_SIDES,
    classify_path,
    exit_cell,
    matrix_product,
    path_lengths,
    path_matrix,
    tree_path,
    wild_containment_probe,
)
from labfrac.patterns import build_graph, complement, find_exits, validate
from labfrac.render import RenderSpec, render_pgm, render_svg

M1 = (
    (2, 0, 1, 1, 1, 1),
    (0, 2, 1, 1, 1, 1),
    (0, 1, 3, 0, 2, 0),
    (1, 1, 1, 2, 1, 1),
    (1, 0, 0, 0, 1, 0),
    (1, 1, 1, 0, 1, 1),
)

M2 = (
    (3, 0, 1, 1, 1, 1),
    (1, 2, 1, 2, 1, 2),
    (2, 1, 1, 3, 0, 3),
    (1, 0, 0, 3, 0, 2),
    (2, 1, 1, 0, 2, 0),
    (0, 1, 0, 1, 0, 2),
)

M1_M2 = (
    (11, 3, 4, 9, 4, 9),
    (7, 7, 4, 11, 4, 11),
    (11, 7, 6, 11, 5, 11),
    (10, 5, 4, 13, 4, 12),
    (5, 1, 2, 1, 3, 1),
    (8, 5, 4, 7, 4, 8),
)


def _report(num: int, check) -> None:
    try:
        check()
    except BaseException:
        print(f"ACCEPTANCE {num}: FAIL")
        raise
    print(f"ACCEPTANCE {num}: PASS")


def _self_seq(name: str) -> LabyrinthSequence:
    return LabyrinthSequence((load_pattern(name),), TailRule.REPEAT_LAST)


def test_acceptance_1_golden_matrices(pair_seq):
    def check():
        start = time.perf_counter()
        assert path_matrix(load_pattern("laby4a")).rows == M1
        assert path_matrix(load_pattern("laby5a")).rows == M2
        assert matrix_product(pair_seq, 2).rows == M1_M2
        assert time.perf_counter() - start < 1.0

    _report(1, check)


def test_acceptance_2_matrix_vs_brute_force():
    def check():
        start = time.perf_counter()
        budget = 10**7
        checked = 0
        assert len(LABYRINTH_NAMES) >= 8
        for name in LABYRINTH_NAMES:
            seq = _self_seq(name)
            for n in (1, 2, 3):
                if seq.width_product(n) * seq.height_product(n) > budget:
                    break
                lvl = build_level(seq, n, budget=budget)
                g = build_graph(lvl)
                matrix = matrix_product(seq, n)
                for kind in KINDS:
                    sa, sb = KIND_ENDPOINT_SIDES[kind]
                    cells = tree_path(g, exit_cell(lvl, sa), exit_cell(lvl, sb))
                    counts = classify_path(lvl, cells, kind).class_counts()
                    assert counts == matrix.rows[KINDS.index(kind)], (name, kind, n)
                    checked += 1
        assert checked >= 8 * 3 * 6
        assert time.perf_counter() - start < 60.0

    _report(2, check)


def test_acceptance_3_path_lengths(pair_seq):
    def check():
        assert path_lengths(matrix_product(pair_seq, 1)) == (6, 6, 6, 7, 2, 5)
        assert path_lengths(matrix_product(pair_seq, 2)) == \
            (40, 44, 51, 48, 13, 36)

    _report(3, check)


def test_acceptance_4_exit_coordinates(boundary1_seq, boundary2_seq):
    def check():
        assert exit_point(boundary1_seq, "left") == (0, Fraction(1, 2))
        assert exit_point(boundary2_seq, "left") == \
            (0, Fraction(1, 2) + Fraction(1, 16))

    _report(4, check)


def test_acceptance_5_exit_membership_counts(boundary1_seq, boundary2_seq):
    def check():
        assert exit_membership_counts(boundary1_seq, "left", 4) == [2, 1, 1, 1]
        assert exit_membership_counts(boundary2_seq, "left", 4) == [1, 2, 1, 1]

    _report(5, check)


def test_acceptance_6_levels_stay_labyrinths():
    def check():
        rng = random.Random(20260823)
        budget = 10**7
        names = list(LABYRINTH_NAMES)
        for _ in range(100):
            pats = tuple(load_pattern(rng.choice(names)) for _ in range(3))
            seq = LabyrinthSequence(pats)
            for n in (1, 2, 3):
                if seq.width_product(n) * seq.height_product(n) > budget:
                    break
                lvl = build_level(seq, n, budget=budget)
                g = build_graph(lvl)
                exits = find_exits(lvl)
                assert g.is_tree
                assert len(exits.vertical_pairs) == 1
                assert len(exits.horizontal_pairs) == 1

    _report(6, check)


def test_acceptance_7_arc_length_bound(trio_seq, boundary1_seq, boundary2_seq, plus_seq):
    def check():
        # arc_approximation also hard-asserts this bound internally
        for seq in (trio_seq, boundary1_seq, boundary2_seq, plus_seq):
            for n in (1, 2, 3):
                for kind in KINDS:
                    arc = arc_approximation(seq, n, kind)
                    k = len(arc.cells)
                    assert arc.euclidean_length >= arc.lower_bound
                    assert arc.euclidean_length >= \
                        Fraction(k - 1, 2 * seq.width_product(n))

    _report(7, check)


def test_acceptance_8_dimension_sanity(plus_seq):
    def check():
        start = time.perf_counter()
        est = dimension_estimate(plus_seq, 40, "A")
        assert all(r.ratio == 1.0 for r in est.per_level)
        seq = _self_seq("laby4a")
        ratios = [r.ratio for r in dimension_estimate(seq, 30, "A").per_level]
        diffs = [abs(b - a) for a, b in zip(ratios, ratios[1:])]
        assert diffs[-1] < 1e-3
        assert diffs[-10:] == sorted(diffs[-10:], reverse=True)
        assert time.perf_counter() - start < 5.0

    _report(8, check)


def test_acceptance_9_wild_probe():
    def check():
        assert not wild_containment_probe(load_pattern("wild9")).contained
        for name in LABYRINTH_NAMES:
            assert wild_containment_probe(load_pattern(name)).contained, name

    _report(9, check)


def test_acceptance_10_disconnectedness(plus):
    def check():
        seq = LabyrinthSequence((complement(plus),), TailRule.REPEAT_LAST)
        for r in disconnectedness_probe(seq, 5):
            assert r.component_count == 4**r.n
            assert r.max_diameter_normalized == Fraction(1, 3**r.n)

    _report(10, check)


def test_acceptance_11_render_determinism(pair_seq):
    def check():
        lvl = build_level(pair_seq, 2)
        spec = RenderSpec(cell_pixels=5)
        assert render_svg(lvl, spec) == render_svg(lvl, spec)
        first, second = render_pgm(lvl, spec), render_pgm(lvl, spec)
        assert first == second
        body = first.split(b"\n", 3)[3]
        assert body.count(b"\xff") == lvl.white_count * 5 * 5

    _report(11, check)
