from __future__ import annotations

from pathlib import Path

import pytest

from labfrac.compose import LabyrinthSequence, TailRule
from labfrac.corpus import load_pattern

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def plus():
    return load_pattern("cross3")


@pytest.fixture
def plus_seq(plus):
    return LabyrinthSequence((plus,), TailRule.REPEAT_LAST)


@pytest.fixture
def trio_seq():
    return LabyrinthSequence(
        (load_pattern("laby4a"), load_pattern("laby5a"), load_pattern("laby4b")),
        TailRule.REPEAT_LAST,
    )


@pytest.fixture
def pair_seq():
    return LabyrinthSequence(
        (load_pattern("laby4a"), load_pattern("laby5a")), TailRule.REPEAT_LAST
    )


@pytest.fixture
def boundary1_seq():
    return LabyrinthSequence(
        (load_pattern("laby4c"), load_pattern("laby5b")), TailRule.REPEAT_LAST
    )


@pytest.fixture
def boundary2_seq():
    return LabyrinthSequence(
        (load_pattern("laby4c"), load_pattern("laby4d"), load_pattern("laby5c")),
        TailRule.REPEAT_LAST,
    )
