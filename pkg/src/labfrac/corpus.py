"""Built-in pattern corpus, shipped as pattern files under labfrac/data.

The labyrinth corpus holds nine labyrinth patterns; the wild corpus holds
three wild (non-tree or multi-exit) patterns.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .patterns import Pattern, parse_pattern

LABYRINTH_NAMES = (
    "cross3",
    "laby4a",
    "laby5a",
    "laby4b",
    "laby4c",
    "laby5b",
    "laby4d",
    "laby5c",
    "laby6a",
)

WILD_NAMES = (
    "wild7",
    "wild6",
    "wild9",
)

EXTRA_NAMES = ("laby6a_complement",)

ALL_NAMES = LABYRINTH_NAMES + WILD_NAMES + EXTRA_NAMES


def pattern_text(name: str) -> str:
    return resources.files("labfrac.data").joinpath(f"{name}.pat").read_text()


@lru_cache(maxsize=None)
def load_pattern(name: str) -> Pattern:
    if name not in ALL_NAMES:
        raise KeyError(f"unknown corpus pattern {name!r}")
    return parse_pattern(pattern_text(name))


def labyrinth_corpus() -> dict[str, Pattern]:
    return {name: load_pattern(name) for name in LABYRINTH_NAMES}


def wild_corpus() -> dict[str, Pattern]:
    return {name: load_pattern(name) for name in WILD_NAMES}
