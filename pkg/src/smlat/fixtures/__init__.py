"""Bundled counterexample instances, shipped as text files in the CLI format."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..core import Instance, parse_instance

#: fixture pairs (a, b) by short name
PAIRS = {
    "n4": ("a4", "b4"),          # (2,2): intersection not a sublattice
    "n5-firms": ("a5a", "b5a"),  # (0,2): difference not a semi-sublattice
    "n5-both": ("a5b", "b5b"),   # (1,1): difference not a semi-sublattice
    "n6": ("a6", "b6"),          # (2,2): sublattice with twisted orders
}

NAMES = sorted({name for pair in PAIRS.values() for name in pair})


@lru_cache(maxsize=None)
def load(name: str) -> Instance:
    """Load a bundled instance by short name (e.g. ``a4``)."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {NAMES}")
    text = resources.files("smlat.fixtures").joinpath(f"{name}.txt").read_text()
    return parse_instance(text, name=name)


def load_pair(pair: str) -> tuple[Instance, Instance]:
    a, b = PAIRS[pair]
    return load(a), load(b)
