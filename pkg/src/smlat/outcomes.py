"""Sentinel outcome values for the intersection engines."""

from __future__ import annotations


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self):
        return self._name


#: No matching stable under every source instance exists (the engines proved it).
NO_MATCH = _Sentinel("NoMatch")

#: Rooms disagreed; the engine makes no claim.  Unreachable for p <= 1 inputs,
#: representable so research mode can report it on wilder families.
NO_IDEA = _Sentinel("NoIdea")
