"""Brute-force stable-set oracle: scan all n! perfect matchings.

Desk-scale verification backstop for every engine in the package.  The cap
(default 8, override via ``SMLAT_ORACLE_CAP`` or the ``cap`` argument) keeps
accidental blowups out; 8! = 40320 candidates per call is the intended
worst case.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

from . import _kernels
from .core import Instance, Matching
from .errors import CapExceeded

DEFAULT_CAP = 8

_perm_cache: dict[int, np.ndarray] = {}


def _all_perms(n: int) -> np.ndarray:
    if n not in _perm_cache:
        _perm_cache[n] = np.array(list(itertools.permutations(range(n))),
                                  dtype=np.int64)
    return _perm_cache[n]


def oracle_cap() -> int:
    env = os.environ.get("SMLAT_ORACLE_CAP", "").strip()
    return int(env) if env else DEFAULT_CAP


@lru_cache(maxsize=4096)
def _stable_set_cached(inst: Instance, cap: int) -> frozenset[Matching]:
    if inst.n > cap:
        raise CapExceeded(f"n={inst.n} exceeds oracle cap {cap}")
    wrank = np.array(inst.worker_rank, dtype=np.int64)
    frank = np.array(inst.firm_rank, dtype=np.int64)
    perms = _all_perms(inst.n)
    mask = _kernels.stable_mask(wrank, frank, perms)
    return frozenset(Matching([int(f) + 1 for f in row])
                     for row in perms[mask])


def enumerate_stable_bruteforce(inst: Instance, cap: int | None = None) -> frozenset[Matching]:
    """Exactly the stable matchings of inst, by exhaustive scan."""
    return _stable_set_cached(inst, oracle_cap() if cap is None else cap)


def stable_intersection(instances, cap: int | None = None) -> frozenset[Matching]:
    """Matchings stable under every instance of the family."""
    sets = [enumerate_stable_bruteforce(inst, cap) for inst in instances]
    out = sets[0]
    for s in sets[1:]:
        out &= s
    return out
