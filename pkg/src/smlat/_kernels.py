"""Stability-scan kernels for the brute-force oracle.

The hot loop tests every candidate matching of a batch for blocking pairs.
Two interchangeable implementations are provided: a numba ``@njit`` kernel
(default when numba imports) and a vectorized pure-numpy fallback.  Set
``SMLAT_NO_NUMBA=1`` to force the numpy path; ``benchmarks/bench_oracle.py``
compares the two.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_wanted() -> bool:
    if os.environ.get("SMLAT_NO_NUMBA", "").strip() not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def stable_mask_numpy(wrank: np.ndarray, frank: np.ndarray,
                      perms: np.ndarray, chunk: int = 8192) -> np.ndarray:
    """Boolean mask over perms: True where the matching has no blocking pair.

    ``perms[i, w]`` is the 0-based firm matched to 0-based worker w.
    """
    total, n = perms.shape
    rows = np.arange(n)
    out = np.empty(total, dtype=bool)
    for start in range(0, total, chunk):
        p = perms[start:start + chunk]
        m = p.shape[0]
        inv = np.empty_like(p)
        np.put_along_axis(inv, p, np.broadcast_to(rows, p.shape), axis=1)
        partner_rank_w = wrank[rows, p]            # (m, n): rank of w's firm
        partner_rank_f = frank[rows, inv]          # (m, n): rank of f's worker
        # block[i, w, f]: w prefers f to its partner and f prefers w to its partner
        worker_side = wrank[None, :, :] < partner_rank_w[:, :, None]
        firm_side = frank.T[None, :, :] < partner_rank_f[:, None, :]
        out[start:start + m] = ~np.any(worker_side & firm_side, axis=(1, 2))
    return out


if _numba_wanted():
    from numba import njit

    @njit(cache=True)
    def _stable_mask_jit(wrank, frank, perms):  # pragma: no cover - jitted
        total, n = perms.shape
        out = np.zeros(total, dtype=np.bool_)
        inv = np.empty(n, dtype=np.int64)
        for i in range(total):
            for w in range(n):
                inv[perms[i, w]] = w
            ok = True
            for w in range(n):
                pr = wrank[w, perms[i, w]]
                for f in range(n):
                    if wrank[w, f] < pr and frank[f, w] < frank[f, inv[f]]:
                        ok = False
                        break
                if not ok:
                    break
            out[i] = ok
        return out

    def stable_mask_numba(wrank, frank, perms):
        return _stable_mask_jit(np.ascontiguousarray(wrank),
                                np.ascontiguousarray(frank),
                                np.ascontiguousarray(perms))

    stable_mask = stable_mask_numba
    BACKEND = "numba"
else:
    stable_mask_numba = None
    stable_mask = stable_mask_numpy
    BACKEND = "numpy"
