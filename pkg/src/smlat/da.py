"""Classic deferred acceptance for a single instance, both proposing sides.

Rounds are synchronous and agents act in ascending id order, so traces
(rejection logs) are reproducible; the returned matching is the usual
proposer-optimal one either way.
"""

from __future__ import annotations

from .core import Instance, Matching


def _propose_rounds(n, proposer_prefs, receiver_rank):
    """Synchronous proposer-side DA on 0-based rank tables.

    Returns (partner_of_proposer, rejections) where rejections is the ordered
    list of (round, proposer, receiver) pairs crossed off, all ids 1-based.
    """
    next_choice = [0] * n            # pointer into each proposer's list
    held_by = [0] * n                # receiver -> proposer currently held (0 = none)
    rejections = []
    for rnd in range(1, n * n + 2):
        proposals: dict[int, list[int]] = {}
        for p in range(1, n + 1):
            r = proposer_prefs[p - 1][next_choice[p - 1]]
            proposals.setdefault(r, []).append(p)
        all_held = True
        for r, props in sorted(proposals.items()):
            best = min(props, key=lambda p: receiver_rank[r - 1][p - 1])
            if held_by[r - 1] and held_by[r - 1] not in props:
                # held proposer always re-proposes to r; holding is encoded
                # by its pointer still aiming at r
                raise AssertionError("held proposer failed to re-propose")
            held_by[r - 1] = best
            for p in props:
                if p != best:
                    rejections.append((rnd, p, r))
                    next_choice[p - 1] += 1
                    all_held = False
        if all_held:
            partner = [0] * n
            for r in range(1, n + 1):
                partner[held_by[r - 1] - 1] = r
            return partner, rejections
    raise AssertionError("DA failed to terminate within n^2 rounds")


def run_worker_da(inst: Instance) -> tuple[Matching, list[tuple[int, int, int]]]:
    """Worker-proposing DA; returns the matching and its rejection log."""
    partner, rejections = _propose_rounds(inst.n, inst.worker_prefs, inst.firm_rank)
    return Matching(partner), rejections


def run_firm_da(inst: Instance) -> tuple[Matching, list[tuple[int, int, int]]]:
    """Firm-proposing DA; rejection log entries are (round, firm, worker)."""
    partner, rejections = _propose_rounds(inst.n, inst.firm_prefs, inst.worker_rank)
    firms = [0] * inst.n
    for f, w in enumerate(partner, start=1):
        firms[w - 1] = f
    return Matching(firms), rejections


def worker_da(inst: Instance) -> Matching:
    """The worker-optimal stable matching."""
    return run_worker_da(inst)[0]


def firm_da(inst: Instance) -> Matching:
    """The firm-optimal (worker-pessimal) stable matching."""
    return run_firm_da(inst)[0]
