"""Multi-room deferred acceptance for families where one worker's list may vary.

One DA room runs per instance; proposals follow each room's own order while
crossed-off pairs are shared, so a rejection in any room applies everywhere.
The worker-proposing run returns the worker-optimal matching of the
intersection, the firm-proposing run (with the preemptive rejections below
the receiver's per-room bar) the firm-optimal one; NO_MATCH certifies an
empty intersection.

Every crossing the engine makes is sound: the pair provably belongs to no
matching stable under all instances.  Three details carry that guarantee:

* Lockstep rounds: all rooms propose and accept against the same crossed
  state, then the round's rejections are synchronized at once.
* Best-ever bars: a receiver accepts a proposal only if it beats everything
  that room ever offered it.  Cross-room crossings can remove a receiver's
  current holder, and accepting a fresh, worse proposal afterwards would
  break the monotonicity the optimality argument needs.
* Fixpoint escapes: with rejections flowing across rooms, the rounds can
  reach a rejection-free state that is not a common stable matching (rooms
  can disagree, or agree on a matching one instance blocks, even when the
  intersection is nonempty).  Each such state yields another provably
  excluded pair -- the blocked receiver, or the disagreeing unchanged
  receiver, cannot keep its current partner in any common stable matching --
  so the engine crosses it and resumes instead of stopping early.

Outcomes: Matched (a verified member of the intersection, optimal for the
proposing side), NO_MATCH (empty intersection), or NO_IDEA (research mode
only: a disagreeing fixpoint on a p >= 2 family with no sound escape).
"""

from __future__ import annotations

from typing import Sequence

from .core import (Instance, Matching, blocking_pairs, family_delta,
                   is_stable, join, meet, PQDelta)
from .errors import NotOneN
from .outcomes import NO_IDEA, NO_MATCH


def check_one_side_fixed(instances: Sequence[Instance]) -> PQDelta:
    """Gate: at most one worker's list varies across the family."""
    delta = family_delta(instances)
    if delta.p > 1:
        raise NotOneN(f"{delta.p} workers' lists vary: "
                      f"{sorted(delta.changed_workers)}")
    return delta


class _Rooms:
    """Shared round engine; proposers and receivers are 1..n in either role."""

    def __init__(self, proposer_prefs, receiver_rank, preemptive: bool):
        self.k = len(proposer_prefs)
        self.n = len(proposer_prefs[0])
        self.proposer_prefs = proposer_prefs     # per room, per proposer
        self.receiver_rank = receiver_rank       # per room, per receiver
        self.preemptive = preemptive
        self.crossed = [set() for _ in range(self.n)]   # per proposer
        self.bar = [dict() for _ in range(self.k)]      # per room: receiver -> proposer

    def cross(self, p: int, r: int) -> bool:
        if r in self.crossed[p - 1]:
            return False
        self.crossed[p - 1].add(r)
        return True

    def target(self, room: int, p: int) -> int | None:
        """Best uncrossed receiver in the room's order, None when exhausted."""
        for r in self.proposer_prefs[room][p - 1]:
            if r not in self.crossed[p - 1]:
                return r
        return None

    def _rank(self, room: int, r: int, p: int) -> int:
        return self.receiver_rank[room][r - 1][p - 1]

    def run_round(self):
        """One lockstep round; returns per-room held maps and new crossings."""
        held_rooms = []
        crossings = set()
        for room in range(self.k):
            proposals: dict[int, list[int]] = {}
            for p in range(1, self.n + 1):
                r = self.target(room, p)
                if r is None:
                    return None, None            # proposer exhausted
                proposals.setdefault(r, []).append(p)
            held = {}
            bar = self.bar[room]
            for r, props in proposals.items():
                best = min(props, key=lambda p: self._rank(room, r, p))
                if r not in bar or self._rank(room, r, best) < self._rank(room, r, bar[r]):
                    bar[r] = best
                if bar[r] == best:
                    held[r] = best
                crossings.update((p, r) for p in props if p != held.get(r))
            held_rooms.append(held)
        if self.preemptive:
            # receivers reject every proposer strictly below their bar in
            # that room's order, whether or not it ever proposed
            for room in range(self.k):
                for r, best in self.bar[room].items():
                    cutoff = self._rank(room, r, best)
                    crossings.update(
                        (p, r) for p in range(1, self.n + 1)
                        if self._rank(room, r, p) > cutoff
                        and r not in self.crossed[p - 1])
        return held_rooms, crossings

    def escape_disagreement(self, held_rooms) -> bool:
        """Cross the worse partner of a receiver whose rooms disagree.

        Sound when the better partner's room ranks it above the other: any
        common stable matching pairing the receiver with the worse one is
        blocked by the better one in that room.
        """
        partner = [dict() for _ in range(self.k)]
        for room, held in enumerate(held_rooms):
            for r, p in held.items():
                partner[room][r] = p
        for i in range(self.k):
            for j in range(i + 1, self.k):
                for r in range(1, self.n + 1):
                    pi = partner[i].get(r)
                    pj = partner[j].get(r)
                    if pi is None or pj is None or pi == pj:
                        continue
                    if self._rank(i, r, pi) < self._rank(i, r, pj):
                        if self.cross(pj, r):
                            return True
                    if self._rank(j, r, pj) < self._rank(j, r, pi):
                        if self.cross(pi, r):
                            return True
        return False

    def escape_blocking(self, room: int, p: int, r: int, held: dict) -> bool:
        """Cross the held partner of a receiver in a blocking pair.

        If (p, r) blocks the agreed matching under the room's instance, no
        common stable matching can give r its current partner: pairing r at
        or below it is blocked by p, whose own target sits at its partner.
        """
        return self.cross(held[r], r)


def _run_multiroom(instances, proposer_prefs, receiver_rank, preemptive,
                   matching_of, research):
    n = instances[0].n
    rooms = _Rooms(proposer_prefs, receiver_rank, preemptive)
    for _ in range(2 * n * n + 4):
        held_rooms, crossings = rooms.run_round()
        if held_rooms is None:
            return NO_MATCH
        if crossings:
            for p, r in crossings:
                rooms.cross(p, r)
            continue
        matchings = [matching_of(held) for held in held_rooms]
        first = matchings[0]
        if any(m != first for m in matchings):
            if rooms.escape_disagreement(held_rooms):
                continue
            if research:
                return NO_IDEA
            raise AssertionError("rooms disagreed without a sound escape "
                                 "on a p <= 1 family")
        blocked = False
        for room, inst in enumerate(instances):
            pairs = blocking_pairs(inst, first)
            if pairs:
                w, f = min(pairs)
                # receiver/proposer of the blocking pair in engine roles
                if preemptive:                   # firms propose, workers receive
                    rooms.escape_blocking(room, f, w, held_rooms[room])
                else:
                    rooms.escape_blocking(room, w, f, held_rooms[room])
                blocked = True
                break
        if blocked:
            continue
        return first
    raise AssertionError("multiroom engine failed to terminate")


def worker_optimal_multiroom(instances: Sequence[Instance], research: bool = False):
    """Worker-optimal matching of the intersection (or NO_MATCH / NO_IDEA)."""
    if not research:
        check_one_side_fixed(instances)
    n = instances[0].n

    def matching_of(held):
        assert len(held) == n, "acceptances short of perfect with no rejection"
        firms = [0] * n
        for f, w in held.items():
            firms[w - 1] = f
        return Matching(firms)

    return _run_multiroom(
        instances,
        proposer_prefs=[inst.worker_prefs for inst in instances],
        receiver_rank=[inst.firm_rank for inst in instances],
        preemptive=False,
        matching_of=matching_of,
        research=research)


def firm_optimal_multiroom(instances: Sequence[Instance], research: bool = False):
    """Firm-optimal matching of the intersection (or NO_MATCH / NO_IDEA)."""
    if not research:
        check_one_side_fixed(instances)
    n = instances[0].n

    def matching_of(held):
        assert len(held) == n, "acceptances short of perfect with no rejection"
        firms = [0] * n
        for w, f in held.items():
            firms[w - 1] = f
        return Matching(firms)

    return _run_multiroom(
        instances,
        proposer_prefs=[inst.firm_prefs for inst in instances],
        receiver_rank=[inst.worker_rank for inst in instances],
        preemptive=True,
        matching_of=matching_of,
        research=research)


def verify_join_meet_agree(instances: Sequence[Instance],
                           m1: Matching, m2: Matching) -> bool:
    """True iff meet and join computed under each instance coincide pairwise."""
    first = instances[0]
    ref = (meet(first, m1, m2), join(first, m1, m2))
    for inst in instances[1:]:
        if (meet(inst, m1, m2), join(inst, m1, m2)) != ref:
            return False
    return True
