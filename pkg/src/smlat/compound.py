"""Shared-worker-side families: compound instances and their DA variants.

A family where only firms' lists vary is folded into one compound instance:
workers keep their common total orders, each firm gets the partial order
that is the intersection of its per-instance orders.  A matching is stable
under every source instance exactly when it has no strong blocking pair
under the compound instance, so the two modified deferred-acceptance runs
below find the worker- and firm-optimal matchings of the intersection.
"""

from __future__ import annotations

from typing import Sequence

from .core import Instance, Matching, join, meet
from .errors import WorkerListsDiffer
from .oracle import stable_intersection
from .outcomes import NO_MATCH


class CompoundInstance:
    """Total worker orders plus one boolean dominance table per firm.

    ``dom[f-1][i-1][j-1]`` is True iff firm f prefers worker i to worker j
    in every source instance.  Tables are irreflexive and transitive by
    construction (intersections of total orders).
    """

    __slots__ = ("n", "worker_prefs", "worker_rank", "dom", "sources")

    def __init__(self, n, worker_prefs, worker_rank, dom, sources):
        self.n = n
        self.worker_prefs = worker_prefs
        self.worker_rank = worker_rank
        self.dom = dom
        self.sources = sources

    def prefers(self, f: int, wi: int, wj: int) -> bool:
        """Strict preference of firm f for worker wi over wj in the compound order."""
        return self.dom[f - 1][wi - 1][wj - 1]

    def indifferent(self, f: int, wi: int, wj: int) -> bool:
        return (wi != wj and not self.dom[f - 1][wi - 1][wj - 1]
                and not self.dom[f - 1][wj - 1][wi - 1])

    def total_order_firms(self) -> list[int]:
        """Firms whose compound order is still a total order."""
        out = []
        for f in range(1, self.n + 1):
            table = self.dom[f - 1]
            comparable = sum(table[i][j] or table[j][i]
                             for i in range(self.n) for j in range(i + 1, self.n))
            if comparable == self.n * (self.n - 1) // 2:
                out.append(f)
        return out


def build_compound(instances: Sequence[Instance]) -> CompoundInstance:
    """Intersect firm orders across a family with identical worker lists."""
    if not instances:
        raise ValueError("need at least one instance")
    first = instances[0]
    n = first.n
    for other in instances[1:]:
        if other.n != n or other.worker_prefs != first.worker_prefs:
            raise WorkerListsDiffer(
                "compound construction requires identical worker lists")
    dom = []
    for f in range(1, n + 1):
        table = [[all(inst.firm_prefers(f, wi, wj) for inst in instances)
                  if wi != wj else False
                  for wj in range(1, n + 1)]
                 for wi in range(1, n + 1)]
        dom.append(tuple(tuple(row) for row in table))
    return CompoundInstance(n, first.worker_prefs, first.worker_rank,
                            tuple(dom), tuple(instances))


def strong_blocking_pairs(x: CompoundInstance, m: Matching) -> frozenset[tuple[int, int]]:
    """Pairs (w, f) where w strictly prefers f and f prefers-or-is-indifferent-to w."""
    out = []
    for w in range(1, x.n + 1):
        rank_partner = x.worker_rank[w - 1][m.firm_of(w) - 1]
        for f in x.worker_prefs[w - 1][:rank_partner]:
            partner = m.worker_of(f)
            if not x.prefers(f, partner, w):     # f prefers w or is indifferent
                out.append((w, f))
    return frozenset(out)


def is_strongly_stable(x: CompoundInstance, m: Matching) -> bool:
    for w in range(1, x.n + 1):
        rank_partner = x.worker_rank[w - 1][m.firm_of(w) - 1]
        for f in x.worker_prefs[w - 1][:rank_partner]:
            if not x.prefers(f, m.worker_of(f), w):
                return False
    return True


def worker_optimal_compound(x: CompoundInstance):
    """Worker-optimal strongly stable matching, or NO_MATCH.

    Workers propose down their lists; a firm tentatively holds a proposal
    only while it strictly dominates every proposal the firm has ever
    received, so an incomparable arrival makes the firm drop its hold and
    reject both.
    """
    n = x.n
    crossed = [set() for _ in range(n)]          # per worker, firms crossed off
    ever = [set() for _ in range(n)]             # per firm, workers who ever proposed
    for _ in range(n * n + 2):
        proposals: dict[int, list[int]] = {}
        for w in range(1, n + 1):
            target = next((f for f in x.worker_prefs[w - 1]
                           if f not in crossed[w - 1]), None)
            if target is None:
                return NO_MATCH
            proposals.setdefault(target, []).append(w)
        held = {}
        rejected_any = False
        for f, props in proposals.items():
            ever[f - 1].update(props)
            winner = None
            for w in props:
                if all(x.prefers(f, w, other)
                       for other in ever[f - 1] if other != w):
                    winner = w
                    break
            if winner is not None:
                held[f] = winner
            for w in props:
                if w != winner:
                    crossed[w - 1].add(f)
                    rejected_any = True
        if not rejected_any and len(held) == n:
            firms = [0] * n
            for f, w in held.items():
                firms[w - 1] = f
            return Matching(firms)
    raise AssertionError("compound worker DA failed to terminate")


def firm_optimal_compound(x: CompoundInstance):
    """Firm-optimal strongly stable matching, or NO_MATCH.

    Firms propose to all maximal uncrossed workers of their partial order
    simultaneously; workers with total lists hold their best proposal.
    """
    n = x.n
    crossed = [set() for _ in range(n)]          # per firm, workers crossed off
    for _ in range(n * n + 2):
        proposals: dict[int, list[int]] = {}     # worker -> proposing firms
        for f in range(1, n + 1):
            uncrossed = [w for w in range(1, n + 1) if w not in crossed[f - 1]]
            if not uncrossed:
                return NO_MATCH
            maximal = [w for w in uncrossed
                       if not any(x.prefers(f, w2, w) for w2 in uncrossed)]
            for w in maximal:
                proposals.setdefault(w, []).append(f)
        accepted: dict[int, int] = {}            # worker -> held firm
        rejected_any = False
        for w, props in proposals.items():
            best = min(props, key=lambda f: x.worker_rank[w - 1][f - 1])
            accepted[w] = best
            for f in props:
                if f != best:
                    crossed[f - 1].add(w)
                    rejected_any = True
        held_firms = set(accepted.values())
        if not rejected_any and len(held_firms) == n:
            firms = [0] * n
            for w, f in accepted.items():
                firms[w - 1] = f
            return Matching(firms)
    raise AssertionError("compound firm DA failed to terminate")


def intersection_is_sublattice_check(instances: Sequence[Instance], cap=None):
    """Closure of the oracle intersection under each instance's meet/join.

    Returns None when closed (always, for shared-worker-side families), else a
    witness tuple (instance_index, m1, m2, op, combined).
    """
    common = stable_intersection(instances, cap)
    members = sorted(common)
    for idx, inst in enumerate(instances):
        for i, m1 in enumerate(members):
            for m2 in members[i + 1:]:
                for op, name in ((meet, "meet"), (join, "join")):
                    combined = op(inst, m1, m2)
                    if combined not in common:
                        return (idx, m1, m2, name, combined)
    return None
