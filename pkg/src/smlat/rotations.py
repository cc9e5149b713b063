"""Rotation posets, closed-set enumeration, compressions, and hybrid splits.

The lattice of stable matchings of one instance is represented succinctly by
its rotation poset: closed (predecessor-closed) sets of rotations biject with
stable matchings, applied as eliminations from the worker-optimal matching.
Sublattices are represented by compressions: rotations grouped into
meta-classes plus always-in / never-in frozen sets, encoded by an added edge
set over the Hasse diagram extended with a source and a sink node.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Sequence

from .core import Instance, Matching, diff_pq, join, meet
from .da import firm_da, worker_da
from .errors import NotASublattice, NotExposed, NotOneN, NotZeroN

#: sentinel nodes of the extended Hasse diagram used by edge sets
SOURCE = -1
SINK = -2


@dataclass(frozen=True)
class Rotation:
    """Ordered cycle of matched pairs; eliminating it maps one stable matching
    to the next one down.  Canonical form starts at the smallest worker."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        k = min(range(len(self.pairs)), key=lambda i: self.pairs[i][0])
        object.__setattr__(self, "pairs", self.pairs[k:] + self.pairs[:k])

    def workers(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __lt__(self, other):
        return self.pairs < other.pairs

    def __str__(self):
        return "".join(f"({w},{f})" for w, f in self.pairs)


def _improving_firm(inst: Instance, m: Matching, w: int) -> int | None:
    """First firm on w's list that strictly prefers w to its current partner."""
    for f in inst.worker_prefs[w - 1]:
        if inst.firm_prefers(f, w, m.worker_of(f)):
            return f
    return None


def exposed_rotations(inst: Instance, m: Matching) -> frozenset[Rotation]:
    """All rotations exposed in m, found by following successor cycles."""
    nxt = {}
    for w in range(1, inst.n + 1):
        f = _improving_firm(inst, m, w)
        if f is not None:
            nxt[w] = m.worker_of(f)
    state = {}                                   # 0 in-progress, 1 done
    found = set()
    for start in nxt:
        if start in state:
            continue
        path = []
        w = start
        while w in nxt and w not in state:
            state[w] = 0
            path.append(w)
            w = nxt[w]
        if w in state and state[w] == 0:         # closed a new cycle at w
            cycle = path[path.index(w):]
            found.add(Rotation(tuple((u, m.firm_of(u)) for u in cycle)))
        for u in path:
            state[u] = 1
    return frozenset(found)


def eliminate(inst: Instance, m: Matching, rho: Rotation) -> Matching:
    """Apply an exposed rotation: each worker in the cycle moves to the next firm."""
    for i, (w, f) in enumerate(rho.pairs):
        if m.firm_of(w) != f:
            raise NotExposed(f"pair ({w},{f}) not in matching")
        if _improving_firm(inst, m, w) != rho.pairs[(i + 1) % len(rho)][1]:
            raise NotExposed(f"worker {w} does not move to the cycle's next firm")
    firms = list(m.firms)
    for i, (w, _) in enumerate(rho.pairs):
        firms[w - 1] = rho.pairs[(i + 1) % len(rho)][1]
    return Matching(firms)


def _apply_rotation(firms: list[int], rho: Rotation) -> None:
    for i, (w, _) in enumerate(rho.pairs):
        firms[w - 1] = rho.pairs[(i + 1) % len(rho)][1]


def _unapply_rotation(firms: list[int], rho: Rotation) -> None:
    for w, f in rho.pairs:
        firms[w - 1] = f


@dataclass(frozen=True)
class RotationPoset:
    """Rotations of one instance under elimination precedence.

    ``preds[i]`` is the full set of strict predecessors of rotation i; the
    rotation order (discovery order along a maximal elimination chain) is a
    linear extension, so applying a closed set in index order is always valid.
    """

    instance: Instance
    top: Matching
    bottom: Matching
    rotations: tuple[Rotation, ...]
    preds: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.rotations)

    @cached_property
    def succs(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in self.rotations]
        for i, ps in enumerate(self.preds):
            for p in ps:
                out[p].add(i)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def _preds_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << p for p in ps) for ps in self.preds)

    @cached_property
    def _succs_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << s for s in ss) for ss in self.succs)

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Transitive reduction of the precedence order."""
        edges = []
        for j, ps in enumerate(self.preds):
            for i in sorted(ps):
                if not any(i in self.preds[z] for z in ps if z != i):
                    edges.append((i, j))
        return edges

    def matching_for_mask(self, mask: int) -> Matching:
        firms = list(self.top.firms)
        for i, rho in enumerate(self.rotations):
            if mask >> i & 1:
                _apply_rotation(firms, rho)
        return Matching(firms)

    def iter_closed_masks(self) -> Iterator[int]:
        """Every closed set, as a bitmask over rotation indices."""
        for mask, _ in self.iter_closed_with_matchings():
            yield mask

    def iter_matchings(self) -> Iterator[Matching]:
        """Every stable matching exactly once, worker-optimal first.

        Recursive include/exclude branching on a minimal remaining rotation:
        both branches always produce output, so the delay between consecutive
        matchings is polynomial in n.
        """
        for _, m in self.iter_closed_with_matchings():
            yield m

    def iter_closed_with_matchings(self) -> Iterator[tuple[int, Matching]]:
        preds_mask = self._preds_mask
        succs_mask = self._succs_mask
        firms = list(self.top.firms)
        rotations = self.rotations

        def rec(remaining: int, current: int) -> Iterator[tuple[int, Matching]]:
            if not remaining:
                yield current, Matching(firms)
                return
            r = remaining
            while r:
                i = (r & -r).bit_length() - 1
                if not preds_mask[i] & remaining:
                    break
                r &= r - 1
            yield from rec(remaining & ~((1 << i) | succs_mask[i]), current)
            _apply_rotation(firms, rotations[i])
            yield from rec(remaining & ~(1 << i), current | (1 << i))
            _unapply_rotation(firms, rotations[i])

        yield from rec((1 << len(rotations)) - 1, 0)

    def closed_count(self) -> int:
        return sum(1 for _ in self.iter_closed_masks())


def build_rotation_poset(inst: Instance) -> RotationPoset:
    """Discover all rotations and their precedence order.

    Rotations are collected along one maximal elimination chain (each rotation
    occurs exactly once in any such chain).  Precedence edges come from the
    two move rules -- the rotation moving w to f precedes the one moving w
    from f, and the rotation moving f above w precedes the one moving w below
    f -- then the relation is transitively closed.
    """
    top = worker_da(inst)
    bottom = firm_da(inst)
    rotations: list[Rotation] = []
    m = top
    while True:
        exposed = exposed_rotations(inst, m)
        if not exposed:
            break
        rho = min(exposed)
        rotations.append(rho)
        m = eliminate(inst, m, rho)
    assert m == bottom, "elimination chain did not reach the firm-optimal matching"

    moves_to: dict[tuple[int, int], int] = {}
    moves_from: dict[tuple[int, int], int] = {}
    below: dict[tuple[int, int], int] = {}       # (w, f) -> rotation moving w below f
    above: dict[tuple[int, int], int] = {}       # (f, w) -> rotation moving f above w
    for idx, rho in enumerate(rotations):
        r = len(rho)
        for i, (w, f) in enumerate(rho.pairs):
            f_next = rho.pairs[(i + 1) % r][1]
            w_prev = rho.pairs[(i - 1) % r][0]
            moves_from[(w, f)] = idx
            moves_to[(w, f_next)] = idx
            wrow = inst.worker_rank[w - 1]
            for g in range(1, inst.n + 1):
                if wrow[f - 1] <= wrow[g - 1] < wrow[f_next - 1]:
                    below[(w, g)] = idx
            frow = inst.firm_rank[f - 1]
            for u in range(1, inst.n + 1):
                if frow[w_prev - 1] < frow[u - 1] <= frow[w - 1]:
                    above[(f, u)] = idx
    edges: set[tuple[int, int]] = set()
    for key, r1 in moves_to.items():
        r2 = moves_from.get(key)
        if r2 is not None and r2 != r1:
            edges.add((r1, r2))
    for (w, g), r2 in below.items():
        r1 = above.get((g, w))
        if r1 is not None and r1 != r2:
            edges.add((r1, r2))

    nrot = len(rotations)
    adj = [set() for _ in range(nrot)]
    for u, v in edges:
        adj[u].add(v)
    preds = [set() for _ in range(nrot)]
    for u in range(nrot):
        stack = list(adj[u])
        seen = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            preds[v].add(u)
            stack.extend(adj[v])
        assert u not in seen, "cycle in rotation precedence"
    return RotationPoset(inst, top, bottom, tuple(rotations),
                         tuple(frozenset(p) for p in preds))


def enumerate_lattice(poset: RotationPoset) -> Iterator[Matching]:
    """Stream the stable matchings generated by the poset's closed sets."""
    return poset.iter_matchings()


# -- compressions ------------------------------------------------------------

@dataclass(frozen=True)
class MetaRotationPoset:
    """Compression of a rotation poset generating a sublattice.

    Rotations are partitioned into meta-classes plus the always-in and
    never-in frozen sets; closed sets of the class order (each taken together
    with always_in) generate exactly the sublattice.  ``edges`` is the added
    edge set over rotation indices and the SOURCE/SINK sentinels that defines
    the compression; unions of edge sets compose sublattice intersections.
    """

    poset: RotationPoset
    always_in: frozenset[int]
    never_in: frozenset[int]
    classes: tuple[frozenset[int], ...]
    class_preds: tuple[frozenset[int], ...]
    edges: frozenset[tuple[int, int]]
    #: contradictory edge set (source and sink merged): no valid closed sets
    empty: bool = False

    @property
    def is_empty(self) -> bool:
        return self.empty

    @cached_property
    def _always_mask(self) -> int:
        return sum(1 << r for r in self.always_in)

    @cached_property
    def _class_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << r for r in c) for c in self.classes)

    def iter_closed_masks(self) -> Iterator[int]:
        if self.is_empty:
            return
        nclass = len(self.classes)
        preds_mask = tuple(sum(1 << p for p in ps) for ps in self.class_preds)
        succs = [0] * nclass
        for j, ps in enumerate(self.class_preds):
            for p in ps:
                succs[p] |= 1 << j

        def rec(remaining: int, current: int) -> Iterator[int]:
            if not remaining:
                yield current
                return
            r = remaining
            while r:
                i = (r & -r).bit_length() - 1
                if not preds_mask[i] & remaining:
                    break
                r &= r - 1
            yield from rec(remaining & ~((1 << i) | succs[i]), current)
            yield from rec(remaining & ~(1 << i), current | (1 << i))

        class_masks = self._class_masks
        for chosen in rec((1 << nclass) - 1, 0):
            mask = self._always_mask
            for i in range(nclass):
                if chosen >> i & 1:
                    mask |= class_masks[i]
            yield mask

    def iter_matchings(self) -> Iterator[Matching]:
        for mask in self.iter_closed_masks():
            yield self.poset.matching_for_mask(mask)

    def worker_optimal(self) -> Matching | None:
        if self.is_empty:
            return None
        return self.poset.matching_for_mask(self._always_mask)

    def firm_optimal(self) -> Matching | None:
        if self.is_empty:
            return None
        mask = self._always_mask
        for cm in self._class_masks:
            mask |= cm
        return self.poset.matching_for_mask(mask)


def compression_from_membership(poset: RotationPoset,
                                member: Callable[[Matching], bool]) -> MetaRotationPoset:
    """Compression whose closed sets generate exactly the member matchings.

    Enumerates the host lattice (desk scale), groups rotations by identical
    occurrence patterns across member closed sets, and orders classes by
    containment of those patterns.  Raises NotASublattice (with a witness)
    when the member set is not closed under the host meet and join.
    """
    pairs = list(poset.iter_closed_with_matchings())
    member_masks = [mask for mask, m in pairs if member(m)]
    mask_set = set(member_masks)
    nrot = len(poset.rotations)
    if not member_masks:
        all_rot = frozenset(range(nrot))
        return MetaRotationPoset(poset, all_rot, all_rot, (), (),
                                 frozenset({(SINK, SOURCE)}), empty=True)
    inst = poset.instance
    for i, s1 in enumerate(member_masks):
        for s2 in member_masks[i + 1:]:
            for combo, opname in ((s1 | s2, "join"), (s1 & s2, "meet")):
                if combo not in mask_set:
                    m1 = poset.matching_for_mask(s1)
                    m2 = poset.matching_for_mask(s2)
                    op = join if opname == "join" else meet
                    raise NotASublattice(
                        f"member set not closed under {opname}",
                        witness=(m1, m2, opname, op(inst, m1, m2)))

    full = (1 << len(member_masks)) - 1
    patterns = []
    for r in range(nrot):
        bits = 0
        for idx, s in enumerate(member_masks):
            if s >> r & 1:
                bits |= 1 << idx
        patterns.append(bits)
    always = frozenset(r for r in range(nrot) if patterns[r] == full)
    never = frozenset(r for r in range(nrot) if patterns[r] == 0)
    groups: dict[int, list[int]] = {}
    for r in range(nrot):
        if r not in always and r not in never:
            groups.setdefault(patterns[r], []).append(r)
    ordered = sorted(groups.values(), key=min)
    classes = tuple(frozenset(g) for g in ordered)
    class_pattern = [patterns[min(g)] for g in ordered]
    class_preds = []
    for j, pj in enumerate(class_pattern):
        ps = frozenset(i for i, pi in enumerate(class_pattern)
                       if i != j and pi != pj and (pi | pj) == pi)
        class_preds.append(ps)
    edges = _edge_set(poset, always, never, classes, tuple(class_preds))
    return MetaRotationPoset(poset, always, never, classes,
                             tuple(class_preds), edges)


def _edge_set(poset, always, never, classes, class_preds) -> frozenset[tuple[int, int]]:
    """Canonical added edges realizing a compression on the extended Hasse diagram."""
    edges = set()
    for r in sorted(always):
        edges.add((r, SOURCE))
    for r in sorted(never):
        edges.add((SINK, r))
    for cls in classes:
        members = sorted(cls)
        if len(members) > 1:
            for a, b in zip(members, members[1:]):
                edges.add((a, b))
            edges.add((members[-1], members[0]))
    for j, ps in enumerate(class_preds):
        for i in ps:
            # Hasse only: skip predecessors implied through another one
            if not any(i in class_preds[z] for z in ps if z != i):
                edges.add((min(classes[i]), min(classes[j])))
    return frozenset(edges)


def compression_from_edges(poset: RotationPoset,
                           edges: frozenset[tuple[int, int]]) -> MetaRotationPoset:
    """Rebuild the compression defined by an added edge set.

    Adds the edges to the extended Hasse diagram (source preceding every
    rotation, every rotation preceding the sink), shrinks strongly connected
    components, and reads the class structure off the condensation.
    """
    nrot = len(poset.rotations)
    nodes = [SOURCE, SINK, *range(nrot)]
    adj: dict[int, set[int]] = {u: set() for u in nodes}
    for r in range(nrot):
        adj[SOURCE].add(r)
        adj[r].add(SINK)
    for u, v in poset.hasse_edges():
        adj[u].add(v)
    for u, v in edges:
        adj[u].add(v)

    reach: dict[int, set[int]] = {}
    for u in nodes:
        seen: set[int] = set()
        stack = list(adj[u])
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(adj[v])
        reach[u] = seen

    if SOURCE in reach[SINK]:
        all_rot = frozenset(range(nrot))
        return MetaRotationPoset(poset, all_rot, all_rot, (), (), edges,
                                 empty=True)
    always = frozenset(r for r in range(nrot) if SOURCE in reach[r])
    never = frozenset(r for r in range(nrot) if r in reach[SINK])
    rest = [r for r in range(nrot) if r not in always and r not in never]
    assigned: dict[int, int] = {}
    groups: list[list[int]] = []
    for r in rest:
        if r in assigned:
            continue
        comp = [r] + [s for s in rest
                      if s != r and s in reach[r] and r in reach[s]]
        for s in comp:
            assigned[s] = len(groups)
        groups.append(sorted(comp))
    groups.sort(key=min)
    classes = tuple(frozenset(g) for g in groups)
    class_preds = []
    for j, gj in enumerate(groups):
        ps = frozenset(i for i, gi in enumerate(groups)
                       if i != j and gj[0] in reach[gi[0]])
        class_preds.append(ps)
    return MetaRotationPoset(poset, always, never, classes,
                             tuple(class_preds), edges)


def union_edge_sets(poset: RotationPoset,
                    compressions: Sequence[MetaRotationPoset]) -> MetaRotationPoset:
    """Compression by the union of the per-sublattice edge sets.

    Generates the intersection of the compressions' sublattices; an empty
    sequence yields the trivial compression of the full lattice.
    """
    edges: set[tuple[int, int]] = set()
    for comp in compressions:
        edges |= comp.edges
    return compression_from_edges(poset, frozenset(edges))


# -- text export --------------------------------------------------------------

def export_poset_text(poset: RotationPoset | MetaRotationPoset) -> str:
    """Poset export: one ``class <k>: <rotation cycles>`` line per class, then
    ``edge <k1> <k2>`` lines for the Hasse edges of the class order.

    Compressions additionally carry ``always:`` / ``never:`` lines for the
    frozen rotation sets (omitted when empty) and an ``empty`` marker when the
    edge set is contradictory.
    """
    lines = []
    if isinstance(poset, MetaRotationPoset):
        host = poset.poset
        if poset.is_empty:
            return "empty\n"
        if poset.always_in:
            lines.append("always: " + " ".join(str(host.rotations[r])
                                               for r in sorted(poset.always_in)))
        if poset.never_in:
            lines.append("never: " + " ".join(str(host.rotations[r])
                                              for r in sorted(poset.never_in)))
        for k, cls in enumerate(poset.classes):
            cycles = " ".join(str(host.rotations[r]) for r in sorted(cls))
            lines.append(f"class {k}: {cycles}")
        edges = []
        for j, ps in enumerate(poset.class_preds):
            for i in sorted(ps):
                if not any(i in poset.class_preds[z] for z in ps if z != i):
                    edges.append((i, j))
        for i, j in sorted(edges):
            lines.append(f"edge {i} {j}")
    else:
        for k, rho in enumerate(poset.rotations):
            lines.append(f"class {k}: {rho}")
        for i, j in sorted(poset.hasse_edges()):
            lines.append(f"edge {i} {j}")
    return "\n".join(lines) + "\n" if lines else "empty poset (single matching)\n"


# -- sublattice closure checks over explicit matching sets -------------------

def check_sublattice(inst: Instance, matchings) -> tuple | None:
    """None when closed under both meet and join; else a witness
    (m1, m2, op_name, combined)."""
    w = check_semisublattice(inst, matchings, "meet")
    if w is not None:
        return w
    return check_semisublattice(inst, matchings, "join")


def check_semisublattice(inst: Instance, matchings, side: str) -> tuple | None:
    """Closure under one operation only; ``side`` is ``"meet"`` or ``"join"``."""
    if side not in ("meet", "join"):
        raise ValueError(f"side must be 'meet' or 'join', got {side!r}")
    op = meet if side == "meet" else join
    members = sorted(set(matchings))
    member_set = set(members)
    for i, m1 in enumerate(members):
        for m2 in members[i + 1:]:
            combined = op(inst, m1, m2)
            if combined not in member_set:
                return (m1, m2, side, combined)
    return None


# -- hybrid decompositions ---------------------------------------------------

def hybrid_instances_one_side(a: Instance, b: Instance) -> tuple[Instance, ...]:
    """One hybrid per changed firm: instance a with that firm's list from b.

    Matchings stable under both a and b are exactly those stable under a and
    every hybrid.  Unchanged firms contribute nothing and are skipped.
    """
    delta = diff_pq(a, b)
    if delta.p != 0:
        raise NotZeroN(f"{delta.p} workers' lists differ")
    return tuple(
        a.with_rows(firm_rows={f: b.firm_prefs[f - 1]}, name=f"hybrid-f{f}")
        for f in sorted(delta.changed_firms))


def hybrid_instances_two_side(a: Instance, b: Instance) -> tuple[Instance, ...]:
    """Hybrids carrying the changed worker's list plus one changed firm each.

    Requires at most one changed worker.  When only the worker changed, the
    single hybrid is b itself; when nothing changed, no hybrids are needed.
    """
    delta = diff_pq(a, b)
    if delta.p > 1:
        raise NotOneN(f"{delta.p} workers' lists differ")
    if not delta.changed_firms:
        return (b.with_rows(name="hybrid-w"),) if delta.p == 1 else ()
    worker_rows = ({w: b.worker_prefs[w - 1] for w in delta.changed_workers}
                   if delta.p == 1 else None)
    return tuple(
        a.with_rows(worker_rows=worker_rows,
                    firm_rows={f: b.firm_prefs[f - 1]},
                    name=f"hybrid-wf{f}")
        for f in sorted(delta.changed_firms))
