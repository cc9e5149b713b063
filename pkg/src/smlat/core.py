"""Instances, matchings, blocking pairs, lattice meet/join, and the text format.

Workers and firms are dense 1..n ids in separate namespaces.  Preference
lists are complete strict orders, stored most-preferred first.  Rank tables
(inverse permutations) are precomputed so preference comparisons are O(1).

Instance text format (UTF-8, line oriented, ``#`` starts a comment)::

    n 4
    w 1: 1 2 3 4
    ...
    f 4: 4 3 2 1

Matching format: ``M: <firm of worker 1> <firm of worker 2> ...``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotAMatching, ParseError, SizeMismatch, ValidationError


def _check_permutation(seq: Sequence[int], n: int, who: str) -> None:
    if len(seq) != n:
        raise ValidationError(f"{who}: expected {n} entries, got {len(seq)}")
    seen = set()
    for x in seq:
        if not 1 <= x <= n:
            raise ValidationError(f"{who}: id {x} out of range 1..{n}")
        if x in seen:
            raise ValidationError(f"{who}: id {x} listed twice")
        seen.add(x)


def _rank_table(prefs: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(prefs)
    table = []
    for row in prefs:
        ranks = [0] * n
        for pos, other in enumerate(row):
            ranks[other - 1] = pos
        table.append(tuple(ranks))
    return tuple(table)


class Instance:
    """Complete strict preference profiles for n workers and n firms."""

    __slots__ = ("n", "worker_prefs", "firm_prefs", "name",
                 "worker_rank", "firm_rank", "_hash")

    def __init__(self, worker_prefs: Iterable[Sequence[int]],
                 firm_prefs: Iterable[Sequence[int]], name: str = ""):
        wp = tuple(tuple(row) for row in worker_prefs)
        fp = tuple(tuple(row) for row in firm_prefs)
        n = len(wp)
        if n < 1:
            raise ValidationError("instance needs at least one worker")
        if len(fp) != n:
            raise ValidationError(f"{n} worker lists but {len(fp)} firm lists")
        for i, row in enumerate(wp):
            _check_permutation(row, n, f"worker {i + 1}")
        for j, row in enumerate(fp):
            _check_permutation(row, n, f"firm {j + 1}")
        self.n = n
        self.worker_prefs = wp
        self.firm_prefs = fp
        self.name = name
        # worker_rank[w-1][f-1] = position of firm f in w's list (0 = best)
        self.worker_rank = _rank_table(wp)
        self.firm_rank = _rank_table(fp)
        self._hash = hash((wp, fp))

    def wrank(self, w: int, f: int) -> int:
        return self.worker_rank[w - 1][f - 1]

    def frank(self, f: int, w: int) -> int:
        return self.firm_rank[f - 1][w - 1]

    def worker_prefers(self, w: int, f1: int, f2: int) -> bool:
        """True if worker w strictly prefers firm f1 to firm f2."""
        return self.worker_rank[w - 1][f1 - 1] < self.worker_rank[w - 1][f2 - 1]

    def firm_prefers(self, f: int, w1: int, w2: int) -> bool:
        return self.firm_rank[f - 1][w1 - 1] < self.firm_rank[f - 1][w2 - 1]

    def with_rows(self, worker_rows: dict[int, Sequence[int]] | None = None,
                  firm_rows: dict[int, Sequence[int]] | None = None,
                  name: str = "") -> "Instance":
        """Copy of this instance with some preference lists replaced."""
        wp = list(self.worker_prefs)
        fp = list(self.firm_prefs)
        for w, row in (worker_rows or {}).items():
            wp[w - 1] = tuple(row)
        for f, row in (firm_rows or {}).items():
            fp[f - 1] = tuple(row)
        return Instance(wp, fp, name=name or self.name)

    def __eq__(self, other):
        return (isinstance(other, Instance)
                and self.worker_prefs == other.worker_prefs
                and self.firm_prefs == other.firm_prefs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Instance{label} n={self.n}>"


class Matching:
    """Perfect worker <-> firm bijection; ``firms[w-1]`` is worker w's firm."""

    __slots__ = ("n", "firms", "workers")

    def __init__(self, firms: Sequence[int]):
        firms = tuple(firms)
        n = len(firms)
        _check_permutation(firms, n, "matching")
        self.n = n
        self.firms = firms
        inv = [0] * n
        for w, f in enumerate(firms, start=1):
            inv[f - 1] = w
        self.workers = tuple(inv)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Matching":
        pairs = list(pairs)
        firms = [0] * len(pairs)
        for w, f in pairs:
            if not 1 <= w <= len(pairs) or firms[w - 1]:
                raise ValidationError(f"bad or duplicate worker {w} in pairs")
            firms[w - 1] = f
        return cls(firms)

    def firm_of(self, w: int) -> int:
        return self.firms[w - 1]

    def worker_of(self, f: int) -> int:
        return self.workers[f - 1]

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((w, f) for w, f in enumerate(self.firms, start=1))

    def __eq__(self, other):
        return isinstance(other, Matching) and self.firms == other.firms

    def __lt__(self, other):
        return self.firms < other.firms

    def __hash__(self):
        return hash(self.firms)

    def __repr__(self):
        return f"Matching({list(self.firms)})"

    def __str__(self):
        return "M: " + " ".join(str(f) for f in self.firms)


@dataclass(frozen=True)
class PQDelta:
    """How many (and which) agents' lists differ between two instances."""

    p: int
    q: int
    changed_workers: frozenset[int]
    changed_firms: frozenset[int]


def blocking_pairs(inst: Instance, m: Matching) -> frozenset[tuple[int, int]]:
    """All pairs (w, f) not in m where both strictly prefer each other."""
    out = []
    for w in range(1, inst.n + 1):
        rank_partner = inst.wrank(w, m.firm_of(w))
        row = inst.worker_prefs[w - 1]
        for f in row[:rank_partner]:
            if inst.firm_prefers(f, w, m.worker_of(f)):
                out.append((w, f))
    return frozenset(out)


def is_stable(inst: Instance, m: Matching) -> bool:
    """True iff m has no blocking pair under inst."""
    for w in range(1, inst.n + 1):
        rank_partner = inst.wrank(w, m.firm_of(w))
        row = inst.worker_prefs[w - 1]
        for f in row[:rank_partner]:
            if inst.firm_prefers(f, w, m.worker_of(f)):
                return False
    return True


def meet(inst: Instance, m1: Matching, m2: Matching) -> Matching:
    """Worker-best combination: each worker takes its preferred partner.

    Defined (and guaranteed to be a stable matching) only for m1, m2 both
    stable under inst; on other inputs the worker-wise choice may fail to
    be a bijection, reported as NotAMatching.
    """
    firms = []
    for w in range(1, inst.n + 1):
        f1, f2 = m1.firm_of(w), m2.firm_of(w)
        firms.append(f1 if inst.wrank(w, f1) <= inst.wrank(w, f2) else f2)
    try:
        return Matching(firms)
    except ValidationError as exc:
        raise NotAMatching(f"worker-wise meet is not a bijection: {exc}") from exc


def join(inst: Instance, m1: Matching, m2: Matching) -> Matching:
    """Worker-worst combination, dual of meet."""
    firms = []
    for w in range(1, inst.n + 1):
        f1, f2 = m1.firm_of(w), m2.firm_of(w)
        firms.append(f2 if inst.wrank(w, f1) <= inst.wrank(w, f2) else f1)
    try:
        return Matching(firms)
    except ValidationError as exc:
        raise NotAMatching(f"worker-wise join is not a bijection: {exc}") from exc


def dominates(inst: Instance, m1: Matching, m2: Matching) -> bool:
    """True iff every worker weakly prefers its partner in m1 to its partner in m2."""
    return all(inst.wrank(w, m1.firm_of(w)) <= inst.wrank(w, m2.firm_of(w))
               for w in range(1, inst.n + 1))


def diff_pq(a: Instance, b: Instance) -> PQDelta:
    """Count agents whose lists differ, as exact sequences."""
    if a.n != b.n:
        raise SizeMismatch(f"instances of size {a.n} and {b.n}")
    cw = frozenset(w for w in range(1, a.n + 1)
                   if a.worker_prefs[w - 1] != b.worker_prefs[w - 1])
    cf = frozenset(f for f in range(1, a.n + 1)
                   if a.firm_prefs[f - 1] != b.firm_prefs[f - 1])
    return PQDelta(p=len(cw), q=len(cf), changed_workers=cw, changed_firms=cf)


def family_delta(instances: Sequence[Instance]) -> PQDelta:
    """Agents whose lists vary anywhere across a family of instances."""
    first = instances[0]
    cw: set[int] = set()
    cf: set[int] = set()
    for other in instances[1:]:
        d = diff_pq(first, other)
        cw |= d.changed_workers
        cf |= d.changed_firms
    return PQDelta(p=len(cw), q=len(cf),
                   changed_workers=frozenset(cw), changed_firms=frozenset(cf))


# -- text format -------------------------------------------------------------

def parse_instance(text: str, name: str = "") -> Instance:
    """Parse the line-oriented instance format; raises ParseError/ValidationError."""
    n = None
    worker_rows: dict[int, tuple[int, ...]] = {}
    firm_rows: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError("expected 'n <N>' header", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad size {parts[1]!r}", lineno) from None
            if n < 1:
                raise ParseError("n must be positive", lineno)
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected '<w|f> <id>: <ids...>'", lineno)
        parts = head.split()
        if len(parts) != 2 or parts[0] not in ("w", "f"):
            raise ParseError(f"bad agent header {head!r}", lineno)
        try:
            agent = int(parts[1])
            ids = tuple(int(tok) for tok in rest.split())
        except ValueError:
            raise ParseError("non-integer id", lineno) from None
        if not 1 <= agent <= n:
            raise ParseError(f"agent id {agent} out of range 1..{n}", lineno)
        rows = worker_rows if parts[0] == "w" else firm_rows
        if agent in rows:
            raise ParseError(f"duplicate line for {parts[0]} {agent}", lineno)
        rows[agent] = ids
    if n is None:
        raise ParseError("empty input: missing 'n <N>' header")
    for kind, rows in (("worker", worker_rows), ("firm", firm_rows)):
        missing = [i for i in range(1, n + 1) if i not in rows]
        if missing:
            raise ParseError(f"missing {kind} lines: {missing}")
    return Instance([worker_rows[i] for i in range(1, n + 1)],
                    [firm_rows[i] for i in range(1, n + 1)], name=name)


def serialize_instance(inst: Instance) -> str:
    lines = [f"n {inst.n}"]
    lines += [f"w {w}: " + " ".join(map(str, row))
              for w, row in enumerate(inst.worker_prefs, start=1)]
    lines += [f"f {f}: " + " ".join(map(str, row))
              for f, row in enumerate(inst.firm_prefs, start=1)]
    return "\n".join(lines) + "\n"


def parse_matching(text: str) -> Matching:
    """Parse ``M: f1 f2 ...`` (firm of each worker in id order)."""
    line = text.strip()
    if not line.startswith("M:"):
        raise ParseError("matching must start with 'M:'")
    try:
        firms = [int(tok) for tok in line[2:].split()]
    except ValueError:
        raise ParseError("non-integer firm id in matching") from None
    try:
        return Matching(firms)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
