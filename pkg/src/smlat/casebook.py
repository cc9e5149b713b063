"""Reproduction suite for the bundled counterexample fixtures.

Each fact is tagged with its provenance: ``claimed`` facts pin exact values
the worked examples state, ``trivial`` facts are forced by definitions, and
``derived`` facts are recomputed by the brute-force oracle at run time and
never stored as constants.  The n5-firms fixture carries one repaired row
(a duplicate entry in the source table, completed to the unique
permutation), so its derived block doubles as the sanity gate for that
completion.
"""

from __future__ import annotations

from .compound import build_compound, firm_optimal_compound, worker_optimal_compound
from .core import (Matching, blocking_pairs, diff_pq, dominates, is_stable,
                   join, meet)
from .errors import FixtureMismatch, NotASublattice, NotOneN
from .fixtures import load_pair
from .multiroom import check_one_side_fixed, verify_join_meet_agree
from .oracle import enumerate_stable_bruteforce, stable_intersection
from .report import Report
from .rotations import (build_rotation_poset, check_semisublattice,
                        check_sublattice, compression_from_membership,
                        hybrid_instances_one_side, union_edge_sets)

CLAIMED = "claimed"
TRIVIAL = "trivial"
DERIVED = "derived"


def _m(*firms) -> Matching:
    return Matching(firms)


def _facts_n4(add):
    a, b = load_pair("n4")
    m1, m2 = _m(1, 2, 3, 4), _m(2, 1, 4, 3)
    add("n4", "delta is (2,2)", CLAIMED,
        lambda: diff_pq(a, b).p == 2 and diff_pq(a, b).q == 2)
    add("n4", "M1, M2 stable under both", CLAIMED,
        lambda: all(is_stable(i, m) for i in (a, b) for m in (m1, m2)))
    combo = meet(a, m1, m2)
    add("n4", "worker-best combination under A is {1a,2b,3d,4c}", CLAIMED,
        lambda: combo == _m(1, 2, 4, 3))
    add("n4", "(4,a) blocks that combination under B", CLAIMED,
        lambda: (4, 1) in blocking_pairs(b, combo))
    add("n4", "combination stable under A, unstable under B", CLAIMED,
        lambda: is_stable(a, combo) and not is_stable(b, combo))
    add("n4", "M1, M2 in the oracle intersection", DERIVED,
        lambda: {m1, m2} <= stable_intersection([a, b]))

    def not_sublattice():
        witness = check_sublattice(a, stable_intersection([a, b]))
        if witness is None:
            return False
        try:
            compression_from_membership(build_rotation_poset(a),
                                        lambda m: is_stable(b, m))
        except NotASublattice:
            return True
        return False

    add("n4", "intersection is not a sublattice of the first lattice", DERIVED,
        not_sublattice)


def _facts_n5_firms(add):
    a, b = load_pair("n5-firms")
    m1, m2 = _m(2, 1, 3, 4, 5), _m(1, 2, 4, 3, 5)
    m3, m4 = _m(2, 3, 4, 1, 5), _m(4, 1, 2, 3, 5)
    add("n5-firms", "delta is (0,2), firms b and c", CLAIMED,
        lambda: (diff_pq(a, b).p, diff_pq(a, b).q) == (0, 2)
        and diff_pq(a, b).changed_firms == frozenset({2, 3}))
    add("n5-firms", "M1, M2 stable under A", CLAIMED,
        lambda: is_stable(a, m1) and is_stable(a, m2))
    add("n5-firms", "(5,c) blocks M1 under B; (4,b) blocks M2 under B", CLAIMED,
        lambda: (5, 3) in blocking_pairs(b, m1) and (4, 2) in blocking_pairs(b, m2))
    add("n5-firms", "join under A of M1, M2 is {1b,2a,3d,4c,5e}, stable under both",
        CLAIMED,
        lambda: join(a, m1, m2) == _m(2, 1, 4, 3, 5)
        and all(is_stable(i, join(a, m1, m2)) for i in (a, b)))
    add("n5-firms", "M3, M4 stable under A and outside the B-stable set", DERIVED,
        lambda: {m3, m4} <= enumerate_stable_bruteforce(a)
        and not ({m3, m4} & enumerate_stable_bruteforce(b)))
    add("n5-firms", "meet under A of M3, M4 is {1b,2a,3d,4c,5e}, stable under both",
        CLAIMED,
        lambda: meet(a, m3, m4) == _m(2, 1, 4, 3, 5)
        and all(is_stable(i, meet(a, m3, m4)) for i in (a, b)))

    def semisublattice_fails():
        diff = enumerate_stable_bruteforce(a) - enumerate_stable_bruteforce(b)
        return (check_semisublattice(a, diff, "join") is not None
                and check_semisublattice(a, diff, "meet") is not None)

    add("n5-firms", "difference set fails both semi-sublattice closures", DERIVED,
        semisublattice_fails)

    def compound_matches_oracle():
        x = build_compound([a, b])
        inter = stable_intersection([a, b])
        wo, fo = worker_optimal_compound(x), firm_optimal_compound(x)
        return (wo in inter and fo in inter
                and all(dominates(a, wo, m) and dominates(a, m, fo) for m in inter))

    add("n5-firms", "compound DA outputs are the oracle extremes", DERIVED,
        compound_matches_oracle)

    def union_regenerates():
        poset = build_rotation_poset(a)
        comps = [compression_from_membership(poset, lambda m, h=h: is_stable(h, m))
                 for h in hybrid_instances_one_side(a, b)]
        return (set(union_edge_sets(poset, comps).iter_matchings())
                == set(stable_intersection([a, b])))

    add("n5-firms", "hybrid edge-set union regenerates the intersection", DERIVED,
        union_regenerates)


def _facts_n5_both(add):
    a, b = load_pair("n5-both")
    m1, m2 = _m(2, 3, 1, 4, 5), _m(1, 2, 3, 5, 4)
    m3, m4 = _m(3, 1, 2, 4, 5), _m(2, 3, 1, 5, 4)
    add("n5-both", "delta is (1,1), worker 3 and firm c", CLAIMED,
        lambda: (diff_pq(a, b).p, diff_pq(a, b).q) == (1, 1)
        and diff_pq(a, b).changed_workers == frozenset({3})
        and diff_pq(a, b).changed_firms == frozenset({3}))
    add("n5-both", "M1, M2 stable under A", CLAIMED,
        lambda: is_stable(a, m1) and is_stable(a, m2))
    add("n5-both", "(3,d) blocks M1 under B; (4,c) blocks M2 under B", CLAIMED,
        lambda: (3, 4) in blocking_pairs(b, m1) and (4, 3) in blocking_pairs(b, m2))
    add("n5-both", "worker-best of M1, M2 is {1a,2b,3c,4d,5e}, stable under both",
        CLAIMED,
        lambda: meet(a, m1, m2) == _m(1, 2, 3, 4, 5)
        and all(is_stable(i, meet(a, m1, m2)) for i in (a, b)))
    add("n5-both", "M3, M4 stable under A with B-blocks (3,d) and (4,c)", CLAIMED,
        lambda: is_stable(a, m3) and is_stable(a, m4)
        and (3, 4) in blocking_pairs(b, m3) and (4, 3) in blocking_pairs(b, m4))
    add("n5-both", "worker-worst of M3, M4 is {1c,2a,3b,4e,5d}, stable under both",
        CLAIMED,
        lambda: join(a, m3, m4) == _m(3, 1, 2, 5, 4)
        and all(is_stable(i, join(a, m3, m4)) for i in (a, b)))

    def semisublattice_fails():
        diff = enumerate_stable_bruteforce(a) - enumerate_stable_bruteforce(b)
        return (check_semisublattice(a, diff, "join") is not None
                and check_semisublattice(a, diff, "meet") is not None)

    add("n5-both", "difference set fails both semi-sublattice closures", DERIVED,
        semisublattice_fails)

    def agree_on_intersection():
        inter = sorted(stable_intersection([a, b]))
        return all(verify_join_meet_agree([a, b], x, y)
                   for i, x in enumerate(inter) for y in inter[i + 1:])

    add("n5-both", "meet/join agree across instances on intersection pairs",
        DERIVED, agree_on_intersection)


def _facts_n6(add):
    a, b = load_pair("n6")
    m1, m2 = _m(2, 1, 4, 3, 5, 6), _m(1, 2, 3, 4, 6, 5)
    x1, x2 = meet(a, m1, m2), join(a, m1, m2)
    y1, y2 = meet(b, m1, m2), join(b, m1, m2)
    add("n6", "delta is (2,2)", CLAIMED,
        lambda: (diff_pq(a, b).p, diff_pq(a, b).q) == (2, 2))
    add("n6", "X1={1a,2b,3c,4d,5e,6f} and X2={1b,2a,3d,4c,5f,6e}", CLAIMED,
        lambda: x1 == _m(1, 2, 3, 4, 5, 6) and x2 == _m(2, 1, 4, 3, 6, 5))
    add("n6", "Y1={1b,2a,3c,4d,5e,6f} and Y2={1a,2b,3d,4c,5f,6e}", CLAIMED,
        lambda: y1 == _m(2, 1, 3, 4, 5, 6) and y2 == _m(1, 2, 4, 3, 6, 5))
    add("n6", "X1 != Y1 and X2 != Y2", CLAIMED,
        lambda: x1 != y1 and x2 != y2)
    add("n6", "all six matchings oracle-stable under both", DERIVED,
        lambda: {m1, m2, x1, x2, y1, y2} <= stable_intersection([a, b]))
    add("n6", "intersection closed under both instances' meet and join", DERIVED,
        lambda: check_sublattice(a, stable_intersection([a, b])) is None
        and check_sublattice(b, stable_intersection([a, b])) is None)
    add("n6", "meet/join computed under A and B disagree on M1, M2", CLAIMED,
        lambda: not verify_join_meet_agree([a, b], m1, m2))

    def gate_rejects():
        try:
            check_one_side_fixed([a, b])
        except NotOneN:
            return True
        return False

    add("n6", "one-worker gate rejects the pair (p=2)", TRIVIAL, gate_rejects)


def run_casebook(raise_on_failure: bool = False) -> Report:
    """Verify every bundled fact; failures name the fixture and fact."""
    report = Report(command="paper-examples")

    def add(fixture, name, provenance, check):
        try:
            ok = bool(check())
            detail = provenance
        except Exception as exc:                 # a crash is a mismatch too
            ok = False
            detail = f"{provenance}; raised {type(exc).__name__}: {exc}"
        report.add(f"{fixture}: {name}", "pass" if ok else "fail", detail)

    _facts_n4(add)
    _facts_n5_firms(add)
    _facts_n5_both(add)
    _facts_n6(add)
    if raise_on_failure and not report.ok:
        failed = [v["name"] for v in report.verdicts if v["status"] == "fail"]
        raise FixtureMismatch(f"{len(failed)} fixture fact(s) failed: {failed}")
    return report
