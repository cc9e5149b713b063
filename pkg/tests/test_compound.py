import itertools

import pytest

from smlat.compound import (build_compound, firm_optimal_compound,
                            intersection_is_sublattice_check, is_strongly_stable,
                            strong_blocking_pairs, worker_optimal_compound)
from smlat.core import Matching, dominates, is_stable
from smlat.da import firm_da, worker_da
from smlat.errors import WorkerListsDiffer
from smlat.oracle import stable_intersection
from smlat.outcomes import NO_MATCH

from conftest import make_random_instance, perturb


def test_build_requires_identical_worker_lists(pairs):
    a4, b4 = pairs["n4"]                          # workers 3,4 differ
    with pytest.raises(WorkerListsDiffer):
        build_compound([a4, b4])


def test_identical_sources_give_total_orders(rng):
    inst = make_random_instance(4, rng)
    x = build_compound([inst, inst])
    assert x.total_order_firms() == [1, 2, 3, 4]
    assert worker_optimal_compound(x) == worker_da(inst)
    assert firm_optimal_compound(x) == firm_da(inst)


def test_single_source_is_isomorphic(rng):
    inst = make_random_instance(5, rng)
    x = build_compound([inst])
    assert x.total_order_firms() == [1, 2, 3, 4, 5]
    assert worker_optimal_compound(x) == worker_da(inst)


def test_pinned_incomparability(pairs):
    a5, b5 = pairs["n5-firms"]
    x = build_compound([a5, b5])
    # firm b rated workers 1 and 3 oppositely in the two sources
    assert x.indifferent(2, 1, 3)
    assert not x.prefers(2, 1, 3) and not x.prefers(2, 3, 1)


def test_strong_stability_equivalence_exhaustive(pairs, rng):
    a5, b5 = pairs["n5-firms"]
    x = build_compound([a5, b5])
    for perm in itertools.permutations(range(1, 6)):
        m = Matching(perm)
        assert (not strong_blocking_pairs(x, m)) == (is_stable(a5, m) and is_stable(b5, m))
    # and on random (0,k) families
    for _ in range(15):
        n = rng.choice([3, 4])
        base = make_random_instance(n, rng)
        fam = [base] + [perturb(base, rng, firms=rng.sample(range(1, n + 1), 2))
                        for _ in range(rng.choice([1, 2]))]
        x = build_compound(fam)
        for perm in itertools.permutations(range(1, n + 1)):
            m = Matching(perm)
            assert is_strongly_stable(x, m) == all(is_stable(i, m) for i in fam)


def test_pinned_strong_blocking_witness(pairs):
    a5, b5 = pairs["n5-firms"]
    x = build_compound([a5, b5])
    m1 = Matching([2, 1, 3, 4, 5])
    pairs_found = strong_blocking_pairs(x, m1)
    assert pairs_found
    assert (5, 3) in pairs_found                  # the blocking pair under b5


def test_engines_match_oracle_extremes(rng):
    for trial in range(120):
        n = rng.choice([3, 4, 5])
        base = make_random_instance(n, rng)
        k = rng.choice([2, 3])
        q = rng.randrange(0, n + 1)
        firms = rng.sample(range(1, n + 1), q)
        fam = [base] + [perturb(base, rng, firms=firms) for _ in range(k - 1)]
        inter = stable_intersection(fam)
        x = build_compound(fam)
        wo, fo = worker_optimal_compound(x), firm_optimal_compound(x)
        if inter:
            assert wo in inter and fo in inter
            assert all(dominates(base, wo, m) for m in inter)
            assert all(dominates(base, m, fo) for m in inter)
        else:
            assert wo is NO_MATCH and fo is NO_MATCH


def test_no_match_reachable(rng):
    # (0,q) families with empty intersections exist; engines must certify them
    seen_empty = 0
    for _ in range(200):
        n = 4
        base = make_random_instance(n, rng)
        fam = [base, perturb(base, rng, firms=[1, 2])]
        if not stable_intersection(fam):
            x = build_compound(fam)
            assert worker_optimal_compound(x) is NO_MATCH
            assert firm_optimal_compound(x) is NO_MATCH
            seen_empty += 1
    assert seen_empty > 0


def test_intersection_sublattice_check(pairs, rng):
    a5, b5 = pairs["n5-firms"]
    assert intersection_is_sublattice_check([a5, b5]) is None
    inst = make_random_instance(4, rng)
    assert intersection_is_sublattice_check([inst, inst]) is None
