from smlat.core import Matching, dominates, is_stable
from smlat.da import firm_da, run_firm_da, run_worker_da, worker_da
from smlat.oracle import enumerate_stable_bruteforce

from conftest import identity_instance, make_random_instance


def test_identity_instance_forces_diagonal():
    inst = identity_instance(5)
    assert worker_da(inst) == Matching([1, 2, 3, 4, 5])
    assert firm_da(inst) == Matching([1, 2, 3, 4, 5])


def test_n1():
    inst = identity_instance(1)
    assert worker_da(inst) == Matching([1])


def test_extremes_against_oracle(rng):
    for _ in range(40):
        inst = make_random_instance(rng.choice([2, 3, 4, 5, 6]), rng)
        stable = enumerate_stable_bruteforce(inst)
        top, bottom = worker_da(inst), firm_da(inst)
        assert top in stable and bottom in stable
        assert all(dominates(inst, top, m) for m in stable)
        assert all(dominates(inst, m, bottom) for m in stable)
        if len(stable) == 1:
            assert top == bottom


def test_fixture_extremes(pairs):
    a6, _ = pairs["n6"]
    stable = enumerate_stable_bruteforce(a6)
    assert all(dominates(a6, worker_da(a6), m) for m in stable)
    assert all(dominates(a6, m, firm_da(a6)) for m in stable)


def test_rejection_soundness(rng):
    # any pair rejected during DA appears in no stable matching
    for _ in range(20):
        inst = make_random_instance(rng.choice([3, 4, 5]), rng)
        stable = enumerate_stable_bruteforce(inst)
        _, rejections = run_worker_da(inst)
        for _, w, f in rejections:
            assert all(m.firm_of(w) != f for m in stable)
        _, rejections = run_firm_da(inst)
        for _, f, w in rejections:
            assert all(m.firm_of(w) != f for m in stable)


def test_round_bound_and_trace_determinism(rng):
    for _ in range(10):
        inst = make_random_instance(6, rng)
        m1, trace1 = run_worker_da(inst)
        m2, trace2 = run_worker_da(inst)
        assert m1 == m2 and trace1 == trace2
        assert all(rnd <= inst.n * inst.n for rnd, _, _ in trace1)


def test_stability(rng):
    for _ in range(20):
        inst = make_random_instance(rng.choice([2, 5, 7]), rng)
        assert is_stable(inst, worker_da(inst))
        assert is_stable(inst, firm_da(inst))
