from fractions import Fraction

import pytest

from smlat.core import Matching, is_stable
from smlat.errors import BoundaryTheta
from smlat.lp import (FractionalMatching, INFEASIBLE, build_lp, rounding_agreement,
                      solve_feasible, theta_round, theta_samples)
from smlat.oracle import enumerate_stable_bruteforce, stable_intersection

from conftest import make_random_instance, perturb


def test_constraint_counts(pairs, rng):
    inst = make_random_instance(4, rng)
    assert build_lp([inst]).counts() == {
        "equality": 8, "stability": 16, "nonnegativity": 16}
    a5b, b5b = pairs["n5-both"]
    assert build_lp([a5b, b5b]).counts() == {
        "equality": 10, "stability": 50, "nonnegativity": 25}
    assert build_lp([a5b, b5b, a5b]).counts()["stability"] == 75


def test_single_instance_vertex_is_integral_stable(pairs, rng):
    a4, _ = pairs["n4"]
    x = solve_feasible(build_lp([a4]))
    assert x is not INFEASIBLE and x.is_integral()
    assert x.as_matching() in enumerate_stable_bruteforce(a4)
    for _ in range(15):
        inst = make_random_instance(rng.choice([2, 3, 4, 5, 6]), rng)
        x = solve_feasible(build_lp([inst]))
        assert x.is_integral()
        assert x.as_matching() in enumerate_stable_bruteforce(inst)
        assert x.row_sums() == [Fraction(1)] * inst.n
        assert x.col_sums() == [Fraction(1)] * inst.n


def test_joint_feasibility_iff_nonempty(rng):
    seen = {True: 0, False: 0}
    for _ in range(40):
        n = rng.choice([3, 4, 5])
        a = make_random_instance(n, rng)
        b = perturb(a, rng, workers=[rng.randrange(1, n + 1)],
                    firms=rng.sample(range(1, n + 1), rng.randrange(0, n + 1)))
        feasible = solve_feasible(build_lp([a, b])) is not INFEASIBLE
        nonempty = bool(stable_intersection([a, b]))
        assert feasible == nonempty
        seen[nonempty] += 1
    assert seen[True] > 3 and seen[False] > 3


def test_theta_round_integral_is_theta_free(pairs):
    a4, _ = pairs["n4"]
    x = solve_feasible(build_lp([a4]))
    m = x.as_matching()
    for theta in (Fraction(1, 7), Fraction(1, 2), Fraction(9, 10)):
        assert theta_round(x, a4, theta) == m


def test_theta_round_fractional_midpoint(pairs):
    a5b, b5b = pairs["n5-both"]
    inter = sorted(stable_intersection([a5b, b5b]))
    assert len(inter) == 2
    x1 = FractionalMatching.from_matching(inter[0])
    x2 = FractionalMatching.from_matching(inter[1])
    mid = FractionalMatching(5, tuple(
        tuple((a + b) / 2 for a, b in zip(r1, r2))
        for r1, r2 in zip(x1.values, x2.values)))
    for theta in (Fraction(1, 3), Fraction(2, 3), Fraction(9, 11)):
        ma = theta_round(mid, a5b, theta)
        mb = theta_round(mid, b5b, theta)
        assert ma == mb
        assert ma in inter
    assert rounding_agreement(mid, a5b, b5b,
                              [Fraction(1, 3), Fraction(2, 3)]) is None


def test_theta_round_boundary_raises(pairs):
    a5b, b5b = pairs["n5-both"]
    inter = sorted(stable_intersection([a5b, b5b]))
    x1 = FractionalMatching.from_matching(inter[0])
    x2 = FractionalMatching.from_matching(inter[1])
    mid = FractionalMatching(5, tuple(
        tuple((a + b) / 2 for a, b in zip(r1, r2))
        for r1, r2 in zip(x1.values, x2.values)))
    with pytest.raises(BoundaryTheta):
        theta_round(mid, a5b, Fraction(1, 2))
    with pytest.raises(ValueError):
        theta_round(mid, a5b, Fraction(3, 2))


def test_rounded_matchings_oracle_stable(rng):
    for _ in range(10):
        n = rng.choice([3, 4, 5, 6])
        inst = make_random_instance(n, rng)
        x = solve_feasible(build_lp([inst]))
        stable = enumerate_stable_bruteforce(inst)
        for theta in theta_samples(5, seed=1):
            assert theta_round(x, inst, theta) in stable


def test_theta_samples_deterministic_and_interior():
    a = theta_samples(25, seed=3)
    b = theta_samples(25, seed=3)
    assert a == b and len(a) == 25
    assert all(0 < t < 1 for t in a)
    assert theta_samples(25, seed=4) != a


def test_export_text(pairs):
    a4, b4 = pairs["n4"]
    text = build_lp([a4, b4]).export_text()
    assert "= 1" in text and "<= 0" in text and "x_1_1" in text
    # one line per equality and stability constraint plus header/footer
    assert len(text.strip().splitlines()) == 1 + 8 + 32 + 1


def test_research_pair_rounding_observational(pairs):
    # wider (2,2) families: rounding may disagree and that is only reported
    a4, b4 = pairs["n4"]
    x = solve_feasible(build_lp([a4, b4]))
    if x is INFEASIBLE:
        pytest.skip("joint model infeasible")
    witness = rounding_agreement(x, a4, b4, theta_samples(10, seed=2))
    assert witness is None or len(witness) == 3
