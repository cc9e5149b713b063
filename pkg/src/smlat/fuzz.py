"""Randomized property harness wiring every engine to the brute-force oracle.

Instances are independent uniform permutations; a family fixes one set of p
workers and q firms and re-randomizes exactly those lists per extra instance
(possibly back to the same order).  For p <= 1 the module invariants are
asserted and any violation aborts with the reproduction seed; families with
p >= 2 require research mode, where sublattice-closure violations and
disagreeing outcomes are logged as findings rather than failures.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .compound import (build_compound, firm_optimal_compound,
                       is_strongly_stable, worker_optimal_compound)
from .core import Instance, Matching, dominates, is_stable, join, meet
from .errors import InvariantViolation
from .lp import INFEASIBLE, build_lp, rounding_agreement, solve_feasible, theta_samples
from .multiroom import (firm_optimal_multiroom, verify_join_meet_agree,
                        worker_optimal_multiroom)
from .oracle import enumerate_stable_bruteforce, stable_intersection
from .outcomes import NO_MATCH
from .report import Report
from .rotations import (build_rotation_poset, check_sublattice,
                        hybrid_instances_one_side, hybrid_instances_two_side)


@dataclass
class FuzzConfig:
    n: int = 5
    trials: int = 100
    p: int = 0
    q: int = 2
    seed: int = 0
    count: int = 2          # instances per family
    research: bool = False  # required when p >= 2
    lp: bool = True         # LP feasibility/rounding checks (the slowest part)
    # Uniform (2,2) perturbations essentially never hit a closure violation
    # (the structure needs coordinated twists), so the (2,2) n=4 research
    # search seeds its first trial with the bundled counterexample pair; the
    # violation is still recomputed by the oracle, never stored.
    seed_known_witness: bool = True


def random_instance(n: int, rng: random.Random, name: str = "") -> Instance:
    ids = list(range(1, n + 1))
    return Instance([rng.sample(ids, n) for _ in range(n)],
                    [rng.sample(ids, n) for _ in range(n)], name=name)


def perturbed_family(cfg: FuzzConfig, rng: random.Random) -> list[Instance]:
    base = random_instance(cfg.n, rng, name="A1")
    workers = rng.sample(range(1, cfg.n + 1), cfg.p)
    firms = rng.sample(range(1, cfg.n + 1), cfg.q)
    ids = list(range(1, cfg.n + 1))
    family = [base]
    for i in range(cfg.count - 1):
        family.append(base.with_rows(
            worker_rows={w: rng.sample(ids, cfg.n) for w in workers},
            firm_rows={f: rng.sample(ids, cfg.n) for f in firms},
            name=f"A{i + 2}"))
    return family


def _check_trial(cfg: FuzzConfig, family: list[Instance], report: Report,
                 trial: int, rng: random.Random) -> list[str]:
    """Assert the p <= 1 invariants for one family; returns failure strings."""
    fails = []

    def expect(cond, label):
        if not cond:
            fails.append(label)

    first = family[0]
    inter = stable_intersection(family)

    # sublattice structure: closure under each instance's meet and join,
    # and identical meet/join across instances on intersection pairs
    if cfg.p <= 1 or cfg.research:
        for idx, inst in enumerate(family):
            witness = check_sublattice(inst, inter)
            if witness is None:
                continue
            if cfg.p <= 1:
                fails.append(f"intersection not closed under instance {idx + 1}")
            else:
                report.add_witness("closure-violation", trial=trial,
                                   instance=idx + 1, op=witness[2],
                                   m1=str(witness[0]), m2=str(witness[1]),
                                   combined=str(witness[3]))
    if cfg.p <= 1:
        members = sorted(inter)
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                expect(verify_join_meet_agree(family, x, y),
                       "meet/join disagree across instances on intersection pair")

    # compound engine (shared worker lists only)
    if cfg.p == 0:
        x = build_compound(family)
        wo, fo = worker_optimal_compound(x), firm_optimal_compound(x)
        if inter:
            expect(wo in inter and fo in inter, "compound output not in intersection")
            if wo in inter and fo in inter:
                expect(all(dominates(first, wo, m) for m in inter),
                       "compound worker output not dominant")
                expect(all(dominates(first, m, fo) for m in inter),
                       "compound firm output not dominated")
        else:
            expect(wo is NO_MATCH and fo is NO_MATCH,
                   "compound missed empty intersection")
        if cfg.n <= 5:
            import itertools
            for perm in itertools.permutations(range(1, cfg.n + 1)):
                m = Matching(perm)
                expect(is_strongly_stable(x, m) == all(is_stable(i, m) for i in family),
                       "strong stability != stable under every instance")
                if fails:
                    break

    # multiroom engine
    mw = worker_optimal_multiroom(family, research=cfg.research)
    mf = firm_optimal_multiroom(family, research=cfg.research)
    if cfg.p <= 1:
        if inter:
            expect(mw in inter and mf in inter, "multiroom output not in intersection")
            if mw in inter and mf in inter:
                expect(all(dominates(first, mw, m) for m in inter),
                       "multiroom worker output not dominant")
                expect(all(dominates(first, m, mf) for m in inter),
                       "multiroom firm output not dominated")
        else:
            expect(mw is NO_MATCH and mf is NO_MATCH,
                   "multiroom missed empty intersection")
    else:
        report.add_witness("research-outcomes", trial=trial,
                           worker=str(mw), firm=str(mf),
                           intersection=len(inter))

    # rotation poset bijection on the base instance
    poset = build_rotation_poset(first)
    generated = list(poset.iter_matchings())
    oracle = enumerate_stable_bruteforce(first)
    expect(len(generated) == len(set(generated)) == len(oracle)
           and set(generated) == oracle, "poset closed sets != oracle stable set")

    # hybrid identities (pairwise with the second instance)
    if len(family) >= 2:
        a, b = family[0], family[1]
        if cfg.p == 0:
            hyb = hybrid_instances_one_side(a, b)
            expect(stable_intersection([a, *hyb]) == stable_intersection([a, b]),
                   "one-side hybrid identity failed")
        elif cfg.p == 1:
            hyb = hybrid_instances_two_side(a, b)
            hset = stable_intersection([a, *hyb])
            dset = stable_intersection([a, b])
            expect(hset <= dset, "two-side hybrid containment failed")
            if cfg.q <= 1:
                expect(hset == dset, "two-side hybrid identity failed at q<=1")
            elif hset != dset:
                report.add_witness("two-side-hybrid-gap", trial=trial,
                                   missing=len(dset - hset))

    # LP: joint feasibility matches oracle emptiness; rounding agrees
    if cfg.lp:
        x = solve_feasible(build_lp(family))
        if cfg.p <= 1:
            expect((x is not INFEASIBLE) == bool(inter),
                   "LP feasibility != oracle nonemptiness")
        if x is not INFEASIBLE:
            thetas = theta_samples(8, seed=cfg.seed * 100003 + trial)
            for a, b in zip(family, family[1:]):
                witness = rounding_agreement(x, a, b, thetas)
                if cfg.p <= 1:
                    expect(witness is None, "theta-rounding disagreement")
                elif witness is not None:
                    report.add_witness("rounding-disagreement", trial=trial,
                                       theta=str(witness[0]))
    return fails


def run_fuzz(cfg: FuzzConfig) -> Report:
    """Run the configured trials; raises InvariantViolation on any failure."""
    if cfg.p >= 2 and not cfg.research:
        raise ValueError("families with p >= 2 require research mode")
    t0 = time.time()
    report = Report(command="fuzz", inputs={
        "n": cfg.n, "trials": cfg.trials, "p": cfg.p, "q": cfg.q,
        "seed": cfg.seed, "count": cfg.count, "research": cfg.research})
    failures = 0
    for trial in range(cfg.trials):
        rng = random.Random((cfg.seed, trial))
        if (trial == 0 and cfg.seed_known_witness and cfg.research
                and cfg.n == 4 and (cfg.p, cfg.q) == (2, 2) and cfg.count == 2):
            from .fixtures import load_pair
            family = list(load_pair("n4"))
        else:
            family = perturbed_family(cfg, rng)
        fails = _check_trial(cfg, family, report, trial, rng)
        if fails:
            failures += 1
            for label in fails:
                report.add(f"trial {trial}: {label}", "fail",
                           f"seed={cfg.seed} trial={trial}")
            raise InvariantViolation(
                f"trial {trial} violated: {fails}; reproduce with "
                f"seed={cfg.seed}, n={cfg.n}, pq=({cfg.p},{cfg.q}), "
                f"count={cfg.count}")
    report.add(f"{cfg.trials} trials, ({cfg.p},{cfg.q}), n={cfg.n}", "pass",
               f"{len(report.witnesses)} findings logged")
    report.timings["total_s"] = round(time.time() - t0, 3)
    return report
