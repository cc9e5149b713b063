import random

import pytest

from smlat.core import Instance
from smlat.fixtures import load_pair


def make_random_instance(n, rng, name=""):
    ids = list(range(1, n + 1))
    return Instance([rng.sample(ids, n) for _ in range(n)],
                    [rng.sample(ids, n) for _ in range(n)], name=name)


def perturb(inst, rng, workers=(), firms=()):
    ids = list(range(1, inst.n + 1))
    return inst.with_rows(
        worker_rows={w: rng.sample(ids, inst.n) for w in workers},
        firm_rows={f: rng.sample(ids, inst.n) for f in firms})


def random_family(n, p, q, rng, count=2):
    base = make_random_instance(n, rng)
    ws = rng.sample(range(1, n + 1), p)
    fs = rng.sample(range(1, n + 1), q)
    return [base] + [perturb(base, rng, ws, fs) for _ in range(count - 1)]


@pytest.fixture
def rng():
    return random.Random(0xBEEF)


@pytest.fixture(scope="session")
def pairs():
    return {name: load_pair(name) for name in ("n4", "n5-firms", "n5-both", "n6")}


def identity_instance(n):
    rows = [list(range(1, n + 1)) for _ in range(n)]
    return Instance(rows, [list(r) for r in rows], name=f"identity{n}")
