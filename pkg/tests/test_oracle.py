import itertools

import numpy as np
import pytest

from smlat import _kernels
from smlat.core import Instance, Matching, is_stable
from smlat.errors import CapExceeded
from smlat.oracle import enumerate_stable_bruteforce, stable_intersection

from conftest import identity_instance, make_random_instance


def brute_force_reference(inst):
    """Definition-level oracle kept independent of the kernel path."""
    out = set()
    for perm in itertools.permutations(range(1, inst.n + 1)):
        m = Matching(perm)
        if is_stable(inst, m):
            out.add(m)
    return out


def test_identity_instance_has_unique_stable_matching():
    inst = identity_instance(4)
    assert enumerate_stable_bruteforce(inst) == {Matching([1, 2, 3, 4])}


def test_kernel_agrees_with_reference(rng):
    for _ in range(30):
        inst = make_random_instance(rng.choice([1, 2, 3, 4, 5]), rng)
        assert set(enumerate_stable_bruteforce(inst)) == brute_force_reference(inst)


def test_pinned_counterexample_sets(pairs):
    a4, b4 = pairs["n4"]
    sa = enumerate_stable_bruteforce(a4)
    assert Matching([1, 2, 3, 4]) in sa and Matching([2, 1, 4, 3]) in sa
    a6, b6 = pairs["n6"]
    inter = stable_intersection([a6, b6])
    for firms in ([2, 1, 4, 3, 5, 6], [1, 2, 3, 4, 6, 5],
                  [1, 2, 3, 4, 5, 6], [2, 1, 4, 3, 6, 5],
                  [2, 1, 3, 4, 5, 6], [1, 2, 4, 3, 6, 5]):
        assert Matching(firms) in inter


def test_cap_enforced(rng):
    inst = make_random_instance(5, rng)
    with pytest.raises(CapExceeded):
        enumerate_stable_bruteforce(inst, cap=4)
    assert enumerate_stable_bruteforce(inst, cap=5)


def test_cap_env_override(rng, monkeypatch):
    inst = make_random_instance(4, rng)
    monkeypatch.setenv("SMLAT_ORACLE_CAP", "3")
    with pytest.raises(CapExceeded):
        enumerate_stable_bruteforce(inst)


def test_numpy_and_numba_paths_agree(rng):
    for _ in range(10):
        inst = make_random_instance(rng.choice([3, 4, 5, 6]), rng)
        wrank = np.array(inst.worker_rank, dtype=np.int64)
        frank = np.array(inst.firm_rank, dtype=np.int64)
        perms = np.array(list(itertools.permutations(range(inst.n))), dtype=np.int64)
        via_numpy = _kernels.stable_mask_numpy(wrank, frank, perms)
        if _kernels.stable_mask_numba is not None:
            via_numba = _kernels.stable_mask_numba(wrank, frank, perms)
            assert np.array_equal(via_numpy, via_numba)
        expected = np.array([is_stable(inst, Matching([p + 1 for p in row]))
                             for row in perms.tolist()])
        assert np.array_equal(via_numpy, expected)


def test_backend_selection_env():
    import subprocess
    import sys
    code = ("import os; os.environ['SMLAT_NO_NUMBA']='1'; "
            "import smlat._kernels as k; print(k.BACKEND)")
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
