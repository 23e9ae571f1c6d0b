import random

import pytest

from memauto import kernels
from memauto.compiled import lower_abstract
from memauto.emptiness import decide_nonempty, random_walks
from memauto.membership import decide_membership
from randgen import random_hra, random_lama, random_nu

needs_native = pytest.mark.skipif("cython" not in kernels.AVAILABLE, reason="compiled kernels not built")


def words(rng, n=6):
    for _ in range(n):
        yield tuple(rng.choice("abcd") for _ in range(rng.randint(0, 5)))


@needs_native
def test_membership_parity():
    rng = random.Random(0)
    for seed in range(150):
        A = (random_lama, random_hra, random_nu)[seed % 3](random.Random(seed))
        for w in words(rng):
            a = decide_membership(A, w, backend="cython")
            b = decide_membership(A, w, backend="python")
            assert a.accepted == b.accepted
            if a.accepted:
                assert a.witness.length == b.witness.length


@needs_native
def test_abstract_search_parity():
    for seed in range(200):
        A = random_nu(random.Random(seed))
        a, b = decide_nonempty(A, backend="cython"), decide_nonempty(A, backend="python")
        assert a == b


@needs_native
def test_random_walk_parity():
    for seed in range(100):
        A = random_nu(random.Random(seed))
        assert random_walks(A, seed, 10, backend="cython") == random_walks(A, seed, 10, backend="python")


def test_unknown_backend():
    A = random_nu(random.Random(1))
    prog = lower_abstract(A, [])
    with pytest.raises(ValueError):
        kernels.abstract_search(prog, backend="fortran")
