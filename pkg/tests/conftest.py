import random

import pytest

from gasylv import FLOAT64, RATIONAL, Multivector, Signature


def all_signatures(max_dim, min_dim=1):
    return [
        Signature(p, n - p)
        for n in range(min_dim, max_dim + 1)
        for p in range(n + 1)
    ]


def random_mv(sig, rng, lo=-9, hi=9, ring=RATIONAL):
    return Multivector(
        sig,
        [rng.randint(lo, hi) for _ in range(sig.ncoeffs)],
        ring,
    )


def random_sparse_mv(sig, rng, nterms, lo=-9, hi=9):
    coeffs = [0] * sig.ncoeffs
    for _ in range(nterms):
        coeffs[rng.randrange(sig.ncoeffs)] = rng.randint(lo, hi)
    return Multivector(sig, coeffs)


@pytest.fixture
def rng():
    return random.Random(20210131)
