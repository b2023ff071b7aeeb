import itertools

import pytest
from hypothesis import settings

from ternary_cyclotomic import construction
from ternary_cyclotomic.numtheory import primes_between

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def ternary_triples(bound):
    """All odd-prime triples p < q < r with pqr < bound."""
    odd = primes_between(3, bound // 15 + 1)
    return [t for t in itertools.combinations(odd, 3) if t[0] * t[1] * t[2] < bound]


@pytest.fixture(scope="session")
def cert_p11():
    return construction.construct(1, 11, verify_mode="full")


@pytest.fixture(scope="session")
def flip_p11(cert_p11):
    return construction.delta_minus_variant(cert_p11, "full")
