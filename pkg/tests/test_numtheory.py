import random
from math import gcd, isqrt

import pytest
from hypothesis import given, strategies as st

from ternary_cyclotomic.errors import NotInvertible, PreconditionViolated
from ternary_cyclotomic.numtheory import (
    Residue,
    divisors,
    euler_phi,
    is_prime,
    mod_inverse,
    moebius,
    next_prime_in_ap,
    nth_prime_in_ap,
    primes_between,
)


def trial_division(n):
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


def sieve(limit):
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            for j in range(i * i, limit + 1, i):
                flags[j] = False
    return flags


@pytest.mark.parametrize("n, expected", [(2, True), (1177, False), (14813, True), (0, False), (1, False), (4, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected
    assert trial_division(n) is expected


def test_is_prime_matches_sieve_below_a_million():
    flags = sieve(10**6)
    assert [n for n in range(10**6) if is_prime(n)] == [n for n, f in enumerate(flags) if f]


@pytest.mark.parametrize(
    "n, expected",
    [
        (2**61 - 1, True),
        (2**64 - 59, True),  # largest 64-bit prime
        (3825123056546413051, False),  # strong pseudoprime to bases 2..23
        (4294967291 * 4294967279, False),  # product of the two largest 32-bit primes
        (2**64 - 1, False),
    ],
)
def test_is_prime_large(n, expected):
    assert is_prime(n) is expected


def test_primes_between():
    assert primes_between(10, 30) == [11, 13, 17, 19, 23, 29]
    assert primes_between(0, 1) == []


@pytest.mark.parametrize("a, m, expected", [(3, 11, 4), (1, 7, 1), (1, 1177, 1), (41, 1177, 689)])
def test_mod_inverse_examples(a, m, expected):
    inv = mod_inverse(a, m)
    assert inv == expected
    assert inv.modulus == m
    assert a * inv % m == 1


def test_mod_inverse_random_pairs():
    rng = random.Random(20101)
    done = 0
    while done < 10**4:
        m = rng.randrange(2, 10**12)
        a = rng.randrange(-(10**12), 10**12)
        if gcd(a, m) != 1:
            continue
        x = mod_inverse(a, m)
        assert 0 < x < m and a * x % m == 1
        done += 1


def test_mod_inverse_not_invertible():
    with pytest.raises(NotInvertible):
        mod_inverse(6, 9)


def test_residue_reduces():
    r = Residue(-1, 15)
    assert r == 14 and r.value == 14 and r.modulus == 15
    with pytest.raises(PreconditionViolated):
        Residue(1, 0)


@pytest.mark.parametrize("a, m, lower, expected", [(8, 11, 66, 107), (1, 2, 3, 3), (5, 23, 299, 373), (689, 1177, 1178, 14813)])
def test_next_prime_in_ap_examples(a, m, lower, expected):
    assert next_prime_in_ap(Residue(a, m), lower) == expected


@given(m=st.integers(1, 500), a=st.integers(0, 10**4), lower=st.integers(1, 10**5))
def test_next_prime_in_ap_is_minimal(m, a, lower):
    if gcd(a % m, m) != 1:
        return
    p = next_prime_in_ap(Residue(a, m), lower)
    assert trial_division(p) and p >= lower and p % m == a % m
    assert not any(trial_division(n) for n in range(lower, p) if n % m == a % m)


def test_nth_prime_in_ap():
    assert nth_prime_in_ap(Residue(8, 11), 66, 2) == 151
    with pytest.raises(PreconditionViolated):
        next_prime_in_ap(Residue(3, 6), 1)


def test_phi_and_mu():
    assert euler_phi(105) == 48
    assert moebius(105) == -1
    assert moebius(4) == 0
    assert moebius(1) == 1 and euler_phi(1) == 1
    for n in range(1, 300):
        assert euler_phi(n) == sum(1 for j in range(1, n + 1) if gcd(j, n) == 1)
        # Moebius inversion: sum over divisors is [n == 1]
        assert sum(moebius(d) for d in divisors(n)) == (1 if n == 1 else 0)
