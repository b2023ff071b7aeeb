import numpy as np
import pytest

from conftest import ternary_triples
from ternary_cyclotomic import oracle
from ternary_cyclotomic.errors import PreconditionViolated, TooLarge
from ternary_cyclotomic.numtheory import euler_phi


def naive_phi(n):
    """Phi_n by repeated long division of x^n - 1 by Phi_d for proper divisors d."""
    cache = {}
    for m in range(1, n + 1):
        if n % m:
            continue
        num = [-1] + [0] * (m - 1) + [1]
        for d in range(1, m):
            if m % d == 0:
                num = _long_div(num, cache[d])
        cache[m] = num
    return cache[n]


def _long_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "division left a remainder"
    return out


def test_examples():
    assert oracle.phi_coeffs(6).tolist() == [1, -1, 1]
    assert oracle.phi_coeffs(15).tolist() == [1, -1, 0, 1, -1, 1, 0, -1, 1]
    assert oracle.phi_coeffs(105)[7] == -2
    assert oracle.phi_coeffs(1).tolist() == [-1, 1]


@pytest.mark.parametrize("n", list(range(1, 120)) + [210, 231, 385, 1155])
def test_mobius_product_matches_long_division(n):
    assert oracle.phi_coeffs(n).tolist() == naive_phi(n)


@pytest.mark.parametrize("p, q, r", ternary_triples(3000))
def test_product_identity_matches_mobius(p, q, r):
    dense = oracle.phi_coeffs(p * q * r)
    streamed = oracle.ternary_product_coeffs(p, q, r)
    assert streamed.dtype == np.int8
    assert np.array_equal(dense, streamed)
    assert dense.sum() == 1  # Phi_n(1) = 1 for n with >= 2 prime factors
    assert np.array_equal(dense, dense[::-1])
    assert len(dense) == euler_phi(p * q * r) + 1


def test_product_truncation_and_small_blocks():
    full = oracle.ternary_product_coeffs(3, 5, 7)
    assert oracle.ternary_product_coeffs(3, 5, 7, upto=0).tolist() == [1]
    assert oracle.ternary_product_coeffs(3, 5, 7, upto=48).tolist() == full.tolist()
    # blocks smaller than the stride get rounded up to pq; several blocks must agree
    blocks = list(oracle.iter_ternary_product(5, 7, 11, block=40))
    assert len(blocks) > 1
    joined = np.concatenate([b for _, b in blocks])
    assert np.array_equal(joined, oracle.phi_coeffs(385))


def test_streamed_coefficient_at_large_index():
    assert oracle.ternary_product_coeff_at(11, 107, 14813, 9509950) == 7


def test_errors():
    with pytest.raises(PreconditionViolated):
        oracle.ternary_product_coeffs(3, 5, 9)
    with pytest.raises(PreconditionViolated):
        oracle.ternary_product_coeffs(3, 5, 7, upto=49)
    with pytest.raises(TooLarge):
        oracle.phi_coeffs(10**6, max_degree=1000)
    with pytest.raises(TooLarge):
        oracle.ternary_product_coeffs(11, 107, 14813, max_degree=1000)


def test_csv():
    text = oracle.to_csv(oracle.phi_coeffs(6))
    assert text == "index,coefficient\n0,1\n1,-1\n2,1\n"
