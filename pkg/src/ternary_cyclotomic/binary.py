"""Closed-form coefficients of binary cyclotomic polynomials Phi_pq."""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPrimes, OutOfRange
from .numtheory import is_prime, mod_inverse


@dataclass(frozen=True)
class PartPair:
    """Decomposition m = p_part*p + q_part*q - wraps*p*q."""

    p_part: int
    q_part: int
    wraps: int


@dataclass(frozen=True)
class BinaryContext:
    p: int
    q: int
    rho: int
    sigma: int
    # p^-1 mod q and q^-1 mod p; they turn part extraction into one multiply.
    p_inv_q: int = field(repr=False)
    q_inv_p: int = field(repr=False)

    @property
    def n(self):
        return self.p * self.q

    @property
    def phi(self):
        return (self.p - 1) * (self.q - 1)


def make_context(p: int, q: int) -> BinaryContext:
    if not (2 < p < q and is_prime(p) and is_prime(q)):
        raise InvalidPrimes(f"need odd primes p < q, got ({p}, {q})")
    # 1 + pq = (rho+1)p + (sigma+1)q; reducing mod q fixes rho+1 = p^-1 mod q.
    p_inv_q = int(mod_inverse(p, q))
    q_inv_p = int(mod_inverse(q, p))
    rho = p_inv_q - 1
    sigma = q_inv_p - 1
    assert (rho + 1) * p + (sigma + 1) * q == 1 + p * q
    return BinaryContext(p, q, rho, sigma, p_inv_q, q_inv_p)


def parts(ctx: BinaryContext, m: int) -> PartPair:
    p, q = ctx.p, ctx.q
    if not 0 <= m < p * q:
        raise OutOfRange(f"m={m} outside [0, {p * q})")
    a = m * ctx.p_inv_q % q
    b = m * ctx.q_inv_p % p
    wraps = (a * p + b * q - m) // (p * q)
    return PartPair(a, b, wraps)


def a_pq(ctx: BinaryContext, m: int) -> int:
    if m < 0 or m >= ctx.p * ctx.q:
        return 0
    a = m * ctx.p_inv_q % ctx.q
    b = m * ctx.q_inv_p % ctx.p
    if a <= ctx.rho and b <= ctx.sigma:
        return 1
    if a > ctx.rho and b > ctx.sigma:
        return -1
    return 0


def same_range(ctx: BinaryContext, pp: PartPair) -> bool:
    low = pp.p_part <= ctx.rho and pp.q_part <= ctx.sigma
    high = pp.p_part > ctx.rho and pp.q_part > ctx.sigma
    return low or high


def a_pq_array(ctx: BinaryContext, m: np.ndarray) -> np.ndarray:
    """Vectorised a_pq for an int64 array of indices already reduced to [0, pq)."""
    a = m * ctx.p_inv_q % ctx.q
    b = m * ctx.q_inv_p % ctx.p
    low = (a <= ctx.rho) & (b <= ctx.sigma)
    high = (a > ctx.rho) & (b > ctx.sigma)
    return low.astype(np.int64) - high.astype(np.int64)
