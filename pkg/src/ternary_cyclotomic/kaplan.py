"""
Ternary coefficients a_pqr(k) via Kaplan's lemma.

Each coefficient is a signed sum of at most 2p binary coefficients, so a
single evaluation costs O(p) and needs no stored polynomial.  Full scans
are vectorised over blocks of consecutive k.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import binary
from .errors import InvariantViolation, PreconditionViolated, ScanTooLarge
from .numtheory import Residue, is_prime, mod_inverse, next_prime_in_ap

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
BLOCK = 1 << 18


@dataclass(frozen=True)
class KaplanContext:
    p: int
    q: int
    r: int
    binary: binary.BinaryContext
    r_inv: Residue

    @property
    def pq(self):
        return self.p * self.q

    @property
    def phi(self):
        return (self.p - 1) * (self.q - 1) * (self.r - 1)


def make_context(p: int, q: int, r: int) -> KaplanContext:
    if not (q < r and is_prime(r)):
        raise PreconditionViolated(f"need primes 2 < p < q < r, got ({p}, {q}, {r})")
    bctx = binary.make_context(p, q)
    return KaplanContext(p, q, r, bctx, mod_inverse(r, p * q))


@dataclass(frozen=True)
class CoefficientSet:
    values: tuple
    min: int
    max: int
    height: int
    # False when an early-exit scan stopped before k = phi(pqr).
    exhaustive: bool = True
    scanned: int = 0
    # smallest k attaining min and max
    argmin: int = 0
    argmax: int = 0

    @property
    def cardinality(self):
        return len(self.values)

    def is_interval(self, lo, hi):
        return self.values == tuple(range(lo, hi + 1))

    def to_dict(self):
        return {
            "values": list(self.values),
            "min": self.min,
            "max": self.max,
            "height": self.height,
            "cardinality": self.cardinality,
            "exhaustive": self.exhaustive,
            "scanned": self.scanned,
            "argmin": self.argmin,
            "argmax": self.argmax,
        }


def f_map(ctx: KaplanContext, k: int, m: int) -> int:
    return int(ctx.r_inv) * (k - m) % ctx.pq


def b_value(ctx: KaplanContext, k: int, i: int) -> int:
    if ctx.r * i > k:
        return 0
    return binary.a_pq(ctx.binary, i)


def a_pqr(ctx: KaplanContext, k: int) -> int:
    if k < 0:
        raise PreconditionViolated("k must be nonnegative")
    if k > ctx.phi:
        return 0
    total = 0
    for m in range(ctx.p):
        total += b_value(ctx, k, f_map(ctx, k, m))
        total -= b_value(ctx, k, f_map(ctx, k, m + ctx.q))
    return total


def a_pqr_block(ctx: KaplanContext, start: int, stop: int) -> np.ndarray:
    """Coefficients a_pqr(k) for start <= k < stop as an int64 array."""
    k = np.arange(start, stop, dtype=np.int64)
    k_mod = k % ctx.pq
    r_inv = int(ctx.r_inv)
    out = np.zeros(len(k), dtype=np.int64)
    for shift, sign in ((0, 1), (ctx.q, -1)):
        for m in range(ctx.p):
            f = (k_mod - (m + shift)) % ctx.pq * r_inv % ctx.pq
            b = binary.a_pq_array(ctx.binary, f)
            b[ctx.r * f > k] = 0
            if sign > 0:
                out += b
            else:
                out -= b
    out[k > ctx.phi] = 0
    return out


def _block_summary(ctx, start, stop):
    a = a_pqr_block(ctx, start, stop)
    jumps = np.abs(np.diff(a))
    if len(jumps) and jumps.max() > 1:
        i = int(np.argmax(jumps))
        raise InvariantViolation(f"jump-one fails at k={start + i} for {ctx.p, ctx.q, ctx.r}")
    lo, hi = int(a.min()), int(a.max())
    extremes = (lo, start + int(np.argmax(a == lo)), hi, start + int(np.argmax(a == hi)))
    return set(np.unique(a).tolist()), int(a[0]), int(a[-1]), extremes


def coefficient_set(
    ctx: KaplanContext,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    early_exit=None,
    block: int = BLOCK,
) -> CoefficientSet:
    """
    Distinct coefficients of Phi_pqr over 0 <= k <= phi(pqr).

    The range is cut into disjoint blocks whose value sets are merged by
    union, so the result does not depend on ``workers`` or ``block``.
    ``early_exit=(lo, hi)`` stops as soon as the observed set is exactly the
    interval [lo, hi]; the result is then flagged non-exhaustive.
    """
    n = ctx.phi + 1
    if n > budget:
        raise ScanTooLarge(f"phi(pqr)+1 = {n} exceeds scan budget {budget}")
    bounds = [(s, min(s + block, n)) for s in range(0, n, block)]
    values = set()
    scanned = 0
    edges = []
    argmin = argmax = None
    wave = max(1, workers)
    target = None if early_exit is None else set(range(early_exit[0], early_exit[1] + 1))
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for w in range(0, len(bounds), wave):
            chunk = bounds[w : w + wave]
            if pool is None:
                results = [_block_summary(ctx, s, e) for s, e in chunk]
            else:
                results = list(pool.map(lambda se: _block_summary(ctx, *se), chunk))
            for (s, e), (vals, first, last, (lo, klo, hi, khi)) in zip(chunk, results):
                values |= vals
                edges.append((s, first, last))
                scanned = e
                # blocks arrive in k order, so strict comparison keeps the first hit
                if argmin is None or lo < argmin[0]:
                    argmin = (lo, klo)
                if argmax is None or hi > argmax[0]:
                    argmax = (hi, khi)
            if target is not None and values == target:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    for (_, _, last), (s, first, _) in zip(edges, edges[1:]):
        if abs(first - last) > 1:
            raise InvariantViolation(f"jump-one fails at block edge k={s}")
    return _finish(ctx, values, scanned == n, scanned, argmin[1], argmax[1])


def _finish(ctx, values, exhaustive, scanned, argmin, argmax):
    vals = tuple(sorted(values))
    lo, hi = vals[0], vals[-1]
    if hi - lo > ctx.p:
        raise InvariantViolation(f"range {lo}..{hi} exceeds p={ctx.p}")
    if vals != tuple(range(lo, hi + 1)):
        raise InvariantViolation(f"coefficient set {vals} is not an interval")
    height = max(abs(lo), abs(hi))
    if height > ctx.p - 1:
        raise InvariantViolation(f"height {height} exceeds p-1")
    log.debug("scanned %d of %d indices for %s", scanned, ctx.phi + 1, (ctx.p, ctx.q, ctx.r))
    return CoefficientSet(vals, lo, hi, height, exhaustive, scanned, argmin, argmax)


def flip_partner(ctx: KaplanContext, budget: int = DEFAULT_BUDGET, workers: int = 1, verify=True):
    """
    Smallest prime s > pq with s = -r (mod pq), and whether A{pqs} = -A{pqr}.

    Verification is None when either scan would exceed ``budget``.
    """
    pq = ctx.pq
    if ctx.r <= pq:
        raise PreconditionViolated(f"flip needs r > pq, got r={ctx.r} <= {pq}")
    s = next_prime_in_ap(Residue(-ctx.r, pq), pq + 1)
    if not verify:
        return s, None
    other = make_context(ctx.p, ctx.q, s)
    if max(ctx.phi, other.phi) + 1 > budget:
        return s, None
    mine = coefficient_set(ctx, budget, workers)
    theirs = coefficient_set(other, budget, workers)
    return s, theirs.values == tuple(sorted(-v for v in mine.values))
