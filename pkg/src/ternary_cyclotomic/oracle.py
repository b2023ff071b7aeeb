"""
Slow, trusted baselines for cyclotomic coefficients.

``phi_coeffs`` builds Phi_n from the factorisation prod (x^d - 1)^mu(n/d).
``ternary_product_coeffs`` streams Phi_pqr from the product

    (1 + x^pq + x^2pq + ...)(1 + ... + x^(p-1) - x^q - ... - x^(q+p-1)) Phi_pq(x^r)

with Phi_pq itself taken from ``phi_coeffs``.  Neither path touches the
closed-form binary coefficients or Kaplan's lemma.
"""

import csv
import io

import numpy as np

from .errors import InvariantViolation, PreconditionViolated, TooLarge
from .numtheory import divisors, euler_phi, is_prime, moebius

MAX_DEGREE = 5 * 10**7
NARROW = np.int8


def _mul_xd_minus_1(poly, d):
    out = np.zeros(len(poly) + d, dtype=np.int64)
    out[d:] += poly
    out[: len(poly)] -= poly
    return out


def _div_xd_minus_1(poly, d):
    # (x^d - 1) Q = P  gives  Q_i = Q_{i-d} - P_i, i.e. a negated cumulative
    # sum along each residue class mod d.
    n = len(poly)
    rows = -(-n // d)
    padded = np.zeros(rows * d, dtype=np.int64)
    padded[:n] = poly
    quot = -np.cumsum(padded.reshape(rows, d), axis=0).reshape(-1)[:n]
    if np.any(quot[n - d :]):
        raise InvariantViolation(f"x^{d} - 1 does not divide the running product")
    return quot[: n - d]


def phi_coeffs(n: int, max_degree: int = MAX_DEGREE) -> np.ndarray:
    """Coefficients of Phi_n, constant term first, as an int64 array."""
    if n < 1:
        raise PreconditionViolated("n must be positive")
    if n + 1 > max_degree:
        raise TooLarge(f"degree bound {n} exceeds {max_degree}")
    up, down = [], []
    for d in divisors(n):
        mu = moebius(n // d)
        if mu == 1:
            up.append(d)
        elif mu == -1:
            down.append(d)
    poly = np.ones(1, dtype=np.int64)
    for d in up:
        poly = _mul_xd_minus_1(poly, d)
    for d in down:
        poly = _div_xd_minus_1(poly, d)
    if len(poly) != euler_phi(n) + 1 or poly[-1] != 1:
        raise InvariantViolation(f"Phi_{n} came out with wrong degree or leading term")
    return poly


def iter_ternary_product(p: int, q: int, r: int, upto=None, block: int = 1 << 20):
    """
    Yield ``(start, coeffs)`` blocks of Phi_pqr up to degree ``upto``.

    Memory stays O(pq + block): the geometric factor is applied as a
    running sum with stride pq, carrying only the last pq values.
    """
    if not (2 < p < q < r and all(map(is_prime, (p, q, r)))):
        raise PreconditionViolated(f"need primes 2 < p < q < r, got ({p}, {q}, {r})")
    pq = p * q
    phi = (p - 1) * (q - 1) * (r - 1)
    if upto is None:
        upto = phi
    if not 0 <= upto <= phi:
        raise PreconditionViolated(f"upto={upto} outside [0, {phi}]")
    binary = phi_coeffs(pq)
    support = np.nonzero(binary)[0]
    signs = binary[support]
    span = q + p  # the middle factor has degree q + p - 1
    block = max(pq, block - block % pq)
    carry = np.zeros(pq, dtype=np.int64)
    start = 0
    while start <= upto:
        stop = min(start + block, upto + 1)
        g = np.zeros(block, dtype=np.int64)
        # terms a_pq(j) x^(rj) whose shifted window meets [start, stop)
        lo = np.searchsorted(support * r, start - span + 1)
        hi = np.searchsorted(support * r, stop - 1, side="right")
        for j, c in zip(support[lo:hi], signs[lo:hi]):
            base = int(j) * r - start
            for off, sign in ((0, 1), (q, -1)):
                a = max(base + off, 0)
                b = min(base + off + p, block)
                if a < b:
                    g[a:b] += sign * c
        rows = g.reshape(-1, pq)
        rows[0] += carry
        np.cumsum(rows, axis=0, out=rows)
        carry = rows[-1].copy()
        out = g[: stop - start]
        if np.abs(out).max(initial=0) > np.iinfo(NARROW).max:
            raise InvariantViolation("coefficient exceeds narrow storage")
        yield start, out.astype(NARROW)
        start = stop


def ternary_product_coeffs(p: int, q: int, r: int, upto=None, max_degree: int = MAX_DEGREE) -> np.ndarray:
    phi = (p - 1) * (q - 1) * (r - 1)
    n = (phi if upto is None else upto) + 1
    if n > max_degree:
        raise TooLarge(f"{n} coefficients exceed {max_degree}")
    return np.concatenate([c for _, c in iter_ternary_product(p, q, r, upto)])


def ternary_product_coeff_at(p: int, q: int, r: int, k: int) -> int:
    """Single coefficient by streaming the product through degree k."""
    last = None
    for start, block in iter_ternary_product(p, q, r, k):
        last = (start, block)
    start, block = last
    return int(block[k - start])


def to_csv(coeffs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "coefficient"])
    for i, c in enumerate(coeffs):
        w.writerow([i, int(c)])
    return buf.getvalue()
