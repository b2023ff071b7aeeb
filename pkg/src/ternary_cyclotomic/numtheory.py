"""
Exact integer primitives: primality, inverses, phi, mu and prime search
in arithmetic progressions.

Everything operates on Python ints, so there is no overflow at any size.
"""

from math import gcd, isqrt

from .errors import NotInvertible, PreconditionViolated, SearchOverflow

# Deterministic for n < 3.3 * 10**24, which covers the full 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = _MR_BASES

SEARCH_LIMIT = 1 << 64


class Residue(int):
    """A reduced residue class; behaves as its representative in [0, modulus)."""

    modulus: int

    def __new__(cls, value, modulus):
        if modulus <= 0:
            raise PreconditionViolated(f"modulus must be positive, got {modulus}")
        obj = super().__new__(cls, value % modulus)
        obj.modulus = modulus
        return obj

    @property
    def value(self):
        return int(self)

    def __repr__(self):
        return f"Residue({int(self)}, {self.modulus})"

    def __reduce__(self):
        return (Residue, (int(self), self.modulus))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def ext_gcd(a: int, b: int):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def mod_inverse(a: int, m: int) -> Residue:
    if m <= 0:
        raise PreconditionViolated(f"modulus must be positive, got {m}")
    g, x, _ = ext_gcd(a % m, m)
    if g != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m} (gcd {g})")
    if m == 1:
        # Z/1Z is the zero ring; 0 is the only (and inverse) element.
        return Residue(0, 1)
    return Residue(x, m)


def next_prime_in_ap(a: Residue, lower: int, limit: int = SEARCH_LIMIT) -> int:
    """Smallest prime >= lower that is congruent to a modulo a.modulus."""
    m = a.modulus
    if gcd(int(a), m) != 1:
        raise PreconditionViolated(f"class {int(a)} mod {m} contains at most one prime")
    n = lower + (int(a) - lower) % m
    while n < limit:
        if is_prime(n):
            return n
        n += m
    raise SearchOverflow(f"no prime = {int(a)} mod {m} in [{lower}, {limit})")


def nth_prime_in_ap(a: Residue, lower: int, j: int) -> int:
    """The j-th (1-based) prime >= lower in the class a."""
    if j < 1:
        raise PreconditionViolated("family index starts at 1")
    n = lower
    for _ in range(j):
        found = next_prime_in_ap(a, n)
        n = found + 1
    return found


def factorize(n: int) -> dict:
    """Prime factorization by trial division; fine for the sizes used here."""
    if n < 1:
        raise PreconditionViolated("factorize needs n >= 1")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def primes_between(lo: int, hi: int) -> list:
    """Primes p with lo <= p <= hi, by an Eratosthenes sieve."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]
