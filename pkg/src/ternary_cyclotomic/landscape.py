"""
Residue sets B_1, B_2, B_3 and the lower bounds M_GM(p), M_R(p) for the
maximal height M(p) of ternary cyclotomic polynomials with smallest prime p.

beta* always denotes the inverse of beta modulo p, taken in [1, p-1].
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionViolated, PropositionMismatch
from .numtheory import is_prime, primes_between


def inverse_table(p: int) -> list:
    """inv[b] = b^-1 mod p for 1 <= b < p (inv[0] is unused)."""
    inv = [0, 1] + [0] * (p - 2)
    for b in range(2, p):
        inv[b] = (p - (p // b) * inv[p % b] % p) % p
    return inv


@dataclass(frozen=True)
class BetaProfile:
    p: int
    b1: frozenset
    b2: frozenset
    b3: frozenset
    m_gm: Optional[int]
    m_r: Optional[int]
    x0: Optional[int]
    in_P1: bool

    @property
    def b_gm(self):
        return self.b1 | self.b2

    @property
    def b_r(self):
        return self.b1 | self.b3

    def to_dict(self):
        return {
            "p": self.p,
            "B1": sorted(self.b1),
            "B2": sorted(self.b2),
            "B3": sorted(self.b3),
            "B_GM": sorted(self.b_gm),
            "B_R": sorted(self.b_r),
            "M_GM": self.m_gm,
            "M_R": self.m_r,
            "x0": self.x0,
            "in_P1": self.in_P1,
        }


def _check_p(p, least=5):
    if p < least or not is_prime(p):
        raise PreconditionViolated(f"need a prime p >= {least}, got {p}")


def beta_profile(p: int) -> BetaProfile:
    _check_p(p)
    inv = inverse_table(p)
    b1, b2, b3 = set(), set(), set()
    for b in range(1, (p - 3) // 2 + 1):
        bs = inv[b]
        if b + bs >= p and bs <= 2 * b:
            b1.add(b)
        if p <= b + 2 * bs + 1 and b > bs:
            b2.add(b)
        if p <= 2 * b + bs and b >= bs:
            b3.add(b)
    gm, r = b1 | b2, b1 | b3
    x0, in_p1 = x0_classify(p)
    return BetaProfile(
        p,
        frozenset(b1),
        frozenset(b2),
        frozenset(b3),
        p - min(gm) if gm else None,
        p - min(r) if r else None,
        x0,
        in_p1,
    )


def m_p_claims(p: int) -> list:
    """
    Claims about m_p(a), the eventual value of M(p;q) for primes q = a (mod p).

    Returns dicts with keys a, kind ("exact" or "lower_bound"), value and
    source ("GM" for the Gallot-Moree family, "R" for the shifted family).
    """
    prof = beta_profile(p)
    inv = inverse_table(p)
    claims = []
    for b in sorted(prof.b_gm):
        exact = b in prof.b1 and b + inv[b] == p
        claims.append({"a": b, "kind": "exact" if exact else "lower_bound", "value": p - b, "source": "GM"})
    for b in sorted(prof.b_r):
        claims.append({"a": p - inv[b], "kind": "exact", "value": p - b, "source": "R"})
    return claims


def x0_classify(p: int):
    """Smallest positive root of x^2 + 1 mod p (None unless p = 1 mod 4) and membership in P1."""
    if p < 3 or not is_prime(p):
        raise PreconditionViolated(f"need an odd prime, got {p}")
    if p % 4 != 1:
        return None, False
    # any quadratic non-residue c gives c^((p-1)/4) as a square root of -1
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    x = pow(c, (p - 1) // 4, p)
    x0 = min(x, p - x)
    return x0, 3 * x0 >= p and x0 <= (p - 3) // 2


def s1_s2_intersection(p: int) -> set:
    prof = beta_profile(p)
    inv = inverse_table(p)
    s1 = set(prof.b_gm)
    s2 = {p - inv[b] for b in prof.b_r}
    both = s1 & s2
    expected = {prof.x0} if prof.in_P1 else set()
    if both != expected:
        raise PropositionMismatch(f"p={p}: S1 & S2 = {sorted(both)}, x0 rule predicts {sorted(expected)}")
    return both


@dataclass(frozen=True)
class CobeliCheck:
    p: int
    bound: float
    holds_gm: bool
    holds_r: bool
    slack_gm: float
    slack_r: float

    def to_dict(self):
        return dict(self.__dict__)


def cobeli_check(p: int) -> CobeliCheck:
    """Compare #B_GM and #B_R with p/16 and p/12 against 8 sqrt(p) (log p + 2)^3."""
    prof = beta_profile(p)
    bound = 8 * math.sqrt(p) * (math.log(p) + 2) ** 3
    dev_gm = abs(len(prof.b_gm) - p / 16)
    dev_r = abs(len(prof.b_r) - p / 12)
    return CobeliCheck(p, bound, dev_gm <= bound, dev_r <= bound, bound - dev_gm, bound - dev_r)


def scan_exceeding(x: int) -> list:
    """Primes 5 <= p <= x where both bounds exist and M_R(p) > M_GM(p)."""
    if x < 5:
        raise PreconditionViolated("scan bound must be at least 5")
    out = []
    for p in primes_between(5, x):
        prof = beta_profile(p)
        if prof.m_gm is not None and prof.m_r is not None and prof.m_r > prof.m_gm:
            out.append(p)
    return out


def exceedance_report(x: int) -> dict:
    primes, gaps = [], {}
    for p in primes_between(5, x):
        prof = beta_profile(p)
        if prof.m_gm is not None and prof.m_r is not None and prof.m_r > prof.m_gm:
            primes.append(p)
            gaps[p] = prof.m_r - prof.m_gm
    worst = max(gaps, key=lambda p: (gaps[p], -p), default=None)
    return {
        "max": x,
        "primes": primes,
        "count": len(primes),
        "max_gap": gaps.get(worst),
        "max_gap_at": worst,
    }


CSV_HEADER = ["p", "card_B1", "card_B2", "card_B3", "M_GM", "M_R", "x0", "in_P1"]


def profiles_csv(profiles) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for prof in profiles:
        w.writerow([
            prof.p,
            len(prof.b1),
            len(prof.b2),
            len(prof.b3),
            "undefined" if prof.m_gm is None else prof.m_gm,
            "undefined" if prof.m_r is None else prof.m_r,
            "" if prof.x0 is None else prof.x0,
            str(prof.in_P1).lower(),
        ])
    return buf.getvalue()
