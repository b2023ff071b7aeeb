"""
Counterexamples to the Beiter bound |a_pqr(k)| <= (p+1)/2.

For odd l and a prime p >= l^2 + 3l + 5 the pipeline picks q in the class
2/(l+2) mod p, derives the structure constants, searches r in a class mod
pq and predicts two indices k+ and k- where a_pqr reaches (p+l+2)/2 and
-(p-l-2)/2.  Every prediction is re-evaluated with Kaplan's lemma; nothing
about the outcome is assumed.
"""

import json
from dataclasses import dataclass, field, replace
from typing import Optional

from . import binary, kaplan
from .errors import (
    CertificationFailed,
    HypothesisViolated,
    InexactDivision,
    IntervalMiss,
    InvariantViolation,
    PreconditionViolated,
    RangeViolation,
    TableMismatch,
)
from .numtheory import Residue, is_prime, mod_inverse, nth_prime_in_ap

VERIFY_MODES = ("extremes", "full")


@dataclass(frozen=True)
class ConstructionParams:
    l: int
    p: int
    w: int
    branch: int
    boundary_w: bool
    q: int
    rho: int
    sigma: int
    s: int
    tau: int
    r: int
    q_index: int = 1
    r_index: int = 1

    @property
    def pq(self):
        return self.p * self.q

    @property
    def phi(self):
        return (self.p - 1) * (self.q - 1) * (self.r - 1)

    @property
    def top(self):
        """Predicted maximum (p+l+2)/2."""
        return (self.p + self.l + 2) // 2

    @property
    def bottom(self):
        """Predicted minimum -(p-l-2)/2."""
        return -(self.p - self.l - 2) // 2


@dataclass(frozen=True)
class TargetIndex:
    u: Optional[int]
    t: Optional[int]
    k: int
    alpha: Optional[int]


@dataclass
class ConstructionCertificate:
    params: ConstructionParams
    k_plus: TargetIndex
    k_minus: TargetIndex
    a_plus: int
    a_minus: int
    set_min: int
    set_max: int
    delta: int
    full_scan: bool
    verified: bool
    cardinality: Optional[int] = None
    kind: str = "delta_plus"
    flip_of: Optional[int] = None
    failure: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(certificate_to_dict(self), indent=2) + "\n"


def _check_l_p(l, p):
    if l < 1 or l % 2 == 0:
        raise HypothesisViolated(f"l must be an odd positive integer, got {l}")
    if not is_prime(p):
        raise HypothesisViolated(f"p={p} is not prime")
    if p < l * l + 3 * l + 5:
        raise HypothesisViolated(f"p={p} < l^2+3l+5 = {l * l + 3 * l + 5}")


def residue_w(l: int, p: int):
    """w = 2/(l+2) mod p, the branch it selects and whether it is a boundary value."""
    _check_l_p(l, p)
    w = Residue(2 * int(mod_inverse(l + 2, p)), p)
    if l + 2 <= w <= (p - l - 2) // 2:
        branch = 1
    elif (p + l + 2) // 2 <= w <= p - l - 2:
        branch = 2
    else:
        raise IntervalMiss(f"w={int(w)} outside both admissible intervals for l={l}, p={p}")
    boundary = int(w) in ((p - l - 2) // 2, (p + l + 2) // 2)
    return w, branch, boundary


def find_q(l: int, p: int, j: int = 1) -> int:
    w, _, _ = residue_w(l, p)
    return nth_prime_in_ap(w, (p + l) * p // 2, j)


def structure_constants(l: int, p: int, q: int):
    """(rho, sigma, s, tau) for the pair (p, q), with every structural inequality checked."""
    num = p * q - (l + 2) * q - 2 * p + 2
    if num % (2 * p):
        raise InexactDivision(f"pq-(l+2)q-2p+2 = {num} is not divisible by 2p")
    rho = num // (2 * p)
    sigma = (p + l) // 2
    ctx = binary.make_context(p, q)
    if (ctx.rho, ctx.sigma) != (rho, sigma):
        raise InvariantViolation(
            f"closed forms give (rho, sigma)=({rho}, {sigma}), binary context has ({ctx.rho}, {ctx.sigma})"
        )
    half = (p + l) // 2
    s, tau = divmod(rho, half)
    checks = {
        "2*rho < q": 2 * rho < q,
        "q >= sp+1": q >= s * p + 1,
        "q >= (tau+1)p": q >= (tau + 1) * p,
        "s >= l+2": s >= l + 2,
        "q - s(p-l-2)/2 > rho": q - s * (p - l - 2) // 2 > rho,
    }
    bad = [name for name, ok in checks.items() if not ok]
    if bad:
        raise InvariantViolation(f"structure constants for (l,p,q)=({l},{p},{q}) violate {bad}")
    return rho, sigma, s, tau


def r_class(p, q, s, branch) -> Residue:
    c = mod_inverse(q - s * p, p * q)
    return Residue(-int(c) if branch == 1 else int(c), p * q)


def find_r(params: ConstructionParams, j: int = 1) -> int:
    pq = params.pq
    return nth_prime_in_ap(r_class(params.p, params.q, params.s, params.branch), pq + 1, j)


def make_params(l: int, p: int, q_index: int = 1, r_index: int = 1) -> ConstructionParams:
    w, branch, boundary = residue_w(l, p)
    q = find_q(l, p, q_index)
    rho, sigma, s, tau = structure_constants(l, p, q)
    params = ConstructionParams(l, p, int(w), branch, boundary, q, rho, sigma, s, tau, 0, q_index, r_index)
    return replace(params, r=find_r(params, r_index))


def placement(u: int, alpha: int, r: int, pq: int):
    """
    Smallest t with alpha < (u*r + t*pq)/r, and the resulting k.

    When r > pq the admissible t form an interval longer than one, so k/r
    also stays below any beta >= alpha + 1.
    """
    t = (alpha - u) * r // pq + 1
    return t, u * r + t * pq


def _target(alpha, u, r, pq, phi, label):
    t, k = placement(u, alpha, r, pq)
    if not alpha * r < k:
        raise RangeViolation(f"{label}: k/r = {k}/{r} does not exceed alpha={alpha}")
    if not 0 < k <= phi:
        raise RangeViolation(f"{label}: k={k} outside (0, {phi}]")
    return TargetIndex(u, t, k, alpha)


def target_indices(params: ConstructionParams):
    p, q, l, s, tau, rho = params.p, params.q, params.l, params.s, params.tau, params.rho
    alpha_plus = (p + l) * q // 2
    alpha_minus = (rho + s) * p - q
    if params.branch == 1:
        u_plus = (rho - tau) * p
        u_minus = -(p - l - 2) * q // 2 + ((p - 1) * s + tau) * p
    else:
        u_plus = (p - 1) * q - (p - l - 2) * s * p // 2
        u_minus = (p + l) * q // 2 + tau * p
    args = (params.r, params.pq, params.phi)
    return (
        _target(alpha_plus, u_plus, *args, "k+"),
        _target(alpha_minus, u_minus, *args, "k-"),
    )


def construct(
    l: int,
    p: int,
    q_index: int = 1,
    r_index: int = 1,
    verify_mode: Optional[str] = None,
    budget: int = kaplan.DEFAULT_BUDGET,
    workers: int = 1,
    strict: bool = True,
) -> ConstructionCertificate:
    """
    Build and check one member of the (l+1)/2-shifted family.

    ``verify_mode`` defaults to ``"full"`` for p <= 11 and ``"extremes"``
    otherwise.  With ``strict`` a failed check raises CertificationFailed
    (carrying the certificate); otherwise the certificate comes back with
    ``verified=False`` and a ``failure`` note.
    """
    if verify_mode is None:
        verify_mode = "full" if p <= 11 else "extremes"
    if verify_mode not in VERIFY_MODES:
        raise PreconditionViolated(f"verify mode must be one of {VERIFY_MODES}")
    params = make_params(l, p, q_index, r_index)
    k_plus, k_minus = target_indices(params)
    ctx = kaplan.make_context(params.p, params.q, params.r)
    a_plus = kaplan.a_pqr(ctx, k_plus.k)
    a_minus = kaplan.a_pqr(ctx, k_minus.k)

    failures = []
    if a_plus != params.top:
        failures.append(f"a(k+)={a_plus}, expected {params.top}")
    if a_minus != params.bottom:
        failures.append(f"a(k-)={a_minus}, expected {params.bottom}")
    if a_plus <= (p + 1) // 2:
        failures.append(f"a(k+)={a_plus} does not exceed (p+1)/2")

    cardinality = None
    if verify_mode == "full":
        cs = kaplan.coefficient_set(ctx, budget, workers)
        set_min, set_max, cardinality = cs.min, cs.max, cs.cardinality
        if not cs.is_interval(params.bottom, params.top):
            failures.append(f"coefficient set [{cs.min}, {cs.max}] != [{params.bottom}, {params.top}]")
    else:
        # max - min <= p plus jump-one pin the set once both extremes are seen.
        set_min, set_max = a_minus, a_plus
    cert = ConstructionCertificate(
        params=params,
        k_plus=k_plus,
        k_minus=k_minus,
        a_plus=a_plus,
        a_minus=a_minus,
        set_min=set_min,
        set_max=set_max,
        delta=(l + 1) // 2,
        full_scan=verify_mode == "full",
        verified=not failures,
        cardinality=cardinality,
        failure="; ".join(failures) or None,
    )
    if failures and params.boundary_w:
        cert.failure += " (boundary value of w)"
    if failures and strict:
        raise CertificationFailed(cert.failure, cert)
    return cert


def delta_minus_variant(
    cert: ConstructionCertificate,
    verify_mode: str = "full",
    budget: int = kaplan.DEFAULT_BUDGET,
    workers: int = 1,
    strict: bool = True,
) -> ConstructionCertificate:
    """
    Replace r by the smallest prime s > pq with s = -r (mod pq).

    The coefficient set of Phi_pqs is the negation of that of Phi_pqr, so
    a delta_plus certificate becomes delta_minus and vice versa.  The new
    set is re-derived by scanning; in ``extremes`` mode the scan stops once
    the predicted interval has been observed.
    """
    if verify_mode not in VERIFY_MODES:
        raise PreconditionViolated(f"verify mode must be one of {VERIFY_MODES}")
    params = cert.params
    ctx = kaplan.make_context(params.p, params.q, params.r)
    s, _ = kaplan.flip_partner(ctx, verify=False)
    lo, hi = -cert.set_max, -cert.set_min
    flipped = kaplan.make_context(params.p, params.q, s)
    cs = kaplan.coefficient_set(
        flipped, budget, workers, early_exit=(lo, hi) if verify_mode == "extremes" else None
    )
    failures = []
    if not cs.is_interval(lo, hi):
        failures.append(f"coefficient set [{cs.min}, {cs.max}] != [{lo}, {hi}]")
    new = ConstructionCertificate(
        params=replace(params, r=s, r_index=0),
        k_plus=TargetIndex(None, None, cs.argmax, None),
        k_minus=TargetIndex(None, None, cs.argmin, None),
        a_plus=cs.max,
        a_minus=cs.min,
        set_min=cs.min,
        set_max=cs.max,
        delta=cert.delta,
        full_scan=cs.exhaustive,
        verified=not failures,
        cardinality=cs.cardinality if cs.exhaustive else None,
        kind="delta_minus" if cert.kind == "delta_plus" else "delta_plus",
        flip_of=params.r,
        failure="; ".join(failures) or None,
    )
    if failures and strict:
        raise CertificationFailed(new.failure, new)
    return new


def m_p_q_value(l: int, p: int, q: int) -> int:
    """The maximal height over r > q for a pair (p, q) in the constructed classes."""
    w, _, _ = residue_w(l, p)
    if not is_prime(q):
        raise HypothesisViolated(f"q={q} is not prime")
    if q < (p + l) * p // 2 or q % p != w:
        raise HypothesisViolated(f"q={q} must be >= (p+l)p/2 and = {int(w)} mod {p}")
    value = (p + l + 2) // 2
    if not 3 * value < 2 * p:
        raise InvariantViolation(f"{value} is not below 2p/3 for p={p}")
    return value


# -- structural report -------------------------------------------------------


@dataclass
class TableReport:
    rows: list = field(default_factory=list)
    positive_count: int = 0
    negative_count: int = 0

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.rows)

    def add(self, name, ok, detail=""):
        self.rows.append((name, bool(ok), detail))

    def to_dict(self):
        return {
            "passed": self.passed,
            "positive_count": self.positive_count,
            "negative_count": self.negative_count,
            "rows": [{"row": n, "passed": ok, "detail": d} for n, ok, d in self.rows],
        }


def verify_tables(params: ConstructionParams, k_plus: TargetIndex, k_minus: TargetIndex, strict: bool = True):
    """
    Re-derive the p-part/q-part tables behind both extreme coefficients.

    For every 0 <= m < p this checks the starting point f(0) = u, the step
    f(m+1) - f(m), the shift f(m+q) - f(m), that every b_{f(m+q)} vanishes,
    and that the nonzero b_{f(m)} sit exactly on the predicted m-range.
    Branch 2 traverses the branch-1 tables in reverse order of m.
    """
    if k_plus.u is None or k_minus.u is None:
        raise PreconditionViolated("tables need a construction certificate with u/t indices")
    p, q, l, s, w, rho, tau = params.p, params.q, params.l, params.s, params.w, params.rho, params.tau
    pq = params.pq
    ctx = kaplan.make_context(p, q, params.r)
    bctx = ctx.binary
    b1 = params.branch == 1
    step = (q - s * p) if b1 else (s * p - q)
    shift = (w if b1 else p - w) * q

    def row(m):
        # branch-1 table row that describes m
        return m if b1 else p - 1 - m

    report = TableReport()
    plus_rows = set(range(0, (p + l) // 2 + 1))
    minus_rows = set(range(0, (p - l - 4) // 2 + 1))
    plus_start = (rho - tau, 0)
    minus_start = (rho + (p - l - 2) * s // 2, (p + l + 2) // 2)
    for tag, target, sign, rows, start, expected in (
        ("plus", k_plus, 1, plus_rows, plus_start, params.top),
        ("minus", k_minus, -1, minus_rows, minus_start, params.bottom),
    ):
        k = target.k
        f = [kaplan.f_map(ctx, k, m) for m in range(p)]
        fq = [kaplan.f_map(ctx, k, m + q) for m in range(p)]
        report.add(f"{tag}.start", f[0] == target.u % pq, f"f(0)={f[0]}, u mod pq={target.u % pq}")
        bad = [m for m in range(p - 1) if (f[m + 1] - f[m]) % pq != step % pq]
        report.add(f"{tag}.step", not bad, f"step {step % pq} broken at m={bad[:5]}")
        bad = [m for m in range(p) if (fq[m] - f[m]) % pq != shift % pq]
        report.add(f"{tag}.shift", not bad, f"shift {shift % pq} broken at m={bad[:5]}")
        m0 = 0 if b1 else p - 1
        pp = binary.parts(bctx, f[m0])
        report.add(
            f"{tag}.parts_row0",
            (pp.p_part, pp.q_part) == start,
            f"parts of f({m0}) = {(pp.p_part, pp.q_part)}, table gives {start}",
        )
        bq = [kaplan.b_value(ctx, k, i) for i in fq]
        bad = [m for m in range(p) if bq[m]]
        report.add(f"{tag}.q_terms_vanish", not bad, f"b(f(m+q)) != 0 at m={bad}")
        bm = [kaplan.b_value(ctx, k, i) for i in f]
        hits = {m for m in range(p) if bm[m] == sign}
        wrong = [m for m in range(p) if bm[m] == -sign]
        want = {m for m in range(p) if row(m) in rows}
        report.add(
            f"{tag}.nonzero_terms",
            hits == want and not wrong,
            f"b = {sign:+d} at m={sorted(hits)}, expected {sorted(want)}; opposite sign at {wrong}",
        )
        value = sum(bm) - sum(bq)
        report.add(f"{tag}.value", value == expected, f"sum = {value}, expected {expected}")
        if sign > 0:
            report.positive_count = len(hits)
        else:
            report.negative_count = len(hits)
    if strict:
        for name, ok, detail in report.rows:
            if not ok:
                raise TableMismatch(name, detail)
    return report


# -- serialisation -----------------------------------------------------------

_PARAM_FIELDS = ("l", "p", "w", "branch", "boundary_w", "q", "rho", "sigma", "s", "tau", "r")


def _num(x):
    return None if x is None else str(x)


def certificate_to_dict(cert: ConstructionCertificate) -> dict:
    """Integers become decimal strings so readers limited to doubles keep k exact."""
    p = cert.params
    d = {}
    for name in _PARAM_FIELDS:
        v = getattr(p, name)
        d[name] = v if isinstance(v, bool) else str(v)
    d["q_index"] = str(p.q_index)
    d["r_index"] = str(p.r_index)
    for tag, ti in (("plus", cert.k_plus), ("minus", cert.k_minus)):
        d[f"u_{tag}"] = _num(ti.u)
        d[f"t_{tag}"] = _num(ti.t)
        d[f"k_{tag}"] = _num(ti.k)
        d[f"alpha_{tag}"] = _num(ti.alpha)
    d.update(
        a_plus=str(cert.a_plus),
        a_minus=str(cert.a_minus),
        set_min=str(cert.set_min),
        set_max=str(cert.set_max),
        cardinality=_num(cert.cardinality),
        delta=str(cert.delta),
        full_scan=cert.full_scan,
        verified=cert.verified,
        kind=cert.kind,
        flip_of=_num(cert.flip_of),
        failure=cert.failure,
    )
    return d


def _int(x):
    return None if x is None else int(x)


def certificate_from_dict(d: dict) -> ConstructionCertificate:
    try:
        params = ConstructionParams(
            **{n: (bool(d[n]) if n == "boundary_w" else int(d[n])) for n in _PARAM_FIELDS},
            q_index=int(d.get("q_index", 1)),
            r_index=int(d.get("r_index", 1)),
        )
        idx = {
            tag: TargetIndex(_int(d.get(f"u_{tag}")), _int(d.get(f"t_{tag}")), int(d[f"k_{tag}"]), _int(d.get(f"alpha_{tag}")))
            for tag in ("plus", "minus")
        }
        return ConstructionCertificate(
            params=params,
            k_plus=idx["plus"],
            k_minus=idx["minus"],
            a_plus=int(d["a_plus"]),
            a_minus=int(d["a_minus"]),
            set_min=int(d["set_min"]),
            set_max=int(d["set_max"]),
            delta=int(d["delta"]),
            full_scan=bool(d["full_scan"]),
            verified=bool(d["verified"]),
            cardinality=_int(d.get("cardinality")),
            kind=d.get("kind", "delta_plus"),
            flip_of=_int(d.get("flip_of")),
            failure=d.get("failure"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionViolated(f"malformed certificate: {exc}") from exc


def load_certificate(path) -> ConstructionCertificate:
    with open(path, encoding="utf-8") as fh:
        return certificate_from_dict(json.load(fh))
