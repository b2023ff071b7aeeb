import pytest

from ternary_cyclotomic import construction, landscape as L
from ternary_cyclotomic.errors import PreconditionViolated
from ternary_cyclotomic.numtheory import primes_between

PAPER_LIST = [29, 37, 41, 83, 107, 109, 149, 179, 181, 223, 227, 233, 241, 269, 281, 317, 347, 367, 379, 383, 389]


def brute_inverse(b, p):
    return next(x for x in range(1, p) if b * x % p == 1)


def test_inverse_table():
    for p in (5, 13, 101):
        inv = L.inverse_table(p)
        assert all(inv[b] == brute_inverse(b, p) for b in range(1, p))


def test_profile_13():
    prof = L.beta_profile(13)
    assert (prof.b1, prof.b2, prof.b3) == ({5}, set(), set())
    assert prof.m_gm == prof.m_r == 8


def test_profile_17():
    prof = L.beta_profile(17)
    assert (prof.b1, prof.b2, prof.b3) == (set(), {7}, {7})
    assert prof.m_gm == prof.m_r == 10


def test_profile_29():
    prof = L.beta_profile(29)
    assert prof.b_gm == {12, 13} and prof.b_r == {11, 12, 13}
    assert (prof.m_gm, prof.m_r) == (17, 18)


@pytest.mark.parametrize("p", [5, 7])
def test_empty_sets_are_undefined(p):
    prof = L.beta_profile(p)
    assert not prof.b_r and prof.m_gm is None and prof.m_r is None


def test_profile_11():
    # 4 * 3 = 12: beta = 4 meets 11 <= 4 + 2*3 + 1 and 11 <= 2*4 + 3
    prof = L.beta_profile(11)
    assert (prof.b1, prof.b2, prof.b3) == (set(), {4}, {4})
    assert prof.m_gm == prof.m_r == 7 == construction.m_p_q_value(1, 11, 107)


def test_profile_rejects():
    with pytest.raises(PreconditionViolated):
        L.beta_profile(3)
    with pytest.raises(PreconditionViolated):
        L.beta_profile(21)


def test_invariants_up_to_10k():
    for p in primes_between(5, 10**4):
        prof = L.beta_profile(p)
        assert prof.b2 <= prof.b3
        assert not prof.b1 & prof.b3
        assert prof.b_gm <= prof.b_r
        if prof.m_gm is not None:
            assert prof.m_r >= prof.m_gm


def test_b_r_pairing_is_unique_up_to_2000():
    for p in primes_between(5, 2000):
        prof = L.beta_profile(p)
        inv = L.inverse_table(p)
        for b1 in prof.b_r:
            for b2 in prof.b_r:
                if b1 == p - inv[b2]:
                    assert b1 == b2 and b1 in prof.b1


@pytest.mark.parametrize("p, a, value", [(13, 5, 8), (17, 12, 10), (19, 7, 11), (23, 16, 13), (23, 5, 14)])
def test_m_p_claims(p, a, value):
    claims = L.m_p_claims(p)
    assert {"a": a, "kind": "exact", "value": value, "source": "R"} in claims


def test_m_p_claims_13_both_sources_exact():
    claims = L.m_p_claims(13)
    assert {(x["a"], x["kind"], x["value"]) for x in claims} == {(5, "exact", 8)}
    assert {x["source"] for x in claims} == {"GM", "R"}


@pytest.mark.parametrize("p, x0, in_p1", [(13, 5, True), (5, 2, False), (3, None, False), (29, 12, True), (7, None, False)])
def test_x0(p, x0, in_p1):
    assert L.x0_classify(p) == (x0, in_p1)
    if x0 is not None:
        assert x0 == min(x for x in range(1, p) if (x * x + 1) % p == 0)


def test_s1_s2_intersection():
    assert L.s1_s2_intersection(13) == {5}
    assert L.s1_s2_intersection(7) == set()
    assert L.s1_s2_intersection(29) == {12}
    for p in primes_between(5, 2000):
        L.s1_s2_intersection(p)


def test_cobeli():
    for p in (13, 101, 9973):
        chk = L.cobeli_check(p)
        assert chk.holds_gm and chk.holds_r and chk.slack_gm >= 0
    for p in primes_between(5, 10**4):
        chk = L.cobeli_check(p)
        assert chk.holds_gm and chk.holds_r


def test_scan_exceeding():
    assert L.scan_exceeding(400) == PAPER_LIST
    assert L.scan_exceeding(28) == []
    report = L.exceedance_report(10**4)
    assert report["primes"][:21] == PAPER_LIST
    assert report["max_gap"] >= 1 and report["max_gap_at"] in report["primes"]


def test_csv():
    text = L.profiles_csv([L.beta_profile(p) for p in (7, 13)])
    assert text.splitlines() == [
        "p,card_B1,card_B2,card_B3,M_GM,M_R,x0,in_P1",
        "7,0,0,0,undefined,undefined,,false",
        "13,1,0,0,8,8,5,true",
    ]


def test_shifted_family_realises_r_claims():
    seen = 0
    for p in primes_between(11, 23):
        inv = L.inverse_table(p)
        for b in sorted(L.beta_profile(p).b_r):
            l = p - 2 * b - 2
            if l < 1 or p < l * l + 3 * l + 5:
                continue
            cert = construction.construct(l, p, verify_mode="extremes", strict=False)
            assert cert.params.w == p - inv[b]
            assert cert.params.q % p == p - inv[b]
            assert cert.a_plus == p - b
            seen += 1
    assert seen >= 5
