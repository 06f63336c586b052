import json
import random

import pytest
import sympy

from gbfcert.arith import two_part
from gbfcert.criterion import (
    CERTIFIED,
    INCONCLUSIVE,
    Certificate,
    classify_known,
    exceeds_bound,
    gbf_criterion,
    l_param,
    norm_criterion,
    replay,
)


def oracle_certified(q, n, p, e):
    """Direct restatement of the hypotheses with plain big-int arithmetic."""
    f = int(sympy.n_order(q, p))
    l = (p - 1) // f if f % 2 == 0 else (p - 1) // (2 * f)
    b = two_part(l)
    return f > 1 and (e == 1 or pow(q, f, p * p) != 1) and p > 4**b * q ** (n * l) and n % 2 == 1


# --- examples -----------------------------------------------------------------


def test_smallest_n3_example():
    c = gbf_criterion(3, 1049177)
    assert c.verdict == CERTIFIED
    assert (c.f, c.g, c.l, c.two_part_l) == (131147, 8, 4, 4)
    assert c.bound == 2**20 and c.bound_expr == "2^20"
    assert c.wieferich_ok is None


def test_p89_inconclusive():
    c = gbf_criterion(3, 89)
    assert c.verdict == INCONCLUSIVE
    assert (c.f, c.l, c.bound) == (11, 4, 2**20)


def test_p7_small_l():
    c = gbf_criterion(3, 7)
    assert c.verdict == INCONCLUSIVE
    assert (c.f, c.l, c.two_part_l, c.bound) == (3, 1, 1, 32)


@pytest.mark.parametrize("n,p", [(11, 4503599627370889), (15, 295147905179352827401)])
def test_large_examples_certified(n, p):
    assert gbf_criterion(n, p).certified
    assert not gbf_criterion(n + 2, p).certified


def test_wieferich_prime_power_inconclusive():
    c = gbf_criterion(3, 1093, e=2)
    assert c.verdict == INCONCLUSIVE
    assert c.wieferich_ok is False
    assert any("Wieferich" in r for r in c.reasons)


def test_prime_power_lift_passes():
    c = gbf_criterion(3, 1049177, e=3)
    assert c.certified and c.wieferich_ok is True


def test_input_errors():
    with pytest.raises(ValueError):
        gbf_criterion(4, 89)
    with pytest.raises(ValueError):
        gbf_criterion(3, 91)
    with pytest.raises(ValueError):
        norm_criterion(3, 3, 3)
    with pytest.raises(ValueError):
        gbf_criterion(3, 89, e=0)


def test_order_one_fails():
    # ord_3(7) = 1
    c = norm_criterion(7, 1, 3)
    assert c.f == 1 and not c.certified


def test_other_base_q():
    c = norm_criterion(3, 1, 1000003)
    assert c.bound_expr.startswith("4^")
    assert c.certified == oracle_certified(3, 1, 1000003, 1)


def test_huge_bound_is_symbolic():
    # p with f = 1 for q = 2 is impossible; take a prime with enormous l
    p = 1000003
    c = gbf_criterion(99999, p)
    assert c.bound is None and not c.certified


def test_classify_examples():
    k = classify_known(3, 89)
    assert k.new_case and k.p_mod_8 == 1 and k.f_parity == "odd" and not k.kumar_applies
    k = classify_known(1, 7)
    assert not k.new_case and k.n_is_one
    assert classify_known(3, 5).kumar_applies


def test_classify_new_case_iff():
    for p in sympy.primerange(3, 3000):
        f = int(sympy.n_order(2, p))
        for n in (1, 3, 5):
            k = classify_known(n, p)
            assert k.new_case == (p % 8 == 1 and n >= 3 and f % 2 == 1)
            # 2^s = -1 (mod p) for some s, by brute force
            assert k.kumar_applies == any(pow(2, s, p) == p - 1 for s in range(1, f + 1))


def test_kumar_prime_powers():
    for p in (3, 5, 11, 13):
        for e in (2, 3):
            m = p**e
            expect = any(pow(2, s, m) == m - 1 for s in range(1, m))
            assert classify_known(3, p, e).kumar_applies == expect


# --- invariants ---------------------------------------------------------------


def test_l_formula_case_split_all_primes_below_1e5():
    for p in sympy.primerange(3, 10**5):
        c = gbf_criterion(3, p)
        split = (p - 1) // c.f if c.f % 2 == 0 else (p - 1) // (2 * c.f)
        assert c.l == l_param(p, c.f) == split, p


def test_exceeds_bound_exact():
    rng = random.Random(5)
    for _ in range(3000):
        q = rng.choice([2, 3, 5, 7, 11])
        n = rng.choice([1, 3, 5])
        l = rng.randint(1, 12)
        b = two_part(l)
        bound = 4**b * q ** (n * l)
        p = bound + rng.randint(-3, 3)
        assert exceeds_bound(p, q, n, l) == (p > bound)


def test_verdict_matches_oracle():
    rng = random.Random(6)
    primes = list(sympy.primerange(3, 2 * 10**6))
    for _ in range(400):
        p = rng.choice(primes)
        n = rng.choice([1, 3, 5, 7])
        e = rng.choice([1, 1, 2])
        assert gbf_criterion(n, p, e).certified == oracle_certified(2, n, p, e)


def certified_sample():
    rng = random.Random(12)
    out = []
    while len(out) < 100:
        p = sympy.nextprime(rng.randrange(10**5, 10**12))
        c = gbf_criterion(1, p)
        if not c.certified:
            continue
        n = 1
        while gbf_criterion(n + 2, p).certified:
            n += 2
        out.append((rng.choice(range(1, n + 1, 2)), p))
    return out


def test_monotone_in_n():
    for n, p in certified_sample():
        assert gbf_criterion(n, p).certified
        for m in range(1, n, 2):
            assert gbf_criterion(m, p).certified, (m, n, p)


def test_replay_bit_exact():
    rng = random.Random(14)
    for _ in range(200):
        p = sympy.nextprime(rng.randrange(3, 10**9))
        n = rng.choice([1, 3, 5, 11])
        e = rng.choice([1, 2])
        c = gbf_criterion(n, p, e)
        assert replay(c)
        back = Certificate.from_json(json.loads(json.dumps(c.to_json())))
        assert back == c and replay(back)


def test_replay_detects_tampering():
    c = gbf_criterion(3, 1049177)
    c.l = 5
    assert not replay(c)
