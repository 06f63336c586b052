import pytest
import sympy

from gbfcert.criterion import replay
from gbfcert.scanner import (
    BudgetExceeded,
    ScanFilter,
    certified_floor,
    density,
    density_series,
    primes_up_to,
    scan,
    smallest_certified,
    wieferich_scan,
)

FIRST_FIVE_N3 = [1049177, 1050169, 1050233, 1050473, 1051961]


def oracle_density(q, g, x):
    out = 0
    for p in sympy.primerange(2, x + 1):
        if p == q or (p - 1) % g:
            continue
        f = int(sympy.n_order(q, p))
        if f > 1 and (p - 1) // f == g:
            out += 1
    return out


def test_primes_up_to_matches_sympy():
    for x in (0, 1, 2, 3, 10, 97, 1000, 65537):
        assert primes_up_to(x).tolist() == list(sympy.primerange(2, x + 1))


def test_filter_validation():
    with pytest.raises(ValueError):
        ScanFilter(lo=2)
    with pytest.raises(ValueError):
        ScanFilter(lo=10, hi=5)
    with pytest.raises(ValueError):
        ScanFilter(lo=10, f_parity="both")
    with pytest.raises(ValueError):
        ScanFilter(lo=10, p_mod_8=4)


def test_first_five_certified_n3():
    flt = ScanFilter(lo=2**20, hi=2**21, g=8, f_parity="odd", p_mod_8=1, require_certified=(3, 1))
    hits = scan(flt, 5)
    assert [h.p for h in hits] == FIRST_FIVE_N3
    for h in hits:
        assert h.certificate.certified and replay(h.certificate)
        assert h.f == (h.p - 1) // 8


def test_smallest_n3():
    assert smallest_certified(3, 8).p == 1049177


def test_empty_range():
    assert scan(ScanFilter(lo=24, hi=28)) == []
    assert scan(ScanFilter(lo=10, hi=12, p_mod_8=1)) == []


def test_unbounded_scan_budget():
    flt = ScanFilter(lo=3, g=8, f_parity="odd", require_certified=(3, 1))
    with pytest.raises(BudgetExceeded):
        scan(flt, 1, work_limit=1000)


def test_bounded_scan_budget():
    with pytest.raises(BudgetExceeded):
        scan(ScanFilter(lo=3, hi=10**8), work_limit=1000)


def test_certified_floor():
    assert certified_floor(3, 8) == 2**20
    assert certified_floor(11, 8) == 2**52
    assert certified_floor(15, 8) == 2**68
    assert certified_floor(17, 8) == 2**76
    with pytest.raises(ValueError):
        certified_floor(3, 7, "odd")


def test_scan_g_filter_matches_oracle():
    hits = scan(ScanFilter(lo=3, hi=20000, g=8))
    expect = [p for p in sympy.primerange(3, 20001) if (p - 1) // sympy.n_order(2, p) == 8]
    assert [h.p for h in hits] == expect


def test_scan_parity_and_residue():
    hits = scan(ScanFilter(lo=3, hi=5000, f_parity="even", p_mod_8=7))
    expect = [p for p in sympy.primerange(3, 5001) if p % 8 == 7 and sympy.n_order(2, p) % 2 == 0]
    assert [h.p for h in hits] == expect


def test_scan_strictly_increasing_and_worker_independent():
    flt = ScanFilter(lo=2**20, hi=2**20 + 200000, g=8, f_parity="odd", p_mod_8=1, require_certified=(3, 1))
    one = scan(flt)
    assert all(a.p < b.p for a, b in zip(one, one[1:]))
    for w in (2, 4):
        assert scan(flt, workers=w) == one
    flt2 = ScanFilter(lo=3, hi=300000, g=2)
    assert scan(flt2, workers=3) == scan(flt2)
    assert scan(flt2, 17, workers=3) == scan(flt2)[:17]


def test_density_examples():
    r = density(2, 3, 8, 10**4)
    assert r.M == 0 and r.pi_x == 1229
    r = density(2, 3, 8, 10**4, apply_bound=False)
    assert r.M == oracle_density(2, 8, 10**4)
    r = density(2, 3, 8, 2)
    assert (r.M, r.pi_x) == (0, 1)


def test_density_against_oracle():
    for g in (1, 2, 3, 8):
        for q in (2, 3):
            assert density(q, 3, g, 30000, apply_bound=False).M == oracle_density(q, g, 30000)


def test_density_ceiling():
    with pytest.raises(BudgetExceeded):
        density(2, 3, 8, 10**9)


def test_density_monotone_up_to_1e6():
    xs = [10**3, 5 * 10**3, 10**4, 5 * 10**4, 10**5, 2 * 10**5, 5 * 10**5, 10**6]
    for apply_bound in (True, False):
        series = density_series(2, 1, 2, xs, apply_bound=apply_bound)
        for r in series:
            assert 0 <= r.M <= r.pi_x
        for a, b in zip(series, series[1:]):
            assert b.M >= a.M and b.pi_x >= a.pi_x
    # series agrees with independent single calls
    assert density_series(2, 3, 8, [10**4, 10**5], apply_bound=False)[1].M == density(
        2, 3, 8, 10**5, apply_bound=False
    ).M


def test_wieferich_examples():
    assert wieferich_scan(2, 10**4) == [1093, 3511]
    assert wieferich_scan(2, 1000) == []


def test_wieferich_against_direct_check():
    for q in (2, 3, 5, 7):
        got = wieferich_scan(q, 20000)
        expect = [p for p in sympy.primerange(2, 20001) if q % p and pow(q, p - 1, p * p) == 1]
        assert got == expect
    assert wieferich_scan(5, 100) == [2]
    assert 20771 in wieferich_scan(5, 30000)
