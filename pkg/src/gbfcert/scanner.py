"""Prime scans: certified GBF-nonexistence primes, Artin-type counts, Wieferich primes."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import FactoringBudgetExceeded, factor, is_prime, two_part
from .criterion import Certificate, exceeds_bound, gbf_criterion, l_param

__all__ = [
    "DEFAULT_CEILING",
    "DEFAULT_WORK_LIMIT",
    "BudgetExceeded",
    "DensityReport",
    "ScanFilter",
    "ScanHit",
    "density",
    "primes_up_to",
    "scan",
    "smallest_certified",
    "wieferich_scan",
]

log = logging.getLogger(__name__)

DEFAULT_CEILING = 10**8
DEFAULT_WORK_LIMIT = 10**7  # candidate integers examined per scan
SHARD = 1 << 12


class BudgetExceeded(RuntimeError):
    pass


def primes_up_to(x: int) -> np.ndarray:
    """Sieve of Eratosthenes; ascending int64 array of primes <= x."""
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(x + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, int(x**0.5) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@dataclass(frozen=True)
class ScanFilter:
    lo: int
    hi: int | None = None
    g: int | None = None
    f_parity: str = "any"
    p_mod_8: int | None = None
    require_certified: tuple[int, int] | None = None  # (n, e)

    def __post_init__(self):
        if self.lo < 3:
            raise ValueError("range must start at 3 or above")
        if self.hi is not None and self.hi < self.lo:
            raise ValueError("empty range: hi < lo")
        if self.f_parity not in ("any", "odd", "even"):
            raise ValueError(f"f_parity must be any/odd/even, not {self.f_parity!r}")
        if self.g is not None and self.g < 1:
            raise ValueError("g must be positive")
        if self.p_mod_8 is not None and self.p_mod_8 not in (1, 3, 5, 7):
            raise ValueError("p_mod_8 must be an odd residue")


@dataclass(frozen=True)
class ScanHit:
    p: int
    f: int
    certificate: Certificate | None = None


def _order_with_cofactor(p: int, g: int | None, seed: int) -> int | None:
    """ord_p(2), or None when a requested g = (p-1)/f is impossible."""
    if g is not None:
        if (p - 1) % g:
            return None
        f = (p - 1) // g
        if pow(2, f, p) != 1:
            return None
        if any(pow(2, f // q, p) == 1 for q in factor(f, seed).primes()):
            return None
        return f
    f = p - 1
    for q, e in factor(p - 1, seed).factors:
        for _ in range(e):
            if pow(2, f // q, p) == 1:
                f //= q
            else:
                break
    return f


def _examine(p: int, flt: ScanFilter, seed: int) -> ScanHit | None:
    if flt.p_mod_8 is not None and p % 8 != flt.p_mod_8:
        return None
    if not is_prime(p, seed):
        return None
    f = _order_with_cofactor(p, flt.g, seed)
    if f is None:
        return None
    if flt.f_parity == "odd" and f % 2 == 0 or flt.f_parity == "even" and f % 2:
        return None
    cert = None
    if flt.require_certified is not None:
        n, e = flt.require_certified
        cert = gbf_criterion(n, p, e, seed)
        if not cert.certified:
            return None
    return ScanHit(p, f, cert)


def _scan_shard(start: int, stop: int, step: int, flt: ScanFilter, seed: int) -> list[ScanHit]:
    hits = []
    for p in range(start, stop, step):
        try:
            hit = _examine(p, flt, seed)
        except FactoringBudgetExceeded as exc:
            log.warning("skipping p=%d: %s", p, exc)
            continue
        if hit is not None:
            hits.append(hit)
    return hits


def scan(
    flt: ScanFilter,
    max_results: int | None = None,
    *,
    workers: int = 1,
    work_limit: int = DEFAULT_WORK_LIMIT,
    seed: int = 0,
) -> list[ScanHit]:
    """Ascending primes in ``[lo, hi]`` that pass every predicate of ``flt``.

    The range is cut into contiguous shards; shards run ``workers`` at a
    time and are merged in order, so the output does not depend on
    ``workers``.
    """
    if flt.p_mod_8 is not None:
        step = 8
        start = flt.lo + (flt.p_mod_8 - flt.lo) % 8
    else:
        step = 2
        start = flt.lo | 1
    if flt.hi is not None:
        if start > flt.hi:
            return []
        count = (flt.hi - start) // step + 1
        if count > work_limit:
            raise BudgetExceeded(f"{count} candidates in range exceed the work limit {work_limit}")
        end = flt.hi + 1
    else:
        end = start + step * work_limit

    span = SHARD * step
    shards = [(s, min(s + span, end)) for s in range(start, end, span)]
    out: list[ScanHit] = []
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for i in range(0, len(shards), max(workers, 1)):
            batch = shards[i : i + max(workers, 1)]
            if pool is None:
                parts = [_scan_shard(a, b, step, flt, seed) for a, b in batch]
            else:
                parts = list(pool.map(lambda ab: _scan_shard(ab[0], ab[1], step, flt, seed), batch))
            for part in parts:
                out.extend(part)
            if max_results is not None and len(out) >= max_results:
                return out[:max_results]
    finally:
        if pool is not None:
            pool.shutdown()
    if flt.hi is None:
        raise BudgetExceeded(
            f"found {len(out)} of {max_results} primes within {work_limit} candidates from {flt.lo}"
        )
    return out


def certified_floor(n: int, g: int, f_parity: str = "odd") -> int:
    """Smallest 2**(2B(l) + n*l) over the l compatible with g and the parity of f."""
    ls = []
    if f_parity in ("odd", "any") and g % 2 == 0:
        ls.append(g // 2)
    if f_parity in ("even", "any"):
        ls.append(g)
    if not ls:
        raise ValueError(f"no prime has g={g} with f {f_parity}")
    return min(1 << (2 * two_part(l) + n * l) for l in ls)


def smallest_certified(
    n: int,
    g: int,
    f_parity: str = "odd",
    p_mod_8: int | None = 1,
    e: int = 1,
    *,
    workers: int = 1,
    work_limit: int = DEFAULT_WORK_LIMIT,
    seed: int = 0,
) -> ScanHit:
    """Least prime with (p-1)/ord_p(2) = g that certifies no GBF of type [n, 2p^e]."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    if g < 2 or g % 2:
        raise ValueError("g must be even and positive")
    lo = certified_floor(n, g, f_parity) + 1
    flt = ScanFilter(lo=lo, g=g, f_parity=f_parity, p_mod_8=p_mod_8, require_certified=(n, e))
    return scan(flt, 1, workers=workers, work_limit=work_limit, seed=seed)[0]


@dataclass
class DensityReport:
    q: int
    n: int
    g: int
    x: int
    apply_bound: bool
    M: int
    pi_x: int
    ratio: Fraction = field(init=False)

    def __post_init__(self):
        self.ratio = Fraction(self.M, self.pi_x) if self.pi_x else Fraction(0)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "g": self.g,
            "x": str(self.x),
            "apply_bound": self.apply_bound,
            "M": self.M,
            "pi_x": self.pi_x,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "ratio_float": float(self.ratio),
        }


def _qualifies(p: int, q: int, n: int, g: int, apply_bound: bool) -> bool:
    if p == q or (p - 1) % g:
        return False
    f = (p - 1) // g
    if f <= 1 or pow(q, f, p) != 1:
        return False
    if any(pow(q, f // r, p) == 1 for r in factor(f).primes()):
        return False
    if not apply_bound:
        return True
    return exceeds_bound(p, q, n, l_param(p, f))


def density(q: int, n: int, g: int, x: int, *, apply_bound: bool = True, ceiling: int = DEFAULT_CEILING) -> DensityReport:
    """Count primes p <= x with (p-1)/ord_p(q) = g, ord_p(q) > 1 and (optionally) p above the bound."""
    if x > ceiling:
        raise BudgetExceeded(f"x={x} above the ceiling {ceiling}")
    primes = primes_up_to(x)
    # g | p - 1 is necessary; filter before the per-prime work.
    cand = primes[(primes - 1) % g == 0] if len(primes) else primes
    m = sum(1 for p in cand.tolist() if _qualifies(p, q, n, g, apply_bound))
    return DensityReport(q, n, g, x, apply_bound, m, len(primes))


def density_series(q: int, n: int, g: int, xs, *, apply_bound: bool = True, ceiling: int = DEFAULT_CEILING) -> list[DensityReport]:
    """:func:`density` at several cut-offs from a single sieve."""
    xs = sorted(xs)
    if xs and xs[-1] > ceiling:
        raise BudgetExceeded(f"x={xs[-1]} above the ceiling {ceiling}")
    primes = primes_up_to(xs[-1]) if xs else np.zeros(0, dtype=np.int64)
    flags = np.array([_qualifies(p, q, n, g, apply_bound) for p in primes.tolist()], dtype=bool)
    qual_cum = np.concatenate([[0], np.cumsum(flags)])
    out = []
    for x in xs:
        k = int(np.searchsorted(primes, x, side="right"))
        out.append(DensityReport(q, n, g, x, apply_bound, int(qual_cum[k]), k))
    return out


def wieferich_scan(q: int, limit: int, *, ceiling: int = DEFAULT_CEILING) -> list[int]:
    """All primes p <= limit with q**(p-1) = 1 (mod p**2)."""
    if limit > ceiling:
        raise BudgetExceeded(f"limit={limit} above the ceiling {ceiling}")
    return [p for p in primes_up_to(limit).tolist() if q % p and pow(q, p - 1, p * p) == 1]
