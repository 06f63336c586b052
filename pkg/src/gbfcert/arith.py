"""Integer number theory: primality, factoring, multiplicative orders.

Everything here is a pure function of its arguments.  Randomised steps
(Miller-Rabin above 2**64, Pollard-Brent rho) draw from a
``random.Random(seed)`` created per call, so a fixed seed gives a fixed
answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt, prod

__all__ = [
    "DEFAULT_RHO_BUDGET",
    "FactoringBudgetExceeded",
    "Factorization",
    "OrderResult",
    "factor",
    "is_prime",
    "is_wieferich_base",
    "mult_order",
    "ord_prime_power",
    "two_part",
]

DEFAULT_RHO_BUDGET = 10**8

# Deterministic for every n < 3.3e24 (Sorenson & Webster), so in particular < 2**64.
_SMALL_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_RANDOM_ROUNDS = 64
_TRIAL_PRIMES = tuple(p for p in range(2, 1000) if all(p % d for d in range(2, isqrt(p) + 1)))


class FactoringBudgetExceeded(ArithmeticError):
    """Pollard rho ran past its step budget without splitting a cofactor."""

    def __init__(self, n: int, budget: int):
        super().__init__(f"factoring {n} exceeded the budget of {budget} rho steps")
        self.n = n
        self.budget = budget


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def __int__(self) -> int:
        return prod(q**e for q, e in self.factors)

    def __str__(self) -> str:
        return " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.factors) or "1"


@dataclass(frozen=True)
class OrderResult:
    base: int
    modulus: int
    order: int

    def verify(self) -> bool:
        """Check a**order = 1 and that no maximal proper divisor works."""
        a, m, k = self.base, self.modulus, self.order
        if pow(a, k, m) != 1 % m:
            return False
        return all(pow(a, k // q, m) != 1 for q in factor(k).primes()) if k > 1 else True


def _miller_rabin(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, seed: int = 0) -> bool:
    """Miller-Rabin primality test.

    Exact for ``n < 2**64`` (fixed witness set).  Above that, 64 rounds with
    bases drawn from ``random.Random(seed)``; a composite survives with
    probability below ``4**-64``.
    """
    if n < 2:
        return False
    for p in _TRIAL_PRIMES[:12]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        return all(_miller_rabin(n, d, s, a) for a in _SMALL_WITNESSES)
    if not all(_miller_rabin(n, d, s, a) for a in _SMALL_WITNESSES):
        return False
    rng = random.Random(seed)
    return all(_miller_rabin(n, d, s, rng.randrange(2, n - 1)) for _ in range(_RANDOM_ROUNDS))


def _brent(n: int, rng: random.Random, budget: int) -> tuple[int, int]:
    """One Pollard-Brent attempt; returns (divisor or 0, steps used)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        steps += r
        r *= 2
        if steps > budget:
            return 0, steps
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            steps += 1
    return (g if g != n else 0), steps


def _split(n: int, rng: random.Random, budget: list[int], orig: int, total: int) -> list[int]:
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    r = isqrt(n)
    if r * r == n:
        return _split(r, rng, budget, orig, total) * 2
    while True:
        d, used = _brent(n, rng, budget[0])
        budget[0] -= used
        if budget[0] < 0:
            raise FactoringBudgetExceeded(orig, total)
        if d:
            return _split(d, rng, budget, orig, total) + _split(n // d, rng, budget, orig, total)


def factor(n: int, seed: int = 0, budget: int = DEFAULT_RHO_BUDGET) -> Factorization:
    """Complete factorisation by trial division then Pollard-Brent rho.

    >>> str(factor(1049176))
    '2^3 * 131147'
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    counts: dict[int, int] = {}
    m = n
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        rng = random.Random(seed)
        for q in _split(m, rng, [budget], n, budget):
            counts[q] = counts.get(q, 0) + 1
    return Factorization(n, tuple(sorted(counts.items())))


def _strip(a: int, m: int, order: int, fac: Factorization) -> int:
    for q, e in fac.factors:
        for _ in range(e):
            if pow(a, order // q, m) == 1:
                order //= q
            else:
                break
    return order


def _carmichael_multiple(m: int, seed: int) -> tuple[int, Factorization]:
    """An exponent of (Z/mZ)^x together with its factorisation."""
    # phi(m) via the factorisation of m; its own factorisation is assembled
    # from the factorisations of each p - 1 so no large cofactor is refactored.
    counts: dict[int, int] = {}
    phi = 1
    for p, e in factor(m, seed).factors:
        phi *= (p - 1) * p ** (e - 1)
        if e > 1:
            counts[p] = counts.get(p, 0) + e - 1
        if p > 2:
            for q, k in factor(p - 1, seed).factors:
                counts[q] = counts.get(q, 0) + k
    return phi, Factorization(phi, tuple(sorted(counts.items())))


def mult_order(a: int, m: int, seed: int = 0) -> OrderResult:
    """Order of ``a`` in (Z/mZ)^x, by stripping primes off the group order."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if gcd(a, m) != 1:
        raise ValueError(f"gcd({a}, {m}) != 1")
    exponent, fac = _carmichael_multiple(m, seed)
    return OrderResult(a, m, _strip(a % m, m, exponent, fac))


def two_part(a: int) -> int:
    """Largest power of two dividing ``a``."""
    if a < 1:
        raise ValueError("two_part needs a positive integer")
    return a & -a


def ord_prime_power(a: int, p: int, e: int, seed: int = 0, *, lift: bool = True) -> OrderResult:
    """Order of ``a`` modulo ``p**e`` for an odd prime ``p``.

    With ``lift`` (the default) and ``a**f != 1 (mod p**2)``, the order is
    ``f * p**(e-1)`` where ``f = ord_p(a)``; otherwise it is computed
    directly.  ``lift=False`` forces the direct computation.
    """
    if e < 1:
        raise ValueError("exponent e must be positive")
    if a % p == 0:
        raise ValueError(f"{p} divides {a}")
    base = mult_order(a, p, seed)
    if e == 1:
        return base
    m = p**e
    f = base.order
    if lift and pow(a, f, p * p) != 1:
        return OrderResult(a, m, f * p ** (e - 1))
    # f * p**(e-1) is always a multiple of the order; strip it.
    fac = factor(f, seed)
    full = Factorization(f * p ** (e - 1), tuple(sorted(fac.factors + ((p, e - 1),))))
    return OrderResult(a, m, _strip(a % m, m, full.value, full))


def is_wieferich_base(q: int, p: int) -> bool:
    """True when ``q**(p-1) = 1 (mod p**2)``."""
    if q % p == 0:
        raise ValueError(f"{p} divides {q}")
    return pow(q, p - 1, p * p) == 1
