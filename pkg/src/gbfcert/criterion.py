"""Nonexistence certificates for norm equations and GBFs of type [n, 2p^e].

Given primes ``q != p``, an odd ``n`` and ``e >= 1``, with ``f = ord_p(q)``,
``l = 2(p-1) / ((3 - (-1)^f) f)`` and ``B(l)`` the 2-part of ``l``, the
equation ``alpha * conj(alpha) = q**n`` has no integral solution in
Q(zeta_{p^e}) when

* ``f > 1``,
* ``e == 1`` or ``q**f != 1 (mod p**2)``,
* ``p > 4**B(l) * q**(n*l)``.

With ``q = 2`` this rules out GBFs of type [n, 2p^e].  A certificate
records every intermediate quantity so it can be replayed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .arith import is_prime, mult_order, ord_prime_power, two_part

__all__ = [
    "CERTIFIED",
    "INCONCLUSIVE",
    "Certificate",
    "KnownResultFlags",
    "classify_known",
    "exceeds_bound",
    "gbf_criterion",
    "l_param",
    "norm_criterion",
    "replay",
]

CERTIFIED = "NonexistenceCertified"
INCONCLUSIVE = "Inconclusive"

# Bounds wider than this are kept symbolic only.
_MAX_BOUND_BITS = 1 << 16


def l_param(p: int, f: int) -> int:
    """2(p-1) / ((3 - (-1)^f) f), i.e. (p-1)/f for even f and (p-1)/(2f) for odd f."""
    num = 2 * (p - 1)
    den = (3 - (-1) ** f) * f
    if num % den:
        raise ValueError(f"l is not an integer for p={p}, f={f}")
    return num // den


def exceeds_bound(p: int, q: int, n: int, l: int) -> bool:
    """Exact test of p > 4**B(l) * q**(n*l) without building huge powers."""
    b = two_part(l)
    lo_bits = 2 * b + n * l * (q.bit_length() - 1)  # bound >= 2**lo_bits
    hi_bits = 2 * b + n * l * q.bit_length()  # bound < 2**hi_bits
    if p.bit_length() <= lo_bits:
        return False
    if p.bit_length() > hi_bits:
        return True
    return p > 4**b * q ** (n * l)


@dataclass
class Certificate:
    q: int
    n: int
    p: int
    e: int
    f: int
    g: int
    l: int
    two_part_l: int
    bound_expr: str
    bound: int | None
    wieferich_ok: bool | None
    verdict: str
    reasons: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("q", "n", "p", "e", "f", "g", "l", "two_part_l"):
            d[k] = str(d[k])
        d["bound"] = None if self.bound is None else str(self.bound)
        return d

    @classmethod
    def from_json(cls, d: dict) -> Certificate:
        d = dict(d)
        for k in ("q", "n", "p", "e", "f", "g", "l", "two_part_l"):
            d[k] = int(d[k])
        d["bound"] = None if d.get("bound") is None else int(d["bound"])
        d["reasons"] = list(d.get("reasons", []))
        return cls(**d)


def norm_criterion(q: int, n: int, p: int, e: int = 1, seed: int = 0) -> Certificate:
    """Decide whether ``alpha * conj(alpha) = q**n`` is ruled out in Q(zeta_{p^e})."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"n must be an odd positive integer, got {n}")
    if e < 1:
        raise ValueError(f"e must be positive, got {e}")
    if q == p:
        raise ValueError("p and q must be distinct")
    if not is_prime(q, seed) or not is_prime(p, seed):
        raise ValueError(f"p={p} and q={q} must both be prime")

    reasons: list[str] = []
    f = mult_order(q, p, seed).order
    g = (p - 1) // f
    l = l_param(p, f)
    b = two_part(l)
    if q == 2:
        exponent = 2 * b + n * l
        bound_expr = f"2^{exponent}"
        bound = 1 << exponent if exponent <= _MAX_BOUND_BITS else None
    else:
        bound_expr = f"4^{b}*{q}^{n * l}"
        bits = 2 * b + n * l * q.bit_length()
        bound = 4**b * q ** (n * l) if bits <= _MAX_BOUND_BITS else None

    ok = True
    if f > 1:
        reasons.append(f"pass: f = ord_p(q) = {f} > 1")
    else:
        ok = False
        reasons.append("fail: f = ord_p(q) = 1")

    if e == 1:
        wieferich_ok = None
        reasons.append("n/a: e = 1, no lifting condition")
    else:
        wieferich_ok = pow(q, f, p * p) != 1
        if wieferich_ok:
            reasons.append(f"pass: q^f != 1 (mod p^2); ord_(p^{e})(q) = f*p^{e - 1}")
        else:
            ok = False
            reasons.append("fail: q^f = 1 (mod p^2) (Wieferich-type prime)")

    if exceeds_bound(p, q, n, l):
        reasons.append(f"pass: p > {bound_expr}")
    else:
        ok = False
        reasons.append(f"fail: p <= {bound_expr}")

    return Certificate(
        q=q,
        n=n,
        p=p,
        e=e,
        f=f,
        g=g,
        l=l,
        two_part_l=b,
        bound_expr=bound_expr,
        bound=bound,
        wieferich_ok=wieferich_ok,
        verdict=CERTIFIED if ok else INCONCLUSIVE,
        reasons=reasons,
    )


def gbf_criterion(n: int, p: int, e: int = 1, seed: int = 0) -> Certificate:
    """Certificate that no GBF of type [n, 2p^e] exists, or an inconclusive one."""
    if p == 2:
        raise ValueError("p must be odd")
    return norm_criterion(2, n, p, e, seed)


def replay(cert: Certificate, seed: int = 0) -> bool:
    """Recompute the certificate from (q, n, p, e) and compare field by field."""
    return norm_criterion(cert.q, cert.n, cert.p, cert.e, seed) == cert


@dataclass(frozen=True)
class KnownResultFlags:
    kumar_applies: bool
    p_mod_8: int
    f_parity: str
    n_is_one: bool
    new_case: bool


def classify_known(n: int, p: int, e: int = 1, seed: int = 0) -> KnownResultFlags:
    """Which earlier nonexistence results already cover type [n, 2p^e].

    ``kumar_applies`` is "2**s = -1 (mod p**e) for some s": in the cyclic
    group (Z/p^eZ)^x that holds iff ord(2) is even.
    """
    if p < 3 or not is_prime(p, seed):
        raise ValueError(f"{p} is not an odd prime")
    f = mult_order(2, p, seed).order
    order = ord_prime_power(2, p, e, seed).order
    kumar = order % 2 == 0 and pow(2, order // 2, p**e) == p**e - 1
    new_case = p % 8 == 1 and n >= 3 and f % 2 == 1
    return KnownResultFlags(
        kumar_applies=kumar,
        p_mod_8=p % 8,
        f_parity="odd" if f % 2 else "even",
        n_is_one=n == 1,
        new_case=new_case,
    )
