"""Exact arithmetic in Z[zeta_m] and the CM-field objects built from it.

Elements are integer coefficient vectors in the power basis
``1, z, ..., z**(phi(m)-1)`` modulo the m-th cyclotomic polynomial, so two
elements are equal exactly when their vectors are.  For a prime ``p`` the
power basis is an integral basis of Q(zeta_p), which is what makes the
integrality checks in :func:`half_representation` meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import mpmath
import sympy

from .arith import is_prime

__all__ = [
    "MAX_CONDUCTOR",
    "ConductorError",
    "CyclotomicInt",
    "DeltaReport",
    "SubfieldSpec",
    "absolute_norm",
    "cyclotomic_poly",
    "delta_report",
    "embeddings",
    "galois_apply",
    "gamma",
    "half_representation",
    "norm_by_resultant",
    "subfield_norm",
    "totient",
]

MAX_CONDUCTOR = 10_000
EMBEDDING_PREC = 96  # bits of mantissa
SIGN_TOL = 1e-9


class ConductorError(ValueError):
    pass


def totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # Coefficient lists are low degree first; den is monic.
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dq]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("division left a remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k is z**k (0 <= k < m) in the power basis."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _check_conductor(m: int) -> None:
    if not 2 <= m <= MAX_CONDUCTOR:
        raise ConductorError(f"conductor {m} outside [2, {MAX_CONDUCTOR}]")


def _fold(m: int, exps: list[int]) -> tuple[int, ...]:
    """Map a length-m vector of multiplicities of z**k to the power basis."""
    table = _power_table(m)
    out = [0] * len(table[0])
    for k, c in enumerate(exps):
        if c:
            for i, t in enumerate(table[k]):
                if t:
                    out[i] += c * t
    return tuple(out)


@dataclass(frozen=True)
class CyclotomicInt:
    conductor: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_conductor(self.conductor)
        if len(self.coeffs) != len(cyclotomic_poly(self.conductor)) - 1:
            raise ValueError(
                f"expected {len(cyclotomic_poly(self.conductor)) - 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_int(cls, m: int, a: int) -> CyclotomicInt:
        deg = len(cyclotomic_poly(m)) - 1
        return cls(m, (a,) + (0,) * (deg - 1))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CyclotomicInt:
        return cls(m, _power_table(m)[k % m])

    @classmethod
    def from_exponents(cls, m: int, exps) -> CyclotomicInt:
        """Sum of z**k weighted by ``exps[k]``; ``exps`` has length m."""
        return cls(m, _fold(m, list(exps)))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.is_rational():
            raise ValueError("element is not a rational integer")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _same(self, other) -> CyclotomicInt:
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.conductor, other)
        if other.conductor != self.conductor:
            raise ConductorError(f"conductor mismatch: {self.conductor} vs {other.conductor}")
        return other

    def __add__(self, other) -> CyclotomicInt:
        other = self._same(other)
        return CyclotomicInt(self.conductor, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> CyclotomicInt:
        return self + (-self._same(other))

    def __rsub__(self, other) -> CyclotomicInt:
        return self._same(other) - self

    def __mul__(self, other) -> CyclotomicInt:
        if isinstance(other, int):
            return CyclotomicInt(self.conductor, tuple(other * a for a in self.coeffs))
        other = self._same(other)
        m = self.conductor
        acc = [0] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        acc[(i + j) % m] += a * b
        return CyclotomicInt(m, _fold(m, acc))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CyclotomicInt:
        out = CyclotomicInt.from_int(self.conductor, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> CyclotomicInt:
        return galois_apply(self, self.conductor - 1)

    def exact_div(self, d: int) -> CyclotomicInt:
        """Divide every coordinate by the integer ``d``; raises if inexact."""
        if any(c % d for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {d} in Z[zeta_{self.conductor}]")
        return CyclotomicInt(self.conductor, tuple(c // d for c in self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"CyclotomicInt[{self.conductor}]({' + '.join(terms) or '0'})"


def galois_apply(a: CyclotomicInt, t: int) -> CyclotomicInt:
    """Image of ``a`` under z -> z**t."""
    m = a.conductor
    if gcd(t, m) != 1:
        raise ValueError(f"gcd({t}, {m}) != 1: not an automorphism")
    acc = [0] * m
    for k, c in enumerate(a.coeffs):
        if c:
            acc[(k * t) % m] += c
    return CyclotomicInt(m, _fold(m, acc))


def units_mod(m: int) -> list[int]:
    return [t for t in range(1, m) if gcd(t, m) == 1]


def absolute_norm(a: CyclotomicInt) -> int:
    """N_{Q(z_m)/Q}(a), as the product of all Galois conjugates."""
    if not a:
        raise ValueError("norm of zero")
    out = CyclotomicInt.from_int(a.conductor, 1)
    for t in units_mod(a.conductor):
        out = out * galois_apply(a, t)
    return int(out)


def norm_by_resultant(a: CyclotomicInt) -> int:
    """N(a) as Res(Phi_m, a(x)); independent of :func:`absolute_norm`."""
    if not a:
        raise ValueError("norm of zero")
    x = sympy.Symbol("x")
    phi = sympy.Poly(list(reversed(cyclotomic_poly(a.conductor))), x)
    rep = sympy.Poly(list(reversed(a.coeffs)), x)
    if rep.degree() <= 0:
        return int(a.coeffs[0]) ** phi.degree()
    return int(sympy.resultant(phi, rep))


def embeddings(a: CyclotomicInt, prec: int = EMBEDDING_PREC) -> list:
    """Values of ``a`` under z -> exp(2*pi*i*t/m) for each unit t, ascending t."""
    m = a.conductor
    with mpmath.workprec(prec):
        out = []
        for t in units_mod(m):
            w = mpmath.expjpi(mpmath.mpf(2 * t) / m)
            val = mpmath.mpc(0)
            pw = mpmath.mpc(1)
            for c in a.coeffs:
                if c:
                    val += c * pw
                pw *= w
            out.append(val)
    return out


@dataclass(frozen=True)
class SubfieldSpec:
    """Fixed field in Q(zeta_p) of the subgroup ``H`` of (Z/pZ)^x."""

    p: int
    subgroup: tuple[int, ...]

    def __post_init__(self):
        p = self.p
        if p < 3 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        h = tuple(sorted({x % p for x in self.subgroup}))
        object.__setattr__(self, "subgroup", h)
        if 1 not in h or 0 in h:
            raise ValueError(f"{list(h)} does not contain 1 or contains 0")
        hs = set(h)
        if any((a * b) % p not in hs for a in h for b in h):
            raise ValueError(f"{list(h)} is not closed under multiplication mod {p}")

    @classmethod
    def generated_by(cls, p: int, gens) -> SubfieldSpec:
        elems = {1}
        frontier = [1]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = x * g % p
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return cls(p, tuple(elems))

    @property
    def degree(self) -> int:
        """[E:Q] for the fixed field E."""
        return (self.p - 1) // len(self.subgroup)

    @property
    def is_complex(self) -> bool:
        return self.p - 1 not in self.subgroup

    def fixes(self, a: CyclotomicInt) -> bool:
        return all(galois_apply(a, h) == a for h in self.subgroup)


def complex_subfields(p: int) -> list[SubfieldSpec]:
    """Every complex subfield of Q(zeta_p), one per subgroup without -1."""
    g = sympy.primitive_root(p)
    out = []
    for d in sympy.divisors(p - 1):  # |H| = d, H = <g**((p-1)/d)>
        spec = SubfieldSpec.generated_by(p, [pow(g, (p - 1) // d, p)])
        if spec.is_complex:
            out.append(spec)
    return out


def _as_spec(a: CyclotomicInt, h) -> SubfieldSpec:
    if isinstance(h, SubfieldSpec):
        if h.p != a.conductor:
            raise ConductorError("subgroup and element live over different primes")
        return h
    return SubfieldSpec(a.conductor, tuple(h))


def subfield_norm(a: CyclotomicInt, h) -> CyclotomicInt:
    """Product of sigma_t(a) over t in H: the norm from Q(zeta_p) to the fixed field of H."""
    spec = _as_spec(a, h)
    out = CyclotomicInt.from_int(a.conductor, 1)
    for t in spec.subgroup:
        out = out * galois_apply(a, t)
    if not spec.fixes(out):
        raise AssertionError("norm is not fixed by the subgroup")
    return out


def gamma(p: int) -> CyclotomicInt:
    """z_p - z_p**-1."""
    return CyclotomicInt.zeta(p, 1) - CyclotomicInt.zeta(p, p - 1)


def _coset_reps(p: int, subgroup) -> list[int]:
    seen: set[int] = set()
    reps = []
    for t in range(1, p):
        if t not in seen:
            reps.append(t)
            seen.update(t * h % p for h in subgroup)
    return reps


@dataclass
class DeltaReport:
    p: int
    subgroup: tuple[int, ...]
    field_degree: int
    gamma: CyclotomicInt
    xi: CyclotomicInt
    delta: CyclotomicInt
    abs_norm_delta: int
    norm_delta_real: int
    embeddings_delta: list
    checks: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c["passed"] for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "subgroup": list(self.subgroup),
            "field_degree": self.field_degree,
            "gamma": [str(c) for c in self.gamma.coeffs],
            "xi": [str(c) for c in self.xi.coeffs],
            "delta": [str(c) for c in self.delta.coeffs],
            "abs_norm_delta": str(self.abs_norm_delta),
            "norm_delta_real": str(self.norm_delta_real),
            "embeddings_delta": [[float(z.real), float(z.imag)] for z in self.embeddings_delta],
            "checks": self.checks,
            "ok": self.ok,
        }


def delta_report(p: int, subgroup) -> DeltaReport:
    """Build gamma, xi = N_{K/E}(gamma), delta = xi * conj(xi) and check the CM identities.

    ``E`` is the fixed field of ``subgroup``; it must be complex (-1 not in H).
    """
    spec = subgroup if isinstance(subgroup, SubfieldSpec) else SubfieldSpec(p, tuple(subgroup))
    if not spec.is_complex:
        raise ValueError(f"-1 lies in {list(spec.subgroup)}: the fixed field is real")
    g = gamma(p)
    xi = subfield_norm(g, spec)
    xib = xi.conj()
    delta = xi * xib
    checks: dict[str, dict] = {}

    checks["xi_conj_is_minus_xi"] = {"passed": xib == -xi, "exact": True}
    checks["xi_squared_is_minus_delta"] = {"passed": xi * xi == -delta, "exact": True}

    # delta lies in F, fixed by H and -H; its norm from F to Q is p.
    real_group = tuple(sorted(set(spec.subgroup) | {(p - h) % p for h in spec.subgroup}))
    n_fq = CyclotomicInt.from_int(p, 1)
    for t in _coset_reps(p, real_group):
        n_fq = n_fq * galois_apply(delta, t)
    abs_norm = absolute_norm(delta)
    k_over_f = 2 * len(spec.subgroup)
    norm_ok = (
        spec.fixes(delta)
        and galois_apply(delta, p - 1) == delta
        and n_fq.is_rational()
        and int(n_fq) == p
        and abs_norm == p**k_over_f
    )
    checks["norm_delta_is_p"] = {
        "passed": bool(norm_ok),
        "exact": True,
        "detail": f"N_F/Q(delta)={n_fq.coeffs[0] if n_fq.is_rational() else n_fq}, "
        f"N_K/Q(delta)={abs_norm}=p^{k_over_f}",
    }

    emb = embeddings(delta)
    scale = max(1.0, max(float(abs(z)) for z in emb))
    worst = min(float(z.real) for z in emb)
    imag = max(float(abs(z.imag)) for z in emb)
    checks["delta_totally_nonnegative"] = {
        "passed": worst >= -SIGN_TOL * scale and imag <= SIGN_TOL * scale,
        "exact": False,
        "tolerance": SIGN_TOL,
        "min_real_part": worst,
        "max_imag_part": imag,
    }
    return DeltaReport(
        p=p,
        subgroup=spec.subgroup,
        field_degree=spec.degree,
        gamma=g,
        xi=xi,
        delta=delta,
        abs_norm_delta=abs_norm,
        norm_delta_real=int(n_fq) if n_fq.is_rational() else 0,
        embeddings_delta=emb,
        checks=checks,
    )


def half_representation(beta: CyclotomicInt, p: int, subgroup) -> tuple[CyclotomicInt, CyclotomicInt]:
    """Write ``2*beta = x + y*xi`` with x, y in the real subfield F.

    ``x = beta + conj(beta)`` and ``y = (beta - conj(beta)) / xi``.  The
    division is exact: ``1/xi`` is the product of the other conjugates of xi
    over ``N_{K/Q}(xi)``, and the final integer division raises if ``y`` is
    not in Z[zeta_p].
    """
    spec = subgroup if isinstance(subgroup, SubfieldSpec) else SubfieldSpec(p, tuple(subgroup))
    if beta.conductor != p:
        raise ConductorError("beta must lie in Q(zeta_p)")
    if not spec.is_complex:
        raise ValueError("fixed field is real")
    if not spec.fixes(beta):
        raise ValueError("beta is not in the fixed field of the subgroup")
    xi = subfield_norm(gamma(p), spec)
    bb = beta.conj()
    x = beta + bb
    others = CyclotomicInt.from_int(p, 1)
    for t in units_mod(p)[1:]:
        others = others * galois_apply(xi, t)
    norm_xi = int(xi * others)
    y = ((beta - bb) * others).exact_div(norm_xi)
    if x + y * xi != beta * 2:
        raise AssertionError("2*beta != x + y*xi")
    return x, y


def gaussian_periods(spec: SubfieldSpec) -> list[CyclotomicInt]:
    """sum_{h in H} z**(c*h) for c over coset representatives: a Z-basis of O_E."""
    p = spec.p
    out = []
    for c in _coset_reps(p, spec.subgroup):
        exps = [0] * p
        for h in spec.subgroup:
            exps[c * h % p] += 1
        out.append(CyclotomicInt.from_exponents(p, exps))
    return out


def random_integral_element(spec: SubfieldSpec, rng, bound: int = 5) -> CyclotomicInt:
    out = CyclotomicInt.from_int(spec.p, 0)
    for eta in gaussian_periods(spec):
        out = out + eta * rng.randint(-bound, bound)
    return out
