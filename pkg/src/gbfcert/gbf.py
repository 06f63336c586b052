"""Generalized bent functions (Z/tZ)^n -> Z/tZ and their Fourier spectra.

Tables and frequency vectors use mixed-radix little-endian indexing: the
point ``x = (x_1, ..., x_n)`` sits at ``x_1 + x_2*t + ... + x_n*t**(n-1)``.

Two exact routes compute the same spectrum.  :func:`fourier` returns a
:class:`~gbfcert.cyclotomic.CyclotomicInt`; the batch helpers work in the
group ring Z[C_t] (a length-t count vector per value) with int64 numpy
arrays and reduce to the power basis only for comparisons.  Neither
touches floating point.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from .cyclotomic import CyclotomicInt, _power_table

__all__ = [
    "DEFAULT_SEARCH_LIMIT",
    "GBFCandidate",
    "SearchLimitExceeded",
    "SearchResult",
    "SpectrumEntry",
    "exhaustive_search",
    "fourier",
    "inversion_holds",
    "is_gbf",
    "parseval_holds",
    "spectrum",
]

DEFAULT_SEARCH_LIMIT = 10**7
_CHUNK = 1 << 15


class SearchLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GBFCandidate:
    n: int
    t: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.t < 2:
            raise ValueError(f"bad type [{self.n}, {self.t}]")
        if len(self.table) != self.t**self.n:
            raise ValueError(f"table has {len(self.table)} entries, expected {self.t ** self.n}")
        if any(not 0 <= v < self.t for v in self.table):
            raise ValueError(f"table entries must lie in [0, {self.t})")

    @classmethod
    def from_function(cls, n: int, t: int, fn) -> GBFCandidate:
        return cls(n, t, tuple(fn(x) % t for x in points(n, t)))


@dataclass(frozen=True)
class SpectrumEntry:
    lam: tuple[int, ...]
    value: CyclotomicInt
    flat: bool


def points(n: int, t: int) -> list[tuple[int, ...]]:
    """All of (Z/tZ)^n in table order."""
    return [tuple(reversed(x)) for x in product(range(t), repeat=n)]


def _dot(x, lam, t: int) -> int:
    return sum(a * b for a, b in zip(x, lam)) % t


def fourier(c: GBFCandidate, lam) -> CyclotomicInt:
    """F(lam) = sum_x z**f(x) * z**(-x.lam) in Z[z_t]."""
    lam = tuple(lam)
    if len(lam) != c.n:
        raise ValueError("lambda has the wrong length")
    t = c.t
    exps = [0] * t
    for x, fx in zip(points(c.n, t), c.table):
        exps[(fx - _dot(x, lam, t)) % t] += 1
    return CyclotomicInt.from_exponents(t, exps)


def spectrum(c: GBFCandidate) -> list[SpectrumEntry]:
    target = CyclotomicInt.from_int(c.t, c.t**c.n)
    out = []
    for lam in points(c.n, c.t):
        v = fourier(c, lam)
        out.append(SpectrumEntry(lam, v, v * v.conj() == target))
    return out


def is_gbf(c: GBFCandidate) -> bool:
    """Exact check of F(lam) * conj(F(lam)) == t**n for every lam."""
    target = CyclotomicInt.from_int(c.t, c.t**c.n)
    for lam in points(c.n, c.t):
        v = fourier(c, lam)
        if v * v.conj() != target:
            return False
    return True


def parseval_holds(c: GBFCandidate) -> bool:
    total = CyclotomicInt.from_int(c.t, 0)
    for lam in points(c.n, c.t):
        v = fourier(c, lam)
        total = total + v * v.conj()
    return total == CyclotomicInt.from_int(c.t, c.t ** (2 * c.n))


def inversion_holds(c: GBFCandidate) -> bool:
    """sum_lam F(lam) z**(x.lam) == t**n z**f(x) for every x."""
    t = c.t
    pts = points(c.n, t)
    spec = [fourier(c, lam) for lam in pts]
    for x, fx in zip(pts, c.table):
        acc = CyclotomicInt.from_int(t, 0)
        for lam, v in zip(pts, spec):
            acc = acc + v * CyclotomicInt.zeta(t, _dot(x, lam, t))
        if acc != CyclotomicInt.zeta(t, fx) * t**c.n:
            return False
    return True


# --- batch (group-ring) route -------------------------------------------------


def _basis_matrix(t: int) -> np.ndarray:
    return np.array(_power_table(t), dtype=np.int64)


def _dot_table(n: int, t: int) -> np.ndarray:
    pts = np.array(points(n, t), dtype=np.int64).reshape(t**n, n)
    return (pts @ pts.T) % t  # [x, lam]


def batch_spectra(tables: np.ndarray, t: int, n: int) -> np.ndarray:
    """Count vectors of F(lam) in Z[C_t]: shape (N, t**n, t), entry [i, lam, k]
    is the number of x with f_i(x) - x.lam = k (mod t)."""
    dots = _dot_table(n, t)
    exps = (tables[:, :, None] - dots[None, :, :]) % t  # [i, x, lam]
    onehot = exps[..., None] == np.arange(t)
    return onehot.sum(axis=1, dtype=np.int64)


def _cyclic_autocorr(c: np.ndarray, t: int) -> np.ndarray:
    # out[..., d] = sum_k c[..., k] * c[..., k - d]
    return np.stack([(c * np.roll(c, d, axis=-1)).sum(axis=-1) for d in range(t)], axis=-1)


def batch_flat(tables: np.ndarray, t: int, n: int) -> np.ndarray:
    """Boolean (N, t**n): is F(lam) * conj(F(lam)) == t**n exactly."""
    spec = batch_spectra(tables, t, n)
    norms = _cyclic_autocorr(spec, t) @ _basis_matrix(t)
    target = np.zeros(norms.shape[-1], dtype=np.int64)
    target[0] = t**n
    return (norms == target).all(axis=-1)


def batch_parseval(tables: np.ndarray, t: int, n: int) -> np.ndarray:
    spec = batch_spectra(tables, t, n)
    total = _cyclic_autocorr(spec, t).sum(axis=1) @ _basis_matrix(t)
    target = np.zeros(total.shape[-1], dtype=np.int64)
    target[0] = t ** (2 * n)
    return (total == target).all(axis=-1)


def batch_inversion(tables: np.ndarray, t: int, n: int) -> np.ndarray:
    spec = batch_spectra(tables, t, n)  # [i, lam, k]
    dots = _dot_table(n, t)  # [x, lam]
    size = t**n
    basis = _basis_matrix(t)
    ok = np.ones(len(tables), dtype=bool)
    for x in range(size):
        acc = np.zeros((len(tables), t), dtype=np.int64)
        for lam in range(size):
            acc += np.roll(spec[:, lam, :], int(dots[x, lam]), axis=-1)
        lhs = acc @ basis
        rhs = basis[tables[:, x]] * size
        ok &= (lhs == rhs).all(axis=-1)
    return ok


def _candidate_block(start: int, stop: int, t: int, size: int) -> np.ndarray:
    """Tables numbered start..stop-1 in lexicographic order (entry 0 most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, size), dtype=np.int64)
    for pos in range(size - 1, -1, -1):
        out[:, pos] = idx % t
        idx //= t
    return out


@dataclass
class SearchResult:
    n: int
    t: int
    candidates: int
    count: int
    tables: list[tuple[int, ...]]

    def to_json(self, max_tables: int = 100) -> dict:
        return {
            "type": [self.n, self.t],
            "candidates": self.candidates,
            "count": self.count,
            "tables": [list(tb) for tb in self.tables] if self.count <= max_tables else None,
        }


def exhaustive_search(n: int, t: int, limit: int = DEFAULT_SEARCH_LIMIT, workers: int = 1) -> SearchResult:
    """Every table (Z/tZ)^n -> Z/tZ that is a GBF, in lexicographic order."""
    if n < 1 or t < 2:
        raise ValueError(f"bad type [{n}, {t}]")
    size = t**n
    total = t**size
    if total > limit:
        raise SearchLimitExceeded(f"type [{n}, {t}] has {t}^{size} candidates, above the limit {limit}")
    bounds = [(s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]

    def run(b):
        tables = _candidate_block(b[0], b[1], t, size)
        hits = batch_flat(tables, t, n).all(axis=1)
        return [tuple(int(v) for v in row) for row in tables[hits]]

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    found = [tb for part in parts for tb in part]
    return SearchResult(n, t, total, len(found), found)


def all_tables(n: int, t: int) -> np.ndarray:
    size = t**n
    return _candidate_block(0, t**size, t, size)
