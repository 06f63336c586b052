"""Class-group relation search over ingested fixtures.

Let E be the decomposition field of 2 in Q(zeta_p), with
``2 O_E = P_1 ... P_g`` and ``P_{j+u} = conj(P_j)`` (``u = g/2``).  Writing
``x_j`` for the class of ``P_j`` in Cl(E), a GBF of type [n, 2p] would force

    sum_j  n_j * x_j + (n - n_j) * conj(x_j) = 0,    0 <= n_j <= n.

When no such ``(n_1, ..., n_u)`` exists, no GBF of type [n, 2p^e] exists.
Class groups are not computed here: they arrive as fixture files produced
once by PARI/GP (see ``tools/make_fixtures.py``).

Fixture format (``gbf-fixture v1``)::

    gbf-fixture v1
    p=89
    g=8
    invariants=113            # d_1 | d_2 | ... ; empty for the trivial group
    vector 1 = 1              # class of P_1 in Z/d_1 + ... + Z/d_r
    ...
    vector 8 = 44
    pairing = 3,6,1,8,7,2,5,4 # index of the conjugate of each P_j
    provenance = free text
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from itertools import product
from math import prod
from pathlib import Path

import numpy as np

__all__ = [
    "DEFAULT_EVAL_LIMIT",
    "DEFAULT_N_MAX",
    "ClassGroupFixture",
    "FixtureError",
    "FixtureInvariantError",
    "FixtureParseError",
    "NpResult",
    "RelationWitness",
    "SearchSpaceTooLarge",
    "SearchStats",
    "brute_oracle",
    "fixture_dir",
    "load_fixture",
    "make_fixture",
    "max_np",
    "parse_fixture",
    "relation_solvable",
]

DEFAULT_EVAL_LIMIT = 10**9
DEFAULT_N_MAX = 45
ORACLE_GROUP_LIMIT = 10**5
ORACLE_SPACE_LIMIT = 10**7
HEADER = "gbf-fixture v1"


class FixtureError(ValueError):
    pass


class FixtureParseError(FixtureError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class FixtureInvariantError(FixtureError):
    def __init__(self, check: str, msg: str):
        super().__init__(f"{check}: {msg}")
        self.check = check


class SearchSpaceTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class ClassGroupFixture:
    """Cl(E) as Z/d_1 + ... + Z/d_r plus the classes of the primes above 2.

    Always normalised so that ``vectors[j + u]`` is the conjugate of
    ``vectors[j]`` (0-based).  ``original_index[k]`` is the 1-based position
    that slot ``k`` had in the source file.
    """

    p: int
    g: int
    invariants: tuple[int, ...]
    vectors: tuple[tuple[int, ...], ...]
    provenance: str = ""
    original_index: tuple[int, ...] = ()

    @property
    def u(self) -> int:
        return self.g // 2

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def class_number(self) -> int:
        return prod(self.invariants)

    @property
    def pairing(self) -> tuple[int, ...]:
        u = self.u
        return tuple(range(u + 1, self.g + 1)) + tuple(range(1, u + 1))

    def to_text(self) -> str:
        lines = [HEADER, f"p={self.p}", f"g={self.g}", "invariants=" + ",".join(map(str, self.invariants))]
        for j, v in enumerate(self.vectors, 1):
            lines.append(f"vector {j} = " + ",".join(map(str, v)))
        lines.append("pairing = " + ",".join(map(str, self.pairing)))
        lines.append(f"provenance = {self.provenance}")
        return "\n".join(lines) + "\n"


def make_fixture(p, g, invariants, vectors, pairing, provenance: str = "") -> ClassGroupFixture:
    """Validate raw data and normalise the conjugate pairing."""
    invariants = tuple(int(d) for d in invariants)
    if any(d < 1 for d in invariants):
        raise FixtureInvariantError("invariants", "invariant factors must be positive")
    for a, b in zip(invariants, invariants[1:]):
        if b % a:
            raise FixtureInvariantError("invariants", f"{a} does not divide {b}")
    if g < 2 or g % 2:
        raise FixtureInvariantError("g", f"g={g} must be even and positive")
    if len(vectors) != g:
        raise FixtureInvariantError("vectors", f"expected {g} vectors, got {len(vectors)}")
    r = len(invariants)
    reduced = []
    for j, v in enumerate(vectors, 1):
        if len(v) != r:
            raise FixtureInvariantError("vectors", f"vector {j} has {len(v)} coordinates, expected {r}")
        reduced.append(tuple(int(c) % d for c, d in zip(v, invariants)))
    pairing = [int(k) for k in pairing]
    if len(pairing) != g or sorted(pairing) != list(range(1, g + 1)):
        raise FixtureInvariantError("pairing", "pairing must be a permutation of 1..g")
    for j, k in enumerate(pairing, 1):
        if k == j:
            raise FixtureInvariantError("pairing", f"P_{j} is paired with itself")
        if pairing[k - 1] != j:
            raise FixtureInvariantError("pairing", f"pairing is not an involution at {j}")
    total = [sum(v[i] for v in reduced) % d for i, d in enumerate(invariants)]
    if any(total):
        raise FixtureInvariantError("principal", "2 is not principal: the prime classes do not sum to 0")

    firsts, seen = [], set()
    for j in range(1, g + 1):
        if j not in seen:
            firsts.append(j)
            seen.update((j, pairing[j - 1]))
    order = firsts + [pairing[j - 1] for j in firsts]
    return ClassGroupFixture(
        p=int(p),
        g=g,
        invariants=invariants,
        vectors=tuple(reduced[j - 1] for j in order),
        provenance=provenance,
        original_index=tuple(order),
    )


_INT_LIST = re.compile(r"^\s*(-?\d+(\s*,\s*-?\d+)*)?\s*$")


def _ints(text: str, lineno: int, col: int) -> list[int]:
    if not _INT_LIST.match(text):
        raise FixtureParseError(lineno, col, f"expected comma-separated integers, got {text.strip()!r}")
    return [int(t) for t in text.split(",")] if text.strip() else []


def parse_fixture(text: str) -> ClassGroupFixture:
    """Parse and validate fixture text; see the module docstring for the format."""
    fields: dict[str, object] = {}
    vectors: dict[int, list[int]] = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            if stripped != HEADER:
                raise FixtureParseError(lineno, 1, f"expected header {HEADER!r}")
            header_seen = True
            continue
        if "=" not in stripped:
            raise FixtureParseError(lineno, 1, "expected 'key = value'")
        key_part, value = raw.split("=", 1)
        key = key_part.strip()
        col = len(key_part) + 2
        if key == "provenance":
            fields["provenance"] = value.strip()
            continue
        value = value.split("#", 1)[0]
        if key in ("p", "g"):
            nums = _ints(value, lineno, col)
            if len(nums) != 1:
                raise FixtureParseError(lineno, col, f"{key} takes one integer")
            fields[key] = nums[0]
        elif key == "invariants":
            fields[key] = _ints(value, lineno, col)
        elif key == "pairing":
            fields[key] = _ints(value, lineno, col)
        elif key.startswith("vector"):
            m = re.fullmatch(r"vector\s+(\d+)", key)
            if not m:
                raise FixtureParseError(lineno, 1, f"malformed vector key {key!r}")
            j = int(m.group(1))
            if "invariants" not in fields or "g" not in fields:
                raise FixtureParseError(lineno, 1, "vectors must follow g and invariants")
            if j in vectors:
                raise FixtureParseError(lineno, 1, f"vector {j} given twice")
            vectors[j] = _ints(value, lineno, col)
        else:
            raise FixtureParseError(lineno, 1, f"unknown key {key!r}")
    if not header_seen:
        raise FixtureParseError(1, 1, "empty fixture")
    for key in ("p", "g", "invariants", "pairing"):
        if key not in fields:
            raise FixtureParseError(lineno, 1, f"missing {key}")
    g = fields["g"]
    if sorted(vectors) != list(range(1, g + 1)):
        raise FixtureInvariantError("vectors", f"need vectors 1..{g}, got {sorted(vectors)}")
    return make_fixture(
        fields["p"],
        g,
        fields["invariants"],
        [vectors[j] for j in range(1, g + 1)],
        fields["pairing"],
        fields.get("provenance", ""),
    )


def fixture_dir() -> Path:
    """Directory of shipped fixtures; ``GBF_FIXTURE_DIR`` overrides it."""
    env = os.environ.get("GBF_FIXTURE_DIR")
    return Path(env) if env else Path(__file__).with_name("fixtures")


def load_fixture(path) -> ClassGroupFixture:
    """Read a fixture file.  Bare names such as ``p89.fx`` resolve against :func:`fixture_dir`."""
    path = Path(path)
    if not path.exists() and not path.is_absolute():
        alt = fixture_dir() / path.name
        if alt.exists():
            path = alt
    return parse_fixture(path.read_text(encoding="utf-8"))


@dataclass(frozen=True)
class RelationWitness:
    n: int
    exponents: tuple[int, ...]

    def holds(self, fx: ClassGroupFixture) -> bool:
        u = fx.u
        for i, d in enumerate(fx.invariants):
            s = sum(k * fx.vectors[j][i] + (self.n - k) * fx.vectors[j + u][i] for j, k in enumerate(self.exponents))
            if s % d:
                return False
        return len(self.exponents) == u and all(0 <= k <= self.n for k in self.exponents)

    def conjugate(self) -> RelationWitness:
        return RelationWitness(self.n, tuple(self.n - k for k in self.exponents))


@dataclass
class SearchStats:
    evaluations: int = 0


def _relation_terms(fx: ClassGroupFixture, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(mods, base, steps): base = n * sum conj(x_j); steps[j, k] = k * (x_j - conj(x_j))."""
    mods = np.array(fx.invariants, dtype=np.int64)
    vec = np.array(fx.vectors, dtype=np.int64).reshape(fx.g, fx.rank)
    u = fx.u
    base = (n * vec[u:].sum(axis=0)) % mods if fx.rank else np.zeros(0, dtype=np.int64)
    diffs = (vec[:u] - vec[u:]) % mods if fx.rank else np.zeros((u, 0), dtype=np.int64)
    ks = np.arange(n + 1, dtype=np.int64)
    steps = (ks[None, :, None] * diffs[:, None, :]) % mods if fx.rank else np.zeros((u, n + 1, 0), dtype=np.int64)
    return mods, base, steps


def _check_n(fx: ClassGroupFixture, n: int, limit: int) -> None:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"n must be an odd positive integer, got {n}")
    if (n + 1) ** fx.u > limit:
        raise SearchSpaceTooLarge(f"(n+1)^u = {n + 1}^{fx.u} exceeds the limit {limit}")


def _mitm(fx, n, least, stats):
    mods, base, steps = _relation_terms(fx, n)
    u = fx.u
    h = (u + 1) // 2
    mod_t = tuple(int(m) for m in mods)
    table = steps.tolist()
    r = len(mod_t)

    def sums(cols, first_range=None):
        ranges = [range(n + 1)] * len(cols)
        if first_range is not None and cols:
            ranges[0] = first_range
        for ks in product(*ranges):
            acc = [0] * r
            for j, k in zip(cols, ks):
                row = table[j][k]
                for i in range(r):
                    acc[i] += row[i]
            stats.evaluations += 1
            yield ks, tuple(a % m for a, m in zip(acc, mod_t))

    right: dict[tuple[int, ...], tuple[int, ...]] = {}
    for ks, val in sums(list(range(h, u))):
        right.setdefault(val, ks)
    first = None if least else range(n // 2 + 1)
    base_t = tuple(int(b) for b in base)
    for ks, val in sums(list(range(h)), first):
        need = tuple((-b - v) % m for b, v, m in zip(base_t, val, mod_t))
        hit = right.get(need)
        if hit is not None:
            return RelationWitness(n, tuple(ks) + tuple(hit))
    return None


def _lex(fx, n, least, stats):
    mods, base, steps = _relation_terms(fx, n)
    u = fx.u
    tail = min(u, 3)
    head = u - tail
    # Vectorise the last `tail` coordinates; C order of the grid is lexicographic.
    grid = np.zeros((n + 1,) * tail + (fx.rank,), dtype=np.int64)
    for t in range(tail):
        shape = [1] * tail + [fx.rank]
        shape[t] = n + 1
        grid = grid + steps[head + t].reshape(shape)
    grid = grid.reshape(-1, fx.rank)
    head_ranges = [range(n + 1)] * head
    if not least and head:
        head_ranges[0] = range(n // 2 + 1)
    for ks in product(*head_ranges):
        offset = base.copy()
        for j, k in enumerate(ks):
            offset = offset + steps[j, k]
        if not least and head == 0:
            sub = grid.reshape((n + 1,) * tail + (fx.rank,))[: n // 2 + 1].reshape(-1, fx.rank)
        else:
            sub = grid
        zero = (((sub + offset) % mods) == 0).all(axis=1)
        idx = np.flatnonzero(zero)
        if len(idx):
            stats.evaluations += int(idx[0]) + 1
            rest = np.unravel_index(int(idx[0]), (n // 2 + 1 if not least and head == 0 else n + 1,) + (n + 1,) * (tail - 1))
            return RelationWitness(n, tuple(ks) + tuple(int(r) for r in rest))
        stats.evaluations += len(sub)
    return None


def relation_solvable(
    fx: ClassGroupFixture,
    n: int,
    *,
    least: bool = True,
    strategy: str = "mitm",
    limit: int = DEFAULT_EVAL_LIMIT,
    stats: SearchStats | None = None,
) -> RelationWitness | None:
    """Exhaustively decide the relation for odd ``n``; return a witness or None.

    ``least=True`` returns the lexicographically least witness.  With
    ``least=False`` the first coordinate is restricted to ``n_1 <= n // 2``,
    which loses nothing because conjugating a witness replaces every n_j by
    n - n_j.

    ``strategy="mitm"`` (default) splits the coordinates in two halves and
    matches them through a hash table, ``2 (n+1)^(u/2)`` evaluations;
    ``strategy="lex"`` walks ``[0, n]^u`` in lexicographic order.
    """
    _check_n(fx, n, limit)
    stats = stats if stats is not None else SearchStats()
    if fx.rank == 0:
        stats.evaluations += 1
        return RelationWitness(n, (0,) * fx.u)
    if strategy == "mitm":
        return _mitm(fx, n, least, stats)
    if strategy == "lex":
        return _lex(fx, n, least, stats)
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass
class NpResult:
    """``value`` is n_p, None when n = 1 is already solvable.

    ``saturated`` means nothing up to ``n_max`` was solvable, so the true n_p
    is at least ``value``.
    """

    p: int
    value: int | None
    saturated: bool
    n_max: int
    first_solvable: int | None = None
    witness: RelationWitness | None = None
    evaluations: int = 0
    per_n: dict[int, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "n_p": self.value,
            "saturated": self.saturated,
            "n_max": self.n_max,
            "first_solvable_n": self.first_solvable,
            "witness": list(self.witness.exponents) if self.witness else None,
            "evaluations": self.evaluations,
        }


def max_np(fx: ClassGroupFixture, n_max: int = DEFAULT_N_MAX, **kwargs) -> NpResult:
    """Largest odd n_p <= n_max such that the relation is unsolvable for every odd n <= n_p."""
    if n_max < 1 or n_max % 2 == 0:
        raise ValueError("n_max must be odd and positive")
    stats = SearchStats()
    per_n: dict[int, bool] = {}
    for n in range(1, n_max + 1, 2):
        w = relation_solvable(fx, n, stats=stats, **kwargs)
        per_n[n] = w is not None
        if w is not None:
            return NpResult(fx.p, n - 2 if n > 1 else None, False, n_max, n, w, stats.evaluations, per_n)
    return NpResult(fx.p, n_max, True, n_max, None, None, stats.evaluations, per_n)


def brute_oracle(fx: ClassGroupFixture, n: int) -> bool:
    """Independent solvability check on an explicitly materialised group.

    Every element of Z/d_1 + ... + Z/d_r is listed, each multiple
    ``k*x_j + (n-k)*conj(x_j)`` is built by repeated addition, and all of
    ``[0, n]^u`` is enumerated.
    """
    size = fx.class_number
    if size > ORACLE_GROUP_LIMIT or (n + 1) ** fx.u > ORACLE_SPACE_LIMIT:
        raise SearchSpaceTooLarge("instance too large for the brute-force oracle")
    mods = fx.invariants
    elements = list(product(*(range(d) for d in mods)))
    index = {e: i for i, e in enumerate(elements)}

    def add(a: int, b: int) -> int:
        return index[tuple((x + y) % d for x, y, d in zip(elements[a], elements[b], mods))]

    zero = index[tuple(0 for _ in mods)]
    u = fx.u
    terms = []
    for j in range(u):
        xj, xb = index[fx.vectors[j]], index[fx.vectors[j + u]]
        row = []
        for k in range(n + 1):
            acc = zero
            for _ in range(k):
                acc = add(acc, xj)
            for _ in range(n - k):
                acc = add(acc, xb)
            row.append(acc)
        terms.append(row)
    for ks in product(range(n + 1), repeat=u):
        acc = zero
        for j, k in enumerate(ks):
            acc = add(acc, terms[j][k])
        if acc == zero:
            return True
    return False


def batch_check(directory, n_values=(1, 3), manifest: str = "MANIFEST") -> dict:
    """Run the relation search over every fixture in ``directory``.

    Returns per-fixture outcomes plus coverage against the manifest of target
    primes, so a partial directory is reported as partial.
    """
    directory = Path(directory)
    targets = []
    mf = directory / manifest
    if mf.exists():
        targets = [int(t) for t in mf.read_text().split()]
    rows = []
    for path in sorted(directory.glob("*.fx"), key=lambda q: int(re.sub(r"\D", "", q.stem) or 0)):
        fx = load_fixture(path)
        solvable = {}
        for n in n_values:
            w = relation_solvable(fx, n)
            solvable[n] = list(w.exponents) if w else None
        rows.append({"p": fx.p, "h": fx.class_number, "solvable": solvable})
    have = {r["p"] for r in rows}
    missing = [p for p in targets if p not in have]
    return {
        "n_values": list(n_values),
        "targets": len(targets),
        "fixtures": len(rows),
        "complete": bool(targets) and not missing,
        "missing": missing,
        "unsolvable_everywhere": all(all(v is None for v in r["solvable"].values()) for r in rows),
        "solvable_cases": [r for r in rows if any(v is not None for v in r["solvable"].values())],
        "rows": rows,
    }
