import random

import pytest

from gbfcert.relsearch import make_fixture


def random_fixture(rng: random.Random, max_rank=3, max_d=20, gs=(2, 4, 6, 8)):
    """Synthetic class-group data: random invariant chain, random classes
    with the principal-sum constraint, random fixed-point-free pairing."""
    r = rng.randint(0, max_rank)
    invs = []
    for _ in range(r):
        base = invs[-1] if invs else 1
        mults = [k for k in range(1, max_d // base + 1) if base * k >= 2]
        if not mults:
            break
        invs.append(base * rng.choice(mults))
    g = rng.choice(gs)
    vecs = [[rng.randrange(d) for d in invs] for _ in range(g - 1)]
    vecs.append([(-sum(v[i] for v in vecs)) % d for i, d in enumerate(invs)])
    idx = list(range(1, g + 1))
    rng.shuffle(idx)
    pairing = [0] * g
    for a, b in zip(idx[::2], idx[1::2]):
        pairing[a - 1], pairing[b - 1] = b, a
    return make_fixture(0, g, invs, vecs, pairing, "synthetic")


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
