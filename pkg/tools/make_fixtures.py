"""Regenerate class-group fixtures with PARI/GP (via cypari2).

Not a package dependency. Run in an environment that has cypari2::

    python tools/make_fixtures.py 89 233 937 1289 1433 1609 1721 1913 2441 2969
    python tools/make_fixtures.py --closing 1049177 --out fixtures/closing

For each prime p this builds the decomposition field E of 2 inside Q(zeta_p)
(the fixed field of <2 mod p>), computes Cl(E) with bnfinit, decomposes 2,
and records the class of every prime above 2 together with the pairing
induced by complex conjugation. Results are GRH-conditional (bnfinit).
"""
import argparse
import hashlib
import inspect
import multiprocessing as mp
import pathlib

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)


def fixture_text(p):
    f = int(pari.znorder(pari.Mod(2, p)))
    g = (p - 1) // f
    pol = pari.galoissubcyclo(p, pari.Mod(2, p))
    bnf = pari.bnfinit(pol, 1)
    cyc = [int(c) for c in bnf.bnf_get_cyc()]
    primes = list(pari.idealprimedec(bnf, 2))
    if len(primes) != g:
        raise RuntimeError(f"p={p}: expected {g} primes over 2, got {len(primes)}")
    # Gal(E/Q) is cyclic and E is complex: conjugation is the unique involution.
    autos = list(pari.nfgaloisconj(bnf))
    x = pari("x")
    conj = None
    for s in autos:
        if s == x:
            continue
        if pari.nfgaloisapply(bnf, s, s) == x:
            conj = s
            break
    if conj is None:
        raise RuntimeError(f"p={p}: no involution found")
    hnfs = [pari.idealhnf(bnf, P) for P in primes]
    pairing = []
    for P in primes:
        image = pari.idealhnf(bnf, pari.nfgaloisapply(bnf, conj, P))
        pairing.append(hnfs.index(image) + 1)
    vectors = []
    for P in primes:
        v = [int(c) for c in pari.bnfisprincipal(bnf, P, 0)]
        vectors.append(v)
    # PARI lists cyc with d_{i+1} | d_i; the fixture wants ascending order.
    cyc = cyc[::-1]
    vectors = [v[::-1] for v in vectors]
    h = int(bnf.bnf_get_no())
    lines = [
        "gbf-fixture v1",
        f"# decomposition field of 2 in Q(zeta_{p}); f = ord_p(2) = {f}",
        f"# defining polynomial: {pol}",
        f"p={p}",
        f"g={g}",
        "invariants=" + ",".join(str(d) for d in cyc),
    ]
    for j, v in enumerate(vectors, 1):
        lines.append(f"vector {j} = " + ",".join(str(c) for c in v))
    lines.append("pairing = " + ",".join(str(k) for k in pairing))
    script = hashlib.sha256(inspect.getsource(fixture_text).encode()).hexdigest()[:16]
    lines.append(
        f"provenance = PARI/GP {'.'.join(map(str, pari.version()))} via cypari2; bnfinit (GRH-conditional);"
        f" h={h}; fixture_text sha256:{script}"
    )
    return "\n".join(lines) + "\n"


def _write_fixture(p, path):
    text = fixture_text(p)
    tmp = pathlib.Path(path + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("primes", nargs="*", type=int)
    ap.add_argument("--out", default="fixtures")
    ap.add_argument(
        "--closing",
        type=int,
        metavar="LIMIT",
        help="all primes p < LIMIT with ord_p(2) = (p-1)/8 odd",
    )
    ap.add_argument("--timeout", type=int, default=0, help="seconds per field (0 = none)")
    ap.add_argument("--skip-existing", action="store_true")
    ap.add_argument("--manifest", help="write the target prime list to this file")
    args = ap.parse_args()
    primes = list(args.primes)
    if args.closing:
        for p in pari.primes([3, args.closing - 1]):
            p = int(p)
            if p % 16 == 9 and int(pari.znorder(pari.Mod(2, p))) == (p - 1) // 8:
                primes.append(p)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.manifest:
        pathlib.Path(args.manifest).write_text("".join(f"{p}\n" for p in primes))
    for p in primes:
        target = out / f"p{p}.fx"
        if args.skip_existing and target.exists():
            continue
        if args.timeout:
            # a child process per field: PARI does not always honour signals
            child = mp.Process(target=_write_fixture, args=(p, str(target)))
            child.start()
            child.join(args.timeout)
            if child.is_alive():
                child.kill()
                child.join()
                print(f"p={p} timed out", flush=True)
                continue
            if child.exitcode:
                print(f"p={p} failed", flush=True)
                continue
        else:
            _write_fixture(p, str(target))
        print(f"p={p} done", flush=True)


if __name__ == "__main__":
    main()
