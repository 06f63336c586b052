"""Command line interface: ``gbfcert <command> ...``.

Exit codes: 0 success / certified, 10 inconclusive (or relation solvable),
20 budget or search limit exceeded, 30 verification failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .arith import is_prime
from .criterion import norm_criterion
from .cyclotomic import SubfieldSpec, delta_report
from .gbf import SearchLimitExceeded, exhaustive_search
from .relsearch import (
    DEFAULT_N_MAX,
    FixtureError,
    SearchSpaceTooLarge,
    batch_check,
    load_fixture,
    max_np,
    relation_solvable,
)
from .scanner import BudgetExceeded, ScanFilter, density, scan, smallest_certified, wieferich_scan

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 10
EXIT_BUDGET = 20
EXIT_VERIFY = 30


class UsageError(Exception):
    pass


def _hit_json(hit) -> dict:
    return {
        "p": str(hit.p),
        "f": str(hit.f),
        "certificate": hit.certificate.to_json() if hit.certificate else None,
    }


def cmd_certify(a):
    if not is_prime(a.p, a.seed) or not is_prime(a.q, a.seed):
        raise UsageError("--p and --q must be prime")
    cert = norm_criterion(a.q, a.n, a.p, a.e, a.seed)
    return cert.to_json(), EXIT_OK if cert.certified else EXIT_INCONCLUSIVE, None


def cmd_scan(a):
    req = (a.certify_n, a.certify_e) if a.certify_n is not None else None
    flt = ScanFilter(lo=a.lo, hi=a.hi, g=a.g, f_parity=a.f_parity, p_mod_8=a.mod8, require_certified=req)
    hits = scan(flt, a.count, workers=a.threads, work_limit=a.work_limit, seed=a.seed)
    return [_hit_json(h) for h in hits], EXIT_OK, None


def cmd_smallest(a):
    hit = smallest_certified(
        a.n, a.g, a.f_parity, a.mod8, a.e, workers=a.threads, work_limit=a.work_limit, seed=a.seed
    )
    return _hit_json(hit), EXIT_OK, None


def cmd_density(a):
    rep = density(a.q, a.n, a.g, a.x, apply_bound=not a.no_bound)
    return [rep.to_json()], EXIT_OK, None


def cmd_wieferich(a):
    return [{"p": str(p)} for p in wieferich_scan(a.q, a.limit)], EXIT_OK, None


def cmd_cyclo_verify(a):
    try:
        spec = SubfieldSpec(a.p, tuple(a.subgroup))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not spec.is_complex:
        raise UsageError(f"-1 lies in the subgroup {list(spec.subgroup)}: the fixed field is real")
    rep = delta_report(a.p, spec)
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_VERIFY, None


def cmd_gbf_search(a):
    res = exhaustive_search(a.n, a.t, a.limit, workers=a.threads)
    return res.to_json(), EXIT_OK, None


def cmd_relsearch(a):
    if a.batch:
        values = tuple(range(1, a.n + 1, 2)) if a.n else (1, 3)
        rep = batch_check(a.batch, values)
        code = EXIT_OK if rep["unsolvable_everywhere"] and rep["complete"] else EXIT_INCONCLUSIVE
        return rep, code, f"batch directory {a.batch}"
    if not a.fixture:
        raise UsageError("give --fixture or --batch")
    fx = load_fixture(a.fixture)
    if a.max_np or not a.n:
        res = max_np(fx, a.n_max, strategy=a.strategy)
        return res.to_json(), EXIT_OK if res.value is not None else EXIT_INCONCLUSIVE, fx.provenance
    w = relation_solvable(fx, a.n, strategy=a.strategy)
    payload = {
        "p": str(fx.p),
        "n": a.n,
        "solvable": w is not None,
        "witness": list(w.exponents) if w else None,
    }
    return payload, EXIT_INCONCLUSIVE if w else EXIT_OK, fx.provenance


def _odd(text: str) -> int:
    v = int(text)
    if v < 1 or v % 2 == 0:
        raise argparse.ArgumentTypeError(f"{text} is not an odd positive integer")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomised internals")
    common.add_argument("--threads", type=int, default=1)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report (default)")
    out.add_argument("--jsonl", dest="fmt", action="store_const", const="jsonl", help="one JSON object per row")
    out.add_argument("--table", dest="fmt", action="store_const", const="table", help="aligned text table")
    common.set_defaults(fmt="json")

    ap = argparse.ArgumentParser(prog="gbfcert", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="decide one (n, p, e)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--q", type=int, default=2)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", parents=[common], help="list primes passing filters")
    p.add_argument("--g", type=int)
    p.add_argument("--f-parity", choices=["any", "odd", "even"], default="any")
    p.add_argument("--mod8", type=int)
    p.add_argument("--certify-n", type=_odd)
    p.add_argument("--certify-e", type=int, default=1)
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--work-limit", type=int, default=10**7)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("smallest", parents=[common], help="least certified prime")
    p.add_argument("--n", type=_odd, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--f-parity", choices=["any", "odd", "even"], default="odd")
    p.add_argument("--mod8", type=int, default=1)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--work-limit", type=int, default=10**7)
    p.set_defaults(func=cmd_smallest)

    p = sub.add_parser("density", parents=[common], help="count primes with (p-1)/ord_p(q) = g")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=_odd, default=3)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--no-bound", action="store_true", help="drop the p > bound condition")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("wieferich", parents=[common], help="primes with q^(p-1) = 1 mod p^2")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_wieferich)

    p = sub.add_parser("cyclo-verify", parents=[common], help="check the CM identities for a subfield")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--subgroup", type=_int_list, required=True)
    p.set_defaults(func=cmd_cyclo_verify)

    p = sub.add_parser("gbf-search", parents=[common], help="exhaustive GBF search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--limit", type=int, default=10**7)
    p.set_defaults(func=cmd_gbf_search)

    p = sub.add_parser("relsearch", parents=[common], help="class-group relation search")
    p.add_argument("--fixture")
    p.add_argument("--batch", help="directory of fixtures (with MANIFEST)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--n", type=_odd)
    mode.add_argument("--max-np", action="store_true")
    p.add_argument("--n-max", type=_odd, default=DEFAULT_N_MAX)
    p.add_argument("--strategy", choices=["mitm", "lex"], default="mitm")
    p.set_defaults(func=cmd_relsearch)
    return ap


_PARAM_SKIP = {"func", "fmt", "command"}


def _rows(results) -> list[dict]:
    if isinstance(results, list):
        return results
    return [results]


def _flatten(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, (dict, list)):
            out[k] = json.dumps(v, separators=(",", ":"))
        else:
            out[k] = "" if v is None else str(v)
    return out


def format_table(results) -> str:
    rows = [_flatten(r) for r in _rows(results)]
    if not rows:
        return "(no rows)"
    cols = list(rows[0])
    width = {c: max(len(c), *(len(r.get(c, "")) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(width[c]) for c in cols)]
    lines.append("  ".join("-" * width[c] for c in cols))
    for r in rows:
        lines.append("  ".join(r.get(c, "").ljust(width[c]) for c in cols))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in _PARAM_SKIP}
    start = time.perf_counter()
    try:
        results, code, provenance = args.func(args)
    except (UsageError, FixtureError, ValueError, FileNotFoundError) as exc:
        print(f"gbfcert {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, SearchLimitExceeded, SearchSpaceTooLarge) as exc:
        print(f"gbfcert {args.command}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = time.perf_counter() - start
    report = {
        "command": args.command,
        "parameters": {k: (str(v) if isinstance(v, Path) else v) for k, v in params.items()},
        "results": results,
        "exit_code": code,
        "timing": {"seconds": round(elapsed, 6)},
        "version": __version__,
    }
    if provenance is not None:
        report["provenance"] = provenance
    if args.fmt == "table":
        print(format_table(results))
    elif args.fmt == "jsonl":
        for row in _rows(results):
            print(json.dumps(row, sort_keys=True))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
