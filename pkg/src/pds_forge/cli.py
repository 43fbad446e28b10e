"""Command-line surface: sieve, certify, search, verify, plane.

Exit codes: 0 success, 2 usage error, 3 mathematical domain error,
4 inconclusive certificate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .arith import is_prime
from .certify import NONEXISTENCE, certificate_to_dict, certificate_to_json, certify
from .errors import DomainError
from .groups import GroupSpec, build_plane
from .params import PdsParams, enumerate_feasible
from .search import read_set_file, search, verify_pds

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INCONCLUSIVE = 4


def _parse_params(text: str) -> PdsParams:
    parts = text.split(",")
    if len(parts) != 4:
        raise DomainError(f"expected v,k,lambda,mu, got {text!r}")
    try:
        v, k, lam, mu = (int(x) for x in parts)
    except ValueError as exc:
        raise DomainError(f"bad parameter quadruple {text!r}") from exc
    return PdsParams(v, k, lam, mu)


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise DomainError(f"empty prime range {text!r}")
    return lo, hi


def cmd_sieve(args) -> int:
    feasible = enumerate_feasible(args.v)
    if args.json:
        doc = [{"v": q.v, "k": q.k, "lambda": q.lam, "mu": q.mu,
                "beta": q.beta, "delta": q.delta} for q in feasible]
        print(json.dumps(doc, indent=2))
    else:
        for q in feasible:
            print(f"{q}  beta={q.beta} delta={q.delta}")
        print(f"# {len(feasible)} feasible parameter set(s) for v = {args.v}")
    return EXIT_OK


def _certify_one(p: int, all_a: bool):
    return certificate_to_dict(certify(p, all_a=all_a))


def cmd_certify(args) -> int:
    if args.prime is not None:
        lo = hi = args.prime
    else:
        lo, hi = _parse_range(args.range)
    primes = [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]
    if not primes:
        raise DomainError(f"no primes in range {lo}..{hi}")

    jobs = args.jobs
    env_jobs = os.environ.get("PDS_FORGE_JOBS")
    if env_jobs is not None:
        jobs = int(env_jobs)

    if jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            docs = list(pool.map(_certify_one, primes, [args.all_a] * len(primes)))
    else:
        docs = [_certify_one(p, args.all_a) for p in primes]

    outdir = Path(args.output) if args.output else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)

    ok = True
    for doc in docs:
        text = json.dumps(doc, sort_keys=True, indent=2)
        if outdir is not None:
            (outdir / f"cert_p{doc['p']}.json").write_text(text + "\n", encoding="utf-8")
        if args.json and len(docs) == 1 and outdir is None:
            print(text)
        else:
            print(f"p={doc['p']}: {doc['verdict']} ({len(doc['steps'])} steps)")
        ok = ok and doc["verdict"] == NONEXISTENCE
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_search(args) -> int:
    spec = GroupSpec.parse(args.group)
    params = _parse_params(args.params)
    results = search(spec, params, prune_lmt=not args.no_lmt)
    if args.json:
        doc = [[list(c) for c in cand.coords()] for cand in results]
        print(json.dumps(doc))
    else:
        for cand in results:
            verdict = verify_pds(cand, params)
            kind = "trivial" if verdict.trivial else "nontrivial"
            print(f"{{{', '.join(str(c) for c in cand.coords())}}}  [{kind}]")
        print(f"# {len(results)} set(s) found in {spec} for {params}")
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = GroupSpec.parse(args.group)
    params = _parse_params(args.params)
    candidate = read_set_file(args.set, spec)
    verdict = verify_pds(candidate, params)
    doc = {
        "valid": verdict.valid,
        "size_ok": verdict.size_ok,
        "identity_excluded": verdict.identity_excluded,
        "inverse_closed": verdict.inverse_closed,
        "counts_ok": verdict.counts_ok,
        "trivial": verdict.trivial,
    }
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        status = "valid" if verdict.valid else "invalid"
        kind = "trivial" if verdict.trivial else "nontrivial"
        print(f"{status} {kind} ({doc})")
    return EXIT_OK


def cmd_plane(args) -> int:
    design = build_plane(args.p)
    n = len(design.points)
    per_line = int(design.incidence[:, 0].sum())
    per_point = int(design.incidence[0, :].sum())
    if args.json:
        doc = {
            "order": design.p,
            "points": n,
            "lines": len(design.lines),
            "points_per_line": per_line,
            "lines_per_point": per_point,
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(f"projective plane of order {design.p}: {n} points, {len(design.lines)} lines,")
        print(f"{per_line} points per line, {per_point} lines per point")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pds-forge",
        description="Partial difference set certification, search, and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sieve = sub.add_parser("sieve", help="list feasible parameter quadruples for an order")
    p_sieve.add_argument("v", type=int)
    p_sieve.add_argument("--json", action="store_true")
    p_sieve.set_defaults(func=cmd_sieve)

    p_cert = sub.add_parser("certify", help="emit nonexistence certificates for order 8p^3")
    group = p_cert.add_mutually_exclusive_group(required=True)
    group.add_argument("--prime", type=int)
    group.add_argument("--range", type=str, help="prime range a..b")
    p_cert.add_argument("--json", action="store_true")
    p_cert.add_argument("--output", type=str, help="directory for cert_p<value>.json files")
    p_cert.add_argument("--all-a", action="store_true", dest="all_a",
                        help="sweep all order-2 intersection sizes 0..7")
    p_cert.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for a range (PDS_FORGE_JOBS overrides)")
    p_cert.set_defaults(func=cmd_certify)

    p_search = sub.add_parser("search", help="exhaustive PDS search in a small group")
    p_search.add_argument("--group", required=True, help="factor list, e.g. 2,2,2,5,5,5")
    p_search.add_argument("--params", required=True, help="v,k,lambda,mu")
    p_search.add_argument("--no-lmt", action="store_true", dest="no_lmt",
                          help="disable multiplier-orbit pruning")
    p_search.add_argument("--json", action="store_true")
    p_search.set_defaults(func=cmd_search)

    p_verify = sub.add_parser("verify", help="verify a set file against parameters")
    p_verify.add_argument("--group", required=True)
    p_verify.add_argument("--set", required=True)
    p_verify.add_argument("--params", required=True)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_plane = sub.add_parser("plane", help="build the projective plane of a prime order")
    p_plane.add_argument("p", type=int)
    p_plane.add_argument("--json", action="store_true")
    p_plane.set_defaults(func=cmd_plane)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
