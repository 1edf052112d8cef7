"""Command-line interface.

Exit codes: 0 = prime / success (all checks pass), 1 = composite (or a
check failed), 2 = domain or usage error, 3 = internal inconsistency.
A composite verdict is a successful run of the algorithm, not an error;
verdict and reason text go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import os
import sys
from typing import Optional

from . import checks as checks_mod
from .prover15 import (Certificate, CertificateFormatError, Verdict,
                       strict_torsion_check, test15, verify_certificate)
from .prover2 import test2
from .sequence import SequenceInconsistency
from .sieve import sieve_candidates

EXIT_PRIME = 0
EXIT_COMPOSITE = 1
EXIT_DOMAIN = 2
EXIT_INTERNAL = 3


def _verdict_exit(v: Verdict, label: str) -> int:
    if v.is_prime:
        print(f"{label} is prime")
        if v.detail:
            print(v.detail)
        return EXIT_PRIME
    if v.is_composite:
        print(f"{label} is composite")
        if v.reason is not None:
            line = f"reason: {v.reason.value}"
            if v.factor is not None:
                line += f" (factor {v.factor})"
            print(line)
        if v.detail:
            print(v.detail)
        return EXIT_COMPOSITE
    print(f"domain error: {v.detail}")
    return EXIT_DOMAIN


def _cmd_test15(args) -> int:
    v = test15(args.k)
    code = _verdict_exit(v, f"F_{args.k}")
    if v.is_prime and v.certificate is not None:
        if args.cert:
            v.certificate.write(args.cert)
            print(f"certificate written to {args.cert}", file=sys.stderr)
        if args.strict_torsion:
            ok = strict_torsion_check(v.certificate)
            print(f"strict-torsion: {'ok' if ok else 'MISMATCH'}")
    return code


def _cmd_test2(args) -> int:
    return _verdict_exit(test2(args.k), f"1 + 9*2^{args.k}")


def _cmd_verify(args) -> int:
    try:
        cert = Certificate.load(args.cert)
    except (OSError, CertificateFormatError) as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    result = verify_certificate(cert)
    if result.ok:
        print(f"certificate valid: F_{cert.k} is prime")
    else:
        print("certificate INVALID: " + ", ".join(result.failures))
    code = EXIT_PRIME if result.ok else EXIT_COMPOSITE
    if args.strict_torsion and result.ok:
        ok = strict_torsion_check(cert)
        print(f"strict-torsion: {'ok' if ok else 'MISMATCH'}")
        if not ok:
            code = EXIT_COMPOSITE
    return code


def _cmd_sieve(args) -> int:
    report = sieve_candidates(args.kmax, args.bound)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            report.write(fh, log=args.log)
        print(f"{len(report.survivors)} survivors, "
              f"{len(report.eliminations)} eliminations -> {args.out}",
              file=sys.stderr)
    else:
        report.write(sys.stdout, log=args.log)
    return EXIT_PRIME


def _cmd_search(args) -> int:
    report = sieve_candidates(args.kmax, args.bound)
    print(f"sieve: {len(report.survivors)} candidates of S up to "
          f"{args.kmax} survive bound {args.bound}", file=sys.stderr)
    survivors = list(report.survivors)
    verdicts = {}
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for v in pool.map(test15, survivors):
                verdicts[v.k] = v
    else:
        for k in survivors:
            verdicts[k] = test15(k)
    primes = sorted(k for k, v in verdicts.items() if v.is_prime)
    for k in primes:
        print(f"k={k}")
    if args.certdir:
        os.makedirs(args.certdir, exist_ok=True)
        for k in primes:
            path = os.path.join(args.certdir, f"cm15-cert-k{k}.json")
            verdicts[k].certificate.write(path)
        print(f"{len(primes)} certificates -> {args.certdir}", file=sys.stderr)
    print(f"{len(primes)} prime, {len(survivors) - len(primes)} composite "
          f"among survivors", file=sys.stderr)
    return EXIT_PRIME


def _cmd_check_theorems(args) -> int:
    ks = tuple(int(s) for s in args.k.split(",")) if args.k else (9, 123)
    outcomes = checks_mod.run_all(hverify_ks=ks)
    failed = 0
    for oc in outcomes:
        status = "PASS" if oc.passed else "FAIL"
        print(f"{status} {oc.name}: {oc.detail}")
        failed += 0 if oc.passed else 1
    print(f"{len(outcomes) - failed}/{len(outcomes)} checks passed")
    return EXIT_PRIME if failed == 0 else EXIT_COMPOSITE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmprime",
        description="Deterministic primality proving for the special "
                    "sequences F_k (CM by Q(sqrt(-15))) and 1 + 9*2^k "
                    "(CM by Q(sqrt(-2))).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test15", help="test F_k for k in S")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cert", help="write a certificate here on a prime verdict")
    p.add_argument("--strict-torsion", action="store_true",
                   help="also report the 2-torsion landing diagnostic")
    p.set_defaults(func=_cmd_test15)

    p = sub.add_parser("test2", help="test 1 + 9*2^k for k = 1 mod 8, k >= 17")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_test2)

    p = sub.add_parser("verify", help="verify a stored certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--strict-torsion", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sieve", help="small-prime pre-filter over S")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--out", help="write survivor lines here instead of stdout")
    p.add_argument("--log", action="store_true",
                   help="also emit one 'elim k=.. p=..' line per elimination")
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("search", help="sieve then run test15 on the survivors")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--certdir", help="write certificates for primes found")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("check-theorems",
                       help="run the sequence/curve/structure check suites")
    p.add_argument("--k", help="comma-separated hverify indices (default 9,123)")
    p.set_defaults(func=_cmd_check_theorems)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return EXIT_DOMAIN if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SequenceInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except RuntimeError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


run = main  # argv -> exit code


if __name__ == "__main__":
    sys.exit(main())
