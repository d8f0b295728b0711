"""Command-line interface.

Exit codes: 0 success, 1 hypothesis failure (or nothing found), 2 usage
error, 3 internal invariant violation.
"""

import argparse
import json
import sys

from .arith import is_prime
from .endo import EndoMatrix, descends, kernel_preserved, verify_no_medium_relation
from .quotient import InvariantViolation, make_context
from .rational import CurveSearchError, search_curve
from .scan import (
    HypothesisFailure,
    LabConfig,
    iter_good_primes,
    run_scan,
    write_report,
)

EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suppscan",
        description="Order-divisibility scans on a quotient of E x E, with "
        "endomorphism-relation certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_search = sub.add_parser("search-curve", help="find a usable curve, emit a config")
    p_search.add_argument("--height-bound", type=int, required=True)
    p_search.add_argument("--out", help="write the config here instead of stdout")

    p_validate = sub.add_parser("validate", help="check every hypothesis of a config")
    p_validate.add_argument("--config", required=True)

    p_scan = sub.add_parser("scan", help="sweep primes and write CSV/JSON reports")
    p_scan.add_argument("--config", required=True)
    p_scan.add_argument("--out-csv", required=True)
    p_scan.add_argument("--out-json", required=True)
    p_scan.add_argument("--workers", type=int, default=None)

    p_endo = sub.add_parser(
        "endo-check", help="descent congruences vs kernel preservation, residue matrices"
    )
    p_endo.add_argument("--config", required=True)
    p_endo.add_argument("--primes", type=int, default=10, help="number of good primes")

    p_norel = sub.add_parser("no-relation", help="impossibility certificate for a prime p")
    p_norel.add_argument("--p", type=int, required=True)

    return parser


def _load_config(path: str) -> LabConfig:
    try:
        with open(path) as fh:
            return LabConfig.from_dict(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"cannot load config {path}: {exc}") from exc


class UsageError(Exception):
    pass


def _cmd_search_curve(args) -> int:
    if args.height_bound < 1:
        raise UsageError("--height-bound must be >= 1")
    try:
        curve, R, R1, R2 = search_curve(args.height_bound)
    except CurveSearchError as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    config = LabConfig(
        curve=curve,
        R=R,
        R1=R1,
        R2=R2,
        p=2,
        prime_bound=10_000,
        naive_threshold=100_000,
        entry_bound=4,
        workers=1,
    )
    text = json.dumps(config.to_dict(), indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_validate(args) -> int:
    config = _load_config(args.config)
    report = config.validate()
    for flag, value in report.to_dict().items():
        if flag != "failures":
            print(f"{flag}: {value}")
    for reason in report.failures:
        print(f"failure: {reason}")
    return EXIT_OK if report.ok else EXIT_HYPOTHESIS


def _cmd_scan(args) -> int:
    config = _load_config(args.config)
    report = run_scan(config, workers=args.workers)
    write_report(report, args.out_csv, args.out_json)
    print(
        f"scanned {report.primes_scanned} primes "
        f"(skipped {len(report.primes_skipped)}); "
        f"forward rate {report.condition1_forward_rate}, "
        f"backward rate {report.condition1_backward_rate}"
    )
    print(f"report digest {report.digest()}")
    return EXIT_OK


def _cmd_endo_check(args) -> int:
    config = _load_config(args.config)
    if args.primes < 1:
        raise UsageError("--primes must be >= 1")
    p = config.p
    qs = []
    for q in iter_good_primes(config):
        qs.append(q)
        if len(qs) >= args.primes:
            break
    residues = [
        EndoMatrix(a, b, c, d)
        for a in range(p)
        for b in range(p)
        for c in range(p)
        for d in range(p)
    ]
    mismatches = 0
    for q in qs:
        ctx = make_context(config.curve, config.R1, config.R2, p, q)
        agree = sum(
            kernel_preserved(m, ctx) == descends(m, p).descends for m in residues
        )
        print(f"q={q}: {agree}/{len(residues)} residue matrices agree")
        mismatches += len(residues) - agree
    if mismatches:
        print(f"MISMATCH: {mismatches} disagreements", file=sys.stderr)
        return EXIT_INVARIANT
    print(f"descent criterion and kernel preservation agree at all {len(qs)} primes")
    return EXIT_OK


def _cmd_no_relation(args) -> int:
    if args.p < 2 or not is_prime(args.p):
        raise UsageError(f"--p must be prime, got {args.p}")
    cert = verify_no_medium_relation(args.p)
    print(f"p = {args.p}: {cert.kind}")
    print(cert.reason)
    return EXIT_OK


_COMMANDS = {
    "search-curve": _cmd_search_curve,
    "validate": _cmd_validate,
    "scan": _cmd_scan,
    "endo-check": _cmd_endo_check,
    "no-relation": _cmd_no_relation,
}


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisFailure as exc:
        for reason in exc.report.failures:
            print(f"hypothesis failure: {reason}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
