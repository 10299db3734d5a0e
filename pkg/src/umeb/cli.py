"""Command line entry point: ``umeb {generate,verify,analyze,catalog,roundtrip}``.

Exit codes: 0 all checks pass, 1 verification failure, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from . import io
from .lifts import lift
from .linalg import Tolerance
from .schmidt import DEFAULT_SAMPLES, complement_rank_profile
from .seeds import BUILTIN_SEEDS, SeedValidationError, builtin_seed, load_seed, seed_from_json
from .verify import DEFAULT_RESTARTS, full_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _tolerance(args) -> Tolerance:
    try:
        return Tolerance.from_env(eps_orth=args.eps_orth, eps_sv=args.eps_sv,
                                  eps_rank=args.eps_rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _resolve_seed(source: str, tol: Tolerance):
    if source.startswith("builtin:"):
        return builtin_seed(source)
    return load_seed(source, tol)


def _build(args, tol):
    seed = _resolve_seed(args.seed, tol)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return lift(seed, args.theorem, p=args.p, q=args.q, d=args.d)


def _verify_document(candidate, args, tol) -> tuple[dict, bool]:
    report = full_report(candidate, tol=tol, restarts=args.restarts, seed_rng=args.rng_seed)
    doc = io.report_metadata(tol, args.rng_seed, restarts=args.restarts,
                             basis_source=candidate.source)
    doc.update(report.to_json())
    return doc, report.passed


def cmd_generate(args) -> int:
    tol = _tolerance(args)
    candidate = _build(args, tol)
    io.save_candidate(candidate, args.output)
    print(f"members={len(candidate)} expected={candidate.expected_count}")
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    candidate = io.load_candidate(args.basis)
    doc, passed = _verify_document(candidate, args, tol)
    io.write_json(args.output, doc)
    print(f"members={doc['member_count']} complement_dim={doc['complement_dim']} "
          f"unextendibility={doc['unextendibility']} passed={passed}")
    for note in doc["notes"]:
        print(f"note: {note}")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_analyze(args) -> int:
    tol = _tolerance(args)
    candidate = io.load_candidate(args.basis)
    try:
        profile = complement_rank_profile(candidate, args.samples, args.rng_seed, tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    doc = io.report_metadata(tol, args.rng_seed, basis_source=candidate.source)
    doc.update(profile.to_json())
    io.write_json(args.output, doc)
    print(f"complement_dim={profile.complement_dim} max_rank_found={profile.max_rank_found}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    tol = _tolerance(args)
    for name, make in BUILTIN_SEEDS.items():
        s = make()
        status = "valid" if not s.failures(tol) else "INVALID"
        print(f"builtin:{name}\t{s.kind.value}\t{s.d_large}x{s.d_small}\tN={len(s)}\t"
              f"{s.provenance}\t{status}")
    code = EXIT_OK
    for path in args.file or ():
        try:
            s = seed_from_json(io.read_json(path), validate=False)
        except ValueError as exc:
            print(f"{path}\tparse error: {exc}")
            code = EXIT_FAIL
            continue
        errors = s.failures(tol)
        print(f"{path}\t{s.kind.value}\t{s.d_large}x{s.d_small}\tN={len(s)}\t{s.provenance}\t"
              f"{'valid' if not errors else 'INVALID'}")
        for e in errors:
            print(f"  failed {e.check}: {e}")
        if errors:
            code = EXIT_FAIL
    return code


def cmd_roundtrip(args) -> int:
    """Verify in memory and after a save/load cycle; the two reports must match byte for byte."""
    tol = _tolerance(args)
    candidate = _build(args, tol)
    direct, passed = _verify_document(candidate, args, tol)
    out = Path(args.output)
    io.save_candidate(candidate, out)
    reloaded, _ = _verify_document(io.load_candidate(out), args, tol)
    same = io.dumps(direct) == io.dumps(reloaded)
    print(f"members={len(candidate)} identical_reports={same} passed={passed}")
    return EXIT_OK if same and passed else EXIT_FAIL


def _add_tolerance(p):
    p.add_argument("--eps-orth", type=float, default=None)
    p.add_argument("--eps-sv", type=float, default=None)
    p.add_argument("--eps-rank", type=float, default=None)


def _add_lift(p):
    p.add_argument("--theorem", choices=("T1", "T2"), required=True)
    p.add_argument("--seed", required=True,
                   help="builtin:bravyi-smolin, builtin:two-by-three, or a seed JSON path")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--d", type=int)


def _add_verify(p):
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--rng-seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="umeb", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="lift a seed basis and write the basis file")
    _add_lift(p)
    p.add_argument("-o", "--output", default="basis.json")
    _add_tolerance(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a basis file, write a JSON report")
    p.add_argument("basis")
    p.add_argument("-o", "--output", default="report.json")
    _add_verify(p)
    _add_tolerance(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="Schmidt-rank profile of the complement")
    p.add_argument("basis")
    p.add_argument("-o", "--output", default="profile.json")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--rng-seed", type=int, default=0)
    _add_tolerance(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", help="list builtin seeds, validate seed files")
    p.add_argument("--file", action="append")
    _add_tolerance(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("roundtrip", help="generate, verify, save, reload, verify again")
    _add_lift(p)
    p.add_argument("-o", "--output", default="basis.json")
    _add_verify(p)
    _add_tolerance(p)
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "restarts", 1) < 1 or getattr(args, "samples", 0) < 0:
        print("error: --restarts must be >= 1 and --samples >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, SeedValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
