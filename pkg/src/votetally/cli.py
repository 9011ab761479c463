"""Command-line front end.

Subcommands:
  tally     parse a definition and a ballot file, print the result
  validate  check files without tallying
  check     run the differential self-test suites
  quota     print the seat quota for a ballot count and seat count
  serve     start the HTTP election service

Exit codes: 0 success, 2 invalid input (parse or precondition diagnostics on
stderr), 1 internal failure or failed self-checks. Output is deterministic:
identical invocations over identical files produce identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import ballotio, differential
from .errors import ParseError, PreconditionViolation, TallyError
from .stv import droop_quota

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_election(definition_path: str, ballots_path: str | None,
                   strict: bool):
    definition = ballotio.parse_election(_read(definition_path))
    ballots: list = []
    diagnostics: list[ParseError] = []
    if ballots_path is not None:
        ballots, diagnostics = ballotio.parse_ballots(
            _read(ballots_path), definition, strict=strict)
    return definition, ballots, diagnostics


def cmd_tally(args: argparse.Namespace) -> int:
    definition, ballots, diagnostics = _load_election(
        args.definition, args.ballots, strict=not args.lenient)
    for diagnostic in diagnostics:
        print(f"skipped record: {diagnostic}", file=sys.stderr)
    outcome = ballotio.tally_election(definition, ballots)
    sys.stdout.write(ballotio.serialize_result(outcome,
                                               include_trace=args.trace))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    definition, ballots, diagnostics = _load_election(
        args.definition, args.ballots, strict=not args.lenient)
    for diagnostic in diagnostics:
        print(f"invalid record: {diagnostic}", file=sys.stderr)
    print(f"definition ok: {definition.method}, "
          f"{len(definition.candidates)} candidates")
    if args.ballots is not None:
        print(f"ballots ok: {len(ballots)} valid"
              + (f", {len(diagnostics)} skipped" if diagnostics else ""))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    suites = differential.run_all_suites(seed=args.seed,
                                         instances=args.instances,
                                         max_candidates=args.candidates,
                                         max_ballots=args.ballots)
    failed = False
    for name, counterexamples in suites.items():
        status = "ok" if not counterexamples else "FAIL"
        print(f"{name}: {status}")
        for counterexample in counterexamples:
            failed = True
            print(counterexample, file=sys.stderr)
    if failed:
        print(f"reproduce with --seed {args.seed}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_quota(args: argparse.Namespace) -> int:
    quota = droop_quota(args.num_ballots, args.seats)
    print(quota.numerator)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    # Imported lazily so the tallying commands work without the service deps.
    import uvicorn

    from .service.api import create_app
    from .service.config import ServiceConfig

    config = ServiceConfig.load(args.config)
    if args.host:
        config = config.replace(host=args.host)
    if args.port:
        config = config.replace(port=args.port)
    if args.store:
        config = config.replace(store_path=args.store)
    if args.outbox:
        config = config.replace(outbox_path=args.outbox)
    if args.mode:
        config = config.replace(enforcement_mode=args.mode)
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votetally",
        description="Tally elections from ballot files, validate inputs, "
                    "run self-checks, or serve elections over HTTP.")
    sub = parser.add_subparsers(dest="command", required=True)

    tally = sub.add_parser("tally", help="tally a ballot file")
    tally.add_argument("definition", help="election definition file")
    tally.add_argument("ballots", help="ballot file")
    tally.add_argument("--lenient", action="store_true",
                       help="skip invalid records instead of failing")
    tally.add_argument("--trace", action="store_true",
                       help="append the round-by-round trace")
    tally.set_defaults(handler=cmd_tally)

    validate = sub.add_parser("validate", help="validate files")
    validate.add_argument("definition")
    validate.add_argument("ballots", nargs="?", default=None)
    validate.add_argument("--lenient", action="store_true")
    validate.set_defaults(handler=cmd_validate)

    check = sub.add_parser("check",
                           help="run the differential self-test suites")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--instances", type=int, default=2000)
    check.add_argument("--candidates", type=int, default=6)
    check.add_argument("--ballots", type=int, default=20)
    check.set_defaults(handler=cmd_check)

    quota = sub.add_parser("quota", help="print the Droop quota")
    quota.add_argument("num_ballots", type=int)
    quota.add_argument("seats", type=int)
    quota.set_defaults(handler=cmd_quota)

    serve = sub.add_parser("serve", help="run the election service")
    serve.add_argument("--config", default=None,
                       help="JSON config file (defaults come from the "
                            "environment)")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--store", default=None, help="event store path")
    serve.add_argument("--outbox", default=None,
                       help="notification outbox path")
    serve.add_argument("--mode", choices=("precheck", "halt"), default=None,
                       help="precondition enforcement mode")
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, PreconditionViolation) as diagnostic:
        rule = getattr(diagnostic, "rule", "invalid")
        print(f"error [{rule}]: {diagnostic}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as failure:
        print(f"error: {failure}", file=sys.stderr)
        return EXIT_INVALID
    except TallyError as failure:
        print(f"error: {failure}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
