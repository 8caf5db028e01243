"""Command-line interface.

Exit codes separate outcome classes so scripts can triage without parsing
text: 0 success (well-formed, conforming, consistent), 1 semantic negative
(invalid model, non-conforming design, inconsistent model), 2 usage or
operational error (bad flags, missing files, unparseable input, port in
use).  Stdout carries only data; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from admkit.errors import ExportError, InvalidModelError, ParseError
from admkit.formats import export_designs, parse_design, parse_model
from admkit.model import Model, build_model, validate
from admkit.semantics import conforms, is_consistent, meaning_of, well_founded_filter


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_model(path: str) -> Model:
    return build_model(parse_model(_read(path)))


def cmd_validate(args: argparse.Namespace) -> int:
    report = validate(parse_model(_read(args.model)))
    if report.well_formed:
        print("well-formed")
    else:
        print("invalid")
        for violation in report.violations:
            print(f"violation {violation.rule}: {violation.message}")
    for lint in report.lints:
        print(f"lint {lint.rule}: {lint.message}")
    return 0 if report.well_formed else 1


def cmd_derive(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    if args.relation == "entry-points":
        entry = model.entry_points()
        if entry:
            print(", ".join(entry))
        return 0
    by_alternative = {
        "forced": model.forced_by,
        "incompatible": model.incompatible_with,
        "triggers": model.triggered_issues,
    }[args.relation]
    order = (
        model.issue_index
        if args.relation == "triggers"
        else model.alternative_index
    )
    for alternative in model.alternatives:
        related = by_alternative(alternative)
        if related:
            ordered = sorted(related, key=order.__getitem__)
            print(f"{alternative} -> " + ", ".join(ordered))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    design = parse_design(_read(args.design))
    report = conforms(design, model)
    if report.conforms:
        print("conforms")
        return 0
    for violation in report.violations:
        print(f"{violation.condition}: {violation.message}")
    return 1


def cmd_enumerate(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    meaning = meaning_of(model, limit=args.limit)
    if args.well_founded:
        meaning = well_founded_filter(model, meaning)
    sys.stdout.write(export_designs(model, meaning, format=args.format))
    if meaning.truncated:
        print(
            f"enumeration stopped at the limit of {args.limit} designs",
            file=sys.stderr,
        )
    return 0


def cmd_consistent(args: argparse.Namespace) -> int:
    if is_consistent(_load_model(args.model)):
        print("consistent")
        return 0
    print("inconsistent")
    return 1


def cmd_serve(args: argparse.Namespace) -> int:
    import socket

    import uvicorn

    from admkit.service import create_app

    app = create_app(model_dir=args.model_dir, session_ttl=args.session_ttl)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 2
    host, port = sock.getsockname()[:2]
    print(f"serving on http://{host}:{port}", file=sys.stderr)
    server = uvicorn.Server(uvicorn.Config(app, log_level="info"))
    server.run(sockets=[sock])
    return 0


def _nonnegative(value: str) -> int:
    count = int(value)
    if count < 0:
        raise argparse.ArgumentTypeError("must be a non-negative count")
    return count


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="admkit",
        description=(
            "Validate architectural decision models, derive their relations, "
            "check designs for conformity, enumerate meanings, decide "
            "consistency, and serve the HTTP API."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model document for well-formedness")
    p.add_argument("model", help="path to a model document (JSON)")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("derive", help="print a derived relation of the model")
    p.add_argument("model", help="path to a model document (JSON)")
    p.add_argument(
        "--relation",
        required=True,
        choices=("forced", "incompatible", "entry-points", "triggers"),
        help="which relation to print",
    )
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("check", help="check a design for conformity to a model")
    p.add_argument("model", help="path to a model document (JSON)")
    p.add_argument("design", help="path to a design document (JSON)")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("enumerate", help="list every conforming design")
    p.add_argument("model", help="path to a model document (JSON)")
    p.add_argument(
        "--format", choices=("csv", "table"), default="csv", help="output layout"
    )
    p.add_argument(
        "--limit",
        type=_nonnegative,
        default=None,
        help="stop after this many designs",
    )
    p.add_argument(
        "--well-founded",
        action="store_true",
        help="drop designs supported only by trigger cycles",
    )
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("consistent", help="decide whether any design conforms")
    p.add_argument("model", help="path to a model document (JSON)")
    p.set_defaults(handler=cmd_consistent)

    p = sub.add_parser("serve", help="serve the HTTP API over a model directory")
    p.add_argument("--host", default="127.0.0.1", help="interface to bind")
    p.add_argument("--port", type=int, default=8000, help="TCP port (0 = OS-assigned)")
    p.add_argument(
        "--model-dir", default=None, help="directory of *.adm.json model documents"
    )
    p.add_argument(
        "--session-ttl",
        type=float,
        default=3600.0,
        help="idle seconds before a session expires",
    )
    p.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidModelError as exc:
        for violation in exc.report.violations:
            print(f"violation {violation.rule}: {violation.message}", file=sys.stderr)
        return 1
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
