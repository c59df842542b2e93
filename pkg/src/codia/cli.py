"""Command line front end.

Subcommands:

    parse      read contract text, emit COML (or canonical text)
    verbalize  read COML, emit canonical contract text
    lint       report diagnostics for text or COML input
    clocks     list the implicit clocks of a document

Diagnostics go to stderr as ``file:line:col: severity[code]: message``.
Exit status: 0 on success, 1 when diagnostics blocked the request, 2 on
I/O or usage problems.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import __version__
from .coml import from_coml, to_coml
from .diagnostics import Diagnostic, Severity, has_errors
from .lexicon import Lexicon, LexiconError, load_lexicon
from .linearize import linearize
from .parser import parse_document
from .validate import generate_clocks, validate_document

LEXICON_ENV = "CODIA_LEXICON"


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="codia",
        description="Parse, check and convert structured contract texts.")
    top.add_argument("--version", action="version",
                     version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_lexicon: bool = True) -> None:
        p.add_argument("input", help="input file, or - for stdin")
        if needs_lexicon:
            p.add_argument("-l", "--lexicon",
                           default=os.environ.get(LEXICON_ENV),
                           help="lexicon file (default: $CODIA_LEXICON)")
        p.add_argument("-o", "--output", default="-",
                       help="output file (default: stdout)")

    p = sub.add_parser("parse", help="contract text to COML")
    common(p)
    p.add_argument("--format", choices=("coml", "cnl"), default="coml",
                   help="output format (cnl re-emits canonical text)")
    p.add_argument("--autolabel", action="store_true",
                   help="invent labels for unlabelled clauses")
    p.add_argument("--strict", action="store_true",
                   help="treat warnings as errors")

    p = sub.add_parser("verbalize", help="COML to canonical contract text")
    common(p)
    p.add_argument("--strict", action="store_true",
                   help="treat warnings as errors")

    p = sub.add_parser("lint", help="report diagnostics, produce no output")
    common(p)
    p.add_argument("--format", choices=("cnl", "coml"), default=None,
                   help="input format (default: by file extension)")
    p.add_argument("--autolabel", action="store_true",
                   help="invent labels for unlabelled clauses")
    p.add_argument("--json", action="store_true",
                   help="emit diagnostics as a JSON array on stdout")
    p.add_argument("--strict", action="store_true",
                   help="treat warnings as errors")

    p = sub.add_parser("clocks", help="list the implicit clocks, one per line")
    common(p)
    p.add_argument("--format", choices=("cnl", "coml"), default=None,
                   help="input format (default: by file extension)")
    return top


class _CliError(Exception):
    pass


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror}") from None


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _CliError(f"cannot write {path}: {exc.strerror}") from None


def _load_lexicon_arg(args: argparse.Namespace) -> Lexicon:
    if not args.lexicon:
        raise _CliError(
            "no lexicon given: pass --lexicon or set $CODIA_LEXICON")
    try:
        return load_lexicon(_read_input(args.lexicon))
    except LexiconError as exc:
        raise _CliError(f"bad lexicon {args.lexicon}: {exc}") from None


def _report(diagnostics: list[Diagnostic], path: str) -> None:
    for d in diagnostics:
        print(d.format(path), file=sys.stderr)


def _blocked(diagnostics: list[Diagnostic], strict: bool) -> bool:
    if strict:
        return bool(diagnostics)
    return has_errors(diagnostics)


def _get_document(args: argparse.Namespace, lex: Lexicon, text: str,
                  as_coml: bool):
    if as_coml:
        return from_coml(text)
    return parse_document(text, lex,
                          autolabel=getattr(args, "autolabel", False))


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args)
    except _CliError as exc:
        print(f"codia: {exc}", file=sys.stderr)
        return 2


def _input_is_coml(args: argparse.Namespace) -> bool:
    if args.command == "verbalize":
        return True
    if args.command in ("lint", "clocks"):
        if args.format is not None:
            return args.format == "coml"
        return args.input.endswith((".xml", ".coml"))
    return False


def _run(args: argparse.Namespace) -> int:
    text = _read_input(args.input)
    lex = _load_lexicon_arg(args)
    as_coml = _input_is_coml(args)

    doc, diagnostics = _get_document(args, lex, text, as_coml)
    if doc is not None:
        diagnostics = diagnostics + validate_document(doc)

    if args.command == "lint" and args.json:
        print(json.dumps([d.to_json() for d in diagnostics], indent=2))
    else:
        _report(diagnostics, args.input)

    strict = getattr(args, "strict", False)
    if doc is None or _blocked(diagnostics, strict):
        return 1

    if args.command == "parse":
        out = to_coml(doc) if args.format == "coml" else linearize(doc, lex)
        _write_output(args.output, out)
    elif args.command == "verbalize":
        _write_output(args.output, linearize(doc, lex))
    elif args.command == "clocks":
        _write_output(args.output,
                      "".join(f"{c}\n" for c in sorted(generate_clocks(doc))))
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
