"""Command-line entry point.

    serregrade SCRIPT [--seed N] [--format text|machine] [--budget N] [--oracle] [--timing]
    serregrade SCRIPT --print        canonical re-print of the parsed script

Exit codes: 0 success, 1 usage or script error, 2 engine error, 3 oracle
disagreement.
"""

from __future__ import annotations

import argparse
import os
import sys

from .evaluate import bind
from .lexer import NO_QUERIES, Diagnostic, ScriptError
from .run import EXIT_OK, EXIT_USAGE, Flags, exit_code, no_queries_warning, run, to_machine, to_text
from .syntax import parse, print_script


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="serregrade", description="Grades and S-Cohen-Macaulay tests for graded modules.")
    ap.add_argument("script", help="script file, or - for standard input")
    ap.add_argument("--seed", type=_u64, default=0, help="seed for the witness search")
    ap.add_argument("--format", choices=("text", "machine"), default="text")
    ap.add_argument("--budget", type=_positive, default=64, help="attempts per position in the witness search")
    ap.add_argument("--oracle", action="store_true", help="cross-check monomial inputs against the oracle")
    ap.add_argument("--timing", action="store_true", help="append wall-clock time to text output")
    ap.add_argument("--print", action="store_true", dest="print_only", help="print the canonical script and exit")
    return ap


def execute(source: str, name: str, args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        script = parse(source)
    except ScriptError as exc:
        d = exc.diagnostic
        d.source = name
        print(d, file=err)
        return EXIT_USAGE
    if args.print_only:
        out.write(print_script(script))
        return EXIT_OK
    program, diags = bind(script)
    if diags:
        for d in diags:
            d.source = name
            print(d, file=err)
        return EXIT_USAGE
    warnings = []
    if not program.queries:
        warnings.append(no_queries_warning())
        print(Diagnostic(NO_QUERIES, "no queries", None, severity="warning", source=name), file=err)
    flags = Flags(seed=args.seed, budget=args.budget, oracle=args.oracle, timing=args.timing)
    reports = run(program, flags)
    if args.format == "machine":
        out.write(to_machine(reports, warnings))
    else:
        out.write(to_text(reports, (), timing=args.timing))
    return exit_code(reports)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.script == "-":
        source, name = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(args.script, encoding="utf-8") as fh:
                source = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            print(f"serregrade: error: cannot read {args.script}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        name = os.path.basename(args.script)
    return execute(source, name, args)


if __name__ == "__main__":
    sys.exit(main())
