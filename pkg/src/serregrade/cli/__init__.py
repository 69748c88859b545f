"""Script language front end: parse, bind, run, report."""

from .evaluate import bind
from .lexer import Diagnostic, ScriptError, Span, tokenize
from .main import main
from .run import Flags, Report, exit_code, from_machine, run, to_machine, to_text
from .syntax import Script, parse, print_script

__all__ = [
    "Diagnostic",
    "Flags",
    "Report",
    "Script",
    "ScriptError",
    "Span",
    "bind",
    "exit_code",
    "from_machine",
    "main",
    "parse",
    "print_script",
    "run",
    "to_machine",
    "to_text",
    "tokenize",
]
