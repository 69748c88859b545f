"""Tokens and diagnostics for the script language.

Positions are reported as ``line:column`` with 1-based lines and 0-based
columns.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, OP, EOF
    text: str
    span: Span

    def describe(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        return f"'{self.text}'"


# diagnostic codes
LEX_ERROR = "E001"
SYNTAX_ERROR = "E002"
UNDECLARED = "E101"
INHOMOGENEOUS = "E102"
NOT_PRIME = "E103"
RING_DECL = "E104"
REDECLARED = "E105"
WRONG_KIND = "E106"
BAD_VALUE = "E107"
ENGINE_ERROR = "E201"
ORACLE_DISAGREEMENT = "E301"
NO_QUERIES = "W001"

CODE_SUMMARY = {
    LEX_ERROR: "unexpected character",
    SYNTAX_ERROR: "syntax error",
    UNDECLARED: "undeclared name",
    INHOMOGENEOUS: "inhomogeneous input",
    NOT_PRIME: "characteristic is not prime",
    RING_DECL: "missing or repeated ring declaration",
    REDECLARED: "name declared twice",
    WRONG_KIND: "name refers to the wrong kind of object",
    BAD_VALUE: "value out of range",
    ENGINE_ERROR: "engine error",
    ORACLE_DISAGREEMENT: "oracle disagreement",
    NO_QUERIES: "no queries",
}


@dataclass
class Diagnostic:
    code: str
    message: str
    span: Span | None
    severity: str = "error"
    source: str = "<input>"

    def __str__(self):
        where = f"{self.source}:{self.span}" if self.span else self.source
        return f"{where}: {self.severity}[{self.code}]: {self.message}"


class ScriptError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


OPERATORS = set("=()[],;/+-*^")


def tokenize(source: str) -> list[Token]:
    toks: list[Token] = []
    line, col, i = 1, 0, 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line, col, i = line + 1, 0, i + 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start = col
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            text = source[i:j]
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
        elif ch in OPERATORS:
            j = i + 1
            text = ch
        else:
            raise ScriptError(Diagnostic(LEX_ERROR, f"unexpected character {ch!r}", Span(line, col, line, col + 1)))
        kind = "INT" if text[0].isdigit() else "NAME" if (text[0].isalpha() or text[0] == "_") else "OP"
        col += j - i
        toks.append(Token(kind, text, Span(line, start, line, col)))
        i = j
    toks.append(Token("EOF", "", Span(line, col, line, col)))
    return toks
