"""Source spans and diagnostics shared by the parser, validator, CLI and service."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


#: The closed set of diagnostic codes.  Stable identifiers for tooling; see
#: README for the meaning of each code.
CODES = frozenset({
    "layout",               # indentation / bullet structure errors
    "unknown-word",         # token not in the lexicon or keyword set
    "agreement",            # copula does not agree with the agent's number
    "grammar",              # any other surface-grammar or structural violation
    "duplicate-label",      # a box label is defined twice
    "xml-syntax",           # COML input is not well-formed XML
    "xml-schema",           # COML input violates the schema
    "model-invariant",      # COML encodes a structurally invalid document
    "unresolved-reference", # see/otherwise/done/clock names a missing box
    "reparation-cycle",     # reparation references form a cycle
    "undeclared-variable",  # guard variable missing from the preamble
})


@dataclass(frozen=True)
class Span:
    """1-based, inclusive source region."""

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if self.start_line < 1 or self.start_col < 1:
            raise ValueError("span positions are 1-based")
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError("span start must not come after its end")


#: Placeholder for diagnostics that have no usable source position
#: (e.g. findings produced from an in-memory or COML-loaded document).
UNKNOWN_SPAN = Span(1, 1, 1, 1)


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: Span

    def __post_init__(self) -> None:
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    def format(self, path: str = "<input>") -> str:
        """Compiler-style one-liner: file:line:col: severity[code]: message."""
        return (f"{path}:{self.span.start_line}:{self.span.start_col}: "
                f"{self.severity.value}[{self.code}]: {self.message}")

    def to_json(self) -> dict:
        return {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
            "span": {
                "startLine": self.span.start_line,
                "startColumn": self.span.start_col,
                "endLine": self.span.end_line,
                "endColumn": self.span.end_col,
            },
        }


def error(code: str, message: str, span: "Span | None" = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span or UNKNOWN_SPAN)


def warning(code: str, message: str, span: "Span | None" = None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span or UNKNOWN_SPAN)


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diags)
