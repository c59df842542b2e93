"""Layout normalisation and tokenisation.

The surface text uses an indentation-based layout: list items are bulleted
with ``- `` and indented in steps of two spaces.  Before parsing, each
bulleted block is replaced by ``{``/``}`` delimiters with the bullets kept
as item separators; line structure is erased.  Tokens keep their original
line/column so diagnostics point into the user's text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import Diagnostic, Span, error


class LayoutError(Exception):
    """Wraps the diagnostic for a malformed layout or character."""

    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class Token:
    kind: str  # "word" | "int" | "punct" | "eof"
    text: str
    line: int
    col: int
    end_col: int

    @property
    def span(self) -> Span:
        return Span(self.line, self.col, self.line, max(self.col, self.end_col - 1))


_TOKEN_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_']*|[{}:,\-]")


def _tokenize_line(content: str, line_no: int, col0: int) -> list[Token]:
    """Tokenize one line fragment; col0 is the 1-based column of content[0]."""
    out: list[Token] = []
    pos = 0
    while pos < len(content):
        ch = content[pos]
        if ch == " ":
            pos += 1
            continue
        if ch == "\t":
            raise LayoutError(error(
                "layout", "tab characters are not allowed",
                Span(line_no, col0 + pos, line_no, col0 + pos)))
        m = _TOKEN_RE.match(content, pos)
        if m is None:
            raise LayoutError(error(
                "grammar", f"unexpected character {ch!r}",
                Span(line_no, col0 + pos, line_no, col0 + pos)))
        text = m.group()
        kind = "int" if text.isdigit() else ("word" if text[0].isalnum() else "punct")
        out.append(Token(kind, text, line_no, col0 + pos, col0 + m.end()))
        pos = m.end()
    return out


@dataclass(frozen=True)
class _Event:
    kind: str  # "open" | "close" | "bullet" | "line" | "top"
    content: str
    line: int
    col: int


def _layout_events(text: str) -> list[_Event]:
    events: list[_Event] = []
    depth = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip(" "))
        stripped = line[indent:]
        if stripped.startswith("\t") or "\t" in line[:indent]:
            raise LayoutError(error(
                "layout", "tab characters are not allowed in indentation",
                Span(line_no, 1, line_no, indent + 1)))
        if stripped.startswith("-"):
            if indent % 2 != 0 or indent == 0:
                raise LayoutError(error(
                    "layout",
                    "bullets must be indented in steps of two spaces",
                    Span(line_no, 1, line_no, indent + 1)))
            d = indent // 2
            if d == depth + 1:
                events.append(_Event("open", "{", line_no, indent + 1))
                depth = d
            elif d <= depth:
                for _ in range(depth - d):
                    events.append(_Event("close", "}", line_no, indent + 1))
                depth = d
            else:
                raise LayoutError(error(
                    "layout",
                    f"indentation jumps from level {depth} to level {d}",
                    Span(line_no, 1, line_no, indent + 1)))
            content = stripped[1:]
            events.append(_Event("bullet", "-", line_no, indent + 1))
            events.append(_Event("line", content.lstrip(" "),
                                 line_no, indent + 2 + (len(content) - len(content.lstrip(" ")))))
        else:
            if indent != 0:
                raise LayoutError(error(
                    "layout",
                    "unexpected indentation: only bulleted lines may be indented",
                    Span(line_no, 1, line_no, indent + 1)))
            for _ in range(depth):
                events.append(_Event("close", "}", line_no, 1))
            depth = 0
            events.append(_Event("top", "", line_no, 1))
            events.append(_Event("line", stripped, line_no, 1))
    last_line = text.count("\n") + 1
    for _ in range(depth):
        events.append(_Event("close", "}", last_line, 1))
    return events


def unpretty_print(text: str) -> str:
    """Collapse the bulleted layout into the braced single-line form.

    Each top-level contract becomes one line; bulleted blocks turn into
    ``{ ... }`` with the bullets kept as item separators.  Raises
    :class:`LayoutError` on inconsistent indentation.
    """
    lines: list[str] = []
    current: list[str] = []
    for ev in _layout_events(text):
        if ev.kind == "top":
            if current:
                lines.append(" ".join(current))
            current = []
        elif ev.kind == "line":
            if ev.content:
                current.append(ev.content)
        else:
            current.append(ev.content)
    if current:
        lines.append(" ".join(current))
    return "\n".join(lines)


def layout_tokens(text: str) -> list[Token]:
    """Token stream with layout braces inserted and original positions kept."""
    tokens: list[Token] = []
    for ev in _layout_events(text):
        if ev.kind in ("open", "close", "bullet"):
            tokens.append(Token("punct", ev.content, ev.line, ev.col, ev.col + 1))
        elif ev.kind == "line":
            tokens.extend(_tokenize_line(ev.content, ev.line, ev.col))
    last_line = text.count("\n") + 1
    tokens.append(Token("eof", "", last_line, 1, 1))
    return tokens
