"""Tokenizer for OWL 2 functional-style syntax.

Comments are kept as tokens so tooling can see them; the parser drops them.
Whitespace is the only thing not represented, and every token records the
1-based line and column of its first character.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

KEYWORD = "keyword"
PNAME = "prefixed-name"
IRI = "full-iri"
STRING = "string-literal"
DATATYPE_MARKER = "datatype-marker"
PUNCT = "punctuation"
COMMENT = "comment"
INTEGER = "integer"


class OfnSyntaxError(ValueError):
    """Lexing or parsing failure with a source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    column: int


_WS = re.compile(r"[ \t\r\n\f\v ]+")
_WORD = re.compile(r"[^\W\d][\w\-]*")
_LOCAL = re.compile(r"[\w\-]+")
_DIGITS = re.compile(r"\d+")
_IRI_BODY = re.compile(r"<[^<>\s\"{}|^`\\]*>")


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(source)

    def here(p: int) -> tuple[int, int]:
        return line, p - line_start + 1

    while pos < n:
        ch = source[pos]
        m = _WS.match(source, pos)
        if m:
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex("\n") + 1
            pos = m.end()
            continue

        ln, col = here(pos)
        if ch == "#":
            end = source.find("\n", pos)
            end = n if end < 0 else end
            tokens.append(Token(COMMENT, source[pos:end], ln, col))
            pos = end
        elif ch == "<":
            m = _IRI_BODY.match(source, pos)
            if not m:
                raise OfnSyntaxError("malformed or unterminated IRI", ln, col)
            tokens.append(Token(IRI, m.group(), ln, col))
            pos = m.end()
        elif ch in "\"'":
            end = _scan_string(source, pos, ch)
            if end < 0:
                raise OfnSyntaxError("unterminated string literal", ln, col)
            lexeme = source[pos:end]
            tokens.append(Token(STRING, lexeme, ln, col))
            newlines = lexeme.count("\n")
            if newlines:
                line += newlines
                line_start = pos + lexeme.rindex("\n") + 1
            pos = end
        elif source.startswith("^^", pos):
            tokens.append(Token(DATATYPE_MARKER, "^^", ln, col))
            pos += 2
        elif ch in "()=":
            tokens.append(Token(PUNCT, ch, ln, col))
            pos += 1
        elif ch == ":":
            m = _LOCAL.match(source, pos + 1)
            end = m.end() if m else pos + 1
            tokens.append(Token(PNAME, source[pos:end], ln, col))
            pos = end
        elif (m := _WORD.match(source, pos)) is not None:
            end = m.end()
            if end < n and source[end] == ":":
                m2 = _LOCAL.match(source, end + 1)
                end = m2.end() if m2 else end + 1
                tokens.append(Token(PNAME, source[pos:end], ln, col))
            else:
                tokens.append(Token(KEYWORD, m.group(), ln, col))
            pos = end
        elif (m := _DIGITS.match(source, pos)) is not None:
            tokens.append(Token(INTEGER, m.group(), ln, col))
            pos = m.end()
        else:
            raise OfnSyntaxError(f"illegal character {ch!r}", ln, col)
    return tokens


def _scan_string(source: str, start: int, quote: str) -> int:
    """Index just past the closing quote, or -1 if the literal never closes."""
    i = start + 1
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\\":
            i += 2
            continue
        if c == quote:
            return i + 1
        i += 1
    return -1


def unquote(lexeme: str) -> str:
    """Decode a string-literal lexeme (either quote style) to its text."""
    body = lexeme[1:-1]
    if "\\" not in body:
        return body
    out = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            out.append({"n": "\n", "t": "\t", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def quote(text: str) -> str:
    """Encode text as a double-quoted literal lexeme."""
    escaped = (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )
    return f'"{escaped}"'
