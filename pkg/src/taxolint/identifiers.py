"""Identifier extraction from source text, with two interchangeable backends.

``scan_tokens`` walks the source character by character with full lexical
state (line and block comments, string and char literals, text blocks,
numeric literals), yielding identifier tokens in source order -- the same
identifier stream a concrete-syntax-tree walk produces.  ``scan_lexical``
is the cheap fallback: one regex pass that blanks comments and literals,
then collects identifier-shaped tokens.  Both must agree on well-formed
input; golden tests hold them to that.
"""

from __future__ import annotations

import re

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$")
_IDENT_PART = _IDENT_START | set("0123456789")
_NUMBER_PART = set("0123456789abcdefABCDEFxXlLfFdD_")

# Order matters: text blocks before plain strings, comments after literals.
_BLANK_RE = re.compile(
    r'"""[\s\S]*?"""'
    r'|"(?:\\.|[^"\\\n])*"'
    r"|'(?:\\.|[^'\\\n])*'"
    r"|//[^\n]*"
    r"|/\*[\s\S]*?\*/"
)
_IDENT_RE = re.compile(r"(?<![0-9A-Za-z_$])[A-Za-z_$][0-9A-Za-z_$]*")


def scan_tokens(text: str) -> list[str]:
    """Identifier tokens in source order, skipping comments and literals."""
    tokens: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _IDENT_START:
            j = i + 1
            while j < n and text[j] in _IDENT_PART:
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isdigit():
            i = _consume_number(text, i)
        elif ch == "/" and i + 1 < n and text[i + 1] == "/":
            i = text.find("\n", i)
            if i == -1:
                break
        elif ch == "/" and i + 1 < n and text[i + 1] == "*":
            end = text.find("*/", i + 2)
            i = n if end == -1 else end + 2
        elif text.startswith('"""', i):
            end = text.find('"""', i + 3)
            i = n if end == -1 else end + 3
        elif ch == '"':
            i = _consume_quoted(text, i, '"')
        elif ch == "'":
            i = _consume_quoted(text, i, "'")
        else:
            i += 1
    return tokens


def _consume_quoted(text: str, i: int, quote: str) -> int:
    """Advance past a single-line quoted literal starting at ``i``."""
    j = i + 1
    n = len(text)
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == quote:
            return j + 1
        if ch == "\n":
            return j + 1  # unterminated literal: stop at end of line
        j += 1
    return n


def _consume_number(text: str, i: int) -> int:
    """Advance past a numeric literal (decimal, hex, float, suffixes)."""
    j = i
    n = len(text)
    while j < n:
        ch = text[j]
        if ch in _NUMBER_PART:
            j += 1
        elif ch == "." and j + 1 < n and text[j + 1].isdigit():
            j += 1
        elif (
            ch in "+-"
            and j > i
            and text[j - 1] in "eEpP"
            and j + 1 < n
            and text[j + 1].isdigit()
        ):
            j += 1
        else:
            break
    return j


def scan_lexical(text: str) -> list[str]:
    """Regex fallback: blank out comments/literals, then match identifiers."""
    stripped = _BLANK_RE.sub(lambda m: " " * len(m.group(0)), text)
    return [m.group(0) for m in _IDENT_RE.finditer(stripped)]


BACKENDS = {
    "syntax": scan_tokens,
    "lexical": scan_lexical,
}
