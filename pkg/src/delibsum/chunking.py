"""Lossless text chunking for backends with input limits.

Backends cap input size, so oversized texts are split into chunks of at
most ``max_chars`` characters. Newline runs always split (in concatenated
debates a newline is a comment boundary, the natural translation unit);
pieces still too long are packed greedily at the strongest boundary that
fits: whitespace after sentence-final punctuation, then any whitespace
run, then a hard cut. Every separator consumed by a split is recorded so
``rejoin`` reproduces the original text exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["TextChunk", "chunk_text", "rejoin", "truncate_at_boundary"]

_NEWLINE_RUN = re.compile(r"\n+")
_SENTENCE_BREAK = re.compile(r"(?<=[.!?…])\s+")
_WHITESPACE_RUN = re.compile(r"\s+")


@dataclass(frozen=True)
class TextChunk:
    """A chunk plus the separator that followed it in the source text."""

    content: str
    separator: str = ""


def _rightmost_start(pattern: re.Pattern, text: str, max_chars: int) -> int | None:
    """Start of the last match beginning in [1, max_chars], if any."""
    best = None
    for match in pattern.finditer(text, 0, max_chars + 1):
        if match.start() >= 1:
            best = match.start()
    return best


def _pack(body: str, max_chars: int) -> list[TextChunk]:
    """Greedily split a newline-free piece, preferring sentence boundaries
    over plain whitespace over hard cuts."""
    if len(body) <= max_chars:
        return [TextChunk(body)]
    chunks: list[TextChunk] = []
    rest = body
    while len(rest) > max_chars:
        start = _rightmost_start(_SENTENCE_BREAK, rest, max_chars)
        if start is None:
            start = _rightmost_start(_WHITESPACE_RUN, rest, max_chars)
        if start is None:
            chunks.append(TextChunk(rest[:max_chars]))
            rest = rest[max_chars:]
            continue
        end = start
        while end < len(rest) and rest[end].isspace():
            end += 1
        chunks.append(TextChunk(rest[:start], rest[start:end]))
        rest = rest[end:]
    if rest:
        chunks.append(TextChunk(rest))
    return chunks


def chunk_text(text: str, max_chars: int) -> list[TextChunk]:
    """Split ``text`` into chunks of at most ``max_chars`` characters.

    Concatenating ``content + separator`` over the result reproduces the
    input exactly. Text already within the limit comes back as a single
    identity chunk; the hard-cut fallback means any (text, limit) pair
    chunks successfully.
    """
    if max_chars < 1:
        raise ValueError("max_chars must be >= 1")
    if len(text) <= max_chars:
        return [TextChunk(text)]

    pieces: list[tuple[str, str]] = []
    last = 0
    for match in _NEWLINE_RUN.finditer(text):
        pieces.append((text[last : match.start()], match.group()))
        last = match.end()
    pieces.append((text[last:], ""))

    chunks: list[TextChunk] = []
    for body, newline_sep in pieces:
        sub = _pack(body, max_chars)
        if newline_sep:
            tail = sub[-1]
            sub[-1] = TextChunk(tail.content, tail.separator + newline_sep)
        chunks.extend(sub)

    # Fold empty-content chunks (runs of newlines, trailing breaks) into the
    # preceding separator; a leading one has no predecessor and is kept.
    merged: list[TextChunk] = []
    for chunk in chunks:
        if merged and not chunk.content:
            prev = merged[-1]
            merged[-1] = TextChunk(prev.content, prev.separator + chunk.separator)
        else:
            merged.append(chunk)
    return merged


def rejoin(chunks: list[TextChunk], contents: list[str] | None = None) -> str:
    """Reassemble chunked text, optionally substituting per-chunk contents
    (e.g. their translations) while keeping the recorded separators."""
    if contents is None:
        return "".join(c.content + c.separator for c in chunks)
    if len(contents) != len(chunks):
        raise ValueError("contents must match chunk count")
    return "".join(body + chunk.separator for body, chunk in zip(contents, chunks))


def truncate_at_boundary(text: str, max_chars: int) -> tuple[str, bool]:
    """Cap ``text`` at max_chars, cutting at the last boundary that fits.

    Returns the (possibly shortened) text and whether truncation happened.
    Used for summariser inputs, where multi-pass summarisation is out of
    scope and an audited truncation is the documented behaviour.
    """
    if max_chars < 1:
        raise ValueError("max_chars must be >= 1")
    if len(text) <= max_chars:
        return text, False
    for pattern in (_NEWLINE_RUN, _SENTENCE_BREAK, _WHITESPACE_RUN):
        start = _rightmost_start(pattern, text, max_chars)
        if start is not None:
            return text[:start], True
    return text[:max_chars], True
