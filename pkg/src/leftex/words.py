"""Finite words over small alphabets, stored as ``bytes``.

Symbols are the integers 0..n-1 for an alphabet of size n <= 256, so a word
is just a ``bytes`` object.  That keeps equality tests, slicing, periodicity
checks and bulk rule application at C speed, which matters: exact base-n
expansions of random rationals routinely have periodic parts with tens of
thousands of digits.
"""

from __future__ import annotations

from typing import Iterable, Union

from .errors import ParseError

WordLike = Union[bytes, bytearray, str, Iterable[int]]


def word(symbols: WordLike) -> bytes:
    """Coerce ``symbols`` to a word.

    Accepts bytes/bytearray, an iterable of symbol integers, or a digit
    string such as ``"013"`` (one digit per symbol) or ``"0,11,3"``
    (comma-separated, needed once symbols exceed 9).
    """
    if isinstance(symbols, bytes):
        return symbols
    if isinstance(symbols, bytearray):
        return bytes(symbols)
    if isinstance(symbols, str):
        return parse_word(symbols)
    return bytes(symbols)


def parse_word(text: str, alphabet_size: int | None = None) -> bytes:
    """Parse a digit string (``"013"`` or ``"0,11,3"``).  Empty -> empty word.

    Alphabets with more than ten symbols always use the comma-separated
    spelling, so when the alphabet size is known the split mode is forced by
    it; otherwise a comma in the text selects it.  Without this, a lone
    two-digit symbol like ``"11"`` would be ambiguous.
    """
    text = text.strip()
    if not text:
        return b""
    if (alphabet_size or 0) > 10 or ("," in text and alphabet_size is None):
        parts = text.split(",")
    else:
        parts = list(text)
    out = bytearray()
    for k, part in enumerate(parts):
        if not part.isdigit():
            raise ParseError(f"bad symbol {part!r} in word {text!r}", column=k + 1)
        v = int(part)
        if v > 255:
            raise ParseError(f"symbol {v} exceeds the representable range", column=k + 1)
        out.append(v)
    return bytes(out)


def format_word(w: bytes, alphabet_size: int) -> str:
    """Render a word as digits; comma-separated once digits would be ambiguous."""
    if alphabet_size <= 10:
        return "".join(str(s) for s in w)
    return ",".join(str(s) for s in w)


def primitive_root(w: bytes) -> bytes:
    """Shortest word u with w == u^k.

    Uses the classical fact that w occurs inside w+w at an offset strictly
    between 0 and len(w) exactly when w is a proper power; the smallest such
    offset is the length of the primitive root.
    """
    if len(w) <= 1:
        return w
    k = (w + w).find(w, 1)
    return w[:k] if k < len(w) else w


def cyclic_slice(w: bytes, offset: int, count: int) -> bytes:
    """``count`` symbols of the periodic stream w w w ... starting at ``offset``."""
    if count <= 0:
        return b""
    n = len(w)
    offset %= n
    reps = (offset + count + n - 1) // n
    return (w * reps)[offset:offset + count]


def first_mismatch(a: bytes, b: bytes) -> int | None:
    """Index of the first differing position of two equal-length words."""
    if a == b:
        return None
    chunk = 4096
    for base in range(0, len(a), chunk):
        if a[base:base + chunk] != b[base:base + chunk]:
            for i in range(base, min(base + chunk, len(a))):
                if a[i] != b[i]:
                    return i
    return None
