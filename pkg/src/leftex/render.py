"""Space-time diagram rasters: PBM (P1), PGM (P2) and ASCII.

PBM is the canonical golden-file format: textual, diffable, bit-exact.
Any alphabet renders to PBM by thresholding (symbol > 0 becomes 1), matching
the usual black-nonzero depiction of diagrams.  PGM maps symbols through a
gray palette, evenly spaced by default.  Rows are streamed, so memory stays
bounded by one configuration plus one raster row.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Mapping, Optional

from .configuration import Configuration
from .errors import EmptyInterval, OutOfRange, PaletteIncomplete
from .rules import Automaton, apply

FORMATS = ("ascii", "pbm", "pgm")

_ASCII_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class RenderSpec:
    """What to draw: row count, spatial window, format, optional palette."""

    rows: int
    col_lo: int
    col_hi: int
    format: str = "ascii"
    palette: Optional[Mapping[int, int]] = None

    def __post_init__(self):
        if self.rows < 1:
            raise OutOfRange("need at least one row")
        if self.col_lo > self.col_hi:
            raise EmptyInterval(f"empty column window [{self.col_lo}, {self.col_hi}]")
        if self.format not in FORMATS:
            raise OutOfRange(f"format must be one of {FORMATS}, got {self.format!r}")


def default_palette(alphabet_size: int) -> dict[int, int]:
    """Evenly spaced gray levels, 0 black ... n-1 white."""
    if alphabet_size == 1:
        return {0: 0}
    return {s: s * 255 // (alphabet_size - 1) for s in range(alphabet_size)}


def _gray_map(alphabet_size: int, palette: Optional[Mapping[int, int]]) -> list[int]:
    if palette is None:
        palette = default_palette(alphabet_size)
    missing = [s for s in range(alphabet_size) if s not in palette]
    if missing:
        raise PaletteIncomplete(f"palette lacks symbols {missing}")
    levels = [palette[s] for s in range(alphabet_size)]
    if any(not 0 <= g <= 255 for g in levels):
        raise OutOfRange("gray levels must be in 0..255")
    return levels


def _ascii_char(symbol: int, alphabet_size: int) -> str:
    if symbol == 0:
        return " "
    if alphabet_size == 2:
        return "#"
    if symbol < len(_ASCII_DIGITS):
        return _ASCII_DIGITS[symbol]
    return "#"


def render_to(out: IO[str], automaton: Automaton, x: Configuration, spec: RenderSpec) -> None:
    """Stream the raster for rows t = 0 .. rows-1, row t being
    F^t(x)[col_lo .. col_hi]."""
    width = spec.col_hi - spec.col_lo + 1
    size = automaton.alphabet.size
    if spec.format == "pbm":
        out.write(f"P1\n{width} {spec.rows}\n")
    elif spec.format == "pgm":
        levels = _gray_map(size, spec.palette)
        out.write(f"P2\n{width} {spec.rows}\n255\n")
    y = x
    for t in range(spec.rows):
        row = y.window(spec.col_lo, spec.col_hi)
        if spec.format == "pbm":
            out.write(" ".join("1" if s else "0" for s in row))
            out.write("\n")
        elif spec.format == "pgm":
            out.write(" ".join(str(levels[s]) for s in row))
            out.write("\n")
        else:
            out.write("".join(_ascii_char(s, size) for s in row))
            out.write("\n")
        if t + 1 < spec.rows:
            y = apply(automaton, y)


def render(automaton: Automaton, x: Configuration, spec: RenderSpec) -> bytes:
    """Convenience wrapper returning the raster as bytes."""
    buf = io.StringIO()
    render_to(buf, automaton, x, spec)
    return buf.getvalue().encode("ascii")
