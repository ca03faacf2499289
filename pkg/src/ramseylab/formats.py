"""Text formats for colorings (HRC1) and designs (DES1).

HRC1::

    HRC1
    r <r> n <n> k <k> m <assigned>
    <v1> ... <vr> <color>          (m lines, colex order, vertices ascending)

DES1::

    DES1
    v <v> b <block_size> m <count>
    <p1> ... <pb>                  (m lines, colex order)

ASCII decimal, single spaces, LF line endings.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .core import UNASSIGNED, Coloring, ValidationError, colex_rank, colex_subsets
from .designs import Design


class FormatError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def dumps_coloring(c: Coloring) -> str:
    subsets = colex_subsets(c.n, c.r)
    rows = [f"{' '.join(map(str, subsets[i]))} {col}"
            for i, col in enumerate(c.lookup) if col != UNASSIGNED]
    head = ["HRC1", f"r {c.r} n {c.n} k {c.k} m {len(rows)}"]
    return "\n".join(head + rows) + "\n"


def _ints(line: str, lineno: int) -> list[int]:
    parts = line.split(" ")
    if not line or any(not _canonical(p) for p in parts):
        raise FormatError(lineno, f"expected space-separated nonnegative integers: {line!r}")
    return [int(p) for p in parts]


def _canonical(tok: str) -> bool:
    return tok.isascii() and tok.isdigit() and (tok == "0" or not tok.startswith("0"))


def _header(line: str, lineno: int, keys: tuple[str, ...]) -> list[int]:
    parts = line.split(" ")
    if len(parts) != 2 * len(keys) or tuple(parts[::2]) != keys or not all(
            _canonical(p) for p in parts[1::2]):
        raise FormatError(lineno, f"expected header '{' '.join(k + ' <int>' for k in keys)}'")
    return [int(p) for p in parts[1::2]]


def _decode(raw: bytes) -> str:
    try:
        return raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise FormatError(raw[:exc.start].count(b"\n") + 1, "non-ASCII byte") from None


def _lines(text: str, tag: str) -> list[str]:
    if "\r" in text:
        raise FormatError(1, "CR characters are not allowed")
    if not text.endswith("\n"):
        raise FormatError(text.count("\n") + 1, "missing final newline")
    lines = text[:-1].split("\n")
    if lines[0] != tag:
        raise FormatError(1, f"expected {tag!r}")
    if len(lines) < 2:
        raise FormatError(2, "missing header line")
    return lines


def loads_coloring(text: str) -> Coloring:
    lines = _lines(text, "HRC1")
    r, n, k, m = _header(lines[1], 2, ("r", "n", "k", "m"))
    if r < 1 or k < 1:
        raise FormatError(2, "r and k must be positive")
    total = math.comb(n, r)
    if m > total:
        raise FormatError(2, f"m = {m} exceeds C({n},{r}) = {total}")
    if len(lines) != m + 2:
        raise FormatError(min(len(lines), m + 2) + 1, f"expected {m} edge lines, got {len(lines) - 2}")
    colors = np.full(total, UNASSIGNED, dtype=np.int32)
    prev = -1
    for i, line in enumerate(lines[2:], start=3):
        vals = _ints(line, i)
        if len(vals) != r + 1:
            raise FormatError(i, f"expected {r} vertices and a color")
        *edge, col = vals
        try:
            rk = colex_rank(edge, n)
        except ValidationError as exc:
            raise FormatError(i, str(exc)) from None
        if rk <= prev:
            raise FormatError(i, "edges must be listed in strictly increasing colex order")
        if col >= k:
            raise FormatError(i, f"color {col} >= k = {k}")
        colors[rk] = col
        prev = rk
    return Coloring(r, n, k, colors)


def dumps_design(d: Design) -> str:
    head = ["DES1", f"v {d.v} b {d.block_size} m {len(d.blocks)}"]
    return "\n".join(head + [" ".join(map(str, b)) for b in d.blocks]) + "\n"


def loads_design(text: str) -> Design:
    lines = _lines(text, "DES1")
    v, b, m = _header(lines[1], 2, ("v", "b", "m"))
    if len(lines) != m + 2:
        raise FormatError(min(len(lines), m + 2) + 1, f"expected {m} block lines, got {len(lines) - 2}")
    blocks = []
    prev = -1
    for i, line in enumerate(lines[2:], start=3):
        blk = _ints(line, i)
        if len(blk) != b:
            raise FormatError(i, f"expected {b} points")
        try:
            rk = colex_rank(blk, v)
        except ValidationError as exc:
            raise FormatError(i, str(exc)) from None
        if rk <= prev:
            raise FormatError(i, "blocks must be listed in strictly increasing colex order")
        prev = rk
        blocks.append(tuple(blk))
    return Design(v, b, tuple(blocks))


def read_coloring(path: str | Path) -> Coloring:
    return loads_coloring(_decode(Path(path).read_bytes()))


def write_coloring(c: Coloring, path: str | Path) -> None:
    Path(path).write_bytes(dumps_coloring(c).encode("ascii"))


def read_design(path: str | Path) -> Design:
    return loads_design(_decode(Path(path).read_bytes()))


def write_design(d: Design, path: str | Path) -> None:
    Path(path).write_bytes(dumps_design(d).encode("ascii"))
