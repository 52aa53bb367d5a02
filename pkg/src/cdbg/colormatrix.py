"""Succinct color matrix: colorable bitmap N, row-boundary bitmap F, delta payload.

Rows of the dynamic table are concatenated as deltas (first element
absolute, later elements differences) into one list; its prefix sums are
strictly increasing and stored with Elias-Fano so that a row decodes in
time linear in its length: color h of row [i..j] is ps[i+h-1] - ps[i-1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._binio import Reader, Writer
from .bitvectors import AnyBitVector, MonotoneSequence, bit_vector, read_bit_vector
from .coloring import ColorableMap, DynamicColorTable
from .errors import IncompleteColoring, IntegrityError, NotColored


@dataclass
class CompressedColors:
    """Immutable (N, F, payload) triple answering per-node color queries."""

    N: AnyBitVector
    F: AnyBitVector
    payload: MonotoneSequence  # prefix sums of the delta list M'
    p: int
    num_colors: int

    def serialize(self, w: Writer) -> None:
        w.u8(1)  # section version
        w.u64(self.p)
        w.u64(self.num_colors)
        self.N.serialize(w)
        self.F.serialize(w)
        self.payload.serialize(w)

    @classmethod
    def deserialize(cls, r: Reader) -> "CompressedColors":
        if r.u8() != 1:
            raise IntegrityError("unsupported color section version")
        p = r.u64()
        num_colors = r.u64()
        n = read_bit_vector(r)
        f = read_bit_vector(r)
        payload = MonotoneSequence.deserialize(r)
        return cls(N=n, F=f, payload=payload, p=p, num_colors=num_colors)


def compress(table: DynamicColorTable, cmap: ColorableMap) -> CompressedColors:
    """Delta-encode the table rows in colorable-rank order."""
    deltas: list[int] = []
    f_bits: list[int] = []
    num_colors = 0
    for idx, row in enumerate(table.rows):
        if not row:
            raise IncompleteColoring(f"colorable rank {idx + 1} received no color")
        f_bits.append(1)
        f_bits.extend([0] * (len(row) - 1))
        deltas.append(row[0])
        deltas.extend(row[j] - row[j - 1] for j in range(1, len(row)))
        num_colors = max(num_colors, row[-1])
    prefix = np.cumsum(np.asarray(deltas, dtype=np.int64))
    return CompressedColors(
        N=cmap.bitmap,
        F=bit_vector(np.asarray(f_bits, dtype=np.uint8)),
        payload=MonotoneSequence(prefix),
        p=len(table.rows),
        num_colors=num_colors,
    )


def get_colors(cc: CompressedColors, v: int) -> list[int]:
    """Colors of node v, cost proportional to the answer length."""
    if not cc.N.get(v - 1):
        raise NotColored(f"node {v} is not in the colorable set")
    r = int(cc.N.rank1(v))
    i = cc.F.select1(r)
    j = cc.F.select1(r + 1) - 1 if r < cc.p else len(cc.payload)
    base = cc.payload.access(i - 2) if i >= 2 else 0
    return [cc.payload.access(t - 1) - base for t in range(i, j + 1)]


def decode_table(cc: CompressedColors) -> list[list[int]]:
    """All rows, in colorable-rank order (test/verification helper)."""
    ones = cc.N.ones_positions()
    return [get_colors(cc, int(pos) + 1) for pos in ones]
