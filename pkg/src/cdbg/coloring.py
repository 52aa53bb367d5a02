"""Partial graph coloring: colorable-node marking and greedy color assignment.

Only starting, ending and critical nodes are colored. Per string, a
parallel-safe scan collects W (colorable nodes on the path) and I (ranks
whose colors must be inspected); a sequential pass then assigns each
string the smallest color not present on I union W and appends it to every
W row. The assignment order is the R' order, so results are independent
of the scan thread count.
"""

from __future__ import annotations

from bisect import insort
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bitvectors import AnyBitVector, bit_vector
from .boss import BossIndex
from .errors import CorruptIndex
from .sequence import DUMMY, ReadSet, SYMBOL_CODES

@dataclass
class ColorableMap:
    """Bitmap over node ids marking the p nodes that receive colors."""

    bitmap: AnyBitVector
    p: int

    def contains(self, v: int) -> bool:
        return bool(self.bitmap.get(v - 1))

    def rank(self, v: int) -> int:
        """1-based rank of node v among colorable nodes (requires membership)."""
        return int(self.bitmap.rank1(v))


def mark_colorable(boss: BossIndex) -> ColorableMap:
    starting, ending, solid = boss.taxonomy_bits()
    bits = (starting | ending).astype(np.uint8)
    first_edge = boss._first_edge
    branching = np.flatnonzero(np.diff(first_edge[1:]) > 1) + 1
    for v in branching:
        for _, _, t in boss.successors(int(v)):
            if solid[t - 1]:
                bits[t - 1] = 1
    bv = bit_vector(bits)
    return ColorableMap(bitmap=bv, p=int(bv.count))


@dataclass
class ColoringJob:
    """Scan result for one string of R': ranks to color and ranks to inspect."""

    read_index: int
    W: list[int]
    I: list[int]
    assigned_color: int = 0


class DynamicColorTable:
    """Growable per-colorable-node color lists, kept sorted and duplicate-free."""

    def __init__(self, p: int):
        self.rows: list[list[int]] = [[] for _ in range(p)]
        self.read_colors: list[int] = []

    @property
    def p(self) -> int:
        return len(self.rows)

    @property
    def num_colors(self) -> int:
        return max(self.read_colors, default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DynamicColorTable)
            and self.rows == other.rows
            and self.read_colors == other.read_colors
        )


def scan_read(boss: BossIndex, cmap: ColorableMap, read: str, read_index: int = -1) -> ColoringJob:
    """Walk the path of $·read·$ and collect the W and I rank sets."""
    k = boss.k
    if len(read) < k:
        raise CorruptIndex(f"read shorter than order k={k}")
    v = boss.label_to_node(DUMMY + read[: k - 2])
    if v is None:
        raise CorruptIndex("starting node missing for read prefix")

    nbits = cmap.bitmap
    w_ranks: set[int] = set()
    i_ranks: set[int] = set()

    def inspect_successors(u: int) -> None:
        for _, _, t in boss.successors(u):
            if not nbits.get(t - 1):
                raise CorruptIndex(f"uncolorable successor {t} of branching node {u}")
            i_ranks.add(int(nbits.rank1(t)))

    i_ranks.add(int(nbits.rank1(v)))
    for ch in read[k - 2 :] + DUMMY:
        if boss.outdegree(v) > 1:
            inspect_successors(v)
        if boss.indegree(v) > 1:
            for u in boss.backward(v):
                if boss.outdegree(u) > 1:
                    inspect_successors(u)
        if nbits.get(v - 1):
            w_ranks.add(int(nbits.rank1(v)))
        v = boss.forward(v, SYMBOL_CODES[ch])
        if v is None:
            raise CorruptIndex("read path breaks off the graph")
    if not nbits.get(v - 1):
        raise CorruptIndex("path did not end on a colorable ending node")
    end_rank = int(nbits.rank1(v))
    w_ranks.add(end_rank)
    i_ranks.add(end_rank)
    return ColoringJob(read_index=read_index, W=sorted(w_ranks), I=sorted(i_ranks))


def assign_color(job: ColoringJob, table: DynamicColorTable) -> int:
    """Pick the smallest color absent from I union W rows; append it to W rows."""
    rows = table.rows
    occupied: set[int] = set()
    for r in job.I:
        occupied.update(rows[r - 1])
    for r in job.W:
        occupied.update(rows[r - 1])
    color = 1
    while color in occupied:
        color += 1
    for r in job.W:
        insort(rows[r - 1], color)
    job.assigned_color = color
    return color


def color_all(
    boss: BossIndex, cmap: ColorableMap, reads: ReadSet, threads: int = 1
) -> DynamicColorTable:
    """Scan all strings of R' (parallel) and assign colors sequentially in order."""
    strings = [s for s in reads.strings_with_rc() if len(s) >= boss.k]
    jobs = scan_all(boss, cmap, strings, threads)
    table = DynamicColorTable(cmap.p)
    for job in jobs:
        table.read_colors.append(assign_color(job, table))
    return table


def scan_all(
    boss: BossIndex, cmap: ColorableMap, strings: list[str], threads: int = 1
) -> list[ColoringJob]:
    if threads <= 1 or len(strings) < 2:
        return [scan_read(boss, cmap, s, i) for i, s in enumerate(strings)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        chunk = max(1, len(strings) // (threads * 8))
        jobs = list(
            pool.map(
                lambda pair: scan_read(boss, cmap, pair[1], pair[0]),
                enumerate(strings),
                chunksize=chunk,
            )
        )
    return jobs
