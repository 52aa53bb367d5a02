"""BOSS representation of the de Bruijn graph over reads plus reverse complements.

Construction pads every string with k-1 dummies in front and k-2 behind,
takes all k-windows as edges, sorts them by the reverse-lexicographic
(colex) order of the source (k-1)-label with the edge symbol as
tie-break, and emits:

* ``E``  edge symbols in sorted order (rank/select per symbol),
* ``B``  bitmap marking the first outgoing symbol of each node,
* ``K``  cumulative counts of node labels by last symbol.

Every node keeps at least one outgoing edge: the chain-terminal dummy
node of each string (single solid symbol followed by k-2 dummies; for
k = 3 that is the ending node itself) carries a structural ``$`` closure
edge with no navigable target. The all-dummy root is then the unique
node without incoming edges, so target arithmetic for symbol ``$`` skips
it; for solid symbols the textbook BOSS arithmetic applies unchanged.
Edges whose target equals the previous same-symbol edge's target carry a
disambiguation flag and are excluded from the target ranking.
"""

from __future__ import annotations

import logging

import numpy as np

from ._binio import Reader, Writer
from .bitvectors import BitVector, SymbolSequence, bit_vector, read_bit_vector
from .errors import BadLabel, BadOrder, BoundsError, CorruptIndex, EmptyIndex, IntegrityError
from .sequence import CODE_SYMBOLS, DUMMY, ReadSet, SYMBOL_CODES, encode

logger = logging.getLogger(__name__)

_SENTINEL = 6
_DIGITS_PER_WORD = 20  # 3 bits per digit, 60 bits used per 64-bit word

MAX_K = 63


def _pack_digit_columns(columns: list[np.ndarray], n_digits: int) -> list[np.ndarray]:
    """Pack per-row digit columns (most significant first) into uint64 words."""
    n_rows = len(columns[0]) if columns else 0
    n_words = (n_digits + _DIGITS_PER_WORD - 1) // _DIGITS_PER_WORD
    words = [np.zeros(n_rows, dtype=np.uint64) for _ in range(n_words)]
    for j, col in enumerate(columns):
        w, s = divmod(j, _DIGITS_PER_WORD)
        shift = np.uint64(3 * (_DIGITS_PER_WORD - 1 - s))
        words[w] |= col.astype(np.uint64) << shift
    return words


def _digit_masks(n_digits: int, keep: int) -> list[int]:
    """Per-word masks keeping only the first ``keep`` digits."""
    n_words = (n_digits + _DIGITS_PER_WORD - 1) // _DIGITS_PER_WORD
    masks = []
    for w in range(n_words):
        m = 0
        for s in range(_DIGITS_PER_WORD):
            j = w * _DIGITS_PER_WORD + s
            if j < keep:
                m |= 7 << (3 * (_DIGITS_PER_WORD - 1 - s))
        masks.append(m)
    return masks


def _extract_digit(words: list[np.ndarray], j: int) -> np.ndarray:
    w, s = divmod(j, _DIGITS_PER_WORD)
    shift = np.uint64(3 * (_DIGITS_PER_WORD - 1 - s))
    return ((words[w] >> shift) & np.uint64(7)).astype(np.uint8)


class BossIndex:
    """Succinct de Bruijn graph of order k with node taxonomy queries.

    Node ids are 1-based ranks in BOSS (colex label) order. Edge positions
    are 1-based indices into ``E``.
    """

    def __init__(self):
        raise TypeError("use BossIndex.build or container loading")

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, reads: ReadSet, k: int) -> "BossIndex":
        if not 3 <= k <= MAX_K:
            raise BadOrder(f"order k={k} outside supported range [3, {MAX_K}]")
        kept = [r for r in reads.reads if len(r) >= k]
        skipped = len(reads.reads) - len(kept)
        if skipped:
            logger.warning("skipped %d reads shorter than k=%d", skipped, k)
        if not kept:
            raise EmptyIndex("no read of length >= k to index")
        strings = ReadSet(reads=tuple(kept)).strings_with_rc()
        return cls._from_strings(strings, k)

    @classmethod
    def _from_strings(cls, strings: list[str], k: int) -> "BossIndex":
        n_digits = k + 1  # k-1 colex label digits, edge symbol, closure flag
        big_parts = []
        pre = np.ones(k - 1, dtype=np.uint8)
        post = np.ones(k - 2, dtype=np.uint8)
        sep = np.full(1, _SENTINEL, dtype=np.uint8)
        for s in strings:
            big_parts.extend((pre, encode(s), post, sep))
        big = np.concatenate(big_parts)
        t_count = len(big) - k + 1

        # window digits: colex label (label read right to left), then symbol
        cols = [big[k - 2 - j : k - 2 - j + t_count] for j in range(k - 1)]
        cols.append(big[k - 1 : k - 1 + t_count])  # edge symbol
        cols.append(np.zeros(t_count, dtype=np.uint8))  # closure flag
        words = _pack_digit_columns(cols, n_digits)

        sentinel_cum = np.concatenate([[0], np.cumsum(big == _SENTINEL)])
        valid = (sentinel_cum[k:] - sentinel_cum[:-k]) == 0

        sym = big[k - 1 : k - 1 + t_count][valid].copy()
        closure = np.zeros(len(sym), dtype=np.uint8)
        words = [w[valid] for w in words]

        # chain-terminal closure rows: label = last solid symbol + k-2 dummies
        lasts = np.array([SYMBOL_CODES[s[-1]] for s in strings], dtype=np.uint8)
        tcols = [np.ones(len(strings), dtype=np.uint8) for _ in range(k - 3 + 1)]
        tcols.append(lasts)  # digit k-2 = label[0]
        tcols.append(np.ones(len(strings), dtype=np.uint8))  # symbol $
        tcols.append(np.ones(len(strings), dtype=np.uint8))  # closure
        twords = _pack_digit_columns(tcols, n_digits)

        words = [np.concatenate([w, tw]) for w, tw in zip(words, twords)]
        sym = np.concatenate([sym, np.ones(len(strings), dtype=np.uint8)])
        closure = np.concatenate([closure, np.ones(len(strings), dtype=np.uint8)])

        order = np.lexsort(tuple(words[::-1]))
        words = [w[order] for w in words]
        sym = sym[order]
        closure = closure[order]

        dup = np.ones(len(sym), dtype=bool)
        if len(sym) > 1:
            same = np.ones(len(sym) - 1, dtype=bool)
            for w in words:
                same &= w[1:] == w[:-1]
            dup[1:] = ~same
        words = [w[dup] for w in words]
        sym = sym[dup]
        closure = closure[dup]
        m = len(sym)

        # node boundaries: source label change (ignore symbol + closure digits)
        label_masks = _digit_masks(n_digits, k - 1)
        masked = [w & np.uint64(mk) for w, mk in zip(words, label_masks)]
        b_bits = np.zeros(m, dtype=np.uint8)
        b_bits[0] = 1
        if m > 1:
            diff = np.zeros(m - 1, dtype=bool)
            for w in masked:
                diff |= w[1:] != w[:-1]
            b_bits[1:] = diff

        node_pos = np.flatnonzero(b_bits)
        n_nodes = len(node_pos)

        # per-node label digits for taxonomy and K
        node_words = [w[node_pos] for w in masked]
        label_cols = [_extract_digit(node_words, k - 2 - c) for c in range(k - 1)]
        label_mat = np.stack(label_cols, axis=1)  # label[0..k-2] per node
        solid = (label_mat >= 2).all(axis=1)
        starting = (label_mat[:, 0] == 1) & (label_mat[:, 1:] >= 2).all(axis=1)
        ending = (label_mat[:, -1] == 1) & (label_mat[:, :-1] >= 2).all(axis=1)

        last_sym = label_mat[:, -1]
        counts = np.bincount(last_sym, minlength=6)[1:6]
        kcum = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)  # A[i] = #last <= i

        # disambiguation flags: same symbol and same target as previous edge
        suffix_masks = _digit_masks(n_digits, k - 2)
        minus = np.zeros(m, dtype=np.uint8)
        for c in range(1, 6):
            idx = np.flatnonzero((sym == c) & (closure == 0))
            if len(idx) < 2:
                continue
            same = np.ones(len(idx) - 1, dtype=bool)
            for w, mk in zip(words, suffix_masks):
                wc = w[idx] & np.uint64(mk)
                same &= wc[1:] == wc[:-1]
            minus[idx[1:]] = same.astype(np.uint8)

        boss = cls.__new__(cls)
        boss.k = k
        boss._E = SymbolSequence(sym)
        boss._B = BitVector(b_bits)
        boss._kcum = kcum
        boss._minus = minus
        boss._closure = closure
        boss._starting = starting.astype(np.uint8)
        boss._ending = ending.astype(np.uint8)
        boss._solid = solid.astype(np.uint8)
        boss.node_count = n_nodes
        boss.edge_count = m
        boss._build_caches()
        return boss

    def _build_caches(self) -> None:
        b_bits = self._B.to_bits()
        self._first_edge = np.concatenate(
            [[0], np.flatnonzero(b_bits) + 1, [self.edge_count + 1]]
        ).astype(np.int64)
        self._edge_src = np.cumsum(b_bits).astype(np.int64)  # position (0-based) -> node id
        codes = self._E.codes()
        self._codes = codes
        real_unflagged = (self._minus == 0) & (self._closure == 0)
        self._nav_pos = [np.zeros(0, dtype=np.int64)] + [
            (np.flatnonzero((codes == c) & real_unflagged) + 1).astype(np.int64)
            for c in range(1, 6)
        ]
        self._sym_pos = [np.zeros(0, dtype=np.int64)] + [
            (np.flatnonzero(codes == c) + 1).astype(np.int64) for c in range(1, 6)
        ]
        n = self.node_count
        indeg = np.zeros(n + 1, dtype=np.int64)
        for c in range(1, 6):
            pos_c = self._sym_pos[c]
            real = self._closure[pos_c - 1] == 0
            posr = pos_c[real]
            if not len(posr):
                continue
            unflag = (self._minus[posr - 1] == 0).astype(np.int64)
            ranks = np.cumsum(unflag)
            targets = self._k_less(c) + (1 if c == 1 else 0) + ranks
            if targets.max() > n:
                raise CorruptIndex("edge target rank exceeds node count")
            indeg += np.bincount(targets, minlength=n + 1)
        if indeg[1] != 0:
            raise CorruptIndex("all-dummy root acquired incoming edges")
        if n > 1 and indeg[2:].min() < 1:
            raise CorruptIndex("non-root node without incoming edge")
        self._indeg = indeg

    # -- basic accessors ---------------------------------------------------

    @property
    def E(self) -> SymbolSequence:
        return self._E

    @property
    def B(self) -> BitVector:
        return self._B

    @property
    def K(self) -> np.ndarray:
        """K[i] = number of node labels ending with a symbol < i+1 (len 6)."""
        return self._kcum

    @property
    def edge_disambiguation_flags(self) -> np.ndarray:
        return self._minus

    def _k_less(self, c: int) -> int:
        return int(self._kcum[c - 1])

    def _check_node(self, v: int) -> None:
        if not 1 <= v <= self.node_count:
            raise BoundsError(f"node id {v} out of range [1, {self.node_count}]")

    def _last_symbol(self, v: int) -> int:
        return int(np.searchsorted(self._kcum, v, side="left"))

    # -- navigation --------------------------------------------------------

    def outdegree(self, v: int) -> int:
        self._check_node(v)
        return int(self._first_edge[v + 1] - self._first_edge[v])

    def node_edge_range(self, v: int) -> tuple[int, int]:
        """1-based inclusive range of edge positions owned by node v."""
        self._check_node(v)
        return int(self._first_edge[v]), int(self._first_edge[v + 1] - 1)

    def edge_symbol(self, pos: int) -> int:
        return int(self._codes[pos - 1])

    def edge_target(self, pos: int) -> int | None:
        """Target node of the edge at 1-based position pos; None on closure."""
        if self._closure[pos - 1]:
            return None
        c = int(self._codes[pos - 1])
        r = int(np.searchsorted(self._nav_pos[c], pos, side="right"))
        return self._k_less(c) + (1 if c == 1 else 0) + r

    def forward(self, v: int, a: int | str) -> int | None:
        if isinstance(a, str):
            if a not in SYMBOL_CODES:
                raise BoundsError(f"symbol {a!r} outside alphabet")
            a = SYMBOL_CODES[a]
        if not 1 <= a <= 5:
            raise BoundsError(f"symbol code {a} outside [1, 5]")
        lo, hi = self.node_edge_range(v)
        for pos in range(lo, hi + 1):
            if self._codes[pos - 1] == a:
                return self.edge_target(pos)
        return None

    def forward_r(self, v: int, r: int) -> int | None:
        lo, hi = self.node_edge_range(v)
        if not 1 <= r <= hi - lo + 1:
            raise BoundsError(f"edge rank {r} out of range [1, {hi - lo + 1}]")
        return self.edge_target(lo + r - 1)

    def successors(self, v: int) -> list[tuple[int, int, int]]:
        """(edge position, symbol, target) per real outgoing edge of v."""
        lo, hi = self.node_edge_range(v)
        out = []
        for pos in range(lo, hi + 1):
            t = self.edge_target(pos)
            if t is not None:
                out.append((pos, int(self._codes[pos - 1]), t))
        return out

    def indegree(self, v: int) -> int:
        self._check_node(v)
        return int(self._indeg[v])

    def _incoming_positions(self, v: int) -> list[int]:
        if v == 1:
            return []
        c = self._last_symbol(v)
        j = v - self._k_less(c) - (1 if c == 1 else 0)
        nav = self._nav_pos[c]
        if not 1 <= j <= len(nav):
            raise CorruptIndex(f"node {v} lacks a canonical incoming edge")
        p0 = int(nav[j - 1])
        p1 = int(nav[j]) if j < len(nav) else self.edge_count + 1
        allpos = self._sym_pos[c]
        lo = int(np.searchsorted(allpos, p0, side="left"))
        hi = int(np.searchsorted(allpos, p1, side="left"))
        positions = allpos[lo:hi]
        if c == 1:
            positions = positions[self._closure[positions - 1] == 0]
        return [int(p) for p in positions]

    def backward(self, v: int) -> list[int]:
        """All predecessor node ids, in BOSS order."""
        self._check_node(v)
        return [int(self._edge_src[p - 1]) for p in self._incoming_positions(v)]

    def backward_r(self, v: int, j: int) -> int:
        preds = self.backward(v)
        if not 1 <= j <= len(preds):
            raise BoundsError(f"predecessor rank {j} out of range [1, {len(preds)}]")
        return preds[j - 1]

    # -- labels ------------------------------------------------------------

    def node_label(self, v: int) -> str:
        self._check_node(v)
        syms: list[str] = []
        cur = v
        for _ in range(self.k - 1):
            if cur == 1:
                break
            c = self._last_symbol(cur)
            syms.append(CODE_SYMBOLS[c])
            j = cur - self._k_less(c) - (1 if c == 1 else 0)
            nav = self._nav_pos[c]
            if not 1 <= j <= len(nav):
                raise CorruptIndex(f"node {cur} lacks a canonical incoming edge")
            cur = int(self._edge_src[int(nav[j - 1]) - 1])
        pad = DUMMY * (self.k - 1 - len(syms))
        return pad + "".join(reversed(syms))

    def label_to_node(self, label: str) -> int | None:
        if len(label) != self.k - 1:
            raise BadLabel(f"label length {len(label)} != k-1 = {self.k - 1}")
        if any(ch not in SYMBOL_CODES for ch in label):
            raise BadLabel(f"label {label!r} contains symbols outside the alphabet")
        key = label[::-1]
        lo, hi = 1, self.node_count
        while lo <= hi:
            mid = (lo + hi) // 2
            mid_key = self.node_label(mid)[::-1]
            if mid_key == key:
                return mid
            if mid_key < key:
                lo = mid + 1
            else:
                hi = mid - 1
        return None

    # -- taxonomy ----------------------------------------------------------

    def is_starting(self, v: int) -> bool:
        self._check_node(v)
        return bool(self._starting[v - 1])

    def is_ending(self, v: int) -> bool:
        self._check_node(v)
        return bool(self._ending[v - 1])

    def is_solid(self, v: int) -> bool:
        self._check_node(v)
        return bool(self._solid[v - 1])

    def is_critical(self, v: int) -> bool:
        """Solid node with at least one predecessor of outdegree > 1."""
        self._check_node(v)
        if not self._solid[v - 1]:
            return False
        return any(self.outdegree(u) > 1 for u in self.backward(v))

    def starting_node_ids(self) -> np.ndarray:
        return np.flatnonzero(self._starting).astype(np.int64) + 1

    def taxonomy_bits(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._starting, self._ending, self._solid

    # -- serialization -----------------------------------------------------

    def serialize(self, w: Writer) -> None:
        w.u8(1)  # section version
        w.u16(self.k)
        w.u64(self.node_count)
        w.u64(self.edge_count)
        w.array(self._kcum)
        self._E.serialize(w)
        self._B.serialize(w)
        bit_vector(self._minus).serialize(w)
        bit_vector(self._closure).serialize(w)
        bit_vector(self._starting).serialize(w)
        bit_vector(self._ending).serialize(w)
        bit_vector(self._solid).serialize(w)

    @classmethod
    def deserialize(cls, r: Reader) -> "BossIndex":
        if r.u8() != 1:
            raise IntegrityError("unsupported graph section version")
        boss = cls.__new__(cls)
        boss.k = r.u16()
        boss.node_count = r.u64()
        boss.edge_count = r.u64()
        boss._kcum = r.array(np.int64)
        boss._E = SymbolSequence.deserialize(r)
        if r.u8() != 1:
            raise IntegrityError("node-boundary bitmap must be plain")
        boss._B = BitVector._deserialize_body(r)
        boss._minus = read_bit_vector(r).to_bits()
        boss._closure = read_bit_vector(r).to_bits()
        boss._starting = read_bit_vector(r).to_bits()
        boss._ending = read_bit_vector(r).to_bits()
        boss._solid = read_bit_vector(r).to_bits()
        boss._build_caches()
        return boss
