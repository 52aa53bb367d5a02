"""Rank/select bitvectors, Elias-Fano monotone sequences, symbol sequences.

Conventions (fixed by the public contracts):

* ``rank1(i)`` counts set bits in the prefix of length ``i``, ``0 <= i <= n``.
* ``select1(j)`` returns the 1-based position of the j-th set bit,
  ``1 <= j <= count``.
* ``get(i)`` uses 0-based positions (plain Python indexing).

Two bitvector representations exist: a plain packed one for dense vectors
and a position-list one for sparse vectors, serialized via Elias-Fano.
``bit_vector`` picks between them with a 25% density threshold.
"""

from __future__ import annotations

import numpy as np

from ._binio import Reader, Writer
from .errors import BoundsError, IntegrityError

_LOW_MASKS = (np.uint64(1) << np.arange(65, dtype=np.uint64)) - np.uint64(1)
# _LOW_MASKS[64] overflows to 0 under uint64 wraparound; fix it to all-ones.
_LOW_MASKS[64] = np.uint64(0xFFFFFFFFFFFFFFFF)

SPARSE_DENSITY_THRESHOLD = 0.25


def _popcount(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words)


def _pack_bits(bits: np.ndarray) -> np.ndarray:
    """bits (0/1 uint8) -> uint64 words, bit i of word w = bits[64w + i]."""
    packed = np.packbits(bits, bitorder="little")
    if len(packed) % 8:
        packed = np.concatenate([packed, np.zeros(8 - len(packed) % 8, dtype=np.uint8)])
    return packed.view("<u8").astype(np.uint64, copy=False)


def _unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    return np.unpackbits(words.view(np.uint8), bitorder="little")[:n]


class BitVector:
    """Plain bitvector with O(1) rank and O(log n) select."""

    kind = "plain"

    def __init__(self, bits: np.ndarray):
        bits = np.asarray(bits, dtype=np.uint8)
        self.n = len(bits)
        self._words = _pack_bits(bits) if self.n else np.zeros(0, dtype=np.uint64)
        # _block[w] = number of set bits in words[:w]
        self._block = np.zeros(len(self._words) + 1, dtype=np.int64)
        if len(self._words):
            np.cumsum(_popcount(self._words), out=self._block[1:])
        self.count = int(self._block[-1])

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise BoundsError(f"bit index {i} out of range [0, {self.n})")
        return int((self._words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    def rank1(self, i):
        """Set bits in the prefix of length i; accepts scalars or arrays."""
        if np.isscalar(i) or isinstance(i, (int, np.integer)):
            if not 0 <= i <= self.n:
                raise BoundsError(f"rank position {i} out of range [0, {self.n}]")
            w, r = divmod(int(i), 64)
            part = int(self._words[w]) & ((1 << r) - 1) if r else 0
            return int(self._block[w]) + part.bit_count()
        i = np.asarray(i, dtype=np.int64)
        if i.size and (i.min() < 0 or i.max() > self.n):
            raise BoundsError("rank position out of range")
        w, r = np.divmod(i, 64)
        words = np.where(w < len(self._words), self._words[np.minimum(w, len(self._words) - 1)], 0)
        part = _popcount(words.astype(np.uint64) & _LOW_MASKS[r])
        return self._block[w] + part

    def select1(self, j: int) -> int:
        """1-based position of the j-th set bit."""
        if not 1 <= j <= self.count:
            raise BoundsError(f"select occurrence {j} out of range [1, {self.count}]")
        w = int(np.searchsorted(self._block, j, side="left")) - 1
        x = int(self._words[w])
        r = j - int(self._block[w])
        while r > 1:
            x &= x - 1
            r -= 1
        return (w << 6) + (x & -x).bit_length()

    def ones_positions(self) -> np.ndarray:
        """0-based positions of all set bits."""
        return np.flatnonzero(_unpack_bits(self._words, self.n)).astype(np.int64)

    def to_bits(self) -> np.ndarray:
        return _unpack_bits(self._words, self.n)

    def serialize(self, w: Writer) -> None:
        w.u8(1)  # representation tag
        w.u8(1)  # version
        w.u64(self.n)
        w.array(self._words)

    @classmethod
    def _deserialize_body(cls, r: Reader) -> "BitVector":
        if r.u8() != 1:
            raise IntegrityError("unsupported plain bitvector version")
        n = r.u64()
        words = r.array(np.uint64)
        bv = cls.__new__(cls)
        bv.n = n
        bv._words = words
        bv._block = np.zeros(len(words) + 1, dtype=np.int64)
        if len(words):
            np.cumsum(_popcount(words), out=bv._block[1:])
        bv.count = int(bv._block[-1])
        return bv


class SparseBitVector:
    """Position-list bitvector; compact when few bits are set."""

    kind = "sparse"

    def __init__(self, n: int, positions: np.ndarray):
        positions = np.asarray(positions, dtype=np.int64)
        if positions.size:
            if positions.min() < 0 or positions.max() >= n:
                raise BoundsError("set-bit position out of range")
            if np.any(np.diff(positions) <= 0):
                raise ValueError("positions must be strictly increasing")
        self.n = int(n)
        self._pos = positions
        self.count = len(positions)

    @classmethod
    def from_bits(cls, bits: np.ndarray) -> "SparseBitVector":
        bits = np.asarray(bits, dtype=np.uint8)
        return cls(len(bits), np.flatnonzero(bits).astype(np.int64))

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise BoundsError(f"bit index {i} out of range [0, {self.n})")
        k = np.searchsorted(self._pos, i)
        return int(k < self.count and self._pos[k] == i)

    def rank1(self, i):
        if np.isscalar(i) or isinstance(i, (int, np.integer)):
            if not 0 <= i <= self.n:
                raise BoundsError(f"rank position {i} out of range [0, {self.n}]")
            return int(np.searchsorted(self._pos, i, side="left"))
        i = np.asarray(i, dtype=np.int64)
        if i.size and (i.min() < 0 or i.max() > self.n):
            raise BoundsError("rank position out of range")
        return np.searchsorted(self._pos, i, side="left")

    def select1(self, j: int) -> int:
        if not 1 <= j <= self.count:
            raise BoundsError(f"select occurrence {j} out of range [1, {self.count}]")
        return int(self._pos[j - 1]) + 1

    def ones_positions(self) -> np.ndarray:
        return self._pos

    def to_bits(self) -> np.ndarray:
        bits = np.zeros(self.n, dtype=np.uint8)
        bits[self._pos] = 1
        return bits

    def serialize(self, w: Writer) -> None:
        w.u8(2)
        w.u8(1)
        w.u64(self.n)
        MonotoneSequence(self._pos).serialize(w)

    @classmethod
    def _deserialize_body(cls, r: Reader) -> "SparseBitVector":
        if r.u8() != 1:
            raise IntegrityError("unsupported sparse bitvector version")
        n = r.u64()
        pos = MonotoneSequence.deserialize(r).to_array()
        return cls(n, pos)


AnyBitVector = BitVector | SparseBitVector


def bit_vector(bits: np.ndarray, kind: str = "auto") -> AnyBitVector:
    """Build a bitvector, choosing the representation by density."""
    bits = np.asarray(bits, dtype=np.uint8)
    if kind == "auto":
        density = bits.mean() if len(bits) else 1.0
        kind = "sparse" if density <= SPARSE_DENSITY_THRESHOLD else "plain"
    if kind == "plain":
        return BitVector(bits)
    if kind == "sparse":
        return SparseBitVector.from_bits(bits)
    raise ValueError(f"unknown bitvector kind {kind!r}")


def read_bit_vector(r: Reader) -> AnyBitVector:
    tag = r.u8()
    if tag == 1:
        return BitVector._deserialize_body(r)
    if tag == 2:
        return SparseBitVector._deserialize_body(r)
    raise IntegrityError(f"unknown bitvector tag {tag}")


class MonotoneSequence:
    """Elias-Fano encoded nondecreasing sequence of nonnegative integers.

    ``access(j)`` is 0-based and O(1); whole-sequence decoding is
    vectorized via ``to_array``.
    """

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.int64)
        if values.size:
            if values.min() < 0:
                raise ValueError("values must be nonnegative")
            if np.any(np.diff(values) < 0):
                raise ValueError("values must be nondecreasing")
        self.n = len(values)
        universe = int(values[-1]) + 1 if self.n else 1
        self._low_bits = max(0, int(np.log2(max(1, universe // max(1, self.n)))))
        self._build(values, universe)

    def _build(self, values: np.ndarray, universe: int) -> None:
        l = self._low_bits
        if self.n == 0:
            self._lows = np.zeros(0, dtype=np.uint64)
            self._high = BitVector(np.zeros(0, dtype=np.uint8))
            return
        highs = (values >> l).astype(np.int64)
        high_len = self.n + int(highs[-1]) + 1
        high_bits = np.zeros(high_len, dtype=np.uint8)
        high_bits[highs + np.arange(self.n, dtype=np.int64)] = 1
        self._high = BitVector(high_bits)
        if l == 0:
            self._lows = np.zeros(0, dtype=np.uint64)
            return
        lows = values.astype(np.uint64) & _LOW_MASKS[l]
        offsets = np.arange(self.n, dtype=np.int64) * l
        words = np.zeros((offsets[-1] + l + 63) // 64 + 1, dtype=np.uint64)
        widx, shift = np.divmod(offsets, 64)
        shift = shift.astype(np.uint64)
        np.bitwise_or.at(words, widx, (lows << shift) & _LOW_MASKS[64])
        spill = (shift.astype(np.int64) + l) > 64
        if spill.any():
            np.bitwise_or.at(
                words,
                widx[spill] + 1,
                lows[spill] >> (np.uint64(64) - shift[spill]),
            )
        self._lows = words

    def __len__(self) -> int:
        return self.n

    def _low(self, j) -> np.ndarray:
        l = self._low_bits
        off = np.asarray(j, dtype=np.int64) * l
        widx, shift = np.divmod(off, 64)
        shift = shift.astype(np.uint64)
        lo = self._lows[widx] >> shift
        need_spill = (shift.astype(np.int64) + l) > 64
        hi = np.where(
            need_spill,
            self._lows[np.minimum(widx + 1, len(self._lows) - 1)]
            << (np.uint64(64) - np.where(shift > 0, shift, np.uint64(1))),
            np.uint64(0),
        )
        return (lo | hi) & _LOW_MASKS[l]

    def access(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise BoundsError(f"access index {j} out of range [0, {self.n})")
        high = self._high.select1(j + 1) - 1 - j
        if self._low_bits == 0:
            return int(high)
        return int((np.uint64(high) << np.uint64(self._low_bits)) | self._low(j))

    def to_array(self) -> np.ndarray:
        if self.n == 0:
            return np.zeros(0, dtype=np.int64)
        highs = self._high.ones_positions() - np.arange(self.n, dtype=np.int64)
        if self._low_bits == 0:
            return highs
        lows = self._low(np.arange(self.n, dtype=np.int64)).astype(np.int64)
        return (highs << self._low_bits) | lows

    def serialize(self, w: Writer) -> None:
        w.u8(1)  # version
        w.u64(self.n)
        w.u8(self._low_bits)
        w.array(self._lows)
        self._high.serialize(w)

    @classmethod
    def deserialize(cls, r: Reader) -> "MonotoneSequence":
        if r.u8() != 1:
            raise IntegrityError("unsupported monotone sequence version")
        seq = cls.__new__(cls)
        seq.n = r.u64()
        seq._low_bits = r.u8()
        seq._lows = r.array(np.uint64)
        if r.u8() != 1:
            raise IntegrityError("monotone sequence payload must be a plain bitvector")
        seq._high = BitVector._deserialize_body(r)
        return seq


class SymbolSequence:
    """Sequence over a small integer alphabet with per-symbol rank/select.

    Built for the 5-letter DNA+dummy alphabet (codes 1..5). ``access`` and
    ``select`` use 1-based positions, ``rank(c, i)`` counts occurrences of
    ``c`` in the prefix of length ``i``.
    """

    def __init__(self, codes: np.ndarray, sigma: int = 5):
        codes = np.asarray(codes, dtype=np.uint8)
        if codes.size and (codes.min() < 1 or codes.max() > sigma):
            raise ValueError(f"symbol codes must lie in [1, {sigma}]")
        self.n = len(codes)
        self.sigma = sigma
        self._codes = codes
        self._pos = [np.zeros(0, dtype=np.int64)] + [
            np.flatnonzero(codes == c).astype(np.int64) for c in range(1, sigma + 1)
        ]

    def access(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise BoundsError(f"access position {i} out of range [1, {self.n}]")
        return int(self._codes[i - 1])

    def rank(self, c: int, i: int) -> int:
        if not 1 <= c <= self.sigma:
            raise BoundsError(f"symbol {c} outside alphabet")
        if not 0 <= i <= self.n:
            raise BoundsError(f"rank position {i} out of range [0, {self.n}]")
        return int(np.searchsorted(self._pos[c], i, side="left"))

    def select(self, c: int, j: int) -> int:
        if not 1 <= c <= self.sigma:
            raise BoundsError(f"symbol {c} outside alphabet")
        pos = self._pos[c]
        if not 1 <= j <= len(pos):
            raise BoundsError(f"select occurrence {j} out of range [1, {len(pos)}]")
        return int(pos[j - 1]) + 1

    def count(self, c: int) -> int:
        return len(self._pos[c])

    def codes(self) -> np.ndarray:
        return self._codes

    def serialize(self, w: Writer) -> None:
        w.u8(1)  # version
        w.u64(self.n)
        w.u8(self.sigma)
        for c in range(1, self.sigma + 1):
            bits = np.zeros(self.n, dtype=np.uint8)
            bits[self._pos[c]] = 1
            bit_vector(bits).serialize(w)

    @classmethod
    def deserialize(cls, r: Reader) -> "SymbolSequence":
        if r.u8() != 1:
            raise IntegrityError("unsupported symbol sequence version")
        n = r.u64()
        sigma = r.u8()
        codes = np.zeros(n, dtype=np.uint8)
        for c in range(1, sigma + 1):
            bv = read_bit_vector(r)
            codes[bv.ones_positions()] = c
        return cls(codes, sigma=sigma)
