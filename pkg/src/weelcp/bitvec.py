"""Packed bitvectors with sampled rank/select support.

Positions are 1-based at the API surface: ``v[1]`` is the first bit,
``rank1(i)`` counts ones in ``v[1..i]`` and ``select1(q)`` returns the
position of the ``q``-th one.  Internally the bits live in 64-bit words,
bit ``p - 1`` of the vector being bit ``(p - 1) % 64`` of word
``(p - 1) // 64``.
"""
from __future__ import annotations

import struct
from bisect import bisect_left
from typing import Iterable, Union

import numpy as np

WORD = 64
_MASK64 = (1 << WORD) - 1

BitsLike = Union[str, bytes, Iterable[int], np.ndarray]


class BitVector:
    """Immutable packed bit-string of length ``L``."""

    __slots__ = ("_words", "_length", "_ones")

    def __init__(self, bits: BitsLike = ()):
        arr = _as_bit_array(bits)
        self._length = int(arr.size)
        self._words = _pack_words(arr)
        self._ones = int(np.count_nonzero(arr))

    @classmethod
    def from_words(cls, words, length: int) -> "BitVector":
        nwords = (length + WORD - 1) // WORD
        words = [int(w) & _MASK64 for w in words]
        if len(words) != nwords:
            raise ValueError(f"expected {nwords} words for {length} bits, got {len(words)}")
        if length % WORD and words:
            # padding past the end must read as zero
            words[-1] &= (1 << (length % WORD)) - 1
        self = cls.__new__(cls)
        self._words = words
        self._length = length
        self._ones = sum(w.bit_count() for w in words)
        return self

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, p: int) -> int:
        if not 1 <= p <= self._length:
            raise IndexError(f"bit position {p} outside 1..{self._length}")
        p -= 1
        return (self._words[p >> 6] >> (p & 63)) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._length == other._length and self._words == other._words

    def __hash__(self):
        return hash((self._length, tuple(self._words)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_numpy())

    def __repr__(self) -> str:
        if self._length <= 64:
            return f"BitVector('{self}')"
        return f"BitVector(length={self._length}, ones={self._ones})"

    @property
    def words(self) -> list[int]:
        return self._words

    def popcount(self) -> int:
        return self._ones

    def zerocount(self) -> int:
        return self._length - self._ones

    def to_numpy(self) -> np.ndarray:
        """Bits as a uint8 array of 0/1 values, index 0 holding position 1."""
        if not self._length:
            return np.zeros(0, dtype=np.uint8)
        raw = np.asarray(self._words, dtype="<u8").view(np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self._length]

    def to_bytes(self) -> bytes:
        """Length as little-endian u64, then the payload in little-endian u64 words."""
        return struct.pack("<Q", self._length) + np.asarray(self._words, dtype="<u8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitVector":
        if len(data) < 8:
            raise ValueError("truncated bitvector header")
        (length,) = struct.unpack_from("<Q", data)
        nwords = (length + WORD - 1) // WORD
        if len(data) != 8 + 8 * nwords:
            raise ValueError(f"bitvector payload is {len(data) - 8} bytes, expected {8 * nwords}")
        words = np.frombuffer(data, dtype="<u8", offset=8, count=nwords).tolist()
        return cls.from_words(words, length)


def _as_bit_array(bits: BitsLike) -> np.ndarray:
    if isinstance(bits, BitVector):
        return bits.to_numpy()
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise ValueError("bit string may only contain '0' and '1'")
        return (np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")).astype(np.uint8)
    arr = np.asarray(bits if isinstance(bits, np.ndarray) else list(bits))
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValueError("bits must be 0 or 1")
    return arr.astype(np.uint8).ravel()


def _pack_words(arr: np.ndarray) -> list[int]:
    if not arr.size:
        return []
    packed = np.packbits(arr, bitorder="little")
    pad = (-packed.size) % 8
    if pad:
        packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
    return packed.view("<u8").tolist()


class RankSelectSupport:
    """Two-level rank directory plus sampled select over a :class:`BitVector`.

    ``super_size`` positions per superblock (absolute counts), ``block_size``
    positions per block (counts relative to the superblock), and one select
    sample every ``select_sample`` ones (resp. zeros) pointing at the
    superblock holding that occurrence.
    """

    def __init__(self, v: BitVector, super_size: int = 4096, block_size: int = 64,
                 select_sample: int = 8192):
        if block_size <= 0 or block_size % WORD:
            raise ValueError("block_size must be a positive multiple of 64")
        if super_size <= 0 or super_size % block_size:
            raise ValueError("super_size must be a positive multiple of block_size")
        if select_sample <= 0:
            raise ValueError("select_sample must be positive")
        self.v = v
        self.super_size = super_size
        self.block_size = block_size
        self.select_sample = select_sample
        self._blocks_per_super = super_size // block_size
        self._words_per_block = block_size // WORD

        L = len(v)
        bits = v.to_numpy()
        cum = np.zeros(L + 1, dtype=np.int64)
        np.cumsum(bits, out=cum[1:])
        sup = cum[::super_size]
        blk = cum[::block_size]
        blk = blk - sup[np.arange(blk.size) // self._blocks_per_super]
        self._super = sup.tolist()
        self._block = blk.tolist()

        ones = np.flatnonzero(bits)
        zeros = np.flatnonzero(bits == 0)
        self._sel1 = (ones[::select_sample] // super_size).tolist()
        self._sel0 = (zeros[::select_sample] // super_size).tolist()
        self._ones = int(ones.size)
        self._zeros = int(zeros.size)

    def __len__(self) -> int:
        return len(self.v)

    def rank1(self, i: int) -> int:
        if not 0 <= i <= len(self.v):
            raise IndexError(f"rank position {i} outside 0..{len(self.v)}")
        b = i // self.block_size
        r = self._super[i // self.super_size] + self._block[b]
        words = self.v.words
        w_end = i >> 6
        for w in range(b * self._words_per_block, w_end):
            r += words[w].bit_count()
        rem = i & 63
        if rem:
            r += (words[w_end] & ((1 << rem) - 1)).bit_count()
        return r

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, q: int) -> int:
        if not 1 <= q <= self._ones:
            raise IndexError(f"select1 argument {q} outside 1..{self._ones}")
        t = (q - 1) // self.select_sample
        lo = self._sel1[t]
        hi = self._sel1[t + 1] if t + 1 < len(self._sel1) else len(self._super) - 1
        sb = bisect_left(self._super, q, lo, hi + 1) - 1
        r = q - self._super[sb]
        b_lo = sb * self._blocks_per_super
        b_hi = min(b_lo + self._blocks_per_super, len(self._block))
        b = bisect_left(self._block, r, b_lo, b_hi) - 1
        r -= self._block[b]
        words = self.v.words
        w = b * self._words_per_block
        while True:
            c = words[w].bit_count()
            if c >= r:
                return (w << 6) + _select_in_word(words[w], r)
            r -= c
            w += 1

    def select0(self, q: int) -> int:
        if not 1 <= q <= self._zeros:
            raise IndexError(f"select0 argument {q} outside 1..{self._zeros}")
        t = (q - 1) // self.select_sample
        lo = self._sel0[t]
        hi = self._sel0[t + 1] if t + 1 < len(self._sel0) else len(self._super) - 1
        Bs, sup = self.super_size, self._super
        sb = bisect_left(range(len(sup)), q, lo, hi + 1, key=lambda k: k * Bs - sup[k]) - 1
        r = q - (sb * Bs - sup[sb])
        b_lo = sb * self._blocks_per_super
        b_hi = min(b_lo + self._blocks_per_super, len(self._block))
        Bb, blk = self.block_size, self._block
        b = bisect_left(range(len(blk)), r, b_lo, b_hi,
                        key=lambda k: (k - b_lo) * Bb - blk[k]) - 1
        r -= (b - b_lo) * Bb - blk[b]
        words = self.v.words
        L = len(self.v)
        w = b * self._words_per_block
        while True:
            valid = min(WORD, L - (w << 6))
            inv = ~words[w] & ((1 << valid) - 1)
            c = inv.bit_count()
            if c >= r:
                return (w << 6) + _select_in_word(inv, r)
            r -= c
            w += 1

    def size_in_bits(self) -> int:
        """Bits used by the directories, excluding the bitvector itself."""
        rel_width = max(1, (self.super_size - 1).bit_length())
        return (WORD * len(self._super) + rel_width * len(self._block)
                + WORD * (len(self._sel1) + len(self._sel0)))


def _select_in_word(word: int, r: int) -> int:
    """1-based offset of the r-th set bit of ``word``."""
    for _ in range(r - 1):
        word &= word - 1
    return (word & -word).bit_length()


def build_support(v: BitVector, **kwargs) -> RankSelectSupport:
    return RankSelectSupport(v, **kwargs)
