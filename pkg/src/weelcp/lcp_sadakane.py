"""2n + o(n)-bit LCP encoding.

LCP values listed in text order can drop by at most one from one position to
the next, so ``H[AInv[p]] + p`` is increasing.  Writing each increment
``I[p] = H[AInv[p]] - H[AInv[p - 1]] + 1`` in unary as ``0^I[p] 1`` gives a
bitvector ``S`` with exactly ``n`` ones, and ``H[i]`` comes back as
``select1(S, A[i]) - 2 A[i]``.
"""
from __future__ import annotations

import struct

import numpy as np

from .bitvec import BitVector, RankSelectSupport
from .space import SpaceReport
from .text_index import LcpArray, SuffixArray


class EncodingError(ValueError):
    """The LCP array and suffix array do not fit together."""


def text_order_lcp(h: LcpArray, sa: SuffixArray) -> np.ndarray:
    """``H[AInv[p]]`` for p = 1..n, as a 0-indexed array."""
    if len(h) != len(sa):
        raise EncodingError(f"LCP array has {len(h)} entries, suffix array {len(sa)}")
    return h.array[sa.inverse_array - 1]


def unary_increments(h: LcpArray, sa: SuffixArray) -> np.ndarray:
    hv = text_order_lcp(h, sa)
    prev = np.concatenate(([0], hv[:-1]))
    inc = hv - prev + 1
    bad = np.flatnonzero(inc < 0)
    if bad.size:
        p = int(bad[0]) + 1
        raise EncodingError(
            f"LCP drops by more than one at text position {p} "
            f"({int(prev[p - 1])} -> {int(hv[p - 1])}); inputs are inconsistent")
    return inc


def encode_bits(h: LcpArray, sa: SuffixArray) -> np.ndarray:
    """The bit sequence S as a uint8 array (index 0 holds position 1)."""
    inc = unary_increments(h, sa)
    ones = np.cumsum(inc + 1)
    bits = np.zeros(int(ones[-1]) if ones.size else 0, dtype=np.uint8)
    bits[ones - 1] = 1
    return bits


class SadakaneLcp:
    def __init__(self, S: BitVector, n: int):
        self.S = S
        self.n = n
        self.support = RankSelectSupport(S)

    def access_eq1(self, sa, i: int) -> int:
        """rank0(S, select1(S, A[i])) - A[i]"""
        self._check(i)
        j = sa[i]
        return self.support.rank0(self.support.select1(j)) - j

    def access_eq2(self, sa, i: int) -> int:
        """select1(S, A[i]) - 2 A[i]"""
        self._check(i)
        j = sa[i]
        return self.support.select1(j) - 2 * j

    lcp = access_eq2

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"LCP index {i} outside 1..{self.n}")

    def decode_text_order(self) -> list[int]:
        """Scan S once and return ``H[AInv[p]]`` for p = 1..n."""
        out = []
        value = 0
        zeros = 0
        for bit in self.S.to_numpy().tolist():
            if bit:
                value += zeros - 1
                out.append(value)
                zeros = 0
            else:
                zeros += 1
        return out

    def space_report(self) -> SpaceReport:
        return SpaceReport("sadakane", self.n, {
            "S": len(self.S),
            "rank_select": self.support.size_in_bits(),
        })

    def to_bytes(self) -> bytes:
        return struct.pack("<Q", self.n) + self.S.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "SadakaneLcp":
        (n,) = struct.unpack_from("<Q", data)
        return cls(BitVector.from_bytes(data[8:]), n)


def build_sadakane(h: LcpArray, sa: SuffixArray) -> SadakaneLcp:
    return SadakaneLcp(BitVector(encode_bits(h, sa)), len(sa))


def space_report_sadakane(d: SadakaneLcp) -> SpaceReport:
    return d.space_report()
