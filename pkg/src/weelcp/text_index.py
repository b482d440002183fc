"""Text container, suffix array, inverse suffix array and LCP array.

Everything public is 1-based: ``t[1]`` is the first byte, ``sa[i]`` is the
starting position of the ``i``-th smallest suffix and ``lcp[i]`` is the
length of the longest common prefix of suffixes ``sa[i - 1]`` and ``sa[i]``.
"""
from __future__ import annotations

import struct
import time
from dataclasses import dataclass, field

import numpy as np

SENTINEL = 0

SA_MAGIC = b"WLCPSA01"
LCP_MAGIC = b"WLCPLC01"


class TextError(ValueError):
    """Raw input cannot be turned into a sentinel-terminated text."""


@dataclass(frozen=True)
class Text:
    data: bytes  # includes the trailing sentinel
    sigma: int

    @property
    def n(self) -> int:
        return len(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def __getitem__(self, p: int) -> int:
        if not 1 <= p <= len(self.data):
            raise IndexError(f"text position {p} outside 1..{len(self.data)}")
        return self.data[p - 1]

    def suffix(self, p: int) -> bytes:
        return self.data[p - 1:]


def load_text(raw: bytes) -> Text:
    raw = bytes(raw)
    off = raw.find(b"\x00")
    if off >= 0:
        raise TextError(f"input contains a 0x00 byte at offset {off}; 0x00 is reserved for the sentinel")
    data = raw + bytes([SENTINEL])
    return Text(data=data, sigma=len(set(data)))


class SuffixArray:
    """Suffix array ``A[1..n]`` with its inverse, both 1-based."""

    def __init__(self, positions):
        a = np.asarray(positions, dtype=np.int64)
        n = a.size
        if n and (np.sort(a) != np.arange(1, n + 1)).any():
            raise ValueError("suffix array must be a permutation of 1..n")
        inv = np.empty(n, dtype=np.int64)
        inv[a - 1] = np.arange(1, n + 1)
        self.array = a
        self.inverse_array = inv
        # leading dummies make list indexing 1-based
        self._a = [0] + a.tolist()
        self._inv = [0] + inv.tolist()

    def __len__(self) -> int:
        return len(self._a) - 1

    def __getitem__(self, i: int) -> int:
        if not 1 <= i < len(self._a):
            raise IndexError(f"suffix array index {i} outside 1..{len(self)}")
        return self._a[i]

    def inverse(self, p: int) -> int:
        if not 1 <= p < len(self._inv):
            raise IndexError(f"text position {p} outside 1..{len(self)}")
        return self._inv[p]

    def to_list(self) -> list[int]:
        return self._a[1:]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuffixArray):
            return NotImplemented
        return self._a == other._a

    def __repr__(self) -> str:
        return f"SuffixArray({self.to_list() if len(self) <= 20 else f'n={len(self)}'})"

    def to_bytes(self) -> bytes:
        return _pack_array(SA_MAGIC, self.array)

    @classmethod
    def from_bytes(cls, data: bytes) -> "SuffixArray":
        return cls(_unpack_array(SA_MAGIC, data))


class DelayedSuffixArray:
    """Wraps a suffix array and busy-waits on every ``A[i]`` lookup.

    Only useful for benchmarks that emulate the access time of a compressed
    suffix array; the inverse is passed through undelayed.
    """

    def __init__(self, sa: SuffixArray, delay_ns: int):
        self.sa = sa
        self.delay_ns = int(delay_ns)

    def __len__(self) -> int:
        return len(self.sa)

    def __getitem__(self, i: int) -> int:
        deadline = time.perf_counter_ns() + self.delay_ns
        while time.perf_counter_ns() < deadline:
            pass
        return self.sa[i]

    def inverse(self, p: int) -> int:
        return self.sa.inverse(p)


@dataclass
class LcpArray:
    """Plain LCP array ``H[1..n]``; ``comparisons`` is filled in by Kasai."""

    values: list[int]
    comparisons: int = field(default=0, compare=False)

    def __post_init__(self):
        self.values = [int(x) for x in self.values]
        self._h = [0] + self.values

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i < len(self._h):
            raise IndexError(f"LCP index {i} outside 1..{len(self.values)}")
        return self._h[i]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    def to_list(self) -> list[int]:
        return list(self.values)

    def to_bytes(self) -> bytes:
        return _pack_array(LCP_MAGIC, self.array)

    @classmethod
    def from_bytes(cls, data: bytes) -> "LcpArray":
        return cls(_unpack_array(LCP_MAGIC, data).tolist())


def build_suffix_array(t: Text) -> SuffixArray:
    """Prefix doubling: rank pairs ``(rank[p], rank[p + k])`` are stably sorted
    until every suffix has a distinct rank.  O(n log n) rounds of sorting."""
    n = t.n
    rank = np.unique(np.frombuffer(t.data, dtype=np.uint8), return_inverse=True)[1].astype(np.int64)
    if n == 1:
        return SuffixArray([1])
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[:n - k] = rank[k:]
        key = rank * (n + 2) + (second + 1)
        order = np.argsort(key, kind="stable")
        sk = key[order]
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.concatenate(([0], np.cumsum(sk[1:] != sk[:-1])))
        rank = new_rank
        if rank.max() == n - 1:
            break
        k *= 2
    return SuffixArray(order + 1)


def build_lcp_kasai(t: Text, sa: SuffixArray) -> LcpArray:
    """Kasai et al.: visit suffixes in text order, carrying the match length
    over (minus one) from the previous text position."""
    data = t.data
    n = t.n
    a = sa._a
    inv = sa._inv
    h = [0] * (n + 1)
    k = 0
    comparisons = 0
    for p in range(1, n + 1):
        r = inv[p]
        if r == 1:
            k = 0
            continue
        q = a[r - 1]
        # 0-based cursors; the unique sentinel stops the scan
        x, y = p - 1 + k, q - 1 + k
        while data[x] == data[y]:
            x += 1
            y += 1
        comparisons += x - (p - 1 + k) + 1
        k = x - (p - 1)
        h[r] = k
        if k:
            k -= 1
    return LcpArray(h[1:], comparisons=comparisons)


def naive_lcp(t: Text, j: int, j2: int) -> int:
    n = t.n
    if not (1 <= j <= n and 1 <= j2 <= n):
        raise IndexError(f"positions ({j}, {j2}) outside 1..{n}")
    if j == j2:
        return n - j + 1
    data = t.data
    length = 0
    x, y = j - 1, j2 - 1
    while x < n and y < n and data[x] == data[y]:
        x += 1
        y += 1
        length += 1
    return length


def naive_suffix_sort(t: Text) -> SuffixArray:
    data = t.data
    return SuffixArray(sorted(range(1, t.n + 1), key=lambda p: data[p - 1:]))


def naive_lcp_array(t: Text, sa: SuffixArray) -> LcpArray:
    """Pairwise comparison of lexicographic neighbours."""
    h = [0] + [naive_lcp(t, sa[i - 1], sa[i]) for i in range(2, t.n + 1)]
    return LcpArray(h)


def _pack_array(magic: bytes, values: np.ndarray) -> bytes:
    return magic + struct.pack("<Q", values.size) + np.asarray(values, dtype="<u8").tobytes()


def _unpack_array(magic: bytes, data: bytes) -> np.ndarray:
    if data[:8] != magic:
        raise ValueError(f"bad magic {data[:8]!r}, expected {magic!r}")
    (n,) = struct.unpack_from("<Q", data, 8)
    if len(data) != 16 + 8 * n:
        raise ValueError(f"array payload holds {(len(data) - 16) // 8} values, header says {n}")
    return np.frombuffer(data, dtype="<u8", offset=16, count=n).astype(np.int64)
