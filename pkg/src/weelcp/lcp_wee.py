"""Sampled-select LCP representation that never stores the bitvector S.

``H[i] = select1(S, A[i]) - 2 A[i]`` still holds, but only a sparse set of
select answers is kept:

* ``N``   select at every multiple of ``kappa`` (block boundaries), absolute.
* ``P``   every select answer inside *long* blocks (span > kappa**2), absolute.
* ``N'``  select at multiples of ``lam`` inside short blocks, relative to the
          block start.
* ``P'``  every select answer inside *long* miniblocks (span > s), relative to
          the block start.

For a short miniblock only its start ``a`` is known.  ``a - 2j`` is then a
lower bound on the LCP that is at most ``s`` too small, and the missing part
is recovered by comparing the two suffixes character by character.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .bitvec import BitVector, RankSelectSupport
from .lcp_sadakane import encode_bits
from .space import SpaceReport
from .text_index import LcpArray, SuffixArray, Text

MAGIC = b"WEELCPW1"
WORD_BITS = 64
CHUNK = 8  # bytes per packed comparison step


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class WeeParams:
    kappa: int  # ones per block
    lam: int  # ones per miniblock
    s: int  # longest span (in bits of S) of a miniblock that is still "short"
    delta: float = 0.5

    def __post_init__(self):
        if not (self.kappa >= self.lam >= 1):
            raise ConfigError(f"need kappa >= lambda >= 1, got kappa={self.kappa}, lambda={self.lam}")
        if self.s < 1:
            raise ConfigError(f"s must be >= 1, got {self.s}")
        if not 0 < self.delta <= 1:
            raise ConfigError(f"delta must lie in (0, 1], got {self.delta}")

    @classmethod
    def for_n(cls, n: int, delta: float = 0.5, kappa: int | None = None,
              lam: int | None = None, s: int | None = None) -> "WeeParams":
        """Log-based defaults: kappa = log^2 n, lambda = log^2 kappa, s = log^delta n,
        floored so that tiny texts still get a usable structure."""
        logn = math.log2(n) if n > 1 else 0.0
        if kappa is None:
            kappa = max(math.floor(logn ** 2), 4)
        if lam is None:
            lam = min(max(math.floor(math.log2(kappa) ** 2), 2), kappa)
        if s is None:
            s = max(math.ceil(logn ** delta), 1)
        return cls(kappa=kappa, lam=lam, s=s, delta=delta)


class ApproxSelect(NamedTuple):
    value: int
    exact: bool
    slack: int  # true select lies in [value, value + slack]


class Access(NamedTuple):
    length: int
    comparisons: int  # character comparisons, or chunk comparisons for the packed path


class WeeLcp:
    """Query side of the structure; use :func:`build_wee` to construct one."""

    def __init__(self, params: WeeParams, n: int, total_length: int, N, P, NPrime, PPrime,
                 long_blocks: BitVector, short_samples: BitVector, long_minis: BitVector):
        self.params = params
        self.n = n
        self.total_length = total_length  # |S|
        self.N = [int(x) for x in N]
        self.P = [int(x) for x in P]
        self.NPrime = [int(x) for x in NPrime]
        self.PPrime = [int(x) for x in PPrime]
        self.long_blocks = long_blocks
        self.short_samples = short_samples
        self.long_minis = long_minis
        self._long_blocks_rs = RankSelectSupport(long_blocks)
        self._short_samples_rs = RankSelectSupport(short_samples)
        self._long_minis_rs = RankSelectSupport(long_minis)
        self._check_shape()

    def _check_shape(self) -> None:
        k, lam, n = self.params.kappa, self.params.lam, self.n
        nblocks = -(-n // k)
        if len(self.N) != nblocks + 1:
            raise ValueError(f"N has {len(self.N)} entries, expected {nblocks + 1}")
        if len(self.long_blocks) != nblocks:
            raise ValueError("long-block directory length does not match block count")
        if len(self.short_samples) != n // lam:
            raise ValueError("sample directory length does not match sample count")
        if len(self.long_minis) != -(-n // lam):
            raise ValueError("miniblock directory length does not match miniblock count")
        if len(self.NPrime) != self.short_samples.popcount():
            raise ValueError("N' size disagrees with its directory")
        # lam - 1 slots per long miniblock, fewer for a trailing partial one
        full = self.long_minis.popcount() * (lam - 1)
        if len(self.PPrime) != full and not full - (lam - 1) < len(self.PPrime) < full:
            raise ValueError("P' size disagrees with its directory")

    # -- select machinery -------------------------------------------------

    def _block_is_long(self, c: int) -> bool:
        return self.long_blocks[c + 1] == 1

    def _p_offset(self, c: int) -> int:
        return self._long_blocks_rs.rank1(c) * self.params.kappa

    def sample_select(self, x: int) -> int:
        """Exact select1 at a sampled argument (0, a multiple of kappa or lambda,
        or anything past n, which maps to |S| + 1)."""
        if x == 0:
            return 0
        if x > self.n:
            return self.total_length + 1
        k = self.params.kappa
        if x % k == 0:
            return self.N[x // k]
        c = (x - 1) // k
        if self._block_is_long(c):
            return self.P[self._p_offset(c) + (x - c * k - 1)]
        i = x // self.params.lam
        if i * self.params.lam != x:
            raise ValueError(f"{x} is not a sampled argument")
        return self.NPrime[self._short_samples_rs.rank1(i) - 1] + self.N[c] + 1

    def approx_select(self, j: int) -> ApproxSelect:
        if not 1 <= j <= self.n:
            raise IndexError(f"select argument {j} outside 1..{self.n}")
        k, lam = self.params.kappa, self.params.lam
        if j % k == 0:
            return ApproxSelect(self.N[j // k], True, 0)
        c = (j - 1) // k
        if self._block_is_long(c):
            return ApproxSelect(self.P[self._p_offset(c) + (j - c * k - 1)], True, 0)
        q = (j // lam) * lam
        if q == j:
            return ApproxSelect(self.sample_select(q), True, 0)
        a = self.sample_select(q)
        b = self.sample_select(q + lam)
        if b - a > self.params.s:
            off = self._long_minis_rs.rank1(q // lam) * (lam - 1) + (j - q - 1)
            return ApproxSelect(self.PPrime[off] + self.N[c] + 1, True, 0)
        # the j-th one sits strictly between a and b
        return ApproxSelect(a, False, b - a - 1)

    # -- LCP access -------------------------------------------------------

    def _start(self, sa, i: int):
        if not 1 <= i <= self.n:
            raise IndexError(f"LCP index {i} outside 1..{self.n}")
        if i == 1:
            return None
        j = sa[i]
        r = self.approx_select(j)
        if r.exact:
            return r.value - 2 * j
        return j, sa[i - 1], max(r.value - 2 * j, 0)

    def lcp_access(self, sa, t: Text, i: int) -> Access:
        st = self._start(sa, i)
        if st is None:
            return Access(0, 0)
        if isinstance(st, int):
            return Access(st, 0)
        j, j2, m = st
        data = t.data
        x0 = x = j - 1 + m
        y = j2 - 1 + m
        # the unique sentinel guarantees a mismatch before either end
        while data[x] == data[y]:
            x += 1
            y += 1
        return Access(x - (j - 1), x - x0 + 1)

    def lcp_access_packed(self, sa, t: Text, i: int) -> Access:
        st = self._start(sa, i)
        if st is None:
            return Access(0, 0)
        if isinstance(st, int):
            return Access(st, 0)
        j, j2, m = st
        data = t.data
        x = j - 1 + m
        y = j2 - 1 + m
        ops = 0
        while True:
            cx = data[x:x + CHUNK]
            cy = data[y:y + CHUNK]
            ops += 1
            if cx == cy:
                x += CHUNK
                y += CHUNK
                continue
            w = min(len(cx), len(cy))
            diff = int.from_bytes(cx[:w], "big") ^ int.from_bytes(cy[:w], "big")
            x += w - 1 - (diff.bit_length() - 1) // 8 if diff else w
            return Access(x - (j - 1), ops)

    def lcp(self, sa, t: Text, i: int) -> int:
        return self.lcp_access(sa, t, i).length

    # -- introspection ----------------------------------------------------

    def table_entries(self) -> Iterator[tuple[str, int, int]]:
        """Yield ``(table, argument, absolute select answer)`` for every stored answer."""
        k, lam, n = self.params.kappa, self.params.lam, self.n
        for b, v in enumerate(self.N):
            if b * k <= n:
                yield "N", b * k, v
        off = 0
        for c in range(len(self.long_blocks)):
            if self._block_is_long(c):
                for x in range(c * k + 1, min((c + 1) * k, n) + 1):
                    yield "P", x, self.P[off + x - c * k - 1]
                off += k
        idx = 0
        for i in range(1, n // lam + 1):
            if self.short_samples[i]:
                x = i * lam
                yield "NPrime", x, self.NPrime[idx] + self.N[(x - 1) // k] + 1
                idx += 1
        slot = 0
        for i in range(len(self.long_minis)):
            if not self.long_minis[i + 1]:
                continue
            for x in range(i * lam + 1, min((i + 1) * lam, n + 1)):
                if _needs_pprime(x, k, lam) and not self._block_is_long((x - 1) // k):
                    yield "PPrime", x, self.PPrime[slot + x - i * lam - 1] + self.N[(x - 1) // k] + 1
            slot += lam - 1

    def space_report(self) -> SpaceReport:
        rel = _rel_width(self.params.kappa)
        comps = {
            "N": WORD_BITS * len(self.N),
            "P": WORD_BITS * len(self.P),
            "NPrime": rel * len(self.NPrime),
            "PPrime": rel * len(self.PPrime),
        }
        for name, bv, rs in (("long_block_dir", self.long_blocks, self._long_blocks_rs),
                             ("sample_dir", self.short_samples, self._short_samples_rs),
                             ("long_mini_dir", self.long_minis, self._long_minis_rs)):
            comps[name] = len(bv) + rs.size_in_bits()
        return SpaceReport("wee", self.n, comps)

    # -- serialization ----------------------------------------------------

    def to_bytes(self) -> bytes:
        p = self.params
        out = [MAGIC, struct.pack("<QQQdQQ", p.kappa, p.lam, p.s, p.delta, self.n, self.total_length)]
        for table in (self.N, self.P, self.NPrime, self.PPrime):
            out.append(struct.pack("<Q", len(table)))
            out.append(np.asarray(table, dtype="<u8").tobytes())
        for bv in (self.long_blocks, self.short_samples, self.long_minis):
            blob = bv.to_bytes()
            out.append(struct.pack("<Q", len(blob)))
            out.append(blob)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "WeeLcp":
        if data[:8] != MAGIC:
            raise ValueError(f"bad magic {data[:8]!r}, expected {MAGIC!r}")
        kappa, lam, s, delta, n, total = struct.unpack_from("<QQQdQQ", data, 8)
        pos = 8 + struct.calcsize("<QQQdQQ")
        tables = []
        for _ in range(4):
            (cnt,) = struct.unpack_from("<Q", data, pos)
            pos += 8
            tables.append(np.frombuffer(data, dtype="<u8", count=cnt, offset=pos).astype(np.int64))
            pos += 8 * cnt
        dirs = []
        for _ in range(3):
            (size,) = struct.unpack_from("<Q", data, pos)
            pos += 8
            dirs.append(BitVector.from_bytes(data[pos:pos + size]))
            pos += size
        if pos != len(data):
            raise ValueError(f"{len(data) - pos} trailing bytes after wee tables")
        N, P, NPrime, PPrime = tables
        if N.size and (N[0] != 0 or (np.diff(N) <= 0).any()):
            raise ValueError("N is not strictly increasing from 0")
        if (np.diff(P) <= 0).any():
            raise ValueError("P is not strictly increasing")
        limit = kappa * kappa
        if (NPrime >= limit).any() or (PPrime >= limit).any():
            raise ValueError("relative table entry exceeds the block span bound")
        params = WeeParams(kappa=int(kappa), lam=int(lam), s=int(s), delta=float(delta))
        return cls(params, int(n), int(total), N, P, NPrime, PPrime, *dirs)


def _rel_width(kappa: int) -> int:
    return max(1, (kappa * kappa - 1).bit_length())


def _needs_pprime(x: int, kappa: int, lam: int) -> bool:
    return x % lam != 0 and x % kappa != 0


def build_wee(h: LcpArray, sa: SuffixArray, params: WeeParams | None = None) -> WeeLcp:
    n = len(sa)
    if params is None:
        params = WeeParams.for_n(n)
    k, lam, s = params.kappa, params.lam, params.s

    # transient copy of S, dropped when this function returns
    bits = encode_bits(h, sa)
    L = int(bits.size)
    sel = np.concatenate(([0], np.flatnonzero(bits) + 1)).astype(np.int64)

    def select(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return np.where(x > n, L + 1, sel[np.minimum(x, n)])

    nblocks = -(-n // k)
    N = select(np.arange(nblocks + 1) * k)
    long_block = (np.diff(N) > k * k).astype(np.uint8)

    P = []
    for c in np.flatnonzero(long_block).tolist():
        P.append(sel[c * k + 1:min((c + 1) * k, n) + 1])
    P = np.concatenate(P) if P else np.zeros(0, dtype=np.int64)

    samples = np.arange(1, n // lam + 1, dtype=np.int64) * lam
    sample_block = (samples - 1) // k
    short_sample = (long_block[sample_block] == 0) if samples.size else np.zeros(0, dtype=bool)
    NPrime = sel[samples[short_sample]] - N[sample_block[short_sample]] - 1

    nminis = -(-n // lam)
    starts = np.arange(nminis, dtype=np.int64) * lam
    span = select(starts + lam) - select(starts)
    long_mini = np.zeros(nminis, dtype=np.uint8)
    PPrime = []
    for i in np.flatnonzero(span > s).tolist():
        args = np.arange(i * lam + 1, min((i + 1) * lam, n + 1), dtype=np.int64)
        blocks = (args - 1) // k
        used = (args % lam != 0) & (args % k != 0) & (long_block[blocks] == 0)
        if not used.any():
            continue
        long_mini[i] = 1
        # a trailing partial miniblock only needs slots up to argument n
        slots = np.zeros(min(lam - 1, n - i * lam), dtype=np.int64)
        slots[(args - i * lam - 1)[used]] = sel[args[used]] - N[blocks[used]] - 1
        PPrime.append(slots)
    PPrime = np.concatenate(PPrime) if PPrime else np.zeros(0, dtype=np.int64)

    return WeeLcp(params, n, L, N, P, NPrime, PPrime,
                  BitVector(long_block), BitVector(short_sample.astype(np.uint8)), BitVector(long_mini))


def approx_select(w: WeeLcp, j: int) -> ApproxSelect:
    return w.approx_select(j)


def lcp_access(w: WeeLcp, sa, t: Text, i: int) -> Access:
    return w.lcp_access(sa, t, i)


def lcp_access_packed(w: WeeLcp, sa, t: Text, i: int) -> Access:
    return w.lcp_access_packed(sa, t, i)


def space_report_wee(w: WeeLcp) -> SpaceReport:
    return w.space_report()
