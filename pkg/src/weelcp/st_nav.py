"""Range-minimum and previous/next-smaller-value queries over an LCP accessor.

A suffix-tree node is represented by its LCP interval ``[left, right]`` of
suffix-array ranks; the parent of a node is found with PSV/NSV queries at the
interval's boundaries.  The search structure is a plain sqrt decomposition:
per block we keep the minimum LCP value and its leftmost position, and every
other step reads LCP values through the accessor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional


class LcpAccessor:
    """Uniform ``acc(i) -> H[i]`` handle over any of the LCP representations."""

    def __init__(self, n: int, fn: Callable[[int], int], name: str = ""):
        self.n = n
        self._fn = fn
        self.name = name

    def __len__(self) -> int:
        return self.n

    def __call__(self, i: int) -> int:
        return self._fn(i)


def plain_accessor(h) -> LcpAccessor:
    return LcpAccessor(len(h), h.__getitem__, "plain")


def sadakane_accessor(d, sa) -> LcpAccessor:
    return LcpAccessor(d.n, lambda i: d.access_eq2(sa, i), "sadakane")


def wee_accessor(w, sa, t) -> LcpAccessor:
    return LcpAccessor(w.n, lambda i: w.lcp_access(sa, t, i).length, "wee")


@dataclass(frozen=True)
class IntervalNode:
    left: int
    right: int
    depth: int


class LcpNavigator:
    def __init__(self, acc: LcpAccessor, block: Optional[int] = None):
        self.acc = acc
        n = self.n = len(acc)
        self.block = block or max(1, math.isqrt(n))
        self._min_val = []
        self._min_pos = []
        for start in range(1, n + 1, self.block):
            best, pos = None, start
            for k in range(start, min(start + self.block, n + 1)):
                v = acc(k)
                if best is None or v < best:
                    best, pos = v, k
            self._min_val.append(best)
            self._min_pos.append(pos)

    def _blk(self, i: int) -> int:
        return (i - 1) // self.block

    def _bounds(self, b: int) -> tuple[int, int]:
        lo = b * self.block + 1
        return lo, min(lo + self.block - 1, self.n)

    def rmq(self, l: int, r: int) -> int:
        """Leftmost position of the minimum of H[l..r]; position 1 is excluded."""
        if not 2 <= l <= r <= self.n:
            raise IndexError(f"rmq range [{l}, {r}] not within 2..{self.n}")
        acc = self.acc
        bl, br = self._blk(l), self._blk(r)
        best_pos, best = l, acc(l)

        def scan(lo, hi):
            nonlocal best, best_pos
            for k in range(lo, hi + 1):
                v = acc(k)
                if v < best:
                    best, best_pos = v, k

        if bl == br:
            scan(l + 1, r)
            return best_pos
        scan(l + 1, self._bounds(bl)[1])
        for b in range(bl + 1, br):
            if self._min_val[b] < best:
                best, best_pos = self._min_val[b], self._min_pos[b]
        scan(self._bounds(br)[0], r)
        return best_pos

    def prev_less(self, i: int, d: int) -> Optional[int]:
        """Largest k < i with H[k] < d."""
        acc = self.acc
        b = self._blk(i)
        for k in range(i - 1, self._bounds(b)[0] - 1, -1):
            if acc(k) < d:
                return k
        for b in range(b - 1, -1, -1):
            if self._min_val[b] < d:
                lo, hi = self._bounds(b)
                for k in range(hi, lo - 1, -1):
                    if acc(k) < d:
                        return k
        return None

    def next_less(self, i: int, d: int) -> Optional[int]:
        """Smallest k > i with H[k] < d."""
        acc = self.acc
        b = self._blk(i)
        for k in range(i + 1, self._bounds(b)[1] + 1):
            if acc(k) < d:
                return k
        for b in range(b + 1, len(self._min_val)):
            if self._min_val[b] < d:
                lo, hi = self._bounds(b)
                for k in range(lo, hi + 1):
                    if acc(k) < d:
                        return k
        return None

    def psv(self, i: int) -> Optional[int]:
        self._check(i)
        return self.prev_less(i, self.acc(i))

    def nsv(self, i: int) -> Optional[int]:
        self._check(i)
        return self.next_less(i, self.acc(i))

    def _check(self, i: int) -> None:
        if not 2 <= i <= self.n:
            raise IndexError(f"position {i} outside 2..{self.n}")

    def root(self) -> IntervalNode:
        return IntervalNode(1, self.n, 0)

    def leaf(self, i: int, sa) -> IntervalNode:
        return IntervalNode(i, i, self.n - sa[i] + 1)

    def parent_interval(self, node: IntervalNode) -> Optional[IntervalNode]:
        l, r, n = node.left, node.right, self.n
        if l == 1 and r == n:
            return None
        acc = self.acc
        hl = acc(l) if l > 1 else -1
        hr = acc(r + 1) if r < n else -1
        d = max(hl, hr)
        if hl < d:
            new_l = l
        else:
            k = self.prev_less(l, d)
            new_l = k if k is not None else 1
        if hr < d:
            new_r = r
        else:
            k = self.next_less(r + 1, d)
            new_r = k - 1 if k is not None else n
        return IntervalNode(new_l, new_r, d)
