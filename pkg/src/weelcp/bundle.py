"""On-disk index bundle: text, suffix array and one or more LCP representations.

Layout: the 8-byte magic ``WEELCP01`` followed by sections, each a 4-byte tag,
a little-endian u64 payload length and the payload.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Optional

from .lcp_sadakane import SadakaneLcp, build_sadakane
from .lcp_wee import WeeLcp, WeeParams, build_wee
from .text_index import (LcpArray, SuffixArray, Text, build_lcp_kasai,
                         build_suffix_array, load_text)

MAGIC = b"WEELCP01"
VERSION = 1
REPRS = ("plain", "sadakane", "wee")


class BundleError(ValueError):
    pass


@dataclass
class IndexBundle:
    text: Text
    sa: SuffixArray
    plain: Optional[LcpArray] = None
    sadakane: Optional[SadakaneLcp] = None
    wee: Optional[WeeLcp] = None
    version: int = VERSION

    @property
    def n(self) -> int:
        return self.text.n

    @property
    def reprs(self) -> list[str]:
        return [r for r in REPRS if getattr(self, r) is not None]

    @property
    def params(self) -> Optional[WeeParams]:
        return self.wee.params if self.wee is not None else None

    def lcp(self, repr_name: str, i: int) -> int:
        if repr_name == "plain":
            return self.plain[i]
        if repr_name == "sadakane":
            return self.sadakane.access_eq2(self.sa, i)
        if repr_name == "wee":
            return self.wee.lcp_access(self.sa, self.text, i).length
        raise BundleError(f"unknown representation {repr_name!r}")

    def to_bytes(self) -> bytes:
        meta = {"version": self.version, "n": self.n, "sigma": self.text.sigma, "reprs": self.reprs}
        sections = [(b"META", json.dumps(meta).encode()), (b"TEXT", self.text.data),
                    (b"SUFA", self.sa.to_bytes())]
        if self.plain is not None:
            sections.append((b"PLCP", self.plain.to_bytes()))
        if self.sadakane is not None:
            sections.append((b"SADK", self.sadakane.to_bytes()))
        if self.wee is not None:
            sections.append((b"WEEL", self.wee.to_bytes()))
        out = [MAGIC]
        for tag, payload in sections:
            out.append(tag + struct.pack("<Q", len(payload)))
            out.append(payload)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "IndexBundle":
        if data[:8] != MAGIC:
            raise BundleError("not an index bundle (bad magic)")
        pos = 8
        sections = {}
        while pos < len(data):
            if pos + 12 > len(data):
                raise BundleError("truncated section header")
            tag = data[pos:pos + 4]
            (size,) = struct.unpack_from("<Q", data, pos + 4)
            pos += 12
            if pos + size > len(data):
                raise BundleError(f"section {tag!r} truncated")
            sections[tag] = data[pos:pos + size]
            pos += size
        for tag in (b"META", b"TEXT", b"SUFA"):
            if tag not in sections:
                raise BundleError(f"missing section {tag.decode()}")
        meta = json.loads(sections[b"META"])
        if meta.get("version") != VERSION:
            raise BundleError(f"unsupported bundle version {meta.get('version')}")
        raw = sections[b"TEXT"]
        if not raw or raw[-1] != 0:
            raise BundleError("stored text is not sentinel-terminated")
        text = load_text(raw[:-1])
        b = cls(text=text, sa=SuffixArray.from_bytes(sections[b"SUFA"]))
        if b"PLCP" in sections:
            b.plain = LcpArray.from_bytes(sections[b"PLCP"])
        if b"SADK" in sections:
            b.sadakane = SadakaneLcp.from_bytes(sections[b"SADK"])
        if b"WEEL" in sections:
            b.wee = WeeLcp.from_bytes(sections[b"WEEL"])
        for name in ("sa", *b.reprs):
            size = len(getattr(b, name)) if name in ("sa", "plain") else getattr(b, name).n
            if size != text.n:
                raise BundleError(f"{name} covers {size} positions, text has {text.n}")
        return b


def build_bundle(raw: bytes, reprs=REPRS, delta: float = 0.5, kappa=None, lam=None,
                 s=None) -> IndexBundle:
    text = load_text(raw)
    sa = build_suffix_array(text)
    h = build_lcp_kasai(text, sa)
    b = IndexBundle(text=text, sa=sa)
    if "plain" in reprs:
        b.plain = h
    if "sadakane" in reprs:
        b.sadakane = build_sadakane(h, sa)
    if "wee" in reprs:
        b.wee = build_wee(h, sa, WeeParams.for_n(text.n, delta=delta, kappa=kappa, lam=lam, s=s))
    return b
