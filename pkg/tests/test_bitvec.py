import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weelcp.bitvec import BitVector, RankSelectSupport, build_support

EX = "00001111000110011101"


def scan_rank1(bits, i):
    return sum(1 for c in bits[:i] if c == "1")


def scan_select(bits, q, sym):
    seen = 0
    for p, c in enumerate(bits, start=1):
        if c == sym:
            seen += 1
            if seen == q:
                return p
    raise AssertionError("not enough symbols")


def check_against_scan(bits, **kw):
    rs = build_support(BitVector(bits), **kw)
    ones = 0
    assert rs.rank1(0) == 0 and rs.rank0(0) == 0
    for i, c in enumerate(bits, start=1):
        ones += c == "1"
        assert rs.rank1(i) == ones
        assert rs.rank0(i) == i - ones
    q1 = q0 = 0
    for p, c in enumerate(bits, start=1):
        if c == "1":
            q1 += 1
            assert rs.select1(q1) == p
        else:
            q0 += 1
            assert rs.select0(q0) == p


def test_single_one():
    rs = build_support(BitVector("1"))
    assert rs.rank1(1) == 1
    assert rs.select1(1) == 1


def test_all_zeros():
    rs = build_support(BitVector("0" * 64))
    assert rs.rank1(64) == 0
    assert rs.select0(64) == 64


def test_example_s():
    rs = build_support(BitVector(EX))
    # expected values counted by hand from the string
    assert rs.rank1(20) == 10
    assert rs.rank1(8) == 4
    assert rs.rank0(8) == 4
    assert rs.rank0(20) == 10
    assert rs.select1(1) == 5
    assert rs.select1(4) == 8
    assert rs.select0(5) == 9
    assert rs.select0(10) == 19
    assert build_support(BitVector("01")).select0(1) == 1
    for i in (0, 8, 20):
        assert rs.rank1(i) == scan_rank1(EX, i)
    for q in (1, 4):
        assert rs.select1(q) == scan_select(EX, q, "1")
    for q in (5, 10):
        assert rs.select0(q) == scan_select(EX, q, "0")


def test_empty_vector():
    rs = build_support(BitVector(""))
    assert len(rs) == 0
    assert rs.rank1(0) == 0
    with pytest.raises(IndexError):
        rs.select1(1)


@pytest.mark.parametrize("bad", [-1, 21])
def test_rank_range(bad):
    with pytest.raises(IndexError):
        build_support(BitVector(EX)).rank1(bad)


@pytest.mark.parametrize("q", [0, 11])
def test_select_range(q):
    rs = build_support(BitVector(EX))
    with pytest.raises(IndexError):
        rs.select1(q)
    with pytest.raises(IndexError):
        rs.select0(q)


def test_bad_parameters():
    with pytest.raises(ValueError):
        RankSelectSupport(BitVector(EX), block_size=32)
    with pytest.raises(ValueError):
        RankSelectSupport(BitVector(EX), super_size=100)


@pytest.mark.parametrize("kw", [{}, {"super_size": 128, "block_size": 64, "select_sample": 3},
                                {"super_size": 256, "block_size": 128, "select_sample": 1}])
def test_every_length_up_to_1024(kw):
    rng = np.random.default_rng(7)
    for L in range(0, 1025, 1 if kw else 7):
        density = rng.uniform(0.02, 0.98)
        bits = "".join("1" if x else "0" for x in rng.random(L) < density)
        check_against_scan(bits, **kw)


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="01", max_size=700), st.sampled_from([1, 2, 5, 64]))
def test_identities(bits, sample):
    rs = build_support(BitVector(bits), super_size=128, block_size=64, select_sample=sample)
    for i in range(len(bits) + 1):
        assert rs.rank0(i) + rs.rank1(i) == i
    prev = 0
    for q in range(1, bits.count("1") + 1):
        p = rs.select1(q)
        assert p > prev and bits[p - 1] == "1" and rs.rank1(p) == q
        prev = p
    for q in range(1, bits.count("0") + 1):
        p = rs.select0(q)
        assert bits[p - 1] == "0" and rs.rank0(p) == q


def test_long_sparse_vector_multiple_superblocks():
    rng = np.random.default_rng(3)
    arr = (rng.random(50_000) < 0.01).astype(np.uint8)
    rs = build_support(BitVector(arr))
    ones = np.flatnonzero(arr) + 1
    zeros = np.flatnonzero(arr == 0) + 1
    cum = np.concatenate(([0], np.cumsum(arr)))
    for q in rng.integers(1, ones.size + 1, 300):
        assert rs.select1(int(q)) == ones[q - 1]
    for q in rng.integers(1, zeros.size + 1, 300):
        assert rs.select0(int(q)) == zeros[q - 1]
    for i in rng.integers(0, arr.size + 1, 300):
        assert rs.rank1(int(i)) == cum[i]


def test_overhead_ratio_non_increasing():
    rng = np.random.default_rng(0)
    ratios = []
    for e in range(12, 21, 2):
        L = 1 << e
        rs = build_support(BitVector((rng.random(L) < 0.5).astype(np.uint8)))
        ratios.append(rs.size_in_bits() / L)
    assert all(b <= a for a, b in zip(ratios, ratios[1:])), ratios


def test_serialization_roundtrip():
    for bits in ("", "1", EX, "10" * 100 + "1"):
        v = BitVector(bits)
        blob = v.to_bytes()
        assert len(blob) == 8 + 8 * ((len(bits) + 63) // 64)
        assert blob[:8] == len(bits).to_bytes(8, "little")
        w = BitVector.from_bytes(blob)
        assert w == v and str(w) == bits


def test_payload_layout_little_endian():
    v = BitVector("1" + "0" * 63 + "01")
    blob = v.to_bytes()
    assert int.from_bytes(blob[8:16], "little") == 1
    assert int.from_bytes(blob[16:24], "little") == 2


def test_invariants():
    v = BitVector(EX)
    assert v.popcount() + v.zerocount() == len(v) == 20
    assert [v[p] for p in range(1, 21)] == [int(c) for c in EX]
    with pytest.raises(IndexError):
        v[0]
