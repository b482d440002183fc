import json
import subprocess
import sys

import pytest

from conftest import EXAMPLE_LCP, EXAMPLE_TEXT
from weelcp.bundle import IndexBundle
from weelcp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines() if line.strip()], err


@pytest.fixture
def example(tmp_path):
    src = tmp_path / "ex.txt"
    src.write_bytes(EXAMPLE_TEXT)
    return src, tmp_path / "ex.idx"


def test_build_sadakane_example(capsys, example):
    src, idx = example
    code, out, _ = run(capsys, "build", "--input", str(src), "--output", str(idx), "--repr", "sadakane")
    assert code == 0
    assert out[0]["n"] == 10 and out[0]["sigma"] == 3
    assert out[0]["bits"]["sadakane"]["S"] == 20
    b = IndexBundle.from_bytes(idx.read_bytes())
    assert len(b.sadakane.S) == 20 and b.reprs == ["sadakane"]


def test_build_empty_file(capsys, tmp_path):
    src = tmp_path / "empty"
    src.write_bytes(b"")
    code, out, _ = run(capsys, "build", "--input", str(src), "--output", str(tmp_path / "e.idx"),
                       "--repr", "all")
    assert code == 0 and out[0]["n"] == 1
    code, out, _ = run(capsys, "verify", "--input", str(tmp_path / "e.idx"))
    assert code == 0 and all(r["status"] == "ok" for r in out)


def test_lcp_queries(capsys, example):
    src, idx = example
    run(capsys, "build", "--input", str(src), "--output", str(idx), "--repr", "all")
    for repr_name in ("plain", "sadakane", "wee"):
        code, out, _ = run(capsys, "lcp", "--input", str(idx), "--pos", "9", "--repr", repr_name)
        assert code == 0 and out == [{"repr": repr_name, "pos": 9, "lcp": 3}]
        code, out, _ = run(capsys, "lcp", "--input", str(idx), "--pos", "1", "--repr", repr_name)
        assert out[0]["lcp"] == 0
        code, out, _ = run(capsys, "lcp", "--input", str(idx), "--range", "1..10", "--repr", repr_name)
        assert out[0]["lcp"] == EXAMPLE_LCP


def test_lcp_out_of_range(capsys, example):
    src, idx = example
    run(capsys, "build", "--input", str(src), "--output", str(idx))
    code, _, err = run(capsys, "lcp", "--input", str(idx), "--pos", "11")
    assert code != 0 and "outside" in err


@pytest.mark.parametrize("argv,needle", [
    (["--input", "/nonexistent/file"], "cannot read"),
    (["--repr", "bogus"], "unknown representation"),
    (["--kappa", "2", "--lambda", "3"], "bad parameters"),
])
def test_build_errors(capsys, example, argv, needle):
    src, idx = example
    base = {"--input": str(src), "--output": str(idx)}
    args = ["build"]
    for k, v in base.items():
        if k not in argv:
            args += [k, v]
    code, _, err = run(capsys, *args, *argv)
    assert code != 0 and needle in err


def test_build_rejects_sentinel(capsys, tmp_path):
    src = tmp_path / "bad"
    src.write_bytes(b"ab\x00c")
    code, _, err = run(capsys, "build", "--input", str(src), "--output", str(tmp_path / "o"))
    assert code != 0 and "offset 2" in err


def test_build_unwritable_output(capsys, example):
    src, _ = example
    code, _, err = run(capsys, "build", "--input", str(src), "--output", "/nonexistent/dir/x.idx")
    assert code != 0 and "cannot write" in err


@pytest.mark.parametrize("delta", ["0.25", "0.5", "1.0"])
def test_verify_wee_deltas(capsys, tmp_path, delta):
    src = tmp_path / "t.txt"
    src.write_bytes(b"to be or not to be, that is the question; " * 30)
    idx = tmp_path / "t.idx"
    assert run(capsys, "build", "--input", str(src), "--output", str(idx), "--delta", delta)[0] == 0
    code, out, _ = run(capsys, "verify", "--input", str(idx))
    assert code == 0 and out[0]["status"] == "ok" and out[0]["max_comparisons"] <= out[0]["s"]


def test_verify_detects_flipped_bit(capsys, tmp_path):
    src = tmp_path / "t.txt"
    src.write_bytes(b"mississippi river banks " * 20)
    idx = tmp_path / "t.idx"
    run(capsys, "build", "--input", str(src), "--output", str(idx), "--repr", "sadakane")
    data = bytearray(idx.read_bytes())
    # S payload starts after the SADK header, n, and the bitvector length
    off = data.index(b"SADK") + 12 + 8 + 8
    data[off + 3] ^= 0x10
    idx.write_bytes(bytes(data))
    code, out, err = run(capsys, "verify", "--input", str(idx))
    assert code == 1
    bad = out[0]
    assert bad["status"] == "mismatch" and bad["repr"] == "sadakane" and bad["pos"] >= 1
    assert bad["got"] != bad["expected"]


def test_bench_and_space(capsys, tmp_path):
    src = tmp_path / "t.txt"
    src.write_bytes(b"abcabcabdabcabd" * 50)
    idx = tmp_path / "t.idx"
    run(capsys, "build", "--input", str(src), "--output", str(idx), "--repr", "all",
        "--lambda", "2", "--s", "8")
    code, out, _ = run(capsys, "bench", "--input", str(idx), "--queries", "500", "--seed", "3")
    assert code == 0
    by = {r.get("repr"): r for r in out if "repr" in r}
    assert by["wee"]["mean_comparisons"] <= by["wee"]["s"]
    assert by["wee"]["max_comparisons"] <= by["wee"]["s"]
    assert out[-1]["mismatches"] == 0
    code, again, _ = run(capsys, "bench", "--input", str(idx), "--queries", "500", "--seed", "3",
                         "--threads", "3", "--sa-delay-ns", "200")
    assert code == 0 and again[-1]["mismatches"] == 0
    assert again[2]["mean_comparisons"] == by["wee"]["mean_comparisons"]
    code, out, _ = run(capsys, "bench", "--input", str(idx), "--queries", "0")
    assert code == 0 and all(r["queries"] == 0 and r["median_ns"] is None for r in out)
    code, out, _ = run(capsys, "space", "--input", str(idx))
    assert code == 0 and [r["repr"] for r in out] == ["plain", "sadakane", "wee"]
    for r in out:
        assert r["total_bits"] == sum(r["components"].values())
    assert out[1]["components"]["S"] == 2 * 751


def test_corrupt_bundle(capsys, tmp_path):
    idx = tmp_path / "junk.idx"
    idx.write_bytes(b"not an index")
    code, _, err = run(capsys, "verify", "--input", str(idx))
    assert code == 2 and "invalid index" in err


def test_module_entry_point(tmp_path):
    src = tmp_path / "ex.txt"
    src.write_bytes(EXAMPLE_TEXT)
    idx = tmp_path / "ex.idx"
    subprocess.run([sys.executable, "-m", "weelcp", "build", "--input", str(src), "--output", str(idx)],
                   check=True, capture_output=True)
    res = subprocess.run([sys.executable, "-m", "weelcp", "lcp", "--input", str(idx), "--range", "1..10"],
                         check=True, capture_output=True, text=True)
    assert json.loads(res.stdout)["lcp"] == EXAMPLE_LCP
