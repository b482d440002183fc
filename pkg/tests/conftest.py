import numpy as np
import pytest

from weelcp.lcp_sadakane import build_sadakane
from weelcp.text_index import build_lcp_kasai, build_suffix_array, load_text

EXAMPLE_TEXT = b"CACAACCAC"
EXAMPLE_SA = [10, 4, 8, 2, 5, 9, 3, 7, 1, 6]
EXAMPLE_LCP = [0, 0, 1, 2, 2, 0, 1, 2, 3, 1]
EXAMPLE_S = "00001111000110011101"


def random_raw(rng, n, sigma):
    # byte values 1..sigma keep 0x00 free for the sentinel
    return bytes((rng.integers(0, sigma, n) + 1).astype(np.uint8))


def fibonacci_word(n):
    a, b = b"a", b"ab"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def adversarial_raws(sizes=(1, 2, 7, 64, 255, 1000, 4095)):
    for n in sizes:
        yield f"unary{n}", b"a" * n
        yield f"ab{n}", (b"ab" * n)[:n]
        yield f"fib{n}", fibonacci_word(n)


def random_corpus(count, seed=12345, max_n=4096, sigmas=(2, 4, 26, 255)):
    rng = np.random.default_rng(seed)
    for k in range(count):
        sigma = sigmas[k % len(sigmas)]
        n = int(rng.integers(0, max_n))  # text length n + 1 with the sentinel
        yield f"rand{k}_s{sigma}_n{n}", random_raw(rng, n, sigma)


class Indexed:
    """Text plus everything derived from it, for tests."""

    def __init__(self, raw):
        self.raw = raw
        self.t = load_text(raw)
        self.sa = build_suffix_array(self.t)
        self.h = build_lcp_kasai(self.t, self.sa)
        self.n = self.t.n

    @property
    def sadakane(self):
        return build_sadakane(self.h, self.sa)

    def reference_s(self):
        return unary_writer(self.h.to_list(), self.sa.to_list())

    def reference_select(self):
        """sel[k] = position of the k-th one of S (sel[0] = 0), and |S|."""
        s = self.reference_s()
        return [0] + [p + 1 for p, c in enumerate(s) if c == "1"], len(s)


def unary_writer(H, A):
    """Differential unary code written straight from the definition, as a '0'/'1' string."""
    n = len(A)
    inv = {}
    for rank, pos in enumerate(A, start=1):
        inv[pos] = rank
    out = []
    prev = 0
    for p in range(1, n + 1):
        cur = H[inv[p] - 1]
        out.append("0" * (cur - prev + 1) + "1")
        prev = cur
    return "".join(out)


@pytest.fixture(scope="session")
def example():
    return Indexed(EXAMPLE_TEXT)


def real_world_text(size):
    """``size`` bytes of Python standard-library source, concatenated in sorted path order."""
    import os
    root = os.path.dirname(os.__file__)
    out = bytearray()
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for fn in sorted(filenames):
            if fn.endswith(".py"):
                with open(os.path.join(dirpath, fn), "rb") as fh:
                    out += fh.read().replace(b"\x00", b"")
                if len(out) >= size:
                    return bytes(out[:size])
    raise RuntimeError("not enough source text available")


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
