"""``weelcp`` command line: build, lcp, verify, bench, space.

Machine-readable results go to stdout as one JSON object per line; progress
and human summaries go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bundle import REPRS, BundleError, IndexBundle, build_bundle
from .lcp_wee import ConfigError
from .text_index import DelayedSuffixArray, TextError, build_lcp_kasai

log = logging.getLogger("weelcp")


class CliError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj), flush=True)


def _load(path: str) -> IndexBundle:
    try:
        with open(path, "rb") as fh:
            return IndexBundle.from_bytes(fh.read())
    except OSError as e:
        raise CliError(f"cannot read index {path}: {e.strerror}") from e
    except (BundleError, ValueError) as e:
        raise CliError(f"invalid index {path}: {e}") from e


def _reprs_arg(values) -> list[str]:
    out = []
    for v in values or ["wee"]:
        for part in v.split(","):
            part = part.strip()
            if part == "all":
                out.extend(REPRS)
            elif part in REPRS:
                out.append(part)
            else:
                raise CliError(f"unknown representation {part!r}; choose from {', '.join(REPRS)}, all")
    return [r for r in REPRS if r in out]


def _pick(bundle: IndexBundle, requested) -> list[str]:
    if not requested:
        return bundle.reprs
    chosen = _reprs_arg(requested)
    missing = [r for r in chosen if r not in bundle.reprs]
    if missing:
        raise CliError(f"index does not contain {', '.join(missing)} (has {', '.join(bundle.reprs)})")
    return chosen


def cmd_build(args) -> int:
    reprs = _reprs_arg(args.repr)
    try:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise CliError(f"cannot read input {args.input}: {e.strerror}") from e
    t0 = time.perf_counter()
    try:
        bundle = build_bundle(raw, reprs, delta=args.delta, kappa=args.kappa, lam=args.lam, s=args.s)
    except TextError as e:
        raise CliError(str(e)) from e
    except ConfigError as e:
        raise CliError(f"bad parameters: {e}") from e
    elapsed = time.perf_counter() - t0
    try:
        with open(args.output, "wb") as fh:
            fh.write(bundle.to_bytes())
    except OSError as e:
        raise CliError(f"cannot write {args.output}: {e.strerror}") from e
    summary = {"command": "build", "n": bundle.n, "sigma": bundle.text.sigma,
               "build_seconds": round(elapsed, 6), "reprs": bundle.reprs,
               "bits": {r: _space(bundle, r).to_dict()["components"] for r in bundle.reprs}}
    if bundle.wee is not None:
        p = bundle.wee.params
        summary["params"] = {"kappa": p.kappa, "lambda": p.lam, "s": p.s, "delta": p.delta}
    _emit(summary)
    log.info("built %s for n=%d in %.2fs -> %s", "+".join(bundle.reprs), bundle.n, elapsed, args.output)
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    for sep in ("..", ":", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return int(lo), int(hi)
    raise CliError(f"range must look like A..B, got {text!r}")


def cmd_lcp(args) -> int:
    bundle = _load(args.input)
    repr_name = _pick(bundle, args.repr)[-1]
    if args.range is not None:
        lo, hi = _parse_range(args.range)
    elif args.pos is not None:
        lo = hi = args.pos
    else:
        raise CliError("give --pos or --range")
    if not (1 <= lo <= hi <= bundle.n):
        raise CliError(f"positions {lo}..{hi} outside 1..{bundle.n}")
    values = [bundle.lcp(repr_name, i) for i in range(lo, hi + 1)]
    if args.range is None:
        _emit({"repr": repr_name, "pos": lo, "lcp": values[0]})
    else:
        _emit({"repr": repr_name, "range": [lo, hi], "lcp": values})
    return 0


def cmd_verify(args) -> int:
    bundle = _load(args.input)
    text, sa = bundle.text, bundle.sa
    h = build_lcp_kasai(text, sa)
    n = bundle.n
    status = 0
    # neighbours agree on H[i] characters (by construction), so the next one decides the order
    data = text.data
    for i in range(2, n + 1):
        if data[sa[i - 1] - 1 + h[i]] >= data[sa[i] - 1 + h[i]]:
            _emit({"command": "verify", "status": "mismatch", "component": "sa", "pos": i})
            return 1
    inv = sa.inverse_array
    hv = h.array[inv - 1]
    drops = np.flatnonzero(hv[1:] < hv[:-1] - 1)
    if drops.size:
        p = int(drops[0]) + 2
        _emit({"command": "verify", "status": "violation", "check": "prop1", "text_pos": p})
        return 1
    for name in _pick(bundle, args.repr):
        worst = 0
        bad = None
        for i in range(1, n + 1):
            try:
                if name == "wee":
                    res = bundle.wee.lcp_access(sa, text, i)
                    got = res.length
                    worst = max(worst, res.comparisons)
                else:
                    got = bundle.lcp(name, i)
            except (IndexError, ValueError) as e:
                bad = {"pos": i, "expected": h[i], "got": None, "error": str(e)}
                break
            if got != h[i]:
                bad = {"pos": i, "expected": h[i], "got": got}
                break
        if bad is not None:
            _emit({"command": "verify", "status": "mismatch", "repr": name, **bad})
            log.error("%s: mismatch at position %d (expected %s, got %s)", name, bad["pos"],
                      bad["expected"], bad["got"])
            status = 1
            continue
        report = {"command": "verify", "status": "ok", "repr": name, "n": n}
        if name == "wee":
            s = bundle.wee.params.s
            report.update(max_comparisons=worst, s=s)
            if worst > s:
                report["status"] = "violation"
                status = 1
        _emit(report)
    return status


def _percentile(samples, q):
    return float(np.percentile(np.asarray(samples), q)) if samples else None


def cmd_bench(args) -> int:
    bundle = _load(args.input)
    n = bundle.n
    rng = np.random.default_rng(args.seed)
    queries = rng.integers(1, n + 1, size=args.queries).tolist()
    sa = DelayedSuffixArray(bundle.sa, args.sa_delay_ns) if args.sa_delay_ns else bundle.sa
    results = {}
    for name in _pick(bundle, args.repr):
        if name == "wee":
            w, text = bundle.wee, bundle.text

            def one(i):
                return w.lcp_access(sa, text, i)
        elif name == "sadakane":
            d = bundle.sadakane

            def one(i):
                return d.access_eq2(sa, i), 0
        else:
            h = bundle.plain

            def one(i):
                return h[i], 0

        def run(chunk):
            lat, comps, vals = [], [], []
            for i in chunk:
                t0 = time.perf_counter_ns()
                v, c = one(i)
                lat.append(time.perf_counter_ns() - t0)
                comps.append(c)
                vals.append(v)
            return lat, comps, vals

        if args.threads > 1 and queries:
            chunks = [queries[k::args.threads] for k in range(args.threads)]
            with ThreadPoolExecutor(args.threads) as ex:
                parts = list(ex.map(run, chunks))
            lat = [x for p in parts for x in p[0]]
            comps = [x for p in parts for x in p[1]]
            vals = [None] * len(queries)
            for k, p in enumerate(parts):
                vals[k::args.threads] = p[2]
        else:
            lat, comps, vals = run(queries)
        results[name] = vals
        report = {"command": "bench", "repr": name, "n": n, "queries": len(queries),
                  "seed": args.seed, "sa_delay_ns": args.sa_delay_ns,
                  "median_ns": _percentile(lat, 50), "p99_ns": _percentile(lat, 99),
                  "mean_comparisons": float(np.mean(comps)) if comps else None,
                  "max_comparisons": max(comps) if comps else None}
        if name == "wee":
            report["s"] = bundle.wee.params.s
        _emit(report)
    names = list(results)
    if len(names) > 1 and queries:
        sample = min(len(queries), args.cross_check)
        ref = results[names[0]]
        mismatches = sum(1 for other in names[1:] for k in range(sample) if results[other][k] != ref[k])
        _emit({"command": "bench", "cross_check": names, "sampled": sample, "mismatches": mismatches})
        if mismatches:
            return 1
    return 0


def _space(bundle: IndexBundle, name: str):
    if name == "plain":
        from .space import SpaceReport
        return SpaceReport("plain", bundle.n, {"H": 64 * bundle.n})
    return getattr(bundle, name).space_report()


def cmd_space(args) -> int:
    bundle = _load(args.input)
    for name in _pick(bundle, args.repr):
        _emit({"command": "space", **_space(bundle, name).to_dict()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weelcp", description="Build and query compact LCP-array indexes.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a text file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--repr", action="append", help="plain, sadakane, wee or all (repeatable)")
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--kappa", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--s", type=int, help="override the short-miniblock span threshold")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("lcp", help="print LCP values")
    p.add_argument("--input", required=True)
    p.add_argument("--repr", action="append")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pos", type=int)
    g.add_argument("--range")
    p.set_defaults(func=cmd_lcp)

    p = sub.add_parser("verify", help="check every LCP value against a fresh Kasai run")
    p.add_argument("--input", required=True)
    p.add_argument("--repr", action="append")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time random LCP queries")
    p.add_argument("--input", required=True)
    p.add_argument("--repr", action="append")
    p.add_argument("--queries", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sa-delay-ns", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cross-check", type=int, default=1000)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("space", help="print bit counts per component")
    p.add_argument("--input", required=True)
    p.add_argument("--repr", action="append")
    p.set_defaults(func=cmd_space)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except CliError as e:
        print(f"weelcp: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
