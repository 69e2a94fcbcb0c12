"""Benchmark the compiled kernels against the pure-Python fallbacks.

Run:  python benchmarks/compare_kernels.py [--quick]

Covers the four kernel entry points on realistic inputs: girth BFS, 8-cycle
enumeration, induced-pattern search and batched SPA decoding.  The compiled
backend is what makes construction-time audits and Monte Carlo decoding
practical; the fallback exists for portability and as a reference
implementation.
"""

import argparse
import time

import numpy as np

from latinldpc import cayley_base_matrix, expand, generate_patterns, make_field, subarray
from latinldpc import _pyref
from latinldpc.builder import BuildPolicy, Condition, progressive_construct
from latinldpc.channel import AWGN, ChannelPoint, transmit
from latinldpc.decode import _layout
from latinldpc.graph import TannerGraph, _pattern_adj_matrix, _pattern_order

try:
    from latinldpc import _fast
except ImportError:
    _fast = None


def timeit(fn, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def row(name, t_py, t_c, note=""):
    speedup = f"{t_py / t_c:6.1f}x" if t_c else "   -  "
    c_txt = f"{t_c * 1e3:9.2f}" if t_c is not None else "    n/a  "
    print(f"{name:<26} {t_py * 1e3:9.2f} {c_txt} {speedup}  {note}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    q = 23 if args.quick else 53
    f = make_field(q, 1)
    res = progressive_construct(
        f, 3, Condition(girth_min=8), BuildPolicy(seed=0, target_rho=min(8, q)),
        audit=False,
    )
    h = expand(res.w)
    g = TannerGraph.from_parity(h)
    print(f"benchmark code: n={g.n_var}, checks={g.n_chk}, girth-8 construction")
    print(f"{'kernel':<26} {'python ms':>9} {'compiled ms':>9} {'speedup':>8}")

    backends = [("py", _pyref)] + ([("c", _fast)] if _fast else [])

    times = {}
    for name, mod in backends:
        times[name] = timeit(
            lambda m=mod: m.girth_bipartite(g.vptr, g.vadj, g.cptr, g.cadj)
        )[0]
    row("girth_bipartite", times["py"], times.get("c"))

    for name, mod in backends:
        times[name] = timeit(
            lambda m=mod: m.enumerate_cycles(g.vptr, g.vadj, g.cptr, g.cadj, 8, 10**7),
            repeat=1,
        )[0]
    n8 = len(_pyref.enumerate_cycles(g.vptr, g.vadj, g.cptr, g.cadj, 8, 10**7)[0])
    row("enumerate_cycles(8)", times["py"], times.get("c"), f"{n8} cycles")

    pat = generate_patterns(5, 3, 8)[0]
    order, anchor = _pattern_order(pat)
    padj = _pattern_adj_matrix(pat)
    for name, mod in backends:
        times[name] = timeit(
            lambda m=mod: m.find_induced_pattern(
                g.vptr, g.vadj, g.cptr, g.cadj, padj, order, anchor, None
            ),
            repeat=1,
        )[0]
    row("find_induced_pattern", times["py"], times.get("c"), pat.label())

    lay = _layout(h)
    rng = np.random.default_rng(0)
    frames = 256 if args.quick else 1024
    rate = (h.n_cols - 3 * q) / h.n_cols
    llrs = transmit(
        np.zeros((frames, h.n_cols), dtype=np.uint8),
        ChannelPoint(AWGN, 4.0, rate=rate),
        rng,
    )
    for name, mod in backends:
        times[name] = timeit(
            lambda m=mod: m.spa_decode_frames(
                lay.cptr, lay.evar, lay.vptr, lay.veidx, lay.cofe, llrs, 50, 25.0
            ),
            repeat=1,
        )[0]
    note = f"{frames} frames @4dB"
    row("spa_decode_frames", times["py"], times.get("c"), note)
    if _fast is None:
        print("\ncompiled extension not built; showing pure-Python numbers only")


if __name__ == "__main__":
    main()
