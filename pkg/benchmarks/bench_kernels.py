"""Time the numba and numpy kernels on the fixture workloads.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-slow]

The first numba call compiles (or loads the on-disk cache); that cost is
reported separately and excluded from the timed runs.
"""
import argparse
import statistics
import time

from lrcforge import _kernels
from lrcforge.cyclic import distance_by_columns, distance_by_enumeration
from lrcforge.lrc import ConstructionKind, LrcParams, construct


def workloads(skip_slow):
    ex1 = construct(LrcParams(11, 10, 3, 3), ConstructionKind.parse("t1"))
    ex3 = construct(LrcParams(7, 30, 4, 3), ConstructionKind.parse("t3"))
    yield "enumerate [10,5] q=11 (161051 words)", lambda b: distance_by_enumeration(ex1, b)
    yield "columns [30,17] q=7, ceiling 6", lambda b: distance_by_columns(
        ex3.parity_check.reduced, ex3.gf, 6, backend=b).distance
    if not skip_slow:
        ex2 = construct(LrcParams(19, 27, 4, 6), ConstructionKind.parse("t2"))
        yield "columns [27,10] q=19, ceiling 8", lambda b: distance_by_columns(
            ex2.parity_check.reduced, ex2.gf, 8, backend=b).distance


def timed(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-slow", action="store_true", help="drop the [27,10] search (~25 s on numpy)")
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if "numba" in backends:
        t0 = time.perf_counter()
        for _, fn in workloads(skip_slow=True):
            fn("numba")
        print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f}s")
    print(f"{'workload':<40} {'backend':<8} {'result':>6} {'median s':>10}")
    for label, fn in workloads(args.skip_slow):
        results = {}
        for b in backends:
            res, t = timed(lambda: fn(b), args.repeat if b == "numba" else 1)
            results[b] = (res, t)
            print(f"{label:<40} {b:<8} {res!s:>6} {t:>10.3f}")
        if len(results) == 2:
            (ra, ta), (rb, tb) = results["numpy"], results["numba"]
            assert ra == rb, "backends disagree"
            print(f"{'':<40} speedup {ta / tb:>17.1f}x")


if __name__ == "__main__":
    main()
