"""Compare the compiled and pure-Python search kernels on fixed searches.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from gbraid import _kernel_py, oracle
from gbraid.schreier import conjugate_lambda, lambda_expand, lgen
from gbraid.theory import builtin
from gbraid.word import parse_word

try:
    from gbraid import _kernel
except ImportError:
    _kernel = None

CAP = 10**6


def raw_search(w1, w2, maxlen):
    """Bidirectional search alone, without the descents that usually shorten it."""
    def go():
        tb = oracle.move_tables(w1.theory, w1.strands)
        path, explored = oracle._search(tb, tb.encode(w1), tb.encode(w2), maxlen, CAP)
        return f"{'found' if path is not None else 'not found'} ({explored} states)"
    return go


def full(w1, w2, depth):
    return lambda: str(oracle.bfs_equivalent(w1, w2, depth, CAP))


def cases():
    c = builtin("classical")
    v = builtin("virtual")
    lhs = parse_word("r3 r2' r1 r1 r2 r3'", 4, c)
    rhs = lambda_expand(conjugate_lambda(lgen("r", 1, 3, "r"), 1, 3, -1, 4, c, "r"))
    yield "classical n=4 raw search", raw_search(lhs, rhs, max(len(lhs), len(rhs)))
    yield "classical n=4 with descents", full(lhs, rhs, 0)
    # same invariants but distinct: the search runs until the cap
    yield "virtual n=4 distinct, depth 4", full(parse_word("r1 r2 r2 r1", 4, v), parse_word("r2 r1 r1 r2", 4, v), 4)


def timed(kernel, fn):
    oracle.expand, oracle.expand_layer = kernel.expand, kernel.expand_layer
    t = time.perf_counter()
    result = fn()
    return time.perf_counter() - t, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    kernels = [("python", _kernel_py)] + ([("compiled", _kernel)] if _kernel else [])
    if _kernel is None:
        print("compiled kernel not built; timing the pure-Python kernel only")
    print(f"{'case':34s} {'kernel':9s} {'seconds':>8s}  result")
    for name, fn in cases():
        times = {}
        for kname, mod in kernels:
            runs = [timed(mod, fn) for _ in range(args.repeat)]
            best = min(t for t, _ in runs)
            times[kname] = best
            print(f"{name:34s} {kname:9s} {best:8.2f}  {runs[0][1]}")
        if len(times) == 2:
            print(f"{'':34s} speedup   {times['python'] / times['compiled']:8.2f}x")


if __name__ == "__main__":
    main()
