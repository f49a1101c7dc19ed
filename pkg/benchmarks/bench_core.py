"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_core.py [--repeat N]

Each row times one kernel on both backends and checks that they agree.
"""

import argparse
import random
import timeit

from maxkernel import _core
from maxkernel.gf import field_new


def _plain(x):
    """Nested lists of Python ints, whatever array type a backend returns."""
    if hasattr(x, "__iter__"):
        return [_plain(v) for v in x]
    return int(x)


def cases():
    F7 = field_new(2, 1, 7, 1)
    F8 = field_new(2, 1, 8, 1)
    F13 = field_new(2, 1, 13, 1)
    F15 = field_new(2, 1, 15, 1)
    F36 = field_new(3, 1, 6, 1)
    rng = random.Random(1)
    A = [rng.randrange(F13.order) for _ in range(20000)]
    B = [rng.randrange(F13.order) for _ in range(20000)]
    cols = [[rng.randrange(2 ** 20) for _ in range(20)] for _ in range(2000)]
    yield ("trinomial_nullities q=2 n=8 d=3, all a", F8,
           lambda impl: [list(impl.trinomial_nullities(F8.ctx, F8.ctx.plan(F8, 3), a))
                         for a in range(F8.order)])
    yield ("trinomial_nullities q=3 n=6 d=3, 50 a", F36,
           lambda impl: [list(impl.trinomial_nullities(F36.ctx, F36.ctx.plan(F36, 3), a))
                         for a in range(50)])
    yield ("pair_nullities q=2 n=13 d=4, 20000 pairs", F13,
           lambda impl: list(impl.pair_nullities(F13.ctx, F13.ctx.plan(F13, 4), A, B)))
    yield ("vector_criterion_bs q=2 n=7 d=3, all a", F7,
           lambda impl: [list(impl.vector_criterion_bs(F7.ctx, F7.ctx.plan(F7, 3), a))
                         for a in range(F7.order)])
    yield ("rank_fp 2000 random 20x20 over F_2", None,
           lambda impl: [impl.rank_fp(c, 2, 20) for c in cols])
    yield ("orbit_rank_histogram q=2 n=15 k=4", F15,
           lambda impl: list(impl.orbit_rank_histogram(F15.ctx, [1, 2, 4, 8], F15.N)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    backends = _core.backends()
    if "compiled" not in backends:
        print("compiled backend not built; only the fallback is available")
    print(f"{'kernel':48s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for name, _, fn in cases():
        times, outs = {}, {}
        for bname, impl in backends.items():
            outs[bname] = fn(impl)
            times[bname] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        agree = len({repr(_plain(o)) for o in outs.values()}) == 1
        py, co = times["python"], times.get("compiled", float("nan"))
        print(f"{name:48s} {py:10.3f} {co:11.4f} {py / co:7.1f}x" + ("" if agree else "  MISMATCH"))


if __name__ == "__main__":
    main()
