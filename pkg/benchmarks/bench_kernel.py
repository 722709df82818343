"""Compare the compiled and pure-Python kernels on brute-force state sums.

    python3 benchmarks/bench_kernel.py [--words 5] [--crossings 10 12 14]
"""

import argparse
import random
import time

from kbsm import _pytrace
from kbsm.bracket import _reduce_cached, random_word, reduce

try:
    from kbsm import _ctrace
except ImportError:  # extension not built
    _ctrace = None


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=5)
    ap.add_argument("--crossings", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'crossings':>9} {'python s':>10} {'cython s':>10} {'speedup':>8} {'sweep s':>9}")
    for c in args.crossings:
        words = [random_word(rng, 2, c, max_width=6) for _ in range(args.words)]
        enc = [w.encode() for w in words]
        tp, outp = best_of(lambda: [_pytrace.state_sum(*e) for e in enc], repeat=1)
        if _ctrace is not None:
            tc, outc = best_of(lambda: [_ctrace.state_sum(*e) for e in enc])
            assert outc == outp, "backends disagree"
            cs, sp = f"{tc:10.4f}", f"{tp / tc:7.1f}x"
        else:
            cs, sp = f"{'n/a':>10}", f"{'':>8}"

        def sweep():
            _reduce_cached.cache_clear()
            return [reduce(w) for w in words]

        ts, _ = best_of(sweep)
        print(f"{c:>9} {tp:10.4f} {cs} {sp} {ts:9.4f}")


if __name__ == "__main__":
    main()
