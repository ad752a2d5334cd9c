"""Compare the compiled and pure-Python cactus enumeration kernels.

    python benchmarks/bench_kernels.py [--max-n 7] [--repeat 3]
"""

import argparse
import time

from openbook import kernels


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    print(f"{'n':>2} {'count':>7} " + " ".join(f"{b + ' s':>10}" for b in backends) + "  speedup")
    for n in range(2, args.max_n + 1):
        times, counts = [], set()
        for b in backends:
            t, c = best_of(lambda: kernels.count_cacti(n, b), args.repeat)
            times.append(t)
            counts.add(c)
        assert len(counts) == 1, f"backends disagree at n={n}: {counts}"
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "   n/a"
        print(f"{n:>2} {counts.pop():>7} " + " ".join(f"{t:10.4f}" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
