"""Time the compiled and pure-Python kernels on full scans.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from nsemigroup import kernels

CASES = [
    ("scan_tables", (2, 4), 2 ** 16),
    ("scan_tables", (3, 2), 3 ** 9),
    ("scan_polys", (2, 4), 2 ** 16),
    ("scan_polys", (3, 3), 3 ** 8),
]


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    names = [b.BACKEND for b in backends]
    print(f"{'kernel':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for fname, (a, n), total in CASES:
        times, results = [], []
        for b in backends:
            t, r = best_of(lambda: getattr(b, fname)(a, n, 0, total), args.repeat)
            times.append(t)
            results.append(r)
        assert all(r == results[0] for r in results), f"{fname}{(a, n)}: backends disagree"
        row = f"{fname}({a},{n})".ljust(24) + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[-1] / times[0]:>11.1f}x"
        print(row)
    if len(names) == 1:
        print("compiled backend not built; only the pure-Python kernels were timed")


if __name__ == "__main__":
    main()
