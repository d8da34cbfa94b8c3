"""Compare the compiled and pure-Python kernels on the three hot loops.

    python benchmarks/bench_kernel.py [--repeat 3]

Each row is the best of ``--repeat`` runs; results from both kernels are
checked for equality before timing is reported.
"""
from __future__ import annotations

import argparse
import time

from polybilliard import kernel
from polybilliard.polygon import catalog, random_convex_polygon


def workloads():
    square = catalog("square")
    eq = catalog("equilateral")
    quad = random_convex_polygon(1)
    return [
        ("language square n=18", square, lambda b, kp: b.language(kp, 18, False, 10**9)[0]),
        ("language random quad n=15", quad, lambda b, kp: b.language(kp, 15, False, 10**9)[0]),
        ("language equilateral n=30", eq, lambda b, kp: b.language(kp, 30, False, 10**9)[0]),
        ("diagonals random quad links=13", quad,
         lambda b, kp: [b.diagonals_from(kp, s, 13, 10**9, False)[0] for s in range(kp.r)]),
        ("sampling equilateral 20000x8", eq, lambda b, kp: b.sample(kp, 8, 20000, 1, 1 << 20, 1 << 20)),
    ]


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = kernel.backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python kernel is available")
    names = sorted(backends, reverse=True)
    print(f"{'workload':34s}" + "".join(f"{n:>10s}" for n in names) + "   speedup")
    for label, P, fn in workloads():
        times, results = [], []
        for name in names:
            b = backends[name]
            kp = kernel.to_kernel(P, b)
            t, res = best_of(lambda: fn(b, kp), args.repeat)
            times.append(t)
            results.append(res)
        if any(r != results[0] for r in results):
            raise SystemExit(f"kernels disagree on {label}")
        speed = f"{times[0] / times[-1]:8.2f}x" if len(times) == 2 else ""
        print(f"{label:34s}" + "".join(f"{t:9.3f}s" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
