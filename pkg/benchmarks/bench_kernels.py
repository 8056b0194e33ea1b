"""Time the biliaison recursion on both kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from pfladder import kernel
from pfladder.invariants import hvec_generic, mult_generic
from pfladder.ladder import make_family

CASES = [
    ("Lk", {"t": 4, "k": 4}),
    ("Ljk", {"t": 4, "j": 4, "k": 4}),
    ("Hjk", {"t": 4, "j": 3, "k": 4}),
    ("SM", {"t": 6}),
    ("L^n", {"t": 4, "n": 12}),
]


def bench(backend, repeat):
    kernel.use_backend(backend)
    rows = []
    for fam, params in CASES:
        spec = make_family(fam, **params)
        best = float("inf")
        for _ in range(repeat):
            kernel.clear_caches()
            t0 = time.perf_counter()
            h = hvec_generic(spec)
            e = mult_generic(spec, policy="min_k")
            best = min(best, time.perf_counter() - t0)
        assert sum(h) == e
        rows.append((fam, params, e, best))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    results = {b: bench(b, args.repeat) for b in sorted(kernel.BACKENDS)}
    if "cython" not in results:
        print("compiled backend not built; timing the Python kernel only")
    print(f"{'case':<28}{'e':>12}" + "".join(f"{b:>12}" for b in results) + "   speedup")
    for i, (fam, params, e, _) in enumerate(results["python"]):
        label = fam + "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"
        times = [results[b][i][3] for b in results]
        speed = ""
        if "cython" in results:
            speed = f"{results['python'][i][3] / results['cython'][i][3]:9.1f}x"
        print(f"{label:<28}{e:>12}" + "".join(f"{t:11.4f}s" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
