"""Compare the compiled term-arithmetic kernel against the pure-Python one.

Two workload classes: raw polynomial products (the kernel hot loop in
isolation) and full axiom-suite runs (the kernel under realistic call
patterns).  Both backends produce identical results; only the time differs.

Run:  python benchmarks/bench_kernel.py [--trials 40]
"""

import argparse
import random
import time

from courant._core import py_kernel

try:
    from courant._core import c_kernel
except ImportError:
    c_kernel = None


def random_terms(rng, nvars, max_degree, n_terms):
    out = {}
    for _ in range(n_terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        out[tuple(exps)] = (rng.randint(-9, 9) or 1, rng.randint(1, 6))
    return out


def bench_raw(kernel, pairs, reps):
    start = time.perf_counter()
    for _ in range(reps):
        for a, b in pairs:
            kernel.mul_terms(a, b)
            kernel.add_terms(a, b)
            kernel.partial_terms(a, 0)
    return time.perf_counter() - start


def bench_suite(backend_name, trials):
    import importlib
    import os
    import subprocess
    import sys

    # fresh interpreter so the import-time backend selection is honored
    code = (
        "import time, courant\n"
        "from courant import axiom_suite, heterotic_abelian_4d\n"
        "alg = heterotic_abelian_4d()\n"
        f"t0 = time.perf_counter(); rep = axiom_suite(alg, trials={trials}, seed=1)\n"
        "assert rep.ok\n"
        "print(time.perf_counter() - t0)\n"
    )
    env = dict(os.environ, COURANT_KERNEL=backend_name)
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=40)
    parser.add_argument("--reps", type=int, default=200)
    args = parser.parse_args()

    rng = random.Random(0)
    pairs = [
        (random_terms(rng, 4, 3, 8), random_terms(rng, 4, 3, 8)) for _ in range(100)
    ]

    print(f"{'workload':<34}{'python':>10}{'c':>10}{'speedup':>9}")
    t_py = bench_raw(py_kernel, pairs, args.reps)
    if c_kernel is not None:
        for a, b in pairs[:10]:
            assert py_kernel.mul_terms(a, b) == c_kernel.mul_terms(a, b)
        t_c = bench_raw(c_kernel, pairs, args.reps)
        print(f"{'raw term ops (mul/add/partial)':<34}{t_py:>9.3f}s{t_c:>9.3f}s{t_py / t_c:>8.2f}x")
    else:
        print(f"{'raw term ops (mul/add/partial)':<34}{t_py:>9.3f}s{'n/a':>10}")

    s_py = bench_suite("py", args.trials)
    if c_kernel is not None:
        s_c = bench_suite("c", args.trials)
        print(f"{'axiom suite, split 4d instance':<34}{s_py:>9.3f}s{s_c:>9.3f}s{s_py / s_c:>8.2f}x")
    else:
        print(f"{'axiom suite, split 4d instance':<34}{s_py:>9.3f}s{'n/a':>10}")


if __name__ == "__main__":
    main()
