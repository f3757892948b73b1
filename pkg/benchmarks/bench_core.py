"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_core.py [--points 4000] [--repeat 3]

Each kernel runs on identical inputs under both backends; the results are
compared before timings are reported.
"""
import argparse
import timeit

import numpy as np

from qho_fourier import _core_py, oracle

try:
    from qho_fourier import _core
except ImportError:
    _core = None


def cases(points):
    cfg = oracle.FdConfig(12.0, points, 9)
    d, e = oracle.hamiltonian_bands(cfg)
    rhs = np.linspace(-1.0, 1.0, d.size)
    return {
        "sturm_count": lambda m: m.sturm_count(d, e * e, 4.5),
        "bisect_eigenvalues (9 states)": lambda m: m.bisect_eigenvalues(d, e, 0, 9, 1e-15, 10 * points)[0],
        "shifted_solve": lambda m: m.shifted_solve(d, e, 4.5001, rhs),
        "kummer_sum (z=30)": lambda m: m.kummer_sum(0.25, 0.5, 30.0, 500, 1e-15)[0],
    }


def best_time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=4000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _core is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    print(f"{'kernel':<32}{'cython [s]':>12}{'python [s]':>12}{'speedup':>10}")
    for name, run in cases(args.points).items():
        fast, slow = run(_core), run(_core_py)
        if not np.array_equal(np.asarray(fast), np.asarray(slow)):
            raise SystemExit(f"{name}: backends disagree")
        tc = best_time(lambda: run(_core), args.repeat)
        tp = best_time(lambda: run(_core_py), args.repeat)
        print(f"{name:<32}{tc:>12.3g}{tp:>12.3g}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
