"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends run the same inputs; the script also reports the largest
difference between their results.
"""
from __future__ import annotations

import argparse
import math
import time

import numpy as np

from ringfloquet import _kernels_py
from ringfloquet.specfun import jn_array, order_below, start_order

try:
    from ringfloquet import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def _suffix(v: np.ndarray) -> np.ndarray:
    out = np.zeros(v.size + 1)
    out[:-1] = np.cumsum(np.abs(v)[::-1])[::-1]
    return out


def cases():
    x = 2.0e4
    n_keep = order_below(x, math.log(1e-300))
    yield "bessel_backward x=2e4", lambda k: k.bessel_backward(x, start_order(n_keep, x), n_keep)

    alpha, beta = 1e3, 137.5
    s_cap = order_below(beta, math.log(1e-15)) + 1
    ja = jn_array(alpha, 200 + 2 * s_cap + 1).values
    jb = jn_array(beta, s_cap + 1).values
    ta, tb = _suffix(ja), _suffix(jb)

    def series(k):
        return np.array([k.series_coefficient(ja, False, jb, ta, tb, r, s_cap, 1e-12)[0] for r in range(-100, 101)])

    yield "series_coefficient x201 (alpha=1e3)", series
    yield "rk4_phase 65536 steps", lambda k: k.rk4_phase(2.5, 1.0, 1.1, 65536)[0]


def best_time(fn, repeat: int) -> float:
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
    print(f"{'kernel':<38}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}{'max diff':>12}")
    for name, fn in cases():
        t_py = best_time(lambda: fn(_kernels_py), args.repeat)
        if compiled is None:
            print(f"{name:<38}{t_py:>12.4f}{'-':>12}{'-':>10}{'-':>12}")
            continue
        t_c = best_time(lambda: fn(compiled), args.repeat)
        diff = float(np.max(np.abs(np.asarray(fn(_kernels_py)) - np.asarray(fn(compiled)))))
        print(f"{name:<38}{t_py:>12.4f}{t_c:>12.5f}{t_py / t_c:>9.0f}x{diff:>12.2e}")


if __name__ == "__main__":
    main()
