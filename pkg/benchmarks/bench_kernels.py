"""Rank mod p: numba kernel against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--size 200] [--repeat 5]
"""

import argparse
import time

import numpy as np

from regbound._kernels import _rank_mod_p_jit, rank_mod_p

P = 32003


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    n = args.size
    # low-rank product so elimination does real work on every column
    a = rng.integers(0, P, size=(n, n // 2)) @ rng.integers(0, P, size=(n // 2, n)) % P

    if _rank_mod_p_jit is None:
        print("numba unavailable; numpy only")
    else:
        rank_mod_p(a[:4, :4], P, use_numba=True)  # compile outside the timing
    t_np, r_np = timed(lambda: rank_mod_p(a, P, use_numba=False), args.repeat)
    print(f"numpy  {n}x{n}: rank {r_np}  {t_np * 1e3:8.2f} ms")
    if _rank_mod_p_jit is not None:
        t_nb, r_nb = timed(lambda: rank_mod_p(a, P, use_numba=True), args.repeat)
        print(f"numba  {n}x{n}: rank {r_nb}  {t_nb * 1e3:8.2f} ms  speedup {t_np / t_nb:5.1f}x")
        assert r_np == r_nb


if __name__ == "__main__":
    main()
