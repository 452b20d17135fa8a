"""Dense linear algebra over ``Z/p`` with a numba kernel and a numpy fallback.

Set ``REGBOUND_PURE_NUMPY=1`` to force the numpy path (or when numba is
missing).  Both paths give identical results; only speed differs.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("REGBOUND_PURE_NUMPY", "") not in ("1", "true", "yes")


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        below = a[rank + 1:, col].copy()
        mask = below != 0
        if mask.any():
            a[rank + 1:][mask] = (a[rank + 1:][mask] - np.outer(below[mask], a[rank])) % p
        rank += 1
    return rank


def _rank_mod_p_loops(a, p):
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(cols):
                t = a[rank, c]
                a[rank, c] = a[piv, c]
                a[piv, c] = t
        # inverse by Fermat
        inv = 1
        base = a[rank, col]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for c in range(col, cols):
            a[rank, c] = a[rank, c] * inv % p
        for r in range(rank + 1, rows):
            f = a[r, col]
            if f != 0:
                for c in range(col, cols):
                    a[r, c] = (a[r, c] - f * a[rank, c]) % p
        rank += 1
    return rank


if numba is not None:
    _rank_mod_p_jit = numba.njit(cache=False)(_rank_mod_p_loops)
else:  # pragma: no cover
    _rank_mod_p_jit = None


def rank_mod_p(a, p: int, use_numba: bool | None = None) -> int:
    """Rank of an integer matrix modulo a prime ``p < 2**31``."""
    if p >= 1 << 31:
        raise ValueError("prime too large for 64-bit kernels")
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    if a.ndim != 2 or 0 in a.shape:
        return 0
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and _rank_mod_p_jit is not None:
        return int(_rank_mod_p_jit(a, p))
    return _rank_mod_p_numpy(a, p)


def rank_rational(rows: list[list]) -> int:
    """Exact rank over the rationals by fraction-free (Bareiss) elimination."""
    from fractions import Fraction
    from math import lcm

    a = []
    for row in rows:
        den = 1
        for c in row:
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        a.append([int(c * den) for c in row])
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[col]
            a[r] = [(pr[col] * x - f * y) // prev for x, y in zip(row, pr)]
        prev = pr[col]
        rank += 1
        if rank == nrows:
            break
    return rank
