"""Generic initial modules via random coordinate changes, and Borel-fixedness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Element, LinearChange, Ring, matrix_det, monomials_of_degree
from .groebner import Submodule
from .monomial import MonomialModule

COEFF_RANGE = 9999
MAX_RESAMPLES = 8


class GinInstabilityError(RuntimeError):
    """Independent random coordinate changes disagreed on the initial module."""


def is_borel_fixed(N: MonomialModule) -> bool:
    """Exchange test: closed under ``x_j -> x_i`` (``i < j``) and ``e_b -> e_a`` (``a < b``, equal twists).

    A move ``e_b -> e_b + h e_a`` with ``deg h > 0`` only creates smaller
    terms in the module order, so unequal twists impose no condition.
    """
    ring = N.ring
    p = ring.field.characteristic
    if p and p <= max(N.max_exponent(), N.max_degree()):
        raise ValueError(f"characteristic {p} too small for the combinatorial Borel test")
    nv = ring.nvars
    for comp, ideal in enumerate(N.ideals):
        for m in ideal:
            for j in range(1, nv):
                if not m[j]:
                    continue
                for i in range(j):
                    e = list(m)
                    e[j] -= 1
                    e[i] += 1
                    if not N.contains(tuple(e), comp):
                        return False
    tw = N.free.twists
    for b, ideal in enumerate(N.ideals):
        for a in range(b):
            if tw[a] != tw[b]:
                continue
            for m in ideal:
                if not N.contains(m, a):
                    return False
    N.borel_fixed = True
    return True


def random_upper_change(seed: int, nvars: int, field=None) -> list[list]:
    """Dense invertible matrix with entries uniform in ``[-9999, 9999]`` (or over ``Z/p``)."""
    from .algebra import QQ

    field = field or QQ
    rng = np.random.default_rng(seed)
    p = field.characteristic
    for _ in range(MAX_RESAMPLES):
        if p:
            g = rng.integers(0, p, size=(nvars, nvars)).tolist()
        else:
            g = rng.integers(-COEFF_RANGE, COEFF_RANGE + 1, size=(nvars, nvars)).tolist()
        g = [[int(c) for c in row] for row in g]
        if nvars == 0 or matrix_det(field, g) != 0:
            return g
    raise RuntimeError("could not sample an invertible matrix")


def _random_poly(ring: Ring, d: int, rng) -> Element:
    p = ring.field.characteristic
    lo, hi = (0, p) if p else (-COEFF_RANGE, COEFF_RANGE + 1)
    return ring.poly({e: int(rng.integers(lo, hi)) for e in monomials_of_degree(ring.nvars, d)})


def random_module_change(seed: int, M: Submodule):
    """Random graded automorphism of ``F``: ``e_i -> sum_j h_ji e_j`` with ``deg h_ji = t_i - t_j``."""
    fm = M.free
    ring = fm.ring
    rng = np.random.default_rng([seed, 7])
    tw = fm.twists
    for _ in range(MAX_RESAMPLES):
        images = []
        for i in range(fm.rank):
            v = fm.zero()
            for j in range(fm.rank):
                d = tw[i] - tw[j]
                if d >= 0:
                    v = v + _random_poly(ring, d, rng) * fm.basis(j)
            images.append(v)
        # invertible iff each block of equal twists has nonzero determinant
        ok = True
        for t in set(tw):
            idx = [i for i in range(fm.rank) if tw[i] == t]
            block = [[images[i].terms.get(fm.pack(j, 0), 0) for j in idx] for i in idx]
            if matrix_det(ring.field, block) == 0:
                ok = False
                break
        if ok:
            return images
    raise RuntimeError("could not sample an invertible module automorphism")


def _transform(M: Submodule, seed: int) -> Submodule:
    ring = M.ring
    fm = M.free
    g = random_upper_change(seed, ring.nvars, ring.field)
    ch = LinearChange(ring, g)
    gens = [ch(v) for v in M.gens]
    if fm.rank > 1:
        images = random_module_change(seed, M)
        out = []
        for v in gens:
            w = fm.zero()
            for i, p in enumerate(v.components()):
                if p.terms:
                    w = w + p * images[i]
            out.append(w)
        gens = out
    return Submodule(fm, gens)


@dataclass
class GinResult:
    module: MonomialModule
    seeds: tuple[int, ...]
    stable: bool
    escalated: bool = False


def gin_of(M: Submodule, seeds: tuple[int, int] = (0, 1)) -> GinResult:
    """Initial module after two random coordinate changes; a third seed breaks ties."""
    if M.is_monomial() and M.gens:
        N0 = M.as_monomial()
        try:
            if is_borel_fixed(N0):
                return GinResult(N0, (), True)
        except ValueError:
            pass
    s1, s2 = seeds
    a = _transform(M, s1).initial
    b = _transform(M, s2).initial
    if a == b:
        return GinResult(a, (s1, s2), True)
    s3 = max(s1, s2) + 1
    c = _transform(M, s3).initial
    if c == a or c == b:
        return GinResult(c, (s1, s2, s3), True, escalated=True)
    raise GinInstabilityError(f"seeds {s1}, {s2}, {s3} gave three different initial modules")
