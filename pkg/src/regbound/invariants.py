"""Numerical invariants of ``F/M``: reg, e+, depth, dim, deg, bdeg, hdeg."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .algebra import Element
from .gin import GinResult, gin_of
from .groebner import (
    Submodule,
    colon_linear,
    prune,
    quotient_by_linear_form,
    saturate,
    syzygies,
)
from .hilbert import HilbertSeries
from .homology import (
    CohomologyProfile,
    cohomology_profile,
    depth,
    ends_and_rk,
    hdeg,
    minimal_free_resolution,
)
from .monomial import MonomialModule

FORM_RANGE = 9999
MAX_FORM_TRIES = 8


class FilterRegularError(RuntimeError):
    """No filter-regular linear form was found within the retry budget."""


def _require_nonzero(M: Submodule):
    if M.hilbert_series.is_zero():
        raise ValueError("the quotient module is zero")


def regularity(M: Submodule) -> int:
    """``max(j - i)`` over the nonzero graded Betti numbers of ``F/M``."""
    _require_nonzero(M)
    return minimal_free_resolution(M).regularity()


def e_plus(M: Submodule, as_module: bool = False) -> int:
    """Largest degree of a minimal generator of ``F/M`` (or of ``M`` itself with ``as_module``)."""
    if as_module:
        gens = M.minimal_generators
        if not gens:
            raise ValueError("zero module")
        return max(g.degree() for g in gens)
    _require_nonzero(M)
    F, _ = prune(M)
    return max(F.twists)


def submodule_as_quotient(M: Submodule) -> Submodule:
    """Presentation ``G/Syz`` of ``M`` itself, ``G`` free on the minimal generators."""
    gens = list(M.minimal_generators)
    if not gens:
        raise ValueError("zero module")
    src, syz = syzygies(gens)
    return Submodule(src, syz)


def depth_dim_deg(M: Submodule) -> tuple[int, int, int]:
    _require_nonzero(M)
    d, deg = M.hilbert_series.dim_deg()
    return depth(M), d, deg


def _length_between(big: HilbertSeries, small: HilbertSeries) -> int:
    diff = big - small
    return 0 if diff.is_zero() else diff.length()


# --------------------------------------------------------------------------
# bdeg


def bdeg_of_borel(N: MonomialModule) -> int:
    """``bdeg(F/N)`` for Borel-fixed ``N``: peel off ``N^sat/N`` and cut by ``x_n``."""
    total = 0
    while not N.is_whole():
        S = N.saturate_last()
        total += _length_between(N.hilbert_series(), S.hilbert_series())
        if S.is_whole():
            break
        N = S.cut_last()
    return total


def bdeg_via_gin(M: Submodule, seeds: tuple[int, int] = (0, 1), gin: GinResult | None = None) -> int:
    if M.hilbert_series.is_zero():
        return 0
    gin = gin or gin_of(M, seeds)
    return bdeg_of_borel(gin.module)


def random_linear_form(ring, rng) -> Element:
    p = ring.field.characteristic
    while True:
        if p:
            c = rng.integers(0, p, size=ring.nvars)
        else:
            c = rng.integers(-FORM_RANGE, FORM_RANGE + 1, size=ring.nvars)
        if any(c):
            return ring.linear_form([int(x) for x in c])


def is_filter_regular(M: Submodule, l: Element) -> bool:
    """``(M : l)/M`` has finite length."""
    diff = M.hilbert_series - colon_linear(M, l).hilbert_series
    return diff.is_zero() or diff.is_finite_length()


def filter_regular_form(M: Submodule, rng) -> Element:
    for _ in range(MAX_FORM_TRIES):
        l = random_linear_form(M.ring, rng)
        if is_filter_regular(M, l):
            return l
    raise FilterRegularError("no filter-regular linear form after retries")


def bdeg_via_axioms(M: Submodule, seed: int = 0) -> int:
    """Strip ``H^0``, cut by a random filter-regular form, repeat until the module vanishes."""
    rng = np.random.default_rng([seed, 11])
    total = 0
    cur = M
    while not cur.hilbert_series.is_zero():
        S = saturate(cur)
        total += _length_between(cur.hilbert_series, S.hilbert_series)
        if S.hilbert_series.is_zero():
            break
        l = filter_regular_form(S, rng)
        cur = quotient_by_linear_form(S, l)
    return total


def bdeg(M: Submodule, seeds: tuple[int, int] = (0, 1)) -> int:
    return bdeg_via_gin(M, seeds)


# --------------------------------------------------------------------------
# report


@dataclass
class InvariantReport:
    reg: int | None
    r1: int | None
    e_plus: int | None
    depth: int | None
    dim: int | None
    deg: int
    bdeg: int
    hdeg: int
    I_bdeg: int
    I_hdeg: int
    I_h: int | None
    hilbert: HilbertSeries
    betti: list[tuple[int, int, int]]
    cohomology: dict[int, dict] = field(default_factory=dict)
    seeds: tuple[int, ...] = ()
    bdeg_axioms: int | None = None
    gin: MonomialModule | None = None


def cohomology_summary(P: CohomologyProfile) -> dict[int, dict]:
    out = {}
    for h in P.modules:
        d, e = h.dual_dim_deg
        out[h.i] = {
            "zero": h.is_zero(),
            "end": h.end,
            "start": h.start,
            "finite": h.finite() if not h.is_zero() else True,
            "window": h.window(),
            "dual_dim": d,
            "dual_deg": e,
        }
    return out


def cm_deviation_h(P: CohomologyProfile) -> int | None:
    """``sum_{i<d} binom(d-1, i) len(H^i)`` when all those modules have finite length."""
    d = P.dim
    if d is None:
        return None
    total = 0
    for h in P.modules:
        if h.i >= d or h.is_zero():
            continue
        if not h.finite():
            return None
        total += comb(d - 1, h.i) * h.length()
    return total


def invariants(M: Submodule, seed: int = 0, check_axioms: bool = True) -> InvariantReport:
    H = M.hilbert_series
    seeds = (seed, seed + 1)
    if H.is_zero():
        return InvariantReport(None, None, None, None, None, 0, 0, 0, 0, 0, None, H, [], {}, (), 0, None)
    res = minimal_free_resolution(M)
    prof = cohomology_profile(M)
    d, deg = H.dim_deg()
    g = gin_of(M, seeds)
    b = bdeg_of_borel(g.module)
    h = hdeg(M)
    b2 = bdeg_via_axioms(M, seed) if check_axioms else None
    return InvariantReport(
        reg=res.regularity(),
        r1=ends_and_rk(prof, 1),
        e_plus=e_plus(M),
        depth=depth(M),
        dim=d,
        deg=deg,
        bdeg=b,
        hdeg=h,
        I_bdeg=b - deg,
        I_hdeg=h - deg,
        I_h=cm_deviation_h(prof),
        hilbert=H,
        betti=res.betti_list(),
        cohomology=cohomology_summary(prof),
        seeds=g.seeds,
        bdeg_axioms=b2,
        gin=g.module,
    )
