"""Minimal free resolutions, Ext against the ring, and local cohomology via duality."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .algebra import Element, FreeModule
from .groebner import Submodule, _project, prune, syzygies
from .hilbert import HilbertSeries

WINDOW = 6  # degrees shown below the end of an infinite-length cohomology module


@dataclass
class ResolutionData:
    """``0 <- F_0 <- F_1 <- ... <- F_p <- 0`` resolving ``F_0/M``.

    ``maps[i]`` lists the images in ``F_i`` of the basis of ``F_{i+1}``.  For
    the zero module ``frees`` is empty.
    """

    frees: list[FreeModule]
    maps: list[list[Element]]

    @property
    def length(self) -> int | None:
        return len(self.frees) - 1 if self.frees else None

    def is_zero(self) -> bool:
        return not self.frees

    @property
    def betti(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for i, F in enumerate(self.frees):
            for t in F.twists:
                out[(i, t)] = out.get((i, t), 0) + 1
        return out

    def betti_list(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, b) for (i, j), b in self.betti.items())

    def regularity(self) -> int | None:
        b = self.betti
        return max((j - i for i, j in b), default=None)

    def numerator(self) -> dict[int, int]:
        """``sum_i (-1)^i sum_j beta_ij z^j``."""
        out: dict[int, int] = {}
        for (i, j), b in self.betti.items():
            out[j] = out.get(j, 0) + (-1) ** i * b
        return {k: v for k, v in out.items() if v}

    def betti_grid(self) -> str:
        """Betti table with rows ``j - i`` and columns ``i``."""
        b = self.betti
        if not b:
            return "zero module"
        cols = range(len(self.frees))
        rows = range(min(j - i for i, j in b), max(j - i for i, j in b) + 1)
        width = max(len(str(v)) for v in b.values()) + 1
        head = "      " + "".join(f"{i:>{width}}" for i in cols)
        lines = [head, "total:" + "".join(f"{self.frees[i].rank:>{width}}" for i in cols)]
        for r in rows:
            cells = "".join(f"{b.get((i, i + r), 0) or '.':>{width}}" for i in cols)
            lines.append(f"{r:>5}:" + cells)
        return "\n".join(lines)

    def check_complex(self) -> bool:
        """Consecutive maps compose to zero."""
        for i in range(1, len(self.maps)):
            prev = self.maps[i - 1]
            for v in self.maps[i]:
                img = self.frees[i - 1].zero()
                for a, p in enumerate(v.components()):
                    if p.terms:
                        img = img + p * prev[a]
                if img.terms:
                    return False
        return True

    def is_minimal(self) -> bool:
        for i, images in enumerate(self.maps):
            F = self.frees[i]
            for v in images:
                if any(F.expo(P) == 0 for P in v.terms):
                    return False
        return True


def minimal_free_resolution(M: Submodule) -> ResolutionData:
    cached = getattr(M, "_resolution", None)
    if cached is not None:
        return cached
    F0, N = prune(M)
    if F0.rank == 0:
        res = ResolutionData([], [])
    else:
        frees = [F0]
        maps: list[list[Element]] = []
        cur = list(N.minimal_generators)
        while cur:
            src, syz = syzygies(cur)
            frees.append(src)
            maps.append(cur)
            cur = syz
        res = ResolutionData(frees, maps)
    M._resolution = res
    return res


def projective_dimension(M: Submodule) -> int | None:
    return minimal_free_resolution(M).length


def depth(M: Submodule) -> int | None:
    pd = projective_dimension(M)
    return None if pd is None else M.ring.nvars - pd


# --------------------------------------------------------------------------
# Ext


def _dual(F: FreeModule) -> FreeModule:
    return F.ring.free(tuple(-t for t in F.twists))


def _transpose_rows(images: list[Element], source: FreeModule, target_dual: FreeModule) -> list[Element]:
    """Rows of the matrix of ``images``: row ``a`` as an element of ``target_dual``."""
    rows: list[dict] = [{} for _ in range(source.rank)]
    for b, v in enumerate(images):
        for P, c in v.terms.items():
            a = source.comp(P)
            rows[a][target_dual.pack(b, source.expo(P))] = c
    return [Element(target_dual, r) for r in rows]


def ext_module(M: Submodule, i: int) -> Submodule:
    """``Ext^i(F/M, R)`` presented as ``G/Rel`` (returned as the submodule ``Rel`` of ``G``)."""
    res = minimal_free_resolution(M)
    ring = M.ring
    if res.is_zero() or i < 0 or i > res.length:
        return Submodule(ring.free(()), [])
    Fi = res.frees[i]
    Di = _dual(Fi)
    # kernel of the dual of d_{i+1}
    if i + 1 <= res.length:
        Dnext = _dual(res.frees[i + 1])
        rows = _transpose_rows(res.maps[i], Fi, Dnext)
        _, kernel = syzygies(rows, Di.twists)
    else:
        kernel = [Di.basis(a) for a in range(Di.rank)]
    if not kernel:
        return Submodule(ring.free(()), [])
    # image of the dual of d_i
    image = []
    if i >= 1:
        image = [w for w in _transpose_rows(res.maps[i - 1], res.frees[i - 1], Di) if w.terms]
    s = len(kernel)
    if i + 1 > res.length:
        G, rel = Di, image
    else:
        G = ring.free(tuple(k.degree() for k in kernel))
        if image:
            _, syz = syzygies(kernel + image)
            rel = [Element(G, _project(z, 0, G).terms) for z in syz]
            rel = [r for r in rel if r.terms]
        else:
            rel = []
    G2, pres = prune(Submodule(G, rel))
    return pres


# --------------------------------------------------------------------------
# local cohomology


@dataclass
class LocalCohomology:
    """``H^i_m(F/M)`` read off from ``Ext^{N-i}`` by graded local duality."""

    i: int
    dual: Submodule
    series: HilbertSeries
    nvars: int

    def is_zero(self) -> bool:
        return self.series.is_zero()

    @property
    def dual_dim_deg(self) -> tuple[int | None, int]:
        return self.series.dim_deg()

    def finite(self) -> bool:
        return self.series.is_finite_length()

    def rank(self, j: int) -> int:
        return self.series.at(-j - self.nvars)

    @property
    def end(self) -> int | None:
        """``e(H^i)``; ``None`` stands for minus infinity."""
        a = self.series.initial_degree()
        return None if a is None else -a - self.nvars

    @property
    def start(self) -> int | None:
        """Initial degree of ``H^i``; ``None`` when zero or unbounded below."""
        if self.is_zero() or not self.finite():
            return None
        return -self.series.end() - self.nvars

    def length(self) -> int | None:
        return self.series.length() if self.finite() else None

    def window(self) -> dict[int, int]:
        if self.is_zero():
            return {}
        e = self.end
        lo = self.start if self.finite() else e - WINDOW + 1
        return {j: self.rank(j) for j in range(lo, e + 1)}


@dataclass
class CohomologyProfile:
    nvars: int
    dim: int | None
    modules: list[LocalCohomology] = field(default_factory=list)

    def __getitem__(self, i: int) -> LocalCohomology | None:
        for h in self.modules:
            if h.i == i:
                return h
        return None

    def ends(self) -> dict[int, int | None]:
        return {h.i: h.end for h in self.modules}


def cohomology_profile(M: Submodule) -> CohomologyProfile:
    N = M.ring.nvars
    d, _ = M.hilbert_series.dim_deg()
    prof = CohomologyProfile(N, d)
    if d is None:
        return prof
    for i in range(0, d + 1):
        E = ext_module(M, N - i)
        prof.modules.append(LocalCohomology(i, E, E.hilbert_series, N))
    return prof


def ends_and_rk(P: CohomologyProfile, k: int) -> int | None:
    """``r_k = max(i + e(H^i), i >= k)``; ``None`` when all those modules vanish."""
    vals = [h.i + h.end for h in P.modules if h.i >= k and not h.is_zero()]
    return max(vals, default=None)


# --------------------------------------------------------------------------
# homological degree


def hdeg(M: Submodule) -> int:
    """Homological degree of ``F/M``; recursion through ``Ext^i(F/M, R)``."""
    cached = getattr(M, "_hdeg", None)
    if cached is not None:
        return cached
    d, deg = M.hilbert_series.dim_deg()
    if d is None:
        return 0
    if d == 0:
        return deg
    N = M.ring.nvars
    total = deg
    for i in range(N + 1 - d, N + 1):
        E = ext_module(M, i)
        if E.hilbert_series.is_zero():
            continue
        total += comb(d - 1, i - N - 1 + d) * hdeg(E)
    M._hdeg = total
    return total
