"""Hilbert series of graded quotients ``F/M`` with exact integer numerators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .monomial import MonomialModule, colon_var_power, minimalize

# --------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a: list[int], b: list[int], shift_b: int = 0) -> list[int]:
    out = list(a) + [0] * max(0, len(b) + shift_b - len(a))
    for i, x in enumerate(b):
        out[i + shift_b] += x
    return _trim(out)


def _mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def one_minus_z_power(k: int) -> list[int]:
    return [(-1) ** i * comb(k, i) for i in range(k + 1)]


def _divide_one_minus_z(c: list[int]) -> list[int]:
    """Exact division by ``(1 - z)``; assumes ``sum(c) == 0``."""
    out = []
    acc = 0
    for x in c[:-1]:
        acc += x
        out.append(acc)
    return _trim(out)


# --------------------------------------------------------------------------
# monomial ideal numerators by pivot splitting


@lru_cache(maxsize=200_000)
def ideal_numerator(gens: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Numerator ``q`` with ``H_{R/J} = q / (1-z)^(n+1)`` for minimal monomial generators ``gens``."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return ()
    nv = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(nv)]
    v = max(range(nv), key=lambda i: (counts[i], -i))
    if counts[v] <= 1:
        # pairwise coprime generators: a complete intersection
        out = [1]
        for g in gens:
            d = sum(g)
            out = _mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    e = min(g[v] for g in gens if g[v])
    pivot = tuple(e if i == v else 0 for i in range(nv))
    plus = tuple(minimalize([g for g in gens if not g[v]] + [pivot]))
    colon = tuple(colon_var_power(list(gens), v, e))
    left = list(ideal_numerator(plus))
    right = list(ideal_numerator(colon))
    return tuple(_add(left, right, e))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeries:
    """``H(z) = z^shift * (c_0 + c_1 z + ...) / (1 - z)^nvars``, kept unreduced."""

    coeffs: tuple[int, ...]
    shift: int
    nvars: int

    @classmethod
    def make(cls, laurent: dict[int, int] | list[int], nvars: int, shift: int = 0) -> HilbertSeries:
        if isinstance(laurent, dict):
            items = {k: v for k, v in laurent.items() if v}
            if not items:
                return cls((), 0, nvars)
            lo, hi = min(items), max(items)
            return cls(tuple(items.get(k, 0) for k in range(lo, hi + 1)), lo, nvars)
        c = list(laurent)
        lead = 0
        while lead < len(c) and c[lead] == 0:
            lead += 1
        c = _trim(c[lead:])
        return cls(tuple(c), shift + lead if c else 0, nvars)

    # -- arithmetic ----------------------------------------------------------

    def as_dict(self) -> dict[int, int]:
        return {self.shift + i: c for i, c in enumerate(self.coeffs) if c}

    def _aligned(self, other: HilbertSeries) -> tuple[dict, dict, int]:
        N = max(self.nvars, other.nvars)
        a = _rescale(self, N).as_dict()
        b = _rescale(other, N).as_dict()
        return a, b, N

    def __add__(self, other: HilbertSeries) -> HilbertSeries:
        a, b, N = self._aligned(other)
        for k, v in b.items():
            a[k] = a.get(k, 0) + v
        return HilbertSeries.make(a, N)

    def __sub__(self, other: HilbertSeries) -> HilbertSeries:
        a, b, N = self._aligned(other)
        for k, v in b.items():
            a[k] = a.get(k, 0) - v
        return HilbertSeries.make(a, N)

    def times_z(self, k: int) -> HilbertSeries:
        if not self.coeffs:
            return self
        return HilbertSeries(self.coeffs, self.shift + k, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a == b

    def __hash__(self):
        c, s, d = self.reduced()
        return hash((c, s, d))

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- reductions ----------------------------------------------------------

    def reduced(self) -> tuple[tuple[int, ...], int, int]:
        """``(h, shift, d)`` with ``H = z^shift h(z)/(1-z)^d`` and ``h(1) != 0``."""
        c = list(self.coeffs)
        d = self.nvars
        if not c:
            return (), 0, 0
        while d > 0 and sum(c) == 0:
            c = _divide_one_minus_z(c)
            d -= 1
        if sum(c) == 0:
            raise ValueError("numerator vanishes at 1 with no denominator left: not a Hilbert series")
        return tuple(c), self.shift, d

    def numerator(self, start: int = 0) -> list[int]:
        """Coefficient list of the numerator over ``(1-z)^nvars`` from ``z^start`` upward."""
        if not self.coeffs:
            return []
        if self.shift < start:
            raise ValueError("numerator has terms below the requested start degree")
        return [0] * (self.shift - start) + list(self.coeffs)

    def is_finite_length(self) -> bool:
        return self.dim_deg()[0] in (None, 0)

    # -- values --------------------------------------------------------------

    def at(self, j: int) -> int:
        """Coefficient of ``z^j`` in the power series expansion."""
        N = self.nvars
        total = 0
        for i, c in enumerate(self.coeffs):
            k = j - self.shift - i
            if k < 0:
                break
            total += c * (comb(k + N - 1, N - 1) if N > 0 else (1 if k == 0 else 0))
        return total

    def dim_deg(self) -> tuple[int | None, int]:
        if not self.coeffs:
            return None, 0
        h, _, d = self.reduced()
        return d, sum(h)

    def initial_degree(self) -> int | None:
        return self.shift if self.coeffs else None

    def end(self) -> int | None:
        """Largest degree with nonzero value; only for finite length."""
        if not self.coeffs:
            return None
        h, s, d = self.reduced()
        if d != 0:
            raise ValueError("infinite length module has no end")
        k = len(h) - 1
        while h[k] == 0:
            k -= 1
        return s + k

    def length(self) -> int:
        d, deg = self.dim_deg()
        if d not in (None, 0):
            raise ValueError("module does not have finite length")
        return deg

    def values(self, lo: int, hi: int) -> list[int]:
        return [self.at(j) for j in range(lo, hi + 1)]

    def __repr__(self):
        return f"HilbertSeries(z^{self.shift}*{list(self.coeffs)} / (1-z)^{self.nvars})"


def _rescale(H: HilbertSeries, N: int) -> HilbertSeries:
    if H.nvars == N:
        return H
    if H.nvars > N:
        raise ValueError("cannot lower the denominator exponent")
    c = _mul(list(H.coeffs), one_minus_z_power(N - H.nvars))
    return HilbertSeries.make(c, N, H.shift)


# --------------------------------------------------------------------------
# operations


def hilbert_series_monomial(N: MonomialModule) -> HilbertSeries:
    nv = N.ring.nvars
    total: dict[int, int] = {}
    for comp, ideal in enumerate(N.ideals):
        gens = tuple(sorted(ideal))
        num = ideal_numerator(gens) if nv else ((0,) if ideal else (1,))
        tw = N.free.twists[comp]
        for i, c in enumerate(num):
            total[tw + i] = total.get(tw + i, 0) + c
    return HilbertSeries.make(total, nv)


def hilbert_series_of(M) -> HilbertSeries:
    """Hilbert series of ``F/M`` via the initial module (Macaulay)."""
    from .groebner import initial_module

    return hilbert_series_monomial(initial_module(M))


def dim_deg(H: HilbertSeries) -> tuple[int | None, int]:
    """``(dim, deg)``; ``dim`` is ``None`` for the zero module, whose degree is 0."""
    return H.dim_deg()


def hilbert_function_at(H: HilbertSeries, j: int) -> int:
    return H.at(j)


def series_from_terms(terms: list[tuple[int, int, int]], nvars: int) -> HilbertSeries:
    """Sum of ``coeff * z^shift * (1-z)^k`` terms over ``(1-z)^nvars``, given as ``(coeff, shift, k)``."""
    total: dict[int, int] = {}
    for coeff, shift, k in terms:
        for i, c in enumerate(one_minus_z_power(k)):
            total[shift + i] = total.get(shift + i, 0) + coeff * c
    return HilbertSeries.make(total, nvars)


def hilbert_function_direct(M, j: int) -> int:
    """``dim [F/M]_j`` by linear algebra on the monomial multiples of the generators.

    Independent of Groebner bases; used as an oracle for small degrees.
    """
    from ._kernels import rank_mod_p, rank_rational
    from .algebra import monomials_of_degree

    fm = M.free
    ring = fm.ring
    nv = ring.nvars
    cols = {}
    for comp, tw in enumerate(fm.twists):
        for e in monomials_of_degree(nv, j - tw):
            cols[fm.pack(comp, e)] = len(cols)
    if not cols:
        return 0
    rows = []
    for g in M.gens:
        d = g.degree()
        for u in monomials_of_degree(nv, j - d):
            s = fm.shift(ring.pack(u))
            row = [0] * len(cols)
            for P, c in g.terms.items():
                row[cols[P + s]] = c
            rows.append(row)
    if not rows:
        return len(cols)
    p = ring.field.characteristic
    rank = rank_mod_p(rows, p) if p else rank_rational(rows)
    return len(cols) - rank
