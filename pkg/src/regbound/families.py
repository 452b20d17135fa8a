"""Ideals of maximal regularity: construction and closed-form predictions.

For ``0 <= t <= n``, forms ``f_t..f_n`` of degrees ``d_t..d_n`` and linear
forms ``l_0..l_{n-t-1}`` the ideal is
``(f_n l_0, f_n f_{n-1} l_1, ..., f_n...f_{t+1} l_{n-t-1}, f_n...f_t)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .algebra import QQ, Element, Ring, monomials_of_degree
from .groebner import Submodule
from .hilbert import HilbertSeries, series_from_terms
from .monomial import MonomialModule

FAMILY_COEFF_RANGE = 9
MAX_SAMPLES = 8


class DegenerateFamilyError(ValueError):
    """The chosen forms do not give the expected number of minimal generators."""


@dataclass
class FamilySpec:
    n: int
    t: int
    degs: tuple[int, ...]  # d_t, ..., d_n
    f: dict[int, Element] | None = None
    l: dict[int, Element] | None = None
    field: object = QQ

    def __post_init__(self):
        self.degs = tuple(int(d) for d in self.degs)
        if not 0 <= self.t <= self.n:
            raise ValueError("need 0 <= t <= n")
        if len(self.degs) != self.n - self.t + 1:
            raise ValueError(f"need {self.n - self.t + 1} degrees d_t..d_n")
        if self.degs[0] < 1 or self.degs[-1] < 1 or min(self.degs) < 0:
            raise ValueError("need d_t, d_n >= 1 and all d_i >= 0")

    def d(self, i: int) -> int:
        """``d_i`` for ``t <= i <= n``."""
        return self.degs[i - self.t]

    @property
    def ring(self) -> Ring:
        return Ring(self.n + 1, self.field)

    def label(self) -> str:
        return f"n={self.n} t={self.t} d=({','.join(map(str, self.degs))})"


def family_grid(max_n: int = 3, max_d: int = 2) -> list[FamilySpec]:
    """Every admissible ``(n, t, d_t..d_n)`` with ``n <= max_n`` and ``d_i <= max_d``."""
    out = []
    for n in range(max_n + 1):
        for t in range(n + 1):
            ends = range(1, max_d + 1)
            mids = [range(0, max_d + 1)] * max(n - t - 1, 0)
            if t == n:
                for d in ends:
                    out.append(FamilySpec(n, t, (d,)))
                continue
            for dt in ends:
                for mid in itertools.product(*mids):
                    for dn in ends:
                        out.append(FamilySpec(n, t, (dt, *mid, dn)))
    return out


# --------------------------------------------------------------------------
# construction


def _ideal_from(spec: FamilySpec, f: dict[int, Element], l: dict[int, Element]) -> list[Element]:
    n, t = spec.n, spec.t
    gens = []
    prod = f[n]
    for k in range(n - t):
        gens.append(prod * l[k])
        prod = prod * f[n - k - 1]
    gens.append(prod)
    return gens


def build_extremal_ideal(spec: FamilySpec) -> Submodule:
    """The ideal for explicit ``f``/``l``, checked to have ``n+1-t`` minimal generators."""
    if spec.f is None or spec.l is None:
        raise ValueError("explicit forms needed; use sample_family for random ones")
    ring = spec.ring
    for i in range(spec.t, spec.n + 1):
        fi = spec.f[i]
        if not fi.terms or fi.degree() != spec.d(i):
            raise ValueError(f"f_{i} must be a nonzero form of degree {spec.d(i)}")
    for k in range(spec.n - spec.t):
        if not spec.l[k].terms or spec.l[k].degree() != 1:
            raise ValueError(f"l_{k} must be a nonzero linear form")
    I = Submodule.ideal(ring, _ideal_from(spec, spec.f, spec.l))
    if len(I.minimal_generators) != spec.n + 1 - spec.t:
        raise DegenerateFamilyError(
            f"{spec.label()}: {len(I.minimal_generators)} minimal generators, expected {spec.n + 1 - spec.t}"
        )
    return I


def sample_family(spec: FamilySpec, seed: int = 0) -> tuple[FamilySpec, Submodule]:
    """Random member with ``l_i = x_i`` and ``f_i`` outside ``(x_0, ..., x_{n-i-1})``."""
    ring = spec.ring
    n, t = spec.n, spec.t
    rng = np.random.default_rng([seed, spec.n, spec.t, *spec.degs])
    l = {k: ring.var(k) for k in range(n - t)}
    for _ in range(MAX_SAMPLES):
        f = {}
        for i in range(t, n + 1):
            for _ in range(MAX_SAMPLES):
                fi = _random_form(ring, spec.d(i), rng)
                lin = Submodule.ideal(ring, [ring.var(j) for j in range(n - i)])
                if fi.terms and not lin.contains(fi):
                    break
            else:
                raise DegenerateFamilyError(f"could not sample f_{i}")
            f[i] = fi
        full = FamilySpec(n, t, spec.degs, f, l, spec.field)
        try:
            return full, build_extremal_ideal(full)
        except DegenerateFamilyError:
            continue
    raise DegenerateFamilyError(f"{spec.label()}: no admissible sample")


def _random_form(ring: Ring, d: int, rng) -> Element:
    r = FAMILY_COEFF_RANGE
    return ring.poly({e: int(rng.integers(-r, r + 1)) for e in monomials_of_degree(ring.nvars, d)})


# --------------------------------------------------------------------------
# closed forms


def family_series(degs_by_index: dict[int, int], nvars: int) -> HilbertSeries:
    """``sum_j (1 - z^{d_j}) / (1-z)^{j+1} * prod_{i>j} z^{d_i}`` over ``(1-z)^nvars``."""
    top = max(degs_by_index)
    terms = []
    for j, dj in degs_by_index.items():
        if dj == 0:
            continue
        shift = sum(degs_by_index.get(i, 0) for i in range(j + 1, top + 1))
        k = nvars - j - 1
        # (1 - z^dj) (1-z)^k z^shift
        terms.append((1, shift, k))
        terms.append((-1, shift + dj, k))
    return series_from_terms(terms, nvars)


@dataclass
class FamilyPrediction:
    hilbert: HilbertSeries
    reg: int
    bdeg: int
    hdeg: int
    deg: int
    depth: int
    dim: int
    gin: MonomialModule
    # i -> (dual dimension, dual degree, end e(H^i)) for the nonzero H^i
    cohomology: dict[int, tuple[int, int, int]] = field(default_factory=dict)
    hdeg_equality: bool = False

    def ext_series(self, i: int, nvars: int) -> HilbertSeries:
        """Predicted series of ``Ext^{N-i}(A, R)`` (zero when ``H^i`` vanishes)."""
        if i not in self.cohomology:
            return HilbertSeries.make({}, nvars)
        dim, d, end = self.cohomology[i]
        return series_from_terms([(1, -end - nvars, nvars - dim - 1), (-1, -end - nvars + d, nvars - dim - 1)], nvars)


def predicted_gin(spec: FamilySpec) -> MonomialModule:
    n, t = spec.n, spec.t
    ring = spec.ring
    gens = []
    for k in range(n - t + 1):
        e = [0] * (n + 1)
        for a in range(k):
            e[a] = spec.d(n - a)
        e[k] = spec.d(n - k) + 1 if k < n - t else spec.d(t)
        gens.append(tuple(e))
    return MonomialModule.ideal(ring, gens)


def hdeg_equality_predicate(spec: FamilySpec) -> bool:
    """``reg = hdeg - 1`` exactly when ``d_i = 0`` for ``1 <= i <= n-2``."""
    return all(spec.d(i) == 0 for i in range(max(1, spec.t), spec.n - 1))


def closed_forms(spec: FamilySpec) -> FamilyPrediction:
    n, t = spec.n, spec.t
    total = sum(spec.degs)
    d = {i: spec.d(i) for i in range(t, n + 1)}
    coh = {}
    for i in range(t, n + 1):
        if d[i]:
            coh[i] = (i, d[i], sum(d[j] for j in range(i, n + 1)) - i - 1)
    hdeg = d[n] + sum(comb(n - 1, i) * d[i] for i in range(t, n))
    return FamilyPrediction(
        hilbert=family_series(d, n + 1),
        reg=total - 1,
        bdeg=total,
        hdeg=hdeg,
        deg=d[n],
        depth=t,
        dim=n,
        gin=predicted_gin(spec),
        cohomology=coh,
        hdeg_equality=hdeg_equality_predicate(spec),
    )


# --------------------------------------------------------------------------
# fitting a Hilbert series to the closed form


def fit_degree_vector(H: HilbertSeries) -> tuple[int, ...] | None:
    """Degrees ``(d_0, ..., d_n)``, ``n = dim``, with ``H`` equal to the closed form, or ``None``.

    Peels the top term: ``d_k`` is forced to be the multiplicity in dimension ``k``.
    """
    dim, _ = H.dim_deg()
    if dim is None:
        return None
    N = H.nvars
    cur = H
    out = {}
    for k in range(dim, -1, -1):
        if cur.is_zero():
            out[k] = 0
            continue
        dk, deg = cur.dim_deg()
        if dk > k:
            return None
        if dk < k:
            out[k] = 0
            continue
        if deg <= 0:
            return None
        out[k] = deg
        term = series_from_terms([(1, 0, N - k - 1), (-1, deg, N - k - 1)], N)
        rest = cur - term
        if rest.is_zero():
            cur = rest
            continue
        if rest.shift < deg:
            return None
        cur = HilbertSeries(rest.coeffs, rest.shift - deg, N)
    if not cur.is_zero():
        return None
    return tuple(out[k] for k in range(dim + 1))
