"""Buchberger's algorithm for graded submodules, syzygies, colons and saturation.

Internally an element is a dict from packed module monomials to scalars.  Over
the rationals the dicts hold integers and reductions are fraction-free with the
content stripped afterwards; over a prime field they hold residues.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Iterable, Sequence

from .algebra import (
    ContextError,
    Element,
    FreeModule,
    LinearChange,
    NonHomogeneousError,
    Ring,
)
from .monomial import MonomialModule

ORDER = "grevlex"


def _check_order(order):
    if order not in (None, ORDER):
        raise ValueError(f"only the graded reverse lexicographic order is supported, got {order!r}")


# --------------------------------------------------------------------------
# scalar plumbing


def _integer_terms(v: Element) -> dict:
    """Terms of ``v`` scaled to coprime integers (rationals) or copied (prime field)."""
    if v.ring.field.characteristic:
        return dict(v.terms)
    den = 1
    for c in v.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    out = {P: int(c * den) for P, c in v.terms.items()}
    g = 0
    for c in out.values():
        g = gcd(g, c)
    if g > 1:
        out = {P: c // g for P, c in out.items()}
    return out


def _cleared(v: Element) -> tuple[dict, int]:
    """``(den * terms, den)`` with integer entries; ``den = 1`` over a prime field."""
    if v.ring.field.characteristic:
        return dict(v.terms), 1
    den = 1
    for c in v.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return {P: int(c * den) for P, c in v.terms.items()}, den


def _content(*dicts) -> int:
    g = 0
    for d in dicts:
        for c in d.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


class _Reducer:
    """Polynomial division against a growing list of basis elements."""

    def __init__(self, free: FreeModule, src: FreeModule | None = None):
        self.fm = free
        self.ring = free.ring
        field = free.ring.field
        self.p = field.characteristic
        self.polys: list[dict] = []
        self.leads: list[int] = []
        self.lead_exps: list[int] = []
        self.lead_inv: list = []  # inverse lead coefficient (prime field)
        self.reps: list[dict] = []
        self.by_comp: dict[int, list[int]] = {}
        self.src = src  # free module of the tracked representations

    def _append(self, f: dict, rep: dict | None = None) -> int:
        fm = self.fm
        k = len(self.polys)
        P = min(f)
        self.polys.append(f)
        self.leads.append(P)
        self.lead_exps.append(fm.expo(P))
        self.lead_inv.append(pow(f[P], -1, self.p) if self.p else None)
        self.reps.append(rep)
        self.by_comp.setdefault(fm.comp(P), []).append(k)
        return k

    def divisor(self, P: int, skip: int = -1) -> int | None:
        idx = self.by_comp.get(P & self.fm.cmask)
        if not idx:
            return None
        E = self.fm.expo(P)
        g = self.ring.guard
        lead_exps = self.lead_exps
        for k in idx:
            if k != skip and ((E | g) - lead_exps[k]) & g == g:
                return k
        return None

    def reduce(self, f: dict, full: bool = True, rep: dict | None = None, skip: int = -1):
        """Reduce ``f`` in place; return ``(f, rep, lam)`` with ``lam*f_in - sum(q g) = f_out``."""
        p = self.p
        cbits = self.fm.cbits
        scbits = self.src.cbits if self.src is not None else 0
        track = rep is not None
        lam = 1
        heap = list(f)
        heapify(heap)
        pos = -1
        polys, leads, reps = self.polys, self.leads, self.reps
        scaled = 0
        while heap:
            P = heappop(heap)
            if P <= pos or P not in f:
                continue
            k = self.divisor(P, skip)
            if k is None:
                if not full:
                    break
                pos = P
                continue
            g = polys[k]
            s = P - leads[k]
            c = f[P]
            if p:
                q = c * self.lead_inv[k] % p
                for Q, b in g.items():
                    key = Q + s
                    old = f.get(key)
                    if old is None:
                        f[key] = -q * b % p
                        heappush(heap, key)
                    else:
                        v = (old - q * b) % p
                        if v:
                            f[key] = v
                        else:
                            del f[key]
                if track:
                    rs = (s >> cbits) << scbits
                    for Q, b in reps[k].items():
                        key = Q + rs
                        v = (rep.get(key, 0) - q * b) % p
                        if v:
                            rep[key] = v
                        else:
                            rep.pop(key, None)
            else:
                a = g[leads[k]]
                gg = gcd(c, a)
                ca, cc = a // gg, c // gg
                if ca < 0:
                    ca, cc = -ca, -cc
                if ca != 1:
                    for key in f:
                        f[key] *= ca
                    if track:
                        for key in rep:
                            rep[key] *= ca
                    lam *= ca
                    scaled += 1
                for Q, b in g.items():
                    key = Q + s
                    old = f.get(key)
                    if old is None:
                        f[key] = -cc * b
                        heappush(heap, key)
                    else:
                        v = old - cc * b
                        if v:
                            f[key] = v
                        else:
                            del f[key]
                if track:
                    rs = (s >> cbits) << scbits
                    for Q, b in reps[k].items():
                        key = Q + rs
                        v = rep.get(key, 0) - cc * b
                        if v:
                            rep[key] = v
                        else:
                            rep.pop(key, None)
                if scaled >= 16 and f:
                    scaled = 0
                    cont = _content(f, rep) if track else _content(f)
                    if cont > 1:
                        _divide(f, cont)
                        if track:
                            _divide(rep, cont)
                        lam = Fraction(lam, cont)
        if not p and f:
            cont = _content(f, rep) if track else _content(f)
            if cont > 1:
                _divide(f, cont)
                if track:
                    _divide(rep, cont)
                lam = Fraction(lam, cont)
        return f, rep, lam


def _divide(d: dict, c: int):
    for key in d:
        d[key] //= c


def _normalize(f: dict, p: int, rep: dict | None = None):
    """Monic (prime field) or primitive with positive lead (rationals), in place."""
    P = min(f)
    a = f[P]
    if p:
        if a != 1:
            inv = pow(a, -1, p)
            for k in f:
                f[k] = f[k] * inv % p
            if rep is not None:
                for k in rep:
                    rep[k] = rep[k] * inv % p
        return
    cont = _content(f, rep) if rep is not None else _content(f)
    if a < 0:
        cont = -cont
    if cont != 1:
        _divide(f, cont)
        if rep is not None:
            _divide(rep, cont)


# --------------------------------------------------------------------------
# the Buchberger engine


class _Engine(_Reducer):
    """Graded Buchberger with the normal strategy and Gebauer-Moeller pair updates.

    Pairs and input generators sit in one heap keyed by degree, pairs first
    within a degree, so the input generators whose normal form is nonzero are
    exactly a minimal generating set.  With ``track`` every basis element
    carries its expression in the inputs and S-pairs reducing to zero are
    recorded as syzygies.
    """

    def __init__(self, free: FreeModule, track_src: FreeModule | None = None):
        super().__init__(free, track_src)
        self.track = track_src is not None
        self.rank1 = free.rank == 1
        self.pairs: dict[tuple[int, int], int] = {}
        self.queue: list = []
        self.inputs: list[dict] = []
        self.minimal: list[int] = []
        self.syzygies: list[dict] = []
        self.done_degree = None

    def add_input(self, f: dict, degree: int):
        idx = len(self.inputs)
        self.inputs.append(f)
        heappush(self.queue, (degree, 1, idx, 0, 0))

    def insert_raw(self, f: dict, rep: dict):
        """Put ``f`` into the basis unreduced (tracked syzygy computations)."""
        self._update(self._append(f, rep))

    def complete(self, bound: int | None = None):
        queue = self.queue
        while queue and (bound is None or queue[0][0] <= bound):
            deg, kind, a, i, j = heappop(queue)
            if kind == 0:
                if self.pairs.pop((i, j), None) is None:
                    continue
                f, rep = self._spair(i, j)
            else:
                f = dict(self.inputs[a])
                rep = None
            f, rep, _ = self.reduce(f, True, rep)
            if f:
                _normalize(f, self.p, rep)
                k = self._append(f, rep)
                if kind == 1:
                    self.minimal.append(a)
                self._update(k)
            elif self.track and kind == 0:
                if not self.p and rep:
                    cont = _content(rep)
                    if cont > 1:
                        _divide(rep, cont)
                self.syzygies.append(rep)
        self.done_degree = bound

    def _spair(self, i: int, j: int):
        fm = self.fm
        gi, gj = self.polys[i], self.polys[j]
        Pi, Pj = self.leads[i], self.leads[j]
        L = self._lcm(Pi, Pj)
        si, sj = L - Pi, L - Pj
        p = self.p
        if p:
            ai, aj = gj[Pj], gi[Pi]
        else:
            a, b = gi[Pi], gj[Pj]
            g = gcd(a, b)
            ai, aj = b // g, a // g
        f: dict = {}
        for Q, c in gi.items():
            f[Q + si] = c * ai % p if p else c * ai
        for Q, c in gj.items():
            k = Q + sj
            v = f.get(k, 0) - c * aj
            if p:
                v %= p
            if v:
                f[k] = v
            else:
                f.pop(k, None)
        rep = None
        if self.track:
            cb, scb = fm.cbits, self.src.cbits
            ri, rj = (si >> cb) << scb, (sj >> cb) << scb
            rep = {}
            for Q, c in self.reps[i].items():
                rep[Q + ri] = c * ai % p if p else c * ai
            for Q, c in self.reps[j].items():
                k = Q + rj
                v = rep.get(k, 0) - c * aj
                if p:
                    v %= p
                if v:
                    rep[k] = v
                else:
                    rep.pop(k, None)
        return f, rep

    def _lcm(self, Pi: int, Pj: int) -> int:
        fm = self.fm
        E = self.ring.lcm(fm.expo(Pi), fm.expo(Pj))
        return fm.pack(fm.comp(Pi), E)

    def _update(self, k: int):
        fm = self.fm
        ring = self.ring
        Pk = self.leads[k]
        Ek = self.lead_exps[k]
        comp = fm.comp(Pk)
        others = [i for i in self.by_comp.get(comp, []) if i != k]
        new = [(i, self._lcm(self.leads[i], Pk)) for i in others]

        def coprime(i):
            return self.rank1 and ring.lcm(self.lead_exps[i], Ek) == self.lead_exps[i] + Ek

        # criterion M and F (chain criterion among the new pairs)
        kept: list[tuple[int, int]] = []
        rest = list(new)
        while rest:
            i, L = rest.pop(0)
            E = fm.expo(L)
            if coprime(i) or not any(
                ring.divides(fm.expo(L2), E) for _, L2 in rest + kept
            ):
                kept.append((i, L))
        if not self.track:
            kept = [(i, L) for i, L in kept if not coprime(i)]
        # criterion B on old pairs
        for (i, j), L in list(self.pairs.items()):
            if fm.comp(L) != comp:
                continue
            E = fm.expo(L)
            if ring.divides(Ek, E):
                if self._lcm(self.leads[i], Pk) != L and self._lcm(self.leads[j], Pk) != L:
                    del self.pairs[(i, j)]
        for i, L in kept:
            key = (i, k)
            self.pairs[key] = L
            heappush(self.queue, (fm.degree(L), 0, L, i, k))

    # results ------------------------------------------------------------

    def interreduce(self):
        """Reduce tails in place; leads are already minimal after a degree-ordered run."""
        for k, f in enumerate(self.polys):
            P = self.leads[k]
            tail = {Q: c for Q, c in f.items() if Q != P}
            if not any(self.divisor(Q) is not None for Q in tail):
                continue
            tail, _, lam = self.reduce(tail, True, None)
            lam = Fraction(lam)
            # lam * f = lam * lead + reduced tail; clear the denominator of lam
            out = {Q: c * lam.denominator for Q, c in tail.items()}
            out[P] = f[P] * lam.numerator
            if self.p:
                out = {Q: c % self.p for Q, c in out.items()}
            _normalize(out, self.p)
            self.polys[k] = out


# --------------------------------------------------------------------------
# public types


class GroebnerBasis:
    """Reduced Groebner basis of a graded submodule in the graded revlex order."""

    def __init__(self, free: FreeModule, polys: list[dict], reduced: bool = True):
        self.free = free
        self._polys = polys
        self.reduced = reduced
        self.order = ORDER

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        fm = self.free
        f = fm.ring.field
        out = []
        for d in self._polys:
            P = min(d)
            a = d[P]
            if f.characteristic:
                out.append(Element(fm, dict(d)))
            else:
                out.append(Element(fm, {Q: f(Fraction(c, a)) for Q, c in d.items()}))
        return tuple(sorted(out, key=lambda v: (fm.degree(v.lead()), v.lead())))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self._polys)

    def __repr__(self):
        return "GroebnerBasis(" + ", ".join(map(repr, self.elements)) + ")"

    @cached_property
    def _reducer(self) -> _Reducer:
        red = _Reducer(self.free)
        for d in self._polys:
            red._append(d)
        return red

    def leads(self) -> list[int]:
        return sorted(min(d) for d in self._polys)

    def initial(self) -> MonomialModule:
        fm = self.free
        return MonomialModule(fm, [(fm.ring.unpack(fm.expo(P)), fm.comp(P)) for P in self.leads()])

    def normal_form(self, v: Element) -> Element:
        if v.module != self.free:
            raise ContextError(f"{v.module!r} vs {self.free!r}")
        if not v.terms:
            return v
        field = self.free.ring.field
        f = _integer_terms(v)
        scale = 1
        if not field.characteristic:
            # _integer_terms divided by something: recover the factor
            P = next(iter(f))
            scale = Fraction(v.terms[P]) / f[P]
        f, _, lam = self._reducer.reduce(f, True)
        if field.characteristic:
            return Element(self.free, f)
        mult = Fraction(scale) / Fraction(lam)
        return Element(self.free, {P: field(c * mult) for P, c in f.items()})

    def contains(self, v: Element) -> bool:
        if not v.terms:
            return True
        f, _, _ = self._reducer.reduce(_integer_terms(v), True)
        return not f


class Submodule:
    """Graded submodule ``M`` of a free module ``F``; the module studied is usually ``F/M``."""

    def __init__(self, free: FreeModule, gens: Iterable[Element] = ()):
        self.free = free
        out = []
        for g in gens:
            if not isinstance(g, Element):
                raise TypeError(f"expected an element, got {g!r}")
            if g.module != free:
                raise ContextError(f"generator in {g.module!r}, expected {free!r}")
            if g.terms and not g.is_homogeneous():
                raise NonHomogeneousError(f"generator {g} is not homogeneous")
            if g.terms:
                out.append(g)
        self.gens: tuple[Element, ...] = tuple(out)

    @classmethod
    def ideal(cls, ring: Ring, polys: Iterable[Element]) -> Submodule:
        return cls(ring.R, polys)

    @property
    def ring(self) -> Ring:
        return self.free.ring

    @property
    def field(self):
        return self.free.ring.field

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.gens)) + ")"

    def __len__(self):
        return len(self.gens)

    # Groebner data -------------------------------------------------------

    @cached_property
    def _sorted_gens(self) -> list[Element]:
        return sorted(self.gens, key=lambda v: v.degree())

    @cached_property
    def _engine(self) -> _Engine:
        eng = _Engine(self.free)
        for g in self._sorted_gens:
            eng.add_input(_integer_terms(g), g.degree())
        eng.complete()
        return eng

    @cached_property
    def groebner(self) -> GroebnerBasis:
        eng = self._engine
        eng.interreduce()
        return GroebnerBasis(self.free, [dict(d) for d in eng.polys])

    def groebner_truncated(self, bound: int) -> GroebnerBasis:
        """Basis elements of degree at most ``bound`` (a truncated computation)."""
        eng = _Engine(self.free)
        for g in self._sorted_gens:
            eng.add_input(_integer_terms(g), g.degree())
        eng.complete(bound)
        eng.interreduce()
        return GroebnerBasis(self.free, [dict(d) for d in eng.polys], reduced=True)

    @cached_property
    def minimal_generators(self) -> tuple[Element, ...]:
        eng = self._engine
        gens = self._sorted_gens
        return tuple(gens[a] for a in sorted(eng.minimal))

    @cached_property
    def initial(self) -> MonomialModule:
        return self.groebner.initial()

    @cached_property
    def hilbert_series(self):
        return self.initial.hilbert_series()

    def contains(self, v: Element) -> bool:
        return self.groebner.contains(v)

    def contains_module(self, other: Submodule) -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: Submodule) -> bool:
        return (
            self.free == other.free
            and self.hilbert_series == other.hilbert_series
            and self.contains_module(other)
        )

    def is_zero(self) -> bool:
        return not self.gens

    def is_whole(self) -> bool:
        """``M = F``, so the quotient vanishes."""
        return self.hilbert_series.is_zero()

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.gens)

    def as_monomial(self) -> MonomialModule:
        fm = self.free
        return MonomialModule(fm, [(fm.ring.unpack(fm.expo(P)), fm.comp(P)) for g in self.gens for P in g.terms])

    def max_degree(self) -> int:
        return max((g.degree() for g in self.gens), default=0)

    # changes of context ------------------------------------------------------

    def change_field(self, field) -> Submodule:
        """Reduce coefficients into ``field`` (e.g. rationals to a prime field)."""
        ring = Ring(self.ring.nvars, field)
        fm = ring.free(self.free.twists)
        gens = []
        for g in self.gens:
            gens.append(Element(fm, {P: field(c) for P, c in g.terms.items() if field(c) != 0}))
        return Submodule(fm, gens)

    def apply(self, change: LinearChange) -> Submodule:
        return Submodule(self.free, [change(g) for g in self.gens])

    def prune(self) -> tuple[FreeModule, Submodule]:
        """Equivalent presentation of ``F/M`` with no unit entries among the relations."""
        return prune(self)


# --------------------------------------------------------------------------
# operations


def buchberger(gens: Sequence[Element], order=None) -> GroebnerBasis:
    _check_order(order)
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to fix the free module")
    return Submodule(gens[0].module, gens).groebner


def normal_form(v: Element, G: GroebnerBasis) -> Element:
    return G.normal_form(v)


def initial_module(M, order=None) -> MonomialModule:
    _check_order(order)
    if isinstance(M, MonomialModule):
        return M
    return M.initial


def syzygies(elements: Sequence[Element], twists: Sequence[int] | None = None, minimal: bool = True):
    """Generators of the syzygies of ``elements``, in the free module with the given twists.

    ``twists`` defaults to the element degrees and is required when an element
    is zero.  Returns ``(source free module, list of syzygies)``.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("no elements")
    fm = elements[0].module
    ring = fm.ring
    if twists is None:
        twists = []
        for v in elements:
            if not v.terms:
                raise ValueError("zero element needs an explicit twist")
            twists.append(v.degree())
    src = ring.free(tuple(twists))
    for v, t in zip(elements, twists):
        if v.module != fm:
            raise ContextError("elements of different free modules")
        if v.terms and v.degree() != t:
            raise NonHomogeneousError("element degree differs from its twist")
    eng = _Engine(fm, src)
    out: list[Element] = []
    for i, v in enumerate(elements):
        if not v.terms:
            out.append(src.basis(i))
            continue
        f, den = _cleared(v)
        rep = {src.pack(i, 0): den}
        eng.insert_raw(f, rep)
    eng.complete()
    field = ring.field
    for rep in eng.syzygies:
        if rep:
            out.append(Element(src, {P: field(c) for P, c in rep.items()}))
    if minimal and out:
        out = list(Submodule(src, out).minimal_generators)
    return src, out


def syzygy_module(G, twists=None) -> list[Element]:
    """Minimal generators of the syzygies among the elements of ``G``."""
    elements = list(G.elements if isinstance(G, GroebnerBasis) else G)
    return syzygies(elements, twists)[1]


def _project(v: Element, start: int, target: FreeModule) -> Element:
    """Components ``start..start+rank`` of ``v`` as an element of ``target``."""
    fm = v.module
    out = {}
    for P, c in v.terms.items():
        comp = fm.comp(P)
        if start <= comp < start + target.rank:
            out[target.pack(comp - start, fm.expo(P))] = c
    return Element(target, out)


def _combine(coeffs: Element, elements: Sequence[Element], target: FreeModule) -> Element:
    """``sum coeffs[i] * elements[i]``."""
    out = target.zero()
    for i, p in enumerate(coeffs.components()):
        if p.terms:
            out = out + p * elements[i]
    return out


def _canonical(fm: FreeModule, gens) -> Submodule:
    """Submodule generated by ``gens``, given by its reduced Groebner basis."""
    return Submodule(fm, Submodule(fm, gens).groebner.elements)


def intersect(M: Submodule, N: Submodule) -> Submodule:
    fm = M.free
    if N.free != fm:
        raise ContextError("submodules of different free modules")
    if not M.gens or not N.gens:
        return Submodule(fm, [])
    a, b = list(M.gens), list(N.gens)
    src, syz = syzygies(a + b)
    head = src.ring.free(src.twists[: len(a)])
    gens = [_combine(_project(s, 0, head), a, fm) for s in syz]
    return _canonical(fm, gens)


def colon(M: Submodule, f: Element) -> Submodule:
    """``M : f = {v in F : f v in M}`` for a nonzero homogeneous polynomial ``f``."""
    if not f.terms:
        raise ValueError("colon by the zero polynomial")
    if not f.is_polynomial() or f.ring != M.ring:
        raise ContextError("colon needs a polynomial of the same ring")
    if not f.is_homogeneous():
        raise NonHomogeneousError("colon needs a homogeneous polynomial")
    fm = M.free
    if f.degree() == 0:
        return M
    if len(f.terms) == 1:
        E = next(iter(f.terms))
        exps = M.ring.unpack(E)
        if sum(1 for e in exps if e) == 1:
            i = next(i for i, e in enumerate(exps) if e)
            return colon_variable(M, i, exps[i])
    if f.degree() == 1:
        return colon_linear(M, f)
    return _colon_syz(M, f)


def _linear_coeffs(l: Element) -> list:
    ring = l.ring
    coeffs = [0] * ring.nvars
    for E, c in l.terms.items():
        coeffs[next(i for i, e in enumerate(ring.unpack(E)) if e)] = c
    return coeffs


def colon_linear(M: Submodule, l: Element, k: int | None = 1) -> Submodule:
    """``M : l^k`` for a linear form, by moving ``l`` to a coordinate variable."""
    ring = M.ring
    field = ring.field
    c = _linear_coeffs(l)
    v = max(i for i, x in enumerate(c) if x != 0)
    n = ring.nvars
    fwd = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
    back = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
    # fwd: x_v -> (x_v - sum_{j != v} c_j x_j) / c_v, so that l -> x_v
    for r in range(n):
        fwd[r][v] = field.inv(c[v]) if r == v else field(field.div(-c[r], c[v]))
        back[r][v] = c[r]
    out = colon_variable(M.apply(LinearChange(ring, fwd)), v, k)
    return _canonical(M.free, out.apply(LinearChange(ring, back)).gens)


def _colon_syz(M: Submodule, f: Element) -> Submodule:
    fm = M.free
    if not M.gens:
        return M
    a = list(M.gens)
    fe = [f * fm.basis(i) for i in range(fm.rank)]
    src, syz = syzygies(a + fe)
    target = fm.ring.free(fm.twists)
    gens = [_project(s, len(a), target) for s in syz]
    gens = [Element(fm, g.terms) for g in gens if g.terms]
    return _canonical(fm, gens)


def colon_ideal(M: Submodule, J: Sequence[Element]) -> Submodule:
    """``M : J`` as the intersection of the colons by the generators of ``J``."""
    out = None
    for h in J:
        if not h.terms:
            continue
        c = colon(M, h)
        out = c if out is None else intersect(out, c)
    if out is None:
        return Submodule(M.free, [M.free.basis(i) for i in range(M.free.rank)])
    return out


def _swap(ring: Ring, i: int, j: int) -> LinearChange:
    n = ring.nvars
    g = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    g[i][i] = g[j][j] = 0
    g[i][j] = g[j][i] = 1
    return LinearChange(ring, g)


def colon_variable(M: Submodule, i: int, k: int | None = 1) -> Submodule:
    """``M : x_i^k`` (``k=None`` for ``x_i^infinity``)."""
    fm = M.free
    ring = M.ring
    if not M.gens:
        return M
    last = ring.nvars - 1
    sw = _swap(ring, i, last) if i != last else None
    N = M.apply(sw) if sw else M
    G = N.groebner
    digit = 8 * last
    out = []
    for d in G._polys:
        P = min(d)
        a = (fm.expo(P) >> digit) & 0xFF
        if k is not None:
            a = min(a, k)
        if a:
            s = (a << digit) << fm.cbits
            d = {Q - s: c for Q, c in d.items()}
        out.append(Element(fm, {Q: ring.field(c) for Q, c in d.items()}))
    res = Submodule(fm, out)
    if sw:
        res = res.apply(sw)
    return _canonical(fm, res.gens)


def saturate(M: Submodule) -> Submodule:
    """``M^sat = union of M : m^k``, computed as the intersection of the ``M : x_i^infinity``."""
    fm = M.free
    ring = M.ring
    if ring.nvars == 0:
        return Submodule(fm, [fm.basis(i) for i in range(fm.rank)])
    if not M.gens:
        return M
    if M.is_monomial():
        return M.as_monomial().saturate().to_submodule()
    out = colon_variable(M, 0, None)
    for i in range(1, ring.nvars):
        out = intersect(out, colon_variable(M, i, None))
    return out


def saturation_length(M: Submodule) -> int:
    """Length of ``M^sat / M``."""
    from .hilbert import HilbertSeries

    diff: HilbertSeries = M.hilbert_series - saturate(M).hilbert_series
    return diff.length() if not diff.is_zero() else 0


def quotient_by_linear_form(M: Submodule, l: Element) -> Submodule:
    """Image of ``M`` in ``F/lF`` over the ring with one variable fewer.

    With ``k`` the last variable occurring in ``l``, substitute
    ``x_k = -(sum_{j<k} c_j x_j)/c_k`` and drop ``x_k``.
    """
    ring = M.ring
    if not l.terms or not l.is_polynomial():
        raise ValueError("need a nonzero linear form")
    if l.ring != ring:
        raise ContextError("linear form from a different ring")
    if l.degree() != 1:
        raise NonHomogeneousError("need a linear form")
    field = ring.field
    coeffs = _linear_coeffs(l)
    k = max(i for i, c in enumerate(coeffs) if c != 0)
    n = ring.nvars
    g = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for r in range(n):
        g[r][k] = field(field.div(-coeffs[r], coeffs[k])) if r != k else 0
    sub = LinearChange(ring, g)
    small = Ring(n - 1, field)
    fm = M.free
    target = small.free(fm.twists)
    out = []
    for v in M.gens:
        w = sub(v)
        terms = {}
        for P, c in w.terms.items():
            comp, exps = fm.unpack(P)
            terms[target.pack(comp, exps[:k] + exps[k + 1:])] = c
        if terms:
            out.append(Element(target, terms))
    return Submodule(target, out)


def prune(M: Submodule) -> tuple[FreeModule, Submodule]:
    """Remove free summands killed by unit relations: ``F/M = F'/M'`` with ``M' in m F'``."""
    fm = M.free
    gens = list(M.minimal_generators) if M.gens else []
    keep = list(range(fm.rank))
    field = M.field
    while True:
        hit = None
        for gi, v in enumerate(gens):
            for P, c in v.terms.items():
                if fm.expo(P) == 0:
                    hit = (gi, fm.comp(P), c)
                    break
            if hit:
                break
        if hit is None:
            break
        gi, comp, c = hit
        v = gens.pop(gi)
        # e_comp = -(1/c) (v - c e_comp)
        rest = v - fm.basis(comp).scale(c)
        sub = rest.scale(field.div(-1, c))
        new = []
        for w in gens:
            parts = w.components()
            a = parts[comp]
            w2 = w - a * fm.basis(comp)
            if a.terms:
                w2 = w2 + a * sub
            new.append(w2)
        gens = [w for w in new if w.terms]
        keep.remove(comp)
    if len(keep) == fm.rank:
        return fm, Submodule(fm, gens)
    target = fm.ring.free(tuple(fm.twists[i] for i in keep))
    index = {c: i for i, c in enumerate(keep)}
    out = []
    for w in gens:
        terms = {}
        for P, c in w.terms.items():
            comp = fm.comp(P)
            terms[target.pack(index[comp], fm.expo(P))] = c
        out.append(Element(target, terms))
    res = Submodule(target, out)
    return target, Submodule(target, res.minimal_generators)
