"""Monomial submodules of graded free modules (ideals are the rank-one case)."""

from __future__ import annotations

from typing import Iterable

from .algebra import Element, FreeModule, Ring


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(monos: Iterable[tuple]) -> list[tuple]:
    """Minimal generators of the monomial ideal generated by ``monos``."""
    out: list[tuple] = []
    for m in sorted(set(monos), key=lambda e: (sum(e), e)):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def intersect_ideals(a: list[tuple], b: list[tuple]) -> list[tuple]:
    return minimalize(lcm(x, y) for x in a for y in b)


def colon_var_power(gens: list[tuple], i: int, k: int | None = None) -> list[tuple]:
    """``J : x_i^k`` (``k=None`` means ``x_i^infinity``)."""
    out = []
    for g in gens:
        e = list(g)
        e[i] = 0 if k is None else max(0, e[i] - k)
        out.append(tuple(e))
    return minimalize(out)


def saturate_ideal(gens: list[tuple], nvars: int) -> list[tuple]:
    """``J : m^infinity`` as the intersection of the ``J : x_i^infinity``."""
    if nvars == 0:
        return [()]  # m = 0 kills everything
    if not gens:
        return []
    out = colon_var_power(gens, 0)
    for i in range(1, nvars):
        out = intersect_ideals(out, colon_var_power(gens, i))
    return out


class MonomialModule:
    """Finitely generated monomial submodule ``N = sum_i J_i e_i`` of a free module.

    Generators are kept minimal and sorted in descending module order.
    """

    def __init__(self, free: FreeModule, gens: Iterable[tuple[tuple[int, ...], int]]):
        self.free = free
        per: list[list[tuple]] = [[] for _ in range(free.rank)]
        for exps, comp in gens:
            exps = tuple(exps)
            if len(exps) != free.ring.nvars:
                raise ValueError("monomial from a different ring")
            per[comp].append(exps)
        self.ideals: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
            tuple(minimalize(p)) for p in per
        )
        self._hs = None
        self.borel_fixed: bool | None = None

    @classmethod
    def ideal(cls, ring: Ring, monos: Iterable[tuple[int, ...]]) -> MonomialModule:
        return cls(ring.R, [(m, 0) for m in monos])

    @property
    def ring(self) -> Ring:
        return self.free.ring

    @property
    def gens(self) -> list[tuple[tuple[int, ...], int]]:
        fm = self.free
        pairs = [(e, c) for c, ideal in enumerate(self.ideals) for e in ideal]
        return sorted(pairs, key=lambda ec: fm.sort_key(fm.pack(ec[1], ec[0])))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialModule)
            and self.free == other.free
            and [set(a) for a in self.ideals] == [set(b) for b in other.ideals]
        )

    def __hash__(self):
        return hash((self.free, tuple(frozenset(a) for a in self.ideals)))

    def __repr__(self):
        from .algebra import _format_monomial

        def mono(e):
            return _format_monomial(e) or "1"

        if self.free.rank == 1:
            body = ", ".join(mono(e) for e, _ in self.gens)
        else:
            body = ", ".join(f"{mono(e)}*e{c}" for e, c in self.gens)
        return f"({body})"

    def __len__(self):
        return sum(len(i) for i in self.ideals)

    def is_zero(self) -> bool:
        return all(not i for i in self.ideals)

    def is_whole(self) -> bool:
        """True when ``N = F`` (so ``F/N = 0``)."""
        zero = (0,) * self.ring.nvars
        return all(zero in i for i in self.ideals)

    def contains(self, exps: tuple[int, ...], comp: int = 0) -> bool:
        return any(_divides(g, exps) for g in self.ideals[comp])

    def max_exponent(self) -> int:
        return max((max(e, default=0) for i in self.ideals for e in i), default=0)

    def max_degree(self) -> int:
        return max((sum(e) for i in self.ideals for e in i), default=0)

    # constructions ---------------------------------------------------------

    def _map(self, fn, free=None) -> MonomialModule:
        free = free or self.free
        return MonomialModule(free, [(e, c) for c, ideal in enumerate(self.ideals) for e in fn(list(ideal))])

    def colon_var(self, i: int, k: int = 1) -> MonomialModule:
        return self._map(lambda g: colon_var_power(g, i, k))

    def saturate(self) -> MonomialModule:
        nv = self.ring.nvars
        return self._map(lambda g: saturate_ideal(g, nv))

    def saturate_last(self) -> MonomialModule:
        """``N : x_n^infinity``; equals the saturation when ``N`` is Borel-fixed."""
        nv = self.ring.nvars
        if nv == 0:
            return self.saturate()
        return self._map(lambda g: colon_var_power(g, nv - 1))

    def cut_last(self) -> MonomialModule:
        """Image of ``N`` after setting ``x_n = 0``, over the ring in one fewer variable."""
        ring = self.ring
        sub = Ring(ring.nvars - 1, ring.field)
        free = sub.free(self.free.twists)
        gens = [(e[:-1], c) for c, ideal in enumerate(self.ideals) for e in ideal if e[-1] == 0]
        return MonomialModule(free, gens)

    def with_ring(self, ring: Ring) -> MonomialModule:
        return MonomialModule(ring.free(self.free.twists), self.gens)

    def to_submodule(self):
        from .groebner import Submodule

        fm = self.free
        return Submodule(fm, [Element(fm, {fm.pack(c, e): 1}) for e, c in self.gens])

    def hilbert_series(self):
        if self._hs is None:
            from .hilbert import hilbert_series_monomial

            self._hs = hilbert_series_monomial(self)
        return self._hs
