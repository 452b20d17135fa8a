"""Exact scalars, packed monomials, graded free modules and their elements.

Monomials of ``K[x_0..x_n]`` are packed into Python integers: the exponent of
``x_i`` occupies bits ``8*i .. 8*i+6`` with bit ``8*i+7`` kept clear as a
guard.  Two consequences are used everywhere:

* multiplying monomials is integer addition, and divisibility is a single
  subtract-and-mask;
* among monomials of equal degree, the reverse lexicographic order is the
  *reverse* of integer order (the exponent of ``x_n`` is the most significant
  digit, and a smaller exponent of the last variable wins).

A free-module monomial ``m*e_i`` is packed as
``(twist_offset(i) << S) | (E << c) | i``.  For terms of one homogeneous
element the module order (degree, then revlex, then smaller index wins) is
exactly ascending integer order, so the lead term is ``min(terms)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

EXP_BITS = 8
EXP_LIMIT = 1 << (EXP_BITS - 1)
DIGIT = (1 << EXP_BITS) - 1


class ContextError(ValueError):
    """Objects from different rings, fields or free modules were mixed."""


class NonHomogeneousError(ValueError):
    """A graded construction received a nonhomogeneous element."""


# --------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class Rationals:
    characteristic: int = 0

    @property
    def name(self) -> str:
        return "Q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot convert {x!r} to a rational")

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero scalar")
        return self(Fraction(a) / b)

    def inv(self, a):
        return self.div(1, a)


@dataclass(frozen=True)
class PrimeField:
    p: int = 32003

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"Fp({self.p})"

    def __call__(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot convert {x!r} to GF({self.p})")

    def div(self, a, b):
        b %= self.p
        if b == 0:
            raise ZeroDivisionError("division by zero scalar")
        return a * pow(b, -1, self.p) % self.p

    def inv(self, a):
        return self.div(1, a)


QQ = Rationals()


def GF(p: int = 32003) -> PrimeField:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return PrimeField(p)


def parse_field(tag: str):
    """``"Q"`` or ``"QQ"`` for the rationals, ``"Fp(p)"`` / ``"GF(p)"`` for a prime field."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    for head in ("Fp(", "GF(", "ZZ/"):
        if tag.startswith(head):
            return GF(int(tag[len(head):].rstrip(")")))
    raise ValueError(f"unknown field {tag!r}")


# --------------------------------------------------------------------------
# rings and packed monomials


class Ring:
    """The standard graded polynomial ring ``K[x_0, ..., x_n]`` (``nvars = n + 1``)."""

    def __init__(self, nvars: int, field=QQ):
        if nvars < 0:
            raise ValueError("number of variables must be non-negative")
        self.nvars = nvars
        self.field = field
        self.ebits = EXP_BITS * nvars
        self.ones = sum(1 << (EXP_BITS * i) for i in range(nvars))
        self.guard = self.ones << (EXP_BITS - 1)
        self.emask = (1 << self.ebits) - 1
        self._free: dict[tuple, FreeModule] = {}

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.nvars == other.nvars
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.nvars, self.field))

    def __repr__(self):
        return f"{self.field.name}[x0..x{self.nvars - 1}]"

    @property
    def n(self) -> int:
        return self.nvars - 1

    # monomials --------------------------------------------------------

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ContextError(f"expected {self.nvars} exponents, got {len(exps)}")
        E = 0
        for i, e in enumerate(exps):
            if not 0 <= e < EXP_LIMIT:
                raise OverflowError(f"exponent {e} outside [0, {EXP_LIMIT})")
            E |= e << (EXP_BITS * i)
        return E

    def unpack(self, E: int) -> tuple[int, ...]:
        return tuple((E >> (EXP_BITS * i)) & DIGIT for i in range(self.nvars))

    def mdeg(self, E: int) -> int:
        if self.nvars == 0:
            return 0
        return ((E * self.ones) >> (EXP_BITS * (self.nvars - 1))) & DIGIT

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        g = self.guard
        ge = ((a | g) - b) & g  # guard set where a_i >= b_i
        mask = (ge >> (EXP_BITS - 1)) * DIGIT
        return (a & mask) | (b & ~mask & self.emask)

    def var_exp(self, i: int) -> int:
        return 1 << (EXP_BITS * i)

    # constructors -----------------------------------------------------

    def free(self, twists: Iterable[int] = (0,)) -> FreeModule:
        key = tuple(twists)
        fm = self._free.get(key)
        if fm is None:
            fm = self._free[key] = FreeModule(self, key)
        return fm

    @property
    def R(self) -> FreeModule:
        return self.free((0,))

    def var(self, i: int) -> Element:
        if not 0 <= i < self.nvars:
            raise IndexError(f"x{i} not in {self!r}")
        return Element(self.R, {self.var_exp(i): 1})

    def gens(self) -> list[Element]:
        return [self.var(i) for i in range(self.nvars)]

    def one(self) -> Element:
        return Element(self.R, {0: 1})

    def zero(self) -> Element:
        return Element(self.R, {})

    def poly(self, terms: Mapping[Sequence[int], object]) -> Element:
        """Polynomial from ``{exponent tuple: coefficient}``."""
        return self.R.element({(0, tuple(e)): c for e, c in terms.items()})

    def monomial(self, exps: Sequence[int], coeff=1) -> Element:
        return self.poly({tuple(exps): coeff})

    def linear_form(self, coeffs: Sequence) -> Element:
        if len(coeffs) != self.nvars:
            raise ContextError("linear form needs one coefficient per variable")
        return Element(
            self.R,
            {self.var_exp(i): self.field(c) for i, c in enumerate(coeffs) if self.field(c) != 0},
        )

    def with_field(self, field) -> Ring:
        return Ring(self.nvars, field)


class FreeModule:
    """Graded free module ``F = sum R e_i`` where ``e_i`` has degree ``twists[i]``."""

    def __init__(self, ring: Ring, twists: tuple[int, ...]):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)
        r = len(self.twists)
        self.cbits = (r - 1).bit_length() if r > 1 else 0
        self.cmask = (1 << self.cbits) - 1
        self._emask_shifted = ring.emask << self.cbits

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring == other.ring
            and self.twists == other.twists
        )

    def __hash__(self):
        return hash((self.ring, self.twists))

    def __repr__(self):
        return f"FreeModule({self.ring!r}, twists={list(self.twists)})"

    @property
    def rank(self) -> int:
        return len(self.twists)

    def pack(self, comp: int, exps) -> int:
        E = exps if isinstance(exps, int) else self.ring.pack(exps)
        # within a degree: revlex on exponents, then position; the twist
        # does not enter, so x_n dividing the lead divides every term
        return (E << self.cbits) | comp

    def comp(self, P: int) -> int:
        return P & self.cmask

    def expo(self, P: int) -> int:
        return (P >> self.cbits) & self.ring.emask

    def shift(self, E: int) -> int:
        """Integer to add to a packed term to multiply it by the monomial ``E``."""
        return E << self.cbits

    def unpack(self, P: int) -> tuple[int, tuple[int, ...]]:
        return self.comp(P), self.ring.unpack(self.expo(P))

    def degree(self, P: int) -> int:
        return self.ring.mdeg(self.expo(P)) + self.twists[self.comp(P)]

    def same_slot(self, a: int, b: int) -> bool:
        return (a & self.cmask) == (b & self.cmask)

    def divides(self, a: int, b: int) -> bool:
        """``a | b`` for module monomials: same component and exponent-wise divisibility."""
        if (a & self.cmask) != (b & self.cmask):
            return False
        return self.ring.divides(self.expo(a), self.expo(b))

    def sort_key(self, P: int):
        # ascending sort key == descending module order
        return (-self.degree(P), P)

    def basis(self, i: int) -> Element:
        return Element(self, {self.pack(i, 0): 1})

    def element(self, terms: Mapping[tuple, object]) -> Element:
        """Element from ``{(component, exponent tuple): coefficient}``."""
        f = self.ring.field
        out: dict[int, object] = {}
        for (comp, exps), c in terms.items():
            if not 0 <= comp < self.rank:
                raise IndexError(f"component {comp} out of range")
            c = f(c)
            if c != 0:
                P = self.pack(comp, tuple(exps))
                v = f(out.get(P, 0) + c)
                if v != 0:
                    out[P] = v
                else:
                    out.pop(P, None)
        return Element(self, out)

    def vector(self, entries: Sequence[Element]) -> Element:
        """Element ``sum entries[i] * e_i`` from ring polynomials."""
        if len(entries) != self.rank:
            raise ContextError(f"need {self.rank} entries, got {len(entries)}")
        out = {}
        for i, p in enumerate(entries):
            if p.module != self.ring.R:
                raise ContextError("vector entries must be polynomials of the same ring")
            for E, c in p.terms.items():
                out[self.pack(i, E)] = c
        return Element(self, out)

    def zero(self) -> Element:
        return Element(self, {})


# --------------------------------------------------------------------------
# elements


class Element:
    """Sparse element of a graded free module; a polynomial is an element of ``R = R^1``.

    ``terms`` maps packed module monomials to nonzero field scalars and must
    not be mutated after construction.
    """

    __slots__ = ("module", "terms", "_hash")

    def __init__(self, module: FreeModule, terms: dict):
        self.module = module
        self.terms = terms
        self._hash = None

    # basic structure ------------------------------------------------------

    @property
    def ring(self) -> Ring:
        return self.module.ring

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_polynomial(self) -> bool:
        return self.module.twists == (0,)

    def sorted_terms(self) -> list[tuple[int, object]]:
        key = self.module.sort_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def lead(self) -> int:
        if not self.terms:
            raise ValueError("zero element has no lead term")
        if self.is_homogeneous():
            return min(self.terms)
        return min(self.terms, key=self.module.sort_key)

    def lead_coeff(self):
        return self.terms[self.lead()]

    def degrees(self) -> set[int]:
        deg = self.module.degree
        return {deg(P) for P in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Common degree of all terms, or ``None`` when nonhomogeneous."""
        return element_degree(self)

    def components(self) -> list[Element]:
        """Entries of the vector as ring polynomials."""
        fm = self.module
        R = fm.ring.R
        parts: list[dict] = [{} for _ in range(fm.rank)]
        for P, c in self.terms.items():
            parts[fm.comp(P)][fm.expo(P)] = c
        return [Element(R, d) for d in parts]

    # arithmetic -------------------------------------------------------------

    def _check(self, other: Element):
        if not isinstance(other, Element):
            return NotImplemented
        if self.module != other.module:
            raise ContextError(f"{self.module!r} vs {other.module!r}")
        return None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _scalar_element(self, other)
        self._check(other)
        f = self.ring.field
        out = dict(self.terms)
        for P, c in other.terms.items():
            v = f(out.get(P, 0) + c)
            if v != 0:
                out[P] = v
            else:
                out.pop(P, None)
        return Element(self.module, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Element(self.module, {P: f(-c) for P, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _scalar_element(self, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Element:
        f = self.ring.field
        c = f(c)
        if c == 0:
            return Element(self.module, {})
        return Element(self.module, {P: f(v * c) for P, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        if self.ring != other.ring:
            raise ContextError(f"{self.ring!r} vs {other.ring!r}")
        if self.is_polynomial():
            return _poly_times(self, other)
        if other.is_polynomial():
            return _poly_times(other, self)
        raise TypeError("cannot multiply two module elements")

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not self.is_polynomial():
            raise TypeError("only polynomials can be raised to powers")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, E: int, c=1) -> Element:
        s = self.module.shift(E)
        f = self.ring.field
        return Element(self.module, {P + s: f(v * c) for P, v in self.terms.items()})

    # comparisons --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == _scalar_element(self, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.module == other.module and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.module, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return format_element(self)

    __str__ = __repr__


def _scalar_element(like: Element, c) -> Element:
    if not like.is_polynomial():
        raise TypeError("scalars can only be added to polynomials")
    c = like.ring.field(c)
    return Element(like.module, {0: c} if c != 0 else {})


def _poly_times(p: Element, v: Element) -> Element:
    f = v.ring.field
    sh = v.module.cbits
    out: dict[int, object] = {}
    for E, a in p.terms.items():
        s = E << sh
        for P, b in v.terms.items():
            k = P + s
            out[k] = out.get(k, 0) + a * b
    return Element(v.module, {k: f(c) for k, c in out.items() if f(c) != 0})


def element_degree(v: Element) -> int | None:
    """Degree of a homogeneous element (twists included); ``None`` if nonhomogeneous."""
    if not v.terms:
        raise ValueError("the zero element has no degree")
    degs = v.degrees()
    return degs.pop() if len(degs) == 1 else None


# --------------------------------------------------------------------------
# order


def monomial_compare(module: FreeModule, a, b) -> int:
    """Compare module monomials ``a``, ``b`` given as ``(exponents, component)``.

    Returns -1, 0 or 1.  Plain exponent tuples are treated as component 0.
    """
    def as_packed(m):
        if isinstance(m, tuple) and len(m) == 2 and isinstance(m[0], tuple):
            exps, comp = m
        else:
            exps, comp = tuple(m), 0
        if len(exps) != module.ring.nvars:
            raise ContextError("monomial from a different ring")
        return module.pack(comp, exps)

    Pa, Pb = as_packed(a), as_packed(b)
    ka, kb = module.sort_key(Pa), module.sort_key(Pb)
    if ka == kb:
        return 0
    return 1 if ka < kb else -1


# --------------------------------------------------------------------------
# linear changes of coordinates


def _matrix_over(field, g) -> list[list]:
    return [[field(c) for c in row] for row in g]


def matrix_det(field, g) -> object:
    a = _matrix_over(field, g)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    det = field(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return field(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = field(-det)
        det = field(det * a[col][col])
        inv = field.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col] != 0:
                m = field(a[r][col] * inv)
                a[r] = [field(x - m * y) for x, y in zip(a[r], a[col])]
    return det


def matrix_mul(field, a, b) -> list[list]:
    return [
        [field(sum(a[i][k] * b[k][j] for k in range(len(b)))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def apply_linear_change(g, v: Element) -> Element:
    """Substitute ``x_j -> sum_i g[i][j] x_i`` in every entry of ``v``."""
    ring = v.ring
    field = ring.field
    N = ring.nvars
    g = _matrix_over(field, g)
    if len(g) != N or any(len(row) != N for row in g):
        raise ContextError(f"need a {N}x{N} matrix")
    if matrix_det(field, g) == 0:
        raise ValueError("singular coordinate change")
    return LinearChange(ring, g)(v)


class LinearChange:
    """Memoised ring endomorphism ``x_j -> sum_i g[i][j] x_i``."""

    def __init__(self, ring: Ring, g):
        self.ring = ring
        f = ring.field
        self.images = [
            {ring.var_exp(i): f(g[i][j]) for i in range(ring.nvars) if f(g[i][j]) != 0}
            for j in range(ring.nvars)
        ]
        self._memo: dict[int, dict] = {0: {0: 1}}
        self._is_prime = f.characteristic != 0

    def monomial_image(self, E: int) -> dict:
        memo = self._memo
        got = memo.get(E)
        if got is not None:
            return got
        ring = self.ring
        # peel one factor of the highest variable present
        j = next(j for j in reversed(range(ring.nvars)) if (E >> (EXP_BITS * j)) & DIGIT)
        rest = self.monomial_image(E - ring.var_exp(j))
        lin = self.images[j]
        out: dict[int, object] = {}
        for A, a in rest.items():
            for B, b in lin.items():
                k = A + B
                out[k] = out.get(k, 0) + a * b
        if self._is_prime:
            p = ring.field.p
            out = {k: c % p for k, c in out.items() if c % p}
        else:
            out = {k: c for k, c in out.items() if c != 0}
        memo[E] = out
        return out

    def __call__(self, v: Element) -> Element:
        fm = v.module
        f = self.ring.field
        out: dict[int, object] = {}
        for P, c in v.terms.items():
            comp, E = fm.comp(P), fm.expo(P)
            base = fm.pack(comp, 0)
            sh = fm.cbits
            for A, a in self.monomial_image(E).items():
                k = base | (A << sh)
                out[k] = out.get(k, 0) + a * c
        return Element(fm, {k: f(c) for k, c in out.items() if f(c) != 0})


# --------------------------------------------------------------------------
# formatting


def _format_monomial(exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly_terms(items: list[tuple[tuple[int, ...], object]]) -> str:
    if not items:
        return "0"
    out = []
    for k, (exps, c) in enumerate(items):
        mono = _format_monomial(exps)
        neg = c < 0 if isinstance(c, (int, Fraction)) else False
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _signed(field, c):
    # prime-field residues print in the symmetric range
    if field.characteristic and c > field.characteristic // 2:
        return c - field.characteristic
    return c


def format_element(v: Element) -> str:
    fm = v.module
    ring = fm.ring
    if v.is_polynomial():
        items = [(ring.unpack(fm.expo(P)), _signed(ring.field, c)) for P, c in v.sorted_terms()]
        return format_poly_terms(items)
    return "[" + ", ".join(format_element(p) for p in v.components()) + "]"


def primitive_integer(coeffs: Iterable) -> tuple[int, int]:
    """Return ``(scale, content)`` turning rational ``coeffs`` into coprime integers."""
    den = 1
    cs = list(coeffs)
    for c in cs:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    g = 0
    for c in cs:
        g = gcd(g, int(c * den))
    return den, g


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of total degree ``d``, in descending revlex order."""
    if d < 0:
        return ()
    if nvars == 0:
        return ((),) if d == 0 else ()
    out = []

    def rec(prefix, left, k):
        if k == nvars - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    rec((), d, 0)
    ring = Ring(nvars)
    return tuple(sorted(out, key=ring.pack))
