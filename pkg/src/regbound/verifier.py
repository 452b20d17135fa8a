"""Executable checks of the regularity/degree inequalities and characterizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import QQ, Element, Ring, format_element
from .families import (
    FamilySpec,
    closed_forms,
    family_grid,
    fit_degree_vector,
    sample_family,
)
from .gin import GinInstabilityError, gin_of
from .groebner import Submodule, colon_linear, quotient_by_linear_form, saturate
from .hilbert import HilbertSeries
from .homology import cohomology_profile, ends_and_rk, hdeg, minimal_free_resolution
from .invariants import (
    FilterRegularError,
    bdeg_of_borel,
    bdeg_via_axioms,
    cm_deviation_h,
    e_plus,
    filter_regular_form,
)

SUITES = ("reg-bound", "hypsec", "char-s", "h-func", "buchsbaum")
DEGS = ("bdeg", "hdeg")


@dataclass
class CheckOutcome:
    name: str
    instance: str
    seed: int
    status: str  # "pass", "fail" or "skip"
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "seed": self.seed,
            "status": self.status,
            "witness": self.witness,
        }


def replay_text(M: Submodule, name: str = "I", command: str = "invariants") -> str:
    """The instance in the CLI input grammar."""
    ring = M.ring
    head = f"ring {ring.field.name}[x0..x{ring.nvars - 1}];"
    fm = M.free
    if fm.rank == 1 and fm.twists == (0,):
        body = f"ideal {name} = (" + ", ".join(format_element(g) for g in M.gens) + ");"
    else:
        tw = ",".join(map(str, fm.twists))
        body = f"module {name} <{tw}> = (" + ", ".join(format_element(g) for g in M.gens) + ");"
    return f"{head} {body} {command} {name}"


# --------------------------------------------------------------------------
# cached per-instance data


class Instance:
    """A quotient ``F/M`` with lazily computed invariants shared by the checks."""

    def __init__(self, M: Submodule, seed: int = 0, label: str | None = None):
        self.M = M
        self.seed = seed
        self.label = label or replay_text(M)

    @cached_property
    def series(self) -> HilbertSeries:
        return self.M.hilbert_series

    @cached_property
    def dim(self) -> int | None:
        return self.series.dim_deg()[0]

    @cached_property
    def deg(self) -> int:
        return self.series.dim_deg()[1]

    @cached_property
    def reg(self) -> int:
        return minimal_free_resolution(self.M).regularity()

    @cached_property
    def e_plus(self) -> int:
        return e_plus(self.M)

    @cached_property
    def gin(self):
        return gin_of(self.M, (self.seed, self.seed + 1))

    @cached_property
    def bdeg(self) -> int:
        return bdeg_of_borel(self.gin.module)

    @cached_property
    def hdeg(self) -> int:
        return hdeg(self.M)

    @cached_property
    def profile(self):
        return cohomology_profile(self.M)

    def Deg(self, which: str) -> int:
        return self.bdeg if which == "bdeg" else self.hdeg


def _deg_of(M: Submodule, which: str, seed: int) -> int:
    if which == "bdeg":
        return bdeg_of_borel(gin_of(M, (seed, seed + 1)).module)
    return hdeg(M)


def _reg(M: Submodule) -> int | None:
    if M.hilbert_series.is_zero():
        return None
    return minimal_free_resolution(M).regularity()


# --------------------------------------------------------------------------
# checks


def check_reg_bound(inst: Instance, which: str) -> CheckOutcome:
    """``reg <= e+ + Deg - 1``."""
    reg, ep, D = inst.reg, inst.e_plus, inst.Deg(which)
    ok = reg <= ep + D - 1
    w = {"reg": reg, "e_plus": ep, which: D, "equality": reg == ep + D - 1}
    return CheckOutcome(f"reg-bound/{which}", inst.label, inst.seed, "pass" if ok else "fail", w)


def check_deg_order(inst: Instance) -> CheckOutcome:
    """``deg <= bdeg <= hdeg`` and the Cohen-Macaulay case is detected by both."""
    deg, b, h = inst.deg, inst.bdeg, inst.hdeg
    depth = minimal_free_resolution(inst.M).length
    cm = inst.M.ring.nvars - depth == inst.dim
    ok = deg <= b <= h and (b == deg) == cm and (h == deg) == cm
    w = {"deg": deg, "bdeg": b, "hdeg": h, "cohen_macaulay": cm}
    return CheckOutcome("bdeg<=hdeg", inst.label, inst.seed, "pass" if ok else "fail", w)


def _h0_ranks(M: Submodule, S: Submodule) -> HilbertSeries:
    return M.hilbert_series - S.hilbert_series


def check_hypsec(inst: Instance, which: str) -> CheckOutcome:
    """``Deg(M/lM) - reg(M/lM) <= Deg(M) - reg(M)`` with the equality conditions."""
    name = f"hypsec/{which}"
    M = inst.M
    if not inst.dim:
        return CheckOutcome(name, inst.label, inst.seed, "skip", {"reason": "dimension 0"})
    rng = np.random.default_rng([inst.seed, 23])
    try:
        l = filter_regular_form(M, rng)
    except FilterRegularError:
        return CheckOutcome(name, inst.label, inst.seed, "fail", {"reason": "no filter-regular form"})
    Ml = quotient_by_linear_form(M, l)
    reg, D = inst.reg, inst.Deg(which)
    reg_l = _reg(Ml)
    D_l = _deg_of(Ml, which, inst.seed)
    lhs, rhs = D_l - reg_l, D - reg
    ok = lhs <= rhs
    w = {
        "l": format_element(l),
        which: D,
        "reg": reg,
        f"{which}_cut": D_l,
        "reg_cut": reg_l,
        "lhs": lhs,
        "rhs": rhs,
        "r1": ends_and_rk(inst.profile, 1),
    }
    # geometric regularity never exceeds the regularity of a general section
    r1 = w["r1"]
    if r1 is not None and r1 > reg_l:
        ok = False
        w["r1_violation"] = True
    # equality holds exactly when conditions (I)-(III) hold
    S = saturate(M)
    h0 = _h0_ranks(M, S)
    ann = M.hilbert_series - colon_linear(M, l).hilbert_series
    lo = min(0, h0.initial_degree() or 0, ann.initial_degree() or 0) - 1
    cond1 = all(h0.at(j) == ann.at(j) for j in range(lo, reg_l))
    cond2 = all(h0.at(j) == 1 for j in range(reg_l + 1, reg + 1))
    if S.hilbert_series.is_zero():
        cond3 = True
    else:
        N_l = quotient_by_linear_form(S, l)
        cond3 = _deg_of(N_l, which, inst.seed) == _deg_of(S, which, inst.seed)
    conds = cond1 and cond2 and cond3
    w.update({"equality": lhs == rhs, "cond_I": cond1, "cond_II": cond2, "cond_III": cond3})
    if (lhs == rhs) != conds:
        ok = False
    return CheckOutcome(name, inst.label, inst.seed, "pass" if ok else "fail", w)


def check_buchsbaum_ineq(inst: Instance, which: str) -> CheckOutcome:
    """``len(M/qM) - e_0(q; M) - reg(M/qM) <= (Deg - deg) - reg`` for ``q`` of ``dim`` general forms."""
    name = f"buchsbaum/{which}"
    M = inst.M
    d = inst.dim
    if not d:
        return CheckOutcome(name, inst.label, inst.seed, "skip", {"reason": "dimension 0"})
    rng = np.random.default_rng([inst.seed, 29])
    cur = M
    forms = []
    try:
        for _ in range(d):
            l = filter_regular_form(cur, rng)
            forms.append(format_element(l))
            cur = quotient_by_linear_form(cur, l)
    except FilterRegularError:
        return CheckOutcome(name, inst.label, inst.seed, "fail", {"reason": "no filter-regular form"})
    H = cur.hilbert_series
    length = H.length()
    reg_q = H.end()
    e0 = inst.deg
    D = inst.Deg(which)
    lhs = length - e0 - reg_q
    rhs = (D - inst.deg) - inst.reg
    w = {"len": length, "e0": e0, "reg_q": reg_q, which: D, "reg": inst.reg, "lhs": lhs, "rhs": rhs, "equality": lhs == rhs}
    return CheckOutcome(name, inst.label, inst.seed, "pass" if lhs <= rhs else "fail", w)


def check_char_s(spec: FamilySpec, seed: int = 0) -> CheckOutcome:
    """Family member: gin has the predicted shape, ``reg = bdeg - 1`` and ``depth = t``."""
    full, I = sample_family(spec, seed)
    pred = closed_forms(full)
    inst = Instance(I, seed, replay_text(I))
    try:
        g = inst.gin
    except GinInstabilityError as exc:
        return CheckOutcome("char-s", inst.label, seed, "fail", {"reason": str(exc)})
    depth = I.ring.nvars - minimal_free_resolution(I).length
    w = {
        "spec": spec.label(),
        "gin": repr(g.module),
        "predicted_gin": repr(pred.gin),
        "escalated": g.escalated,
        "reg": inst.reg,
        "bdeg": inst.bdeg,
        "depth": depth,
    }
    ok = g.module == pred.gin and inst.reg == inst.bdeg - 1 and depth == spec.t
    return CheckOutcome("char-s", inst.label, seed, "pass" if ok else "fail", w)


def check_h_func(inst: Instance) -> CheckOutcome:
    """``reg = bdeg - 1`` exactly when the series fits the closed form for some degree vector."""
    H = inst.series
    if H.is_zero():
        return CheckOutcome("h-func", inst.label, inst.seed, "skip", {"reason": "zero module"})
    if inst.M.free.rank != 1 or inst.M.free.twists != (0,):
        return CheckOutcome("h-func", inst.label, inst.seed, "skip", {"reason": "not an algebra"})
    if _is_field(H):
        return CheckOutcome("h-func", inst.label, inst.seed, "skip", {"reason": "A = K excluded"})
    extremal = inst.reg == inst.bdeg - 1
    fit = fit_degree_vector(H)
    w = {"reg": inst.reg, "bdeg": inst.bdeg, "extremal": extremal, "fit": list(fit) if fit else None}
    ok = extremal == (fit is not None)
    if ok and fit is not None:
        # d_i is the degree of the hypersurface dual of H^i (0 when H^i vanishes)
        for h in inst.profile.modules:
            dual_deg = 0 if h.is_zero() else h.dual_dim_deg[1]
            if h.i < len(fit) and dual_deg != fit[h.i]:
                ok = False
                w["cohomology_mismatch"] = h.i
    return CheckOutcome("h-func", inst.label, inst.seed, "pass" if ok else "fail", w)


def _is_field(H: HilbertSeries) -> bool:
    return H.dim_deg() == (0, 1) and H.at(0) == 1 and H.end() == 0


def check_twist(inst: Instance, k: int) -> CheckOutcome:
    """Shifting ``R/I`` to ``R/I(-k)`` moves reg and e+ by ``k`` and fixes bdeg."""
    M = inst.M
    ring = M.ring
    if M.free.twists != (0,):
        raise ValueError("twist check expects an ideal")
    F = ring.free((k,))
    Mk = Submodule(F, [Element(F, {F.pack(0, M.free.expo(P)): c for P, c in g.terms.items()}) for g in M.gens])
    reg_k = _reg(Mk)
    ep_k = e_plus(Mk)
    b_k = bdeg_of_borel(gin_of(Mk, (inst.seed, inst.seed + 1)).module)
    Hk = Mk.hilbert_series
    fit = fit_degree_vector(HilbertSeries(Hk.coeffs, Hk.shift - k, Hk.nvars))
    extremal = reg_k == ep_k + b_k - 1
    ok = reg_k == inst.reg + k and ep_k == k and b_k == inst.bdeg and extremal == (fit is not None)
    w = {"k": k, "reg": reg_k, "e_plus": ep_k, "bdeg": b_k, "extremal": extremal}
    return CheckOutcome("h-func/twist", replay_text(Mk), inst.seed, "pass" if ok else "fail", w)


def check_oracles(inst: Instance) -> CheckOutcome:
    """bdeg by gin and by the axioms; reg from Betti numbers, cohomology and gin."""
    b2 = bdeg_via_axioms(inst.M, inst.seed)
    reg_coh = ends_and_rk(inst.profile, 0)
    gin_sub = inst.gin.module.to_submodule()
    reg_gin = minimal_free_resolution(gin_sub).regularity()
    ok = inst.bdeg == b2 and inst.reg == reg_coh == reg_gin
    # finite cohomology: hdeg - deg is the binomial sum of the lengths
    ih = cm_deviation_h(inst.profile)
    if ih is not None and ih != inst.hdeg - inst.deg:
        ok = False
    w = {
        "bdeg_gin": inst.bdeg,
        "bdeg_axioms": b2,
        "reg_betti": inst.reg,
        "reg_cohomology": reg_coh,
        "reg_gin": reg_gin,
        "I_h_cohomology": ih,
        "hdeg_minus_deg": inst.hdeg - inst.deg,
    }
    return CheckOutcome("oracles", inst.label, inst.seed, "pass" if ok else "fail", w)


# --------------------------------------------------------------------------
# random inputs


@dataclass(frozen=True)
class StreamProfile:
    kind: str = "mixed"  # monomial, binomial or mixed
    rank: int = 1  # above 1: submodules of R(0)/R(-1) sums
    min_vars: int = 2
    max_vars: int = 4
    min_deg: int = 2
    max_deg: int = 4
    max_gens: int = 6
    field: object = QQ

    def __post_init__(self):
        if self.kind not in ("monomial", "binomial", "mixed"):
            raise ValueError(f"unknown stream kind {self.kind!r}")
        if self.max_vars > 4 or self.max_deg > 4 or self.max_gens > 6:
            raise ValueError("stream bounds: at most 4 variables, degree 4 and 6 generators")
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if not (1 <= self.min_vars <= self.max_vars and 1 <= self.min_deg <= self.max_deg and self.max_gens >= 1):
            raise ValueError("stream bounds are empty")


def _random_monomial(nv: int, d: int, rng) -> tuple[int, ...]:
    cuts = sorted(int(c) for c in rng.integers(0, d + 1, size=nv - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
    return tuple(parts)


def _random_entry(ring, d: int, binom: bool, rng) -> Element:
    m = _random_monomial(ring.nvars, d, rng)
    if binom:
        m2 = _random_monomial(ring.nvars, d, rng)
        if m2 != m:
            c = int(rng.choice([-3, -2, -1, 1, 2, 3]))
            return ring.poly({m: 1}) + ring.poly({m2: c})
    return ring.monomial(m)


def random_module_stream(seed: int, profile: StreamProfile | None = None, count: int = 100):
    """Reproducible homogeneous ideals (or submodules) within the profile bounds."""
    profile = profile or StreamProfile()
    rng = np.random.default_rng([seed, 31])
    for _ in range(count):
        nv = int(rng.integers(profile.min_vars, profile.max_vars + 1))
        ring = Ring(nv, profile.field)
        ng = int(rng.integers(1, profile.max_gens + 1))

        def binom():
            return profile.kind == "binomial" or (profile.kind == "mixed" and rng.random() < 0.5)

        if profile.rank == 1:
            gens = [_random_entry(ring, int(rng.integers(profile.min_deg, profile.max_deg + 1)), binom(), rng) for _ in range(ng)]
            yield Submodule.ideal(ring, gens)
            continue
        twists = tuple(sorted(int(t) for t in rng.integers(0, 2, size=profile.rank)))
        F = ring.free(twists)
        gens = []
        for _ in range(ng):
            d = int(rng.integers(profile.min_deg, profile.max_deg + 1))
            entries = []
            for t in twists:
                if d - t >= 1 and rng.random() < 0.6:
                    entries.append(_random_entry(ring, d - t, binom(), rng))
                else:
                    entries.append(ring.zero())
            if all(not e.terms for e in entries):
                a = int(rng.integers(0, profile.rank))
                entries[a] = _random_entry(ring, d - twists[a], binom(), rng)
            gens.append(F.vector(entries))
        yield Submodule(F, gens)


# --------------------------------------------------------------------------
# suites


@dataclass
class SuiteReport:
    seed: int
    samples: int
    outcomes: list[CheckOutcome] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckOutcome]:
        return [o for o in self.outcomes if o.status == "fail"]

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for o in self.outcomes:
            c = out.setdefault(o.name, {"pass": 0, "fail": 0, "skip": 0})
            c[o.status] += 1
        return dict(sorted(out.items()))

    def equality_stats(self) -> dict[str, int]:
        """How often the inequality checks were sharp (reported, no conclusions drawn)."""
        out: dict[str, int] = {}
        for o in self.outcomes:
            if o.witness.get("equality"):
                out[o.name] = out.get(o.name, 0) + 1
        return dict(sorted(out.items()))


def run_suite(suite: str = "all", which: str | None = None, seed: int = 0, samples: int = 100, profile=None) -> SuiteReport:
    suites = SUITES if suite == "all" else (suite,)
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
    degs = DEGS if which is None else (which,)
    for d in degs:
        if d not in DEGS:
            raise ValueError(f"unknown degree {d!r}")
    rep = SuiteReport(seed, samples)
    needs_stream = any(s in suites for s in ("reg-bound", "hypsec", "h-func", "buchsbaum"))
    stream = []
    if needs_stream:
        for k, M in enumerate(random_module_stream(seed, profile, samples)):
            stream.append(Instance(M, seed + k))
    for s in suites:
        if s == "reg-bound":
            for inst in stream:
                for d in degs:
                    rep.outcomes.append(check_reg_bound(inst, d))
                rep.outcomes.append(check_deg_order(inst))
        elif s == "hypsec":
            for inst in stream:
                for d in degs:
                    rep.outcomes.append(check_hypsec(inst, d))
        elif s == "buchsbaum":
            for inst in stream:
                for d in degs:
                    rep.outcomes.append(check_buchsbaum_ineq(inst, d))
        elif s == "char-s":
            for spec in family_grid():
                rep.outcomes.append(check_char_s(spec, seed))
        elif s == "h-func":
            for spec in family_grid():
                full, I = sample_family(spec, seed)
                rep.outcomes.append(check_h_func(Instance(I, seed)))
            ring = Ring(2)
            x0, x1 = ring.gens()
            rep.outcomes.append(check_h_func(Instance(Submodule.ideal(ring, [x0**2, x1**2]), seed)))
            for k, inst in enumerate(stream):
                rep.outcomes.append(check_h_func(inst))
                rep.outcomes.append(check_oracles(inst))
                if k % 10 == 0 and inst.M.free.twists == (0,):
                    rep.outcomes.append(check_twist(inst, 1 + k % 3))
    return rep
