import numpy as np
import pytest

from regbound import Ring, Submodule
from regbound.invariants import (
    bdeg_of_borel,
    bdeg_via_axioms,
    bdeg_via_gin,
    depth_dim_deg,
    e_plus,
    filter_regular_form,
    hdeg,
    invariants,
    is_filter_regular,
    regularity,
)
from regbound.monomial import MonomialModule

from conftest import ideal


def test_regularity_examples(R2, R3):
    x0, x1 = R2.gens()
    assert regularity(ideal(R2, x0**2, x0 * x1)) == 1
    assert regularity(ideal(R2)) == 0
    y0, y1, y2 = R3.gens()
    assert regularity(ideal(R3, y0**4 + y1 * y2**3)) == 3
    with pytest.raises(ValueError):
        regularity(ideal(R2, R2.one()))


def test_e_plus_examples(R2):
    x0, x1 = R2.gens()
    assert e_plus(ideal(R2, x0**2, x0 * x1)) == 0
    assert e_plus(ideal(R2, x0**2, x0 * x1), as_module=True) == 2
    F = R2.free((3,))
    assert e_plus(Submodule(F, [])) == 3


def test_bdeg_examples(R2, R3):
    x0, x1 = R2.gens()
    I = ideal(R2, x0**2, x0 * x1)
    assert bdeg_via_gin(I) == 2
    assert bdeg_via_axioms(I) == 2
    y0, y1, y2 = R3.gens()
    assert bdeg_via_gin(ideal(R3, y0**3 - y1 * y2**2)) == 3
    assert bdeg_via_gin(ideal(R3, y0, y1**2, y2**3)) == 6
    assert bdeg_via_axioms(ideal(R2, x0)) == 1
    assert bdeg_via_axioms(ideal(R2, x0, x1)) == 1


def test_bdeg_of_borel_by_hand(R3):
    # (x0, x1^3) saturated, cut twice: 3 from the x1 step
    assert bdeg_of_borel(MonomialModule.ideal(R3, [(1, 0, 0), (0, 3, 0)])) == 3
    # (x0^2, x0x1, x0x2^2): H^0 has length 2, then (x0) contributes 1
    assert bdeg_of_borel(MonomialModule.ideal(R3, [(2, 0, 0), (1, 1, 0), (1, 0, 2)])) == 3


def test_hdeg_examples(R2, R3):
    x0, x1 = R2.gens()
    assert hdeg(ideal(R2, x0**2, x0 * x1)) == 2
    y0, y1, y2 = R3.gens()
    assert hdeg(ideal(R3, y0**2 + y1**2 + y2**2)) == 2


def test_depth_dim_deg(R2):
    x0, x1 = R2.gens()
    assert depth_dim_deg(ideal(R2, x0**2, x0 * x1)) == (0, 1, 1)
    assert depth_dim_deg(ideal(R2)) == (2, 2, 1)


def test_filter_regular_forms(R3):
    x0, x1, x2 = R3.gens()
    I = ideal(R3, x0**2, x0 * x1)
    assert not is_filter_regular(I, x0)
    assert is_filter_regular(I, x2)
    l = filter_regular_form(I, np.random.default_rng(0))
    assert is_filter_regular(I, l)


def test_invariant_report(R2):
    x0, x1 = R2.gens()
    rep = invariants(ideal(R2, x0**2, x0 * x1))
    assert (rep.reg, rep.r1, rep.e_plus, rep.depth, rep.dim, rep.deg) == (1, 0, 0, 0, 1, 1)
    assert (rep.bdeg, rep.hdeg, rep.bdeg_axioms, rep.I_bdeg, rep.I_hdeg) == (2, 2, 2, 1, 1)
    assert rep.I_h == 1


def test_invariants_of_zero_quotient(R2):
    rep = invariants(ideal(R2, R2.one()))
    assert rep.reg is None and rep.dim is None and rep.bdeg == 0


def test_module_bdeg_three_ways():
    ring = Ring(3)
    x0, x1, x2 = ring.gens()
    F = ring.free((0, 1))
    M = Submodule(F, [F.vector([x0 * x1, x1]), F.vector([x1**2, ring.zero()]), F.vector([ring.zero(), x2**2])])
    assert bdeg_via_gin(M) == bdeg_via_axioms(M) == 6
    assert hdeg(M) == 6
    assert e_plus(M) == 1


@pytest.mark.parametrize("seed", range(8))
def test_bdeg_le_hdeg_random(seed):
    from regbound.verifier import random_module_stream

    for M in random_module_stream(seed, count=3):
        assert bdeg_via_gin(M) == bdeg_via_axioms(M, seed) <= hdeg(M)
