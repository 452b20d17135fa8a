import numpy as np
import pytest

from regbound import GF, Ring, Submodule
from regbound.families import FamilySpec, predicted_gin
from regbound.gin import GinInstabilityError, gin_of, is_borel_fixed, random_upper_change
from regbound.monomial import MonomialModule

from conftest import ideal


def test_borel_examples(R2):
    assert is_borel_fixed(MonomialModule.ideal(R2, [(2, 0), (1, 1)]))
    assert not is_borel_fixed(MonomialModule.ideal(R2, [(0, 1)]))


@pytest.mark.parametrize("degs", [(1, 1), (2, 1, 1), (1, 0, 2), (2, 2, 2, 1)])
def test_predicted_family_gin_is_borel(degs):
    n = len(degs) - 1
    assert is_borel_fixed(predicted_gin(FamilySpec(n, 0, degs)))


def test_borel_rejects_small_characteristic():
    ring = Ring(2, GF(3))
    with pytest.raises(ValueError):
        is_borel_fixed(MonomialModule.ideal(ring, [(3, 0)]))


def test_module_borel_equal_twists():
    ring = Ring(2)
    F = ring.free((0, 0))
    N = MonomialModule(F, [((1, 0), 1)])
    assert not is_borel_fixed(N)
    assert is_borel_fixed(MonomialModule(F, [((1, 0), 1), ((1, 0), 0)]))


def test_random_change_reproducible():
    a = random_upper_change(42, 3)
    assert a == random_upper_change(42, 3)
    assert a != random_upper_change(43, 3)
    one = random_upper_change(5, 1)
    assert len(one) == 1 and one[0][0] != 0


def test_gin_examples(R2):
    x0, x1 = R2.gens()
    g = gin_of(ideal(R2, x0**2, x0 * x1))
    assert g.module == MonomialModule.ideal(R2, [(2, 0), (1, 1)])
    assert gin_of(ideal(R2, x1**2)).module == MonomialModule.ideal(R2, [(2, 0)])


def test_gin_of_explicit_change(R2):
    # x1 -> x0 + x1 sends x1^2 to a form with lead x0^2
    from regbound.algebra import apply_linear_change

    x0, x1 = R2.gens()
    f = apply_linear_change([[1, 1], [0, 1]], x1**2)
    assert ideal(R2, f).initial == MonomialModule.ideal(R2, [(2, 0)])


def test_gin_of_complete_intersection(R3):
    x0, x1, x2 = R3.gens()
    g = gin_of(ideal(R3, x0**2 + x1 * x2, x1**2 + x0 * x2))
    # generic quadrics: (x0^2, x0*x1, x1^3)
    assert g.module == MonomialModule.ideal(R3, [(2, 0, 0), (1, 1, 0), (0, 3, 0)])
    assert is_borel_fixed(g.module)


def test_gin_of_module_is_borel_and_keeps_series():
    ring = Ring(3)
    x0, x1, x2 = ring.gens()
    F = ring.free((0, 1))
    M = Submodule(F, [F.vector([x0 * x1, x1]), F.vector([x1**2, ring.zero()]), F.vector([ring.zero(), x2**2])])
    g = gin_of(M)
    assert is_borel_fixed(g.module)
    assert g.module.hilbert_series() == M.hilbert_series


def test_gin_instability_raises(monkeypatch):
    import regbound.gin as gin_mod

    ring = Ring(2)
    x0, x1 = ring.gens()
    M = ideal(ring, x0**2 + x1**2)
    fakes = iter([MonomialModule.ideal(ring, [(2, 0)]), MonomialModule.ideal(ring, [(1, 1)]), MonomialModule.ideal(ring, [(0, 2)])])

    class Fake:
        def __init__(self):
            self.initial = next(fakes)

    monkeypatch.setattr(gin_mod, "_transform", lambda M, s: Fake())
    with pytest.raises(GinInstabilityError):
        gin_of(M)


def test_gin_escalation(monkeypatch):
    import regbound.gin as gin_mod

    ring = Ring(2)
    x0, x1 = ring.gens()
    good = MonomialModule.ideal(ring, [(2, 0)])
    fakes = iter([good, MonomialModule.ideal(ring, [(1, 1)]), good])

    class Fake:
        def __init__(self):
            self.initial = next(fakes)

    monkeypatch.setattr(gin_mod, "_transform", lambda M, s: Fake())
    res = gin_of(ideal(ring, x0**2 + x1**2), (3, 4))
    assert res.module == good and res.escalated and res.seeds == (3, 4, 5)
