import pytest

from regbound import Ring, Submodule
from regbound.homology import (
    cohomology_profile,
    depth,
    ends_and_rk,
    ext_module,
    hdeg,
    minimal_free_resolution,
    projective_dimension,
)

from conftest import ideal


def test_koszul_betti(R2):
    x0, x1 = R2.gens()
    res = minimal_free_resolution(ideal(R2, x0, x1))
    assert res.betti_list() == [(0, 0, 1), (1, 1, 2), (2, 2, 1)]
    assert res.check_complex() and res.is_minimal()


def test_family_betti(R2):
    x0, x1 = R2.gens()
    res = minimal_free_resolution(ideal(R2, x0**2, x0 * x1))
    assert res.betti_list() == [(0, 0, 1), (1, 2, 2), (2, 3, 1)]
    assert res.regularity() == 1


def test_hypersurface_betti(R3):
    x0, x1, x2 = R3.gens()
    res = minimal_free_resolution(ideal(R3, x0**3 - x1 * x2**2))
    assert res.betti_list() == [(0, 0, 1), (1, 3, 1)]


def test_numerator_matches_betti(R3):
    x0, x1, x2 = R3.gens()
    I = ideal(R3, x0**2, x1 * x2, x0 * x1 - x2**2)
    res = minimal_free_resolution(I)
    assert res.numerator() == I.hilbert_series.as_dict()


def test_twisted_cubic():
    ring = Ring(4)
    x0, x1, x2, x3 = ring.gens()
    I = ideal(ring, x0 * x2 - x1**2, x0 * x3 - x1 * x2, x1 * x3 - x2**2)
    res = minimal_free_resolution(I)
    assert res.betti_list() == [(0, 0, 1), (1, 2, 3), (2, 3, 2)]
    assert depth(I) == 2
    assert hdeg(I) == 3


def test_rational_quartic():
    # not Cohen-Macaulay: H^1 is one-dimensional in degree 1
    ring = Ring(4)
    x0, x1, x2, x3 = ring.gens()
    I = ideal(ring, x0 * x3 - x1 * x2, x1**3 - x0**2 * x2, x2**3 - x1 * x3**2, x0 * x2**2 - x1**2 * x3)
    res = minimal_free_resolution(I)
    assert res.betti_list() == [(0, 0, 1), (1, 2, 1), (1, 3, 3), (2, 4, 4), (3, 5, 1)]
    assert res.regularity() == 2
    prof = cohomology_profile(I)
    h1 = prof[1]
    assert h1.finite() and h1.window() == {1: 1}
    assert ends_and_rk(prof, 0) == 2
    assert hdeg(I) == 5


def test_ext_examples(R2):
    x0, x1 = R2.gens()
    m = ideal(R2, x0, x1)
    assert ext_module(m, 2).hilbert_series.dim_deg() == (0, 1)
    assert ext_module(m, 1).hilbert_series.is_zero()
    I = ideal(R2, x0**2, x0 * x1)
    assert ext_module(I, 2).hilbert_series.dim_deg() == (0, 1)
    assert ext_module(I, 1).hilbert_series.dim_deg() == (1, 1)
    assert ext_module(I, 3).hilbert_series.is_zero()


def test_cohomology_examples(R2, R3):
    x0, x1 = R2.gens()
    prof = cohomology_profile(ideal(R2, x0**2, x0 * x1))
    assert prof[0].window() == {1: 1}
    assert prof[1].end == -1
    assert ends_and_rk(prof, 0) == 1
    assert ends_and_rk(prof, 1) == 0
    y0, y1, y2 = R3.gens()
    hyp = cohomology_profile(ideal(R3, y0**3 + y1**3 + y2**3))
    assert all(h.is_zero() for h in hyp.modules if h.i < 2)
    assert ends_and_rk(hyp, 0) == 2


def test_zero_module_conventions(R2):
    whole = ideal(R2, R2.one())
    res = minimal_free_resolution(whole)
    assert res.is_zero() and res.regularity() is None
    assert projective_dimension(whole) is None
    prof = cohomology_profile(whole)
    assert ends_and_rk(prof, 0) is None
    assert hdeg(whole) == 0


def test_grothendieck_vanishing_and_top_nonzero(R3):
    x0, x1, x2 = R3.gens()
    I = ideal(R3, x0**2, x0 * x1, x1 * x2**2)
    prof = cohomology_profile(I)
    d = prof.dim
    assert not prof[d].is_zero()
    assert all(prof[i] is None for i in range(d + 1, 4))


def test_module_resolution():
    ring = Ring(3)
    x0, x1, x2 = ring.gens()
    F = ring.free((0, 1))
    M = Submodule(F, [F.vector([x0 * x1, x1]), F.vector([x1**2, ring.zero()]), F.vector([ring.zero(), x2**2])])
    res = minimal_free_resolution(M)
    assert res.check_complex() and res.is_minimal()
    assert res.numerator() == M.hilbert_series.as_dict()
    assert ends_and_rk(cohomology_profile(M), 0) == res.regularity() == 3
