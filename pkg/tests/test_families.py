import pytest

from regbound import Ring
from regbound.families import (
    DegenerateFamilyError,
    FamilySpec,
    build_extremal_ideal,
    closed_forms,
    family_grid,
    family_series,
    fit_degree_vector,
    hdeg_equality_predicate,
    sample_family,
)
from regbound.hilbert import HilbertSeries
from regbound.monomial import MonomialModule

from conftest import ideal


def test_grid_size():
    grid = family_grid()
    assert len(grid) == 80
    assert len({s.label() for s in grid}) == 80


def test_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec(2, 3, (1,))
    with pytest.raises(ValueError):
        FamilySpec(1, 0, (0, 1))
    with pytest.raises(ValueError):
        FamilySpec(1, 0, (1,))


def test_build_examples():
    r = Ring(2)
    x0, x1 = r.gens()
    I = build_extremal_ideal(FamilySpec(1, 0, (1, 1), {1: x0, 0: x1}, {0: x0}))
    assert I.equals(ideal(r, x0**2, x0 * x1))
    r3 = Ring(3)
    y0, y1, y2 = r3.gens()
    I = build_extremal_ideal(FamilySpec(2, 1, (1, 1), {2: y1, 1: y2}, {0: y0}))
    assert I.equals(ideal(r3, y0 * y1, y1 * y2))
    I = build_extremal_ideal(FamilySpec(2, 2, (3,), {2: y0**3 + y1**3}, {}))
    assert len(I.minimal_generators) == 1


def test_degenerate_family_rejected():
    r = Ring(2)
    x0, x1 = r.gens()
    # f_0 = x0 makes the second generator redundant
    with pytest.raises(DegenerateFamilyError):
        build_extremal_ideal(FamilySpec(1, 0, (1, 1), {1: x0, 0: x0}, {0: x0}))


def test_closed_form_examples():
    p = closed_forms(FamilySpec(1, 0, (1, 1)))
    assert (p.reg, p.bdeg, p.hdeg, p.deg, p.depth, p.dim) == (1, 2, 2, 1, 0, 1)
    assert p.hilbert == HilbertSeries.make([1, 0, -2, 1], 2)
    assert p.gin == MonomialModule.ideal(Ring(2), [(2, 0), (1, 1)])
    p = closed_forms(FamilySpec(3, 0, (1, 1, 1, 1)))
    assert (p.reg, p.bdeg, p.hdeg) == (3, 4, 5)
    p = closed_forms(FamilySpec(2, 2, (3,)))
    assert (p.reg, p.bdeg, p.hdeg, p.deg) == (2, 3, 3, 3)
    assert p.hilbert == HilbertSeries.make([1, 0, 0, -1], 3)
    p = closed_forms(FamilySpec(2, 0, (2, 1, 1)))
    assert p.gin == MonomialModule.ideal(Ring(3), [(2, 0, 0), (1, 2, 0), (1, 1, 2)])


def test_hdeg_borderline_predicate():
    assert hdeg_equality_predicate(FamilySpec(2, 0, (1, 2, 1)))
    assert not hdeg_equality_predicate(FamilySpec(3, 0, (1, 1, 1, 1)))
    spec = FamilySpec(3, 0, (1, 0, 1, 1))
    assert hdeg_equality_predicate(spec)
    p = closed_forms(spec)
    assert p.hdeg == 3 and p.reg == p.hdeg - 1


def test_cohomology_prediction():
    p = closed_forms(FamilySpec(2, 0, (1, 0, 2)))
    # H^1 vanishes since d_1 = 0
    assert set(p.cohomology) == {0, 2}
    assert p.cohomology[0] == (0, 1, 2)
    assert p.ext_series(1, 3).is_zero()


@pytest.mark.parametrize("spec", family_grid(2, 2), ids=lambda s: s.label())
def test_sampled_members_match_series(spec):
    full, I = sample_family(spec, 0)
    assert I.hilbert_series == closed_forms(full).hilbert
    assert fit_degree_vector(I.hilbert_series) == tuple([0] * spec.t + list(spec.degs))


def test_sampling_reproducible():
    a = sample_family(FamilySpec(2, 0, (1, 1, 1)), 5)[1]
    b = sample_family(FamilySpec(2, 0, (1, 1, 1)), 5)[1]
    assert [g.terms for g in a.gens] == [g.terms for g in b.gens]


def test_fit_rejects_complete_intersection():
    r = Ring(2)
    x0, x1 = r.gens()
    assert fit_degree_vector(ideal(r, x0**2, x1**2).hilbert_series) is None


def test_family_series_empty_products():
    H = family_series({0: 1, 1: 1}, 2)
    assert H.numerator() == [1, 0, -2, 1]
