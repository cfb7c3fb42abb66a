from fractions import Fraction

import pytest

from bivar.monomial_map import (
    _complete_basis,
    apply_map,
    inverse,
    normalize_trinomial_lattice,
    normalize_trinomial_unit,
)
from bivar.polygon import newton_polygon
from bivar.sparse_poly import AllSameSign, DegenerateSupport, SparsePolyQ2


def _rational_terms(p: SparsePolyQ2):
    return [(t.coefficient.as_fraction(), t.exponent) for t in p.terms]


UNIT_G = SparsePolyQ2.from_terms([(-1, (0, 0)), (1, (1, 0)), (1, (0, 1))])


def test_newton_polygon_of_symmetric_six_and_mixed_six(symmetric_six, mixed_six):
    assert set(newton_polygon(symmetric_six.f).vertices) == {(6, 0), (0, 3), (0, 1)}
    assert set(newton_polygon(mixed_six.f).vertices) == {(5, 0), (3, 1), (0, 6)}


def test_newton_polygon_ignores_order_and_positive_scaling():
    items = [(3, (2, 0)), (-5, (0, 1)), (7, (1, 3))]
    scaled = [(c * Fraction(5, 2), e) for c, e in reversed(items)]
    assert newton_polygon(SparsePolyQ2.from_terms(items)) == newton_polygon(SparsePolyQ2.from_terms(scaled))


def test_collinear_polygon_is_degenerate():
    p = SparsePolyQ2.from_terms([(1, (0, 0)), (1, (1, 1)), (-1, (2, 2))])
    assert newton_polygon(p).degenerate


def test_unit_normalization_of_normalized_trinomial():
    m = normalize_trinomial_unit(UNIT_G)
    assert apply_map(UNIT_G, m) == UNIT_G


def test_unit_normalization_rescales_terms():
    g = SparsePolyQ2.from_terms([(-1, (0, 0)), (2, (2, 0)), (3, (0, 1))])
    f = SparsePolyQ2.from_terms([(1, (2, 0))])
    m = normalize_trinomial_unit(g)
    assert _rational_terms(apply_map(g, m)) == _rational_terms(UNIT_G)
    assert _rational_terms(apply_map(f, m)) == [(Fraction(1, 2), (1, 0))]


def test_trinomial_errors():
    with pytest.raises(AllSameSign):
        normalize_trinomial_unit(SparsePolyQ2.from_terms([(1, (0, 0)), (1, (1, 0)), (1, (0, 1))]))
    with pytest.raises(DegenerateSupport):
        normalize_trinomial_unit(SparsePolyQ2.from_terms([(-1, (0, 0)), (1, (1, 1)), (1, (2, 2))]))


def test_lattice_normalization_of_unit_trinomial():
    m, k3, k4, l4 = normalize_trinomial_lattice(UNIT_G)
    assert (k3, k4, l4) == (1, 0, 1)
    assert apply_map(UNIT_G, m) == UNIT_G


@pytest.mark.parametrize("row", [(1, 0), (2, 3), (-3, 5), (0, -1), (7, -4)])
def test_unimodular_completion(row):
    second = _complete_basis(row)
    assert row[0] * second[1] - row[1] * second[0] == 1


def test_lattice_normalization_shape(symmetric_six, mixed_six):
    for spec in (symmetric_six, mixed_six):
        m, k3, k4, l4 = normalize_trinomial_lattice(spec.g)
        assert k3 > 0 and l4 > 0
        assert abs(m.determinant) == 1
        expected = SparsePolyQ2.from_terms([(-1, (0, 0)), (1, (k3, 0)), (1, (k4, l4))])
        assert _rational_terms(apply_map(spec.g, m)) == _rational_terms(expected)


def test_symmetric_six_lattice_exponents(symmetric_six):
    _, k3, k4, l4 = normalize_trinomial_lattice(symmetric_six.g)
    assert (k3, k4, l4) == (2, -1, 6)


def test_inverse_round_trip(symmetric_six):
    m = normalize_trinomial_unit(symmetric_six.g)
    back = apply_map(apply_map(symmetric_six.f, m), inverse(m))
    assert _rational_terms(back) == _rational_terms(symmetric_six.f)
