"""Independent counts: grid scan, resultant elimination and Newton."""

import mpmath
import pytest

from oracle.grid_scan import grid_point, grid_scan
from oracle.numeric import numeric_solve
from oracle.resultant import resultant_count_positive
from reduction.gen_poly import GenPoly, to_F
from rootcount.certified_count import count_positive_solutions
from services.expression_parser import parse_system


def test_grid_points_are_increasing_and_inside():
    points = [grid_point(j, 10) for j in range(1, 11)]
    assert points == sorted(points)
    assert 0 < points[0] and points[-1] < 1


def test_grid_scan_of_linear_F():
    scan = grid_scan(GenPoly.from_terms([(2, 1, 0), (-1, 0, 0)]), 10)
    assert scan.count == 1
    assert scan.undecided == []


def test_grid_scan_of_positive_F():
    assert grid_scan(GenPoly.from_terms([(1, 0, 0), (1, 1, 0)]), 10).count == 0


def test_grid_scan_needs_two_points():
    with pytest.raises(ValueError):
        grid_scan(GenPoly.from_terms([(1, 0, 0)]), 1)


def test_grid_scan_is_a_lower_bound(symmetric_six):
    assert grid_scan(to_F(symmetric_six.f, symmetric_six.g), 200).count <= 5


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x - 1 ; -1 + x + y", 0),
        ("x - y ; -1 + x + y", 1),
        ("x - y ; 1 + x + y", 0),
    ],
)
def test_resultant_count_on_lines(text, expected):
    spec = parse_system(text)
    assert resultant_count_positive(spec.f, spec.g) == expected


def test_resultant_count_of_symmetric_six(symmetric_six):
    assert resultant_count_positive(symmetric_six.f, symmetric_six.g) == 5


# solutions (1, 1), (1, 2) and ((3*sqrt(2) - 2) / 2, sqrt(2))
SHARED_X = "y^2 - 3*y + 2*x ; x*y^2 - 3*y + 2"


def test_resultant_counts_solutions_sharing_an_x_coordinate(settings):
    spec = parse_system(SHARED_X)
    assert resultant_count_positive(spec.f, spec.g) == 3
    count = count_positive_solutions(spec.f, spec.g, settings.precision, settings.max_depth, settings.max_precision)
    assert count.exact and count.count == 3


def _value(p, x, y):
    total = mpmath.mpf(0)
    for t in p.terms:
        c = t.coefficient.as_fraction()
        total += mpmath.mpf(c.numerator) / c.denominator * x ** mpmath.mpf(t.exponent[0]) * y ** mpmath.mpf(t.exponent[1])
    return total


def test_numeric_solutions_have_small_residual(symmetric_six):
    solutions = numeric_solve(symmetric_six.f, symmetric_six.g)
    assert len(solutions) <= 5
    with mpmath.workprec(128):
        for x, y in solutions:
            assert x > 0 and y > 0
            assert abs(_value(symmetric_six.f, x, y)) < mpmath.mpf(10) ** -15
            assert abs(_value(symmetric_six.g, x, y)) < mpmath.mpf(10) ** -15


def test_numeric_finds_nothing_without_solutions():
    spec = parse_system("1 + x + y ; -1 + x + y")
    assert numeric_solve(spec.f, spec.g) == []
    assert numeric_solve(spec.f, spec.g, seeds=0) == []


@pytest.mark.slow
def test_numeric_finds_all_of_symmetric_six(symmetric_six):
    assert len(numeric_solve(symmetric_six.f, symmetric_six.g, seeds=16, radius=6.0)) == 5
