import random
from fractions import Fraction

import pytest

from algebra.unipoly import UniPoly
from reduction.gen_poly import GenPoly, to_F
from reduction.phi_map import PhiMap
from rootcount.bounds import CheckStatus, bound_phi, bound_t, check_bounds
from rootcount.certified_count import CountStatus, certified_count, count_phi_solutions, count_positive_solutions
from services.expression_parser import parse_system


def test_bound_table():
    assert [bound_t(t) for t in (3, 4, 5)] == [5, 11, 23]
    with pytest.raises(ValueError):
        bound_t(2)


def test_single_root_at_one_half():
    count = certified_count(GenPoly.from_terms([(2, 1, 0), (-1, 0, 0)]))
    assert count.count == 1 and count.exact
    (box,) = count.root_intervals
    assert box.contains(Fraction(1, 2))


def test_line_system(line_system):
    count = count_positive_solutions(line_system.f, line_system.g)
    assert (count.count, count.status) == (1, CountStatus.EXACT)


def test_no_positive_solution_when_g_has_one_sign():
    spec = parse_system("x - y ; 1 + x + y")
    count = count_positive_solutions(spec.f, spec.g)
    assert count.count == 0 and count.exact


def test_symmetric_six_has_five(symmetric_six, settings):
    count = count_positive_solutions(symmetric_six.f, symmetric_six.g, settings.precision, settings.max_depth, settings.max_precision)
    assert count.count == 5
    assert count.exact
    assert len(count.root_intervals) == 5


def test_mixed_six_has_five(mixed_six, settings):
    count = count_positive_solutions(mixed_six.f, mixed_six.g, settings.precision, settings.max_depth, settings.max_precision)
    assert (count.count, count.exact) == (5, True)


@pytest.mark.slow
def test_haas_has_five(haas, settings):
    count = count_positive_solutions(haas.f, haas.g, settings.precision, settings.max_depth, settings.max_precision)
    assert (count.count, count.exact) == (5, True)


def test_check_bounds_on_symmetric_six(symmetric_six, settings):
    report = check_bounds(symmetric_six.f, symmetric_six.g, settings.precision, settings.max_depth, settings.max_precision)
    assert report.counts[0].count == 5
    assert report.bound_t == 5
    assert report.bound_phi == 4
    assert report.rolle_budgets == [1, 2]
    assert report.passed and report.decided
    assert all(c.status is CheckStatus.HOLDS for c in report.checks)


def test_check_bounds_reports_degenerate_input():
    spec = parse_system("-2 + 2*x + 2*y ; -1 + x + y")
    report = check_bounds(spec.f, spec.g)
    assert report.errors
    assert not report.counts


def test_phi_count_never_exceeds_degree_bound():
    rng = random.Random(5)
    for _ in range(15):
        alpha = Fraction(rng.randint(-7, 7), rng.randint(1, 3)) or Fraction(1, 2)
        beta = Fraction(rng.randint(-7, 7), rng.randint(1, 3))
        P = UniPoly(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 3))) + (1,))
        Q = UniPoly(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 3))) + (1,))
        phi = PhiMap.from_rational(alpha, beta, P, Q)
        count = count_phi_solutions(phi, 1, 32, 48, 256)
        assert count.count <= bound_phi(phi)


def test_reduction_keeps_rational_exponents(symmetric_six):
    F = to_F(symmetric_six.f, symmetric_six.g)
    assert all(isinstance(t.k, Fraction) and isinstance(t.l, Fraction) for t in F.terms)
