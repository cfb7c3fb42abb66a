"""
Seeded property suites for the solution bounds.

Each suite runs a reduced number of cases by default and the full number
with --slow.
"""

import random
from fractions import Fraction

import pytest
import sympy

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError
from algebra.unipoly import UniPoly
from bivar.polygon import LatticePolygon
from bivar.sparse_poly import SparsePolyQ2
from conftest import SYMMETRIC_SIX
from fans.normal_fan import ParallelRays, alternates, consecutive_translate_check, is_hexagon, minkowski_sum, normal_fan
from oracle.resultant import resultant_count_positive
from phimap.landmarks import analyze_phi, critical_polynomial
from reduction.gen_poly import to_F
from reduction.layered import recursion_chain
from reduction.phi_map import PhiMap, build_phi, t3_phi
from rootcount.bounds import bound_phi, bound_t, check_bounds
from rootcount.certified_count import CountStatus, count_phi_solutions, count_positive_solutions
from services.expression_parser import parse_system
from services.search_runner import SearchRunner, perturbation_systems
from services.settings import AnalysisSettings


def _cases(request, fast: int, full: int) -> int:
    return full if request.config.getoption("--slow") else fast


def _rational(rng: random.Random) -> Fraction:
    return rng.choice((-1, 1)) * Fraction(rng.randint(1, 100), rng.randint(1, 100))


def _random_poly(rng: random.Random, terms: int, max_exponent: int) -> SparsePolyQ2:
    return SparsePolyQ2.from_terms(
        (_rational(rng), (rng.randint(0, max_exponent), rng.randint(0, max_exponent))) for _ in range(terms)
    )


def _random_systems(seed: int, t: int, count: int, max_exponent: int = 8):
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        f, g = _random_poly(rng, t, max_exponent), _random_poly(rng, 3, max_exponent)
        if len(f) != t or len(g) != 3:
            continue
        produced += 1
        yield f, g


def _nonzero(rng: random.Random) -> Fraction:
    return rng.choice((-1, 1)) * Fraction(rng.randint(1, 20), rng.randint(1, 10))


def _random_phi(rng: random.Random) -> PhiMap:
    def poly():
        return UniPoly(tuple(_nonzero(rng) for _ in range(rng.randint(1, 4))))

    alpha = Fraction(rng.randint(-12, 12), rng.randint(1, 4)) or Fraction(1, 3)
    beta = Fraction(rng.randint(-12, 12), rng.randint(1, 4)) or Fraction(-1, 2)
    return PhiMap.from_rational(alpha, beta, poly(), poly())


@pytest.mark.parametrize("t, fast, full", [(3, 12, 200), (4, 4, 100)])
def test_certified_counts_respect_bound_t(request, settings, t, fast, full):
    for f, g in _random_systems(100 + t, t, _cases(request, fast, full)):
        try:
            count = count_positive_solutions(f, g, settings.precision, settings.max_depth, settings.max_precision)
        except (FewnomialError, ValueError):
            continue
        if count.exact:
            assert count.count <= bound_t(t), f"{f} ; {g}"


def test_phi_counts_respect_degree_bound(request):
    rng = random.Random(2)
    for _ in range(_cases(request, 30, 200)):
        phi = _random_phi(rng)
        count = count_phi_solutions(phi, 1, 32, 48, 512)
        assert count.count <= bound_phi(phi), phi.to_dict()


def test_landmark_inequalities(request):
    rng = random.Random(2)
    for _ in range(_cases(request, 20, 200)):
        phi = _random_phi(rng)
        report = analyze_phi(phi, 32, 48, 512)
        assert not report.violations, phi.to_dict()
        if report.window_applicable and report.status is CountStatus.EXACT:
            assert report.S0 // 2 <= report.flat_plus <= report.S0 // 2 + 1


def test_resultant_agrees_with_pipeline(request, settings):
    for f, g in _random_systems(7, 3, _cases(request, 10, 100), max_exponent=5):
        try:
            count = count_positive_solutions(f, g, settings.precision, settings.max_depth, settings.max_precision)
            expected = resultant_count_positive(f, g)
        except (FewnomialError, ValueError):
            continue
        if count.exact:
            assert count.count == expected, f"{f} ; {g}"


def test_rolle_chain_on_random_systems(request, settings):
    for f, g in _random_systems(31, 4, _cases(request, 4, 50), max_exponent=6):
        report = check_bounds(f, g, settings.precision, settings.max_depth, settings.max_precision)
        assert report.passed, report.to_dict()
        if report.phi_degrees is not None:
            assert all(d <= 2 ** (4 - 2) - 1 for d in report.phi_degrees)


def test_alternation_is_the_negation_of_consecutive_translates():
    rng = random.Random(10)
    checked = 0
    while checked < 500:
        p1 = LatticePolygon.hull_of([(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)])
        p2 = LatticePolygon.hull_of([(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)])
        if p1.degenerate or p2.degenerate or not is_hexagon(minkowski_sum(p1, p2)):
            continue
        try:
            alternating = alternates(normal_fan(p1), normal_fan(p2))
        except ParallelRays:
            continue
        assert alternating == (not consecutive_translate_check(p1, p2))
        checked += 1


@pytest.mark.slow
def test_perturbation_search_finds_five_solutions():
    runner = SearchRunner(AnalysisSettings(), threshold=5)
    summary = runner.run(perturbation_systems(parse_system(SYMMETRIC_SIX), Fraction(1, 20), steps=21, terms=[("f", 1), ("g", 2)]))
    assert summary.trials == 441
    assert summary.records >= 1
    assert summary.violations == []


def test_t3_phi_agrees_with_the_general_pipeline(request, settings):
    compared = 0
    for f, g in _random_systems(53, 3, _cases(request, 12, 50), max_exponent=6):
        try:
            closed = t3_phi(f, g)
            F = to_F(f, g)
        except (FewnomialError, ValueError):
            continue
        pivot = [(t.k, t.l) for t in F.terms].index(closed.trinomial.divided_term)
        order = [pivot] + [i for i in range(len(F)) if i != pivot]
        general = build_phi(recursion_chain(F, order)[-1])
        counts = [
            count_phi_solutions(phi, 1, settings.precision, settings.max_depth, settings.max_precision)
            for phi in (closed, general)
        ]
        if all(c.exact for c in counts):
            assert counts[0].count == counts[1].count, f"{f} ; {g}"
            compared += 1
    assert compared > 0


def _sympy_poly(p, x):
    return sum(sympy.Rational(c.numerator, c.denominator) * x**d for d, c in enumerate(e.as_fraction() for e in p.coefficients))


def test_critical_polynomial_matches_symbolic_derivative(request):
    rng = random.Random(5)
    x = sympy.Symbol("x")
    tolerance = sympy.Rational(1, 2**40)
    for _ in range(_cases(request, 20, 100)):
        phi = _random_phi(rng)
        alpha, beta = sympy.Rational(str(phi.alpha)), sympy.Rational(str(phi.beta))
        P, Q = _sympy_poly(phi.P, x), _sympy_poly(phi.Q, x)
        scaled = sympy.diff(x**alpha * (1 - x) ** beta * P / Q, x) * Q**2 * x ** (1 - alpha) * (1 - x) ** (1 - beta)
        H = critical_polynomial(phi)
        for _ in range(10):
            point = Fraction(rng.randint(1, 999), 1000)
            if Q.subs(x, sympy.Rational(point.numerator, point.denominator)) == 0:
                continue
            value = H.evaluate_interval(DyadicInterval(point, point), 128)
            expected = scaled.subs(x, sympy.Rational(point.numerator, point.denominator)).evalf(60)
            mid = value.midpoint
            assert value.width <= Fraction(1, 2**40)
            assert abs(expected - sympy.Rational(mid.numerator, mid.denominator)) <= tolerance * max(1, abs(expected))
