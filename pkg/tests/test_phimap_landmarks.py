from fractions import Fraction

from algebra.unipoly import UniPoly
from phimap.landmarks import LandmarkKind, analyze_phi, classify_landmarks
from phimap.t3_cases import t3_landmark_case
from reduction.gen_poly import to_F
from reduction.layered import recursion_chain
from reduction.phi_map import PhiMap, build_phi, t3_phi
from rootcount.certified_count import CountStatus, count_positive_solutions

ONE = UniPoly.constant(1)


def _kinds(landmarks):
    return [lm.kind for lm in landmarks]


def test_x_over_one_minus_x():
    phi = PhiMap.from_rational(Fraction(1), Fraction(-1), ONE, ONE)
    landmarks = classify_landmarks(phi)
    assert _kinds(landmarks) == [LandmarkKind.LETTER_P, LandmarkKind.LETTER_R_PLUS, LandmarkKind.LETTER_Q]
    assert landmarks[0].tag == "0" and landmarks[2].tag == "1"
    assert landmarks[1].location.contains(Fraction(1, 2))

    report = analyze_phi(phi)
    assert (report.S0, report.flat_plus, report.flat) == (0, 1, 1)
    assert report.N.count == 1
    assert report.status is CountStatus.EXACT
    assert not report.violations


def test_infinity_is_letter_r_when_limit_is_one():
    phi = PhiMap.from_rational(Fraction(2), Fraction(-2), ONE, ONE)
    at_infinity = [lm for lm in classify_landmarks(phi) if lm.at_infinity]
    assert [lm.kind for lm in at_infinity] == [LandmarkKind.LETTER_R_PLUS]
    assert at_infinity[0].phi_sign_at == 1


def test_exterior_root_where_phi_is_minus_one():
    # phi = x * sqrt(1 - x) reaches -1 once for x < 0 and is not real for x > 1
    phi = PhiMap.from_rational(Fraction(1), Fraction(1, 2), ONE, ONE)
    landmarks = classify_landmarks(phi)
    exterior = [lm for lm in landmarks if lm.is_letter_r and not lm.at_infinity and not lm.interior]
    assert [(lm.kind, lm.phi_sign_at) for lm in exterior] == [(LandmarkKind.LETTER_R_MINUS, -1)]
    assert exterior[0].location.hi <= 0


def test_useful_positive_critical_point():
    high = analyze_phi(PhiMap.from_rational(Fraction(1), Fraction(1), UniPoly.constant(5), ONE))
    assert high.N.count == 2
    assert len(high.useful_positive) == 1
    assert high.useful_positive[0].location.contains(Fraction(1, 2))
    assert high.N.count <= high.flat_plus + len(high.useful_positive)

    low = analyze_phi(PhiMap.from_rational(Fraction(1), Fraction(1), UniPoly.constant(3), ONE))
    assert low.N.count == 0
    assert low.useful_positive == []
    assert low.critical_count == 1


def test_infinity_is_pole_for_positive_order():
    landmarks = classify_landmarks(PhiMap.from_rational(Fraction(1), Fraction(1), UniPoly.constant(5), ONE))
    assert landmarks[-1].at_infinity
    assert landmarks[-1].kind is LandmarkKind.LETTER_Q


def test_exterior_letters_skipped_above_cap():
    phi = PhiMap.from_rational(Fraction(1, 5), Fraction(1, 3), UniPoly.constant(2), ONE)
    report = analyze_phi(phi, exterior_power_cap=4)
    assert not report.exterior_complete
    assert any("exterior" in note for note in report.notes)


def test_symmetric_six_phi_analysis(symmetric_six, settings):
    phi = build_phi(recursion_chain(to_F(symmetric_six.f, symmetric_six.g))[-1])
    report = analyze_phi(phi, settings.precision, settings.max_depth, settings.max_precision)
    assert report.N.count >= 4
    assert sum(1 for lm in report.landmarks if lm.is_letter_r and lm.interior) >= 4
    assert not report.violations


def test_t3_orderings(symmetric_six, mixed_six, settings):
    for spec in (symmetric_six, mixed_six):
        count = count_positive_solutions(spec.f, spec.g, settings.precision, settings.max_depth, settings.max_precision)
        case = t3_landmark_case(t3_phi(spec.f, spec.g), count)
        assert case.count == 5
        assert len(case.holding) == 1
        assert case.consistent is True


def test_t3_case_without_count(symmetric_six):
    case = t3_landmark_case(t3_phi(symmetric_six.f, symmetric_six.g))
    assert case.count is None and case.consistent is None
