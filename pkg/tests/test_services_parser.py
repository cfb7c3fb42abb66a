from fractions import Fraction

import pytest

from conftest import SYMMETRIC_SIX, MIXED_SIX, HAAS, LINE
from services.expression_parser import (
    GNotTrinomial,
    NonIntegerExponent,
    SystemSyntaxError,
    parse_system,
    render_polynomial,
    render_system,
)


def _coefficients(p):
    return {t.exponent: t.coefficient.as_fraction() for t in p.terms}


@pytest.mark.parametrize("text, t", [(SYMMETRIC_SIX, 3), (MIXED_SIX, 3), (HAAS, 3), (LINE, 2)])
def test_parses_known_systems(text, t):
    spec = parse_system(text)
    assert spec.t == t
    assert len(spec.g) == 3


def test_symmetric_six_coefficients():
    spec = parse_system(SYMMETRIC_SIX)
    assert _coefficients(spec.f) == {(6, 0): 1, (0, 3): Fraction(44, 31), (0, 1): -1}
    implicit = parse_system("x^6 + (44/31)y^3 - y ; y^6 + (44/31)x^3 - x")
    assert render_system(implicit) == render_system(spec)


def test_dangling_operator_position():
    with pytest.raises(SystemSyntaxError) as info:
        parse_system("x + ; -1 + x + y")
    assert info.value.position == 2


def test_separator_is_required_once():
    with pytest.raises(SystemSyntaxError):
        parse_system("x - y")
    with pytest.raises(SystemSyntaxError):
        parse_system("x ; y ; -1 + x + y")


def test_unexpected_character():
    with pytest.raises(SystemSyntaxError) as info:
        parse_system("x - z ; -1 + x + y")
    assert info.value.position == 4


def test_decimals_are_exact():
    spec = parse_system("0.25*x - y ; -1 + x + y")
    assert _coefficients(spec.f)[(1, 0)] == Fraction(1, 4)


def test_negative_exponents():
    spec = parse_system("x^-1 - y^(-2) ; -1 + x + y")
    assert set(_coefficients(spec.f)) == {(-1, 0), (0, -2)}


def test_g_must_be_a_trinomial():
    with pytest.raises(GNotTrinomial):
        parse_system("x - y ; x + y")
    with pytest.raises(GNotTrinomial):
        parse_system("x - y ; -1 + x + y + x*y")


def test_fractional_exponent_is_rejected():
    with pytest.raises(NonIntegerExponent):
        parse_system("x^(1/2) - y ; -1 + x + y")


def test_json_body():
    spec = parse_system('{"f": [[1, [1, 0]], [-1, [0, 1]]], "g": "-1 + x + y", "options": {"precision": 48}}')
    assert _coefficients(spec.f) == {(1, 0): 1, (0, 1): -1}
    assert spec.options == {"precision": 48}


def test_json_body_with_fractional_exponent():
    with pytest.raises(NonIntegerExponent):
        parse_system('{"f": [[1, [0.5, 0]], [-1, [0, 1]]], "g": "-1 + x + y"}')


@pytest.mark.parametrize(
    "body, position",
    [
        ('{"g": "-1 + x + y"}', 19),
        ('{"f": [[1, 2]], "g": "-1 + x + y"}', 1),
        ('{"f": 3, "g": "-1 + x + y"}', 1),
        ('{"f": "x - y", "g": "-1 + x + y", "options": [1]}', 34),
    ],
)
def test_malformed_json_body(body, position):
    with pytest.raises(SystemSyntaxError) as info:
        parse_system(body)
    assert info.value.position == position


def test_invalid_json():
    with pytest.raises(SystemSyntaxError):
        parse_system('{"f": ')


def test_render_reparses_to_the_same_text():
    for text in (SYMMETRIC_SIX, MIXED_SIX, LINE):
        rendered = render_system(parse_system(text))
        assert render_system(parse_system(rendered)) == rendered
    assert "(44/31)*y^3" in render_polynomial(parse_system(SYMMETRIC_SIX).f)
