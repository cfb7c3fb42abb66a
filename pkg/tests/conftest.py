"""Shared fixtures: the published five-solution systems and default settings."""

import pytest

from services.expression_parser import parse_system
from services.settings import AnalysisSettings

SYMMETRIC_SIX = "x^6 + (44/31)*y^3 - y ; y^6 + (44/31)*x^3 - x"
MIXED_SIX = "x^5 - (49/95)*x^3*y + y^6 ; y^5 - (49/95)*x*y^3 + x^6"
HAAS = "10*x^106 + 11*y^53 - 11*y ; 10*y^106 + 11*x^53 - 11*x"
LINE = "x - y ; -1 + x + y"


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def symmetric_six():
    return parse_system(SYMMETRIC_SIX)


@pytest.fixture
def mixed_six():
    return parse_system(MIXED_SIX)


@pytest.fixture
def haas():
    return parse_system(HAAS)


@pytest.fixture
def line_system():
    """One positive solution, (1/2, 1/2)."""
    return parse_system(LINE)


@pytest.fixture
def settings():
    return AnalysisSettings()


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for var in ("FEWNOMIAL_PRECISION", "FEWNOMIAL_MAX_PRECISION", "FEWNOMIAL_MAX_DEPTH", "FEWNOMIAL_EXTERIOR_POWER_CAP"):
        monkeypatch.delenv(var, raising=False)
