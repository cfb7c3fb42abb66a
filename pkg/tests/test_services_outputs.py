"""Reports, samples and search records."""

import io
import json
from fractions import Fraction

import pytest

from algebra.errors import FewnomialError
from algebra.unipoly import UniPoly
from conftest import SYMMETRIC_SIX, LINE
from reduction.gen_poly import GenPoly
from reduction.phi_map import PhiMap
from services.expression_parser import parse_system, render_system
from services.reports import AnalysisReport, ExitCode, exit_status
from services.sampler import rows_to_csv, sample_function
from services.search_runner import (
    SearchRunner,
    Trial,
    perturbation_systems,
    perturbed_terms,
    random_systems,
)
from services.settings import AnalysisSettings

SUPPORT = [(0, 0), (1, 0), (0, 1)]


def test_exit_status():
    assert exit_status([], True) is ExitCode.OK
    assert exit_status([], False) is ExitCode.UNDECIDED
    assert exit_status(["bad"], False) is ExitCode.VIOLATION
    assert exit_status(["bad"], True) is ExitCode.VIOLATION


def test_report_json_drops_timings_unless_asked():
    report = AnalysisReport(input={"f": "x"}, settings={}, timings={"normalizer": 0.5})
    assert "timings" not in json.loads(report.to_json())
    assert json.loads(report.to_json(include_timings=True))["timings"] == {"normalizer": 0.5}


def test_sample_needs_two_points():
    with pytest.raises(ValueError):
        sample_function(GenPoly.from_terms([(1, 0, 0)]).evaluate, 1)


def test_sample_of_linear_F_encloses_values():
    rows = sample_function(GenPoly.from_terms([(2, 1, 0), (-1, 0, 0)]).evaluate, 3)
    assert [x for x, _, _ in rows] == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    for x, lo, hi in rows:
        assert lo <= 2 * x - 1 <= hi


def test_phi_samples_increase():
    one = UniPoly.constant(1)
    phi = PhiMap.from_rational(Fraction(1), Fraction(-1), one, one)
    rows = sample_function(phi.evaluate, 9)
    for previous, current in zip(rows, rows[1:]):
        assert current[1] > previous[2]


def test_failed_points_have_empty_bounds():
    def evaluate(x, bits):
        raise FewnomialError("pole")

    rows = sample_function(evaluate, 2)
    assert all(lo is None and hi is None for _, lo, hi in rows)
    lines = rows_to_csv(rows).splitlines()
    assert lines[0] == "x,value_lo,value_hi"
    assert lines[1].endswith(",,")


def test_random_systems_replay():
    first = [render_system(t.spec) for t in random_systems(SUPPORT, SUPPORT, seed=3, trials=4)]
    again = [render_system(t.spec) for t in random_systems(SUPPORT, SUPPORT, seed=3, trials=4)]
    other = [render_system(t.spec) for t in random_systems(SUPPORT, SUPPORT, seed=4, trials=4)]
    assert first == again
    assert first != other
    assert len(set(first)) == 4


def test_random_systems_need_trinomial_g():
    with pytest.raises(ValueError):
        list(random_systems(SUPPORT, SUPPORT[:2], seed=0, trials=1))


def test_perturbation_grid_contains_base():
    base = parse_system(SYMMETRIC_SIX)
    assert perturbed_terms(base) == [("f", 1), ("g", 2)]
    trials = list(perturbation_systems(base, Fraction(1, 10), steps=3))
    assert len(trials) == 9
    assert render_system(base) in [render_system(t.spec) for t in trials]
    with pytest.raises(ValueError):
        list(perturbation_systems(base, steps=1))


def test_search_without_trials():
    summary = SearchRunner(AnalysisSettings()).run(iter([]))
    assert summary.trials == 0
    assert summary.max_count is None
    assert summary.to_dict()["histogram"] == {}


def test_search_skips_duplicates_and_writes_records():
    spec = parse_system(LINE)
    out = io.StringIO()
    summary = SearchRunner(AnalysisSettings(), threshold=1).run(iter([Trial(0, None, spec), Trial(1, None, spec)]), out)
    assert (summary.trials, summary.duplicates_skipped, summary.records) == (2, 1, 1)
    assert summary.histogram == {1: 1}
    (line,) = out.getvalue().splitlines()
    record = json.loads(line)
    assert record["system"] == render_system(spec)
    assert record["count"]["count"] == 1


def test_search_below_threshold_writes_nothing():
    out = io.StringIO()
    summary = SearchRunner(AnalysisSettings()).run(iter([Trial(0, None, parse_system(LINE))]), out)
    assert summary.records == 0 and summary.max_count == 1
    assert out.getvalue() == ""
