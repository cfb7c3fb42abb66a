import json

from graph.analysis_workflow_graph import AnalysisWorkflowGraph
from services.expression_parser import parse_system
from services.reports import ExitCode


def test_symmetric_six_report(symmetric_six, settings):
    report = AnalysisWorkflowGraph(settings).analyze(symmetric_six)
    flags = report.flags
    assert flags["count"] == 5 and flags["count_exact"]
    assert flags["bound_t"] == 5
    assert flags["hexagon"] is True
    assert flags["alternates"] is False
    assert flags["consecutive_translate"] is True
    assert flags["passed"]
    assert report.exit_code != ExitCode.VIOLATION.value
    assert report.t3_case["count"] == 5


def test_line_system_is_decided(line_system, settings):
    report = AnalysisWorkflowGraph(settings).analyze(line_system)
    assert report.flags["count"] == 1
    assert report.flags["decided"]
    assert report.exit_code == ExitCode.OK.value
    assert report.status == "ok"
    assert report.fans is None and report.phi is None


def test_one_signed_g_has_no_positive_solutions(settings):
    report = AnalysisWorkflowGraph(settings).analyze(parse_system("x - y ; 1 + x + y"))
    assert report.flags["no_positive_solutions"]
    assert report.flags["count"] == 0
    assert report.exit_code == ExitCode.OK.value


def test_degenerate_system_is_undecided(settings):
    report = AnalysisWorkflowGraph(settings).analyze(parse_system("-2 + 2*x + 2*y ; -1 + x + y"))
    assert report.errors
    assert report.flags["count"] is None
    assert report.exit_code == ExitCode.UNDECIDED.value


def test_report_is_deterministic(line_system, settings):
    graph = AnalysisWorkflowGraph(settings)
    first, second = graph.analyze(line_system), graph.analyze(line_system)
    assert first.to_json() == second.to_json()
    assert "timings" not in json.loads(first.to_json())
    assert set(first.timings) >= {"normalizer", "root_counter"}


def test_stream_phases(line_system, settings):
    events = list(AnalysisWorkflowGraph(settings).stream(line_system))
    assert events[0]["phase"] == "phase_0_normalization"
    assert events[-1]["node"] == "verdict"
    assert events[-1]["phase"] == "phase_3_verdict"
    assert "report" in events[-1]["data"]
