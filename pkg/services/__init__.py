"""Services module for settings, system parsing, reports, sampling and seeded searches."""

from .settings import AnalysisSettings, load_settings
from .expression_parser import (
    SystemSpec, SystemSyntaxError, GNotTrinomial, NonIntegerExponent, parse_system, render_system
)
from .reports import AnalysisReport, ExitCode, SCHEMA_VERSION
from .sampler import sample_function, rows_to_csv
from .search_runner import SearchRunner, SearchSummary, TrialRecord, random_systems, perturbation_systems

__all__ = [
    'AnalysisSettings', 'load_settings',
    'SystemSpec', 'SystemSyntaxError', 'GNotTrinomial', 'NonIntegerExponent', 'parse_system', 'render_system',
    'AnalysisReport', 'ExitCode', 'SCHEMA_VERSION',
    'sample_function', 'rows_to_csv',
    'SearchRunner', 'SearchSummary', 'TrialRecord', 'random_systems', 'perturbation_systems'
]
