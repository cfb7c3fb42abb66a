"""Graph module for the phased analysis workflow."""

from .analysis_workflow_graph import AnalysisWorkflowGraph, AnalysisState

__all__ = ['AnalysisWorkflowGraph', 'AnalysisState']
