"""
Analysis Workflow Graph - LangGraph pipeline behind the analyze command

Phase 0: Normalization
  → Normalizer (Newton polygons, unit and lattice normalizations, F)

Phase 1: Reduction
  → Chain Builder (derivative recursion, phi, closed-form phi for t = 3)

Phase 2: Parallel Analysis
  → Root Counter (certified counts per stage, bounds)
  → Phi Analyzer (landmarks, flat_plus, inequality checks)
  → Fan Analyzer (normal fans, Minkowski sum, alternation)
  (All run in parallel)

Phase 3: Verdict
  → Verdict (merges the sections into an AnalysisReport and picks the exit code)
"""

import logging
import time
from operator import add
from typing import Annotated, Any, Dict, List, Optional, TypedDict

from langgraph.graph import END, StateGraph

from bivar.monomial_map import normalize_trinomial_lattice
from bivar.polygon import newton_polygon
from bivar.sparse_poly import AllSameSign
from fans.theorem3 import Theorem3Report, apply_count, fan_flags
from phimap.landmarks import PhiReport, analyze_phi
from phimap.t3_cases import CaseReport, t3_landmark_case
from reduction.gen_poly import GenPoly, reduce_system
from reduction.layered import recursion_chain
from reduction.phi_map import PhiMap, build_phi, t3_phi
from rootcount.bounds import BoundReport, check_bounds
from rootcount.certified_count import CountStatus
from services.expression_parser import SystemSpec
from services.reports import AnalysisReport, exit_status
from services.settings import AnalysisSettings

logger = logging.getLogger(__name__)


class AnalysisState(TypedDict):
    """State managed by LangGraph throughout the analysis"""
    # Input (only set once at start)
    spec: SystemSpec
    settings: AnalysisSettings

    # Phase 0
    F: Optional[GenPoly]
    normalization: Optional[Dict[str, Any]]
    no_positive_solutions: bool

    # Phase 1
    chain: Optional[Dict[str, Any]]
    phi: Optional[PhiMap]
    t3_phi: Optional[PhiMap]

    # Phase 2 (each branch writes its own field)
    bounds: Optional[BoundReport]
    phi_report: Optional[PhiReport]
    fans: Optional[Theorem3Report]

    # Phase 3
    t3_case: Optional[CaseReport]
    report: Optional[AnalysisReport]

    # Metadata (accumulated throughout)
    processing_stats: Annotated[Dict[str, Any], lambda x, y: {**x, **y}]
    errors: Annotated[List[str], add]
    violations: Annotated[List[str], add]
    phase_completed: Annotated[List[str], add]


class AnalysisWorkflowGraph:
    """
    Runs every check on one system f = g = 0.

    Phase failures are recorded in `errors` and the later phases work with
    whatever exists; the verdict node turns the collected sections into
    the report.
    """

    def __init__(self, settings: Optional[AnalysisSettings] = None, order: Optional[List[int]] = None):
        self.settings = settings or AnalysisSettings()
        self.order = order
        self.workflow = self._build_workflow()

    def _build_workflow(self):
        workflow = StateGraph(AnalysisState)

        workflow.add_node("normalizer", self._normalizer_node)
        workflow.add_node("chain_builder", self._chain_builder_node)
        workflow.add_node("root_counter", self._root_counter_node)
        workflow.add_node("phi_analyzer", self._phi_analyzer_node)
        workflow.add_node("fan_analyzer", self._fan_analyzer_node)
        workflow.add_node("verdict", self._verdict_node)

        workflow.set_entry_point("normalizer")
        workflow.add_edge("normalizer", "chain_builder")

        workflow.add_edge("chain_builder", "root_counter")
        workflow.add_edge("chain_builder", "phi_analyzer")
        workflow.add_edge("chain_builder", "fan_analyzer")

        workflow.add_edge("root_counter", "verdict")
        workflow.add_edge("phi_analyzer", "verdict")
        workflow.add_edge("fan_analyzer", "verdict")
        workflow.add_edge("verdict", END)

        return workflow.compile()

    def _normalizer_node(self, state: AnalysisState) -> Dict[str, Any]:
        """Phase 0: Newton polygons, normalizations and F"""

        start = time.perf_counter()
        spec, bits = state['spec'], state['settings'].max_precision
        try:
            normalization: Dict[str, Any] = {
                'newton_polygons': [newton_polygon(spec.f, bits).to_dict(), newton_polygon(spec.g, bits).to_dict()]
            }
            try:
                reduction = reduce_system(spec.f, spec.g, bits)
            except AllSameSign as e:
                normalization['all_same_sign'] = str(e)
                return {
                    'normalization': normalization,
                    'no_positive_solutions': True,
                    'processing_stats': {'normalizer': {'execution_time': time.perf_counter() - start}},
                    'phase_completed': ['normalization'],
                }
            normalization['unit_map'] = reduction.unit_map.to_dict()
            normalization['transformed_f'] = str(reduction.transformed)
            if spec.g.has_integer_exponents:
                lattice_map, k3, k4, l4 = normalize_trinomial_lattice(spec.g, bits)
                normalization['lattice'] = {'map': lattice_map.to_dict(), 'k3': k3, 'k4': k4, 'l4': l4}
            return {
                'F': reduction.F,
                'normalization': normalization,
                'processing_stats': {
                    'normalizer': {'execution_time': time.perf_counter() - start, 'terms_in_F': len(reduction.F)}
                },
                'phase_completed': ['normalization'],
            }

        except Exception as e:
            return {'errors': [f"Normalization failed: {str(e)}"]}

    def _chain_builder_node(self, state: AnalysisState) -> Dict[str, Any]:
        """Phase 1: derivative recursion and phi"""

        start = time.perf_counter()
        F, spec = state.get('F'), state['spec']
        if F is None or len(F) < 3:
            return {'phase_completed': ['chain']}
        update: Dict[str, Any] = {}
        errors = []
        try:
            stages = recursion_chain(F, self.order)
            phi = build_phi(stages[-1])
            update['phi'] = phi
            update['chain'] = {
                'order': list(stages[0].order),
                'stages': [
                    {'stage': s.stage, 'layer_degrees': s.degrees(), 'rolle_budget': s.rolle_budget} for s in stages
                ],
            }
        except Exception as e:
            errors.append(f"Chain construction failed: {str(e)}")
        if spec.t == 3:
            try:
                update['t3_phi'] = t3_phi(spec.f, spec.g, state['settings'].max_precision)
            except Exception as e:
                errors.append(f"Trinomial phi failed: {str(e)}")
        update['errors'] = errors
        update['processing_stats'] = {'chain_builder': {'execution_time': time.perf_counter() - start}}
        update['phase_completed'] = ['chain']
        return update

    def _root_counter_node(self, state: AnalysisState) -> Dict[str, Any]:
        """Phase 2: certified counts and bounds"""

        start = time.perf_counter()
        spec, s = state['spec'], state['settings']
        try:
            order = self.order if state.get('chain') else None
            bounds = check_bounds(spec.f, spec.g, s.precision, s.max_depth, s.max_precision, order)
            return {
                'bounds': bounds,
                'errors': [f"Root counting failed: {e}" for e in bounds.errors],
                'processing_stats': {
                    'root_counter': {'execution_time': time.perf_counter() - start, 'stages': len(bounds.counts)}
                },
                'phase_completed': ['root_counter'],
            }

        except Exception as e:
            return {'errors': [f"Root counting failed: {str(e)}"]}

    def _phi_analyzer_node(self, state: AnalysisState) -> Dict[str, Any]:
        """Phase 2: real landmarks of phi"""

        start = time.perf_counter()
        phi, s = state.get('phi'), state['settings']
        if phi is None:
            return {'phase_completed': ['phi_analyzer']}
        try:
            report = analyze_phi(phi, s.precision, s.max_depth, s.max_precision, s.exterior_power_cap)
            return {
                'phi_report': report,
                'errors': [f"Phi analysis failed: {e}" for e in report.errors],
                'processing_stats': {
                    'phi_analyzer': {
                        'execution_time': time.perf_counter() - start,
                        'landmarks': len(report.landmarks),
                    }
                },
                'phase_completed': ['phi_analyzer'],
            }

        except Exception as e:
            return {'errors': [f"Phi analysis failed: {str(e)}"]}

    def _fan_analyzer_node(self, state: AnalysisState) -> Dict[str, Any]:
        """Phase 2: normal fans and the Minkowski sum"""

        start = time.perf_counter()
        spec = state['spec']
        if spec.t != 3:
            return {'phase_completed': ['fan_analyzer']}
        try:
            return {
                'fans': fan_flags(spec.f, spec.g, state['settings'].max_precision),
                'processing_stats': {'fan_analyzer': {'execution_time': time.perf_counter() - start}},
                'phase_completed': ['fan_analyzer'],
            }

        except Exception as e:
            return {'errors': [f"Fan analysis failed: {str(e)}"]}

    def _verdict_node(self, state: AnalysisState) -> Dict[str, Any]:
        """Phase 3: assemble the report and decide the exit code"""

        spec, settings = state['spec'], state['settings']
        bounds, phi_report, fans = state.get('bounds'), state.get('phi_report'), state.get('fans')
        count = bounds.counts[0] if bounds is not None and bounds.counts else None
        violations: List[str] = []
        errors: List[str] = []
        t3_case = None

        if bounds is not None:
            violations.extend(bounds.violations)
        if phi_report is not None:
            violations.extend(phi_report.violations)
        if fans is not None and count is not None:
            violations.extend(apply_count(fans, count).violations)
        t3 = state.get('t3_phi')
        if t3 is not None and not t3.nondegeneracy_violations:
            try:
                t3_case = t3_landmark_case(t3, count)
                if t3_case.consistent is False:
                    violations.append(f"five solutions with p~ = {t3_case.p_tilde}, q~ = {t3_case.q_tilde}")
            except Exception as e:
                errors.append(f"Trinomial case failed: {str(e)}")

        all_errors = list(state.get('errors', [])) + errors
        decided = (
            count is not None
            and bounds.decided
            and (phi_report is None or phi_report.status is CountStatus.EXACT)
            and not all_errors
        )
        code = exit_status(violations, decided)
        flags = {
            'count': count.count if count is not None else None,
            'count_exact': count.exact if count is not None else False,
            'bound_t': bounds.bound_t if bounds is not None else None,
            'hexagon': fans.hexagon if fans is not None else None,
            'alternates': fans.alternates if fans is not None else None,
            'consecutive_translate': fans.consecutive_translate if fans is not None else None,
            'no_positive_solutions': bool(state.get('no_positive_solutions')),
            'decided': decided,
            'passed': not violations,
        }
        F, phi, chain = state.get('F'), state.get('phi'), state.get('chain')
        phi_section = phi.to_dict() if phi is not None else None
        if t3 is not None:
            phi_section = dict(phi_section or {})
            phi_section['t3_phi'] = t3.to_dict()
        report = AnalysisReport(
            input=spec.to_dict(),
            settings=settings.model_dump(),
            normalization=state.get('normalization'),
            F={'terms': F.to_dict(), 'text': str(F)} if F is not None else None,
            chain=chain,
            phi=phi_section,
            bounds=bounds.to_dict() if bounds is not None else None,
            phi_report=phi_report.to_dict() if phi_report is not None else None,
            t3_case=t3_case.to_dict() if t3_case is not None else None,
            fans=fans.to_dict() if fans is not None else None,
            flags=flags,
            errors=all_errors,
            violations=violations,
            status={0: 'ok', 2: 'undecided', 3: 'violation'}[code.value],
            exit_code=code.value,
            timings={
                name: stats['execution_time']
                for name, stats in state.get('processing_stats', {}).items()
                if isinstance(stats, dict) and 'execution_time' in stats
            },
        )
        if violations:
            logger.error("theorem violations for %s: %s", spec.to_dict(), violations)
        return {
            't3_case': t3_case,
            'report': report,
            'errors': errors,
            'violations': violations,
            'phase_completed': ['verdict'],
        }

    def invoke(self, spec: SystemSpec) -> Dict[str, Any]:
        """
        Run the whole analysis.

        Args:
            spec: the parsed system

        Returns:
            Final state; state['report'] holds the AnalysisReport.
        """
        initial_state: AnalysisState = {
            'spec': spec,
            'settings': self.settings,
            'processing_stats': {},
            'errors': [],
            'violations': [],
            'phase_completed': [],
        }  # type: ignore

        return self.workflow.invoke(initial_state)

    def analyze(self, spec: SystemSpec) -> AnalysisReport:
        return self.invoke(spec)['report']

    def stream(self, spec: SystemSpec):
        """
        Stream node updates as they are computed.

        Yields:
            Dict with node name, its update and its phase
        """
        initial_state: AnalysisState = {
            'spec': spec,
            'settings': self.settings,
            'processing_stats': {},
            'errors': [],
            'violations': [],
            'phase_completed': [],
        }  # type: ignore

        for event in self.workflow.stream(initial_state):
            node_name = list(event.keys())[0]
            yield {
                'node': node_name,
                'data': event[node_name],
                'phase': self._determine_phase(node_name),
            }

    def _determine_phase(self, node_name: str) -> str:
        if node_name == 'normalizer':
            return 'phase_0_normalization'
        elif node_name == 'chain_builder':
            return 'phase_1_reduction'
        elif node_name in ['root_counter', 'phi_analyzer', 'fan_analyzer']:
            return 'phase_2_parallel'
        elif node_name == 'verdict':
            return 'phase_3_verdict'
        else:
            return 'unknown'
