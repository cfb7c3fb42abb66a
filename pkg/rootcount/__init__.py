"""Rootcount module: certified root counts on (0, 1) and the explicit bounds."""

from .isolation import EnclosedFunction, GenPolyFunction, PolynomialFunction, isolate_sign_changes, clear_endpoint
from .certified_count import CertifiedCount, CountStatus, certified_count, count_positive_solutions, count_phi_solutions
from .bounds import BoundReport, CheckStatus, InequalityCheck, TheoremViolation, bound_t, bound_phi, check_bounds

__all__ = [
    'EnclosedFunction', 'GenPolyFunction', 'PolynomialFunction', 'isolate_sign_changes', 'clear_endpoint',
    'CertifiedCount', 'CountStatus', 'certified_count', 'count_positive_solutions', 'count_phi_solutions',
    'BoundReport', 'CheckStatus', 'InequalityCheck', 'TheoremViolation', 'bound_t', 'bound_phi', 'check_bounds'
]
