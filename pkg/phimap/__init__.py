"""Phimap module: real landmarks of phi and the t = 3 ordering cases."""

from .landmarks import (
    Landmark, LandmarkKind, LandmarkTable, PhiReport, UndecidedSeparation, UndecidedSign, CommonRoot,
    phi_prime_numerator, critical_polynomial, classify_landmarks, landmark_table, useful_positive, flat_plus,
    sign_pattern, analyze_phi
)
from .t3_cases import CaseReport, ORDERINGS, t3_landmark_case

__all__ = [
    'Landmark', 'LandmarkKind', 'LandmarkTable', 'PhiReport', 'UndecidedSeparation', 'UndecidedSign', 'CommonRoot',
    'phi_prime_numerator', 'critical_polynomial', 'classify_landmarks', 'landmark_table', 'useful_positive',
    'flat_plus', 'sign_pattern', 'analyze_phi',
    'CaseReport', 'ORDERINGS', 't3_landmark_case'
]
