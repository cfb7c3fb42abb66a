"""Reduction module: F(x), the derivative recursion and the rational map phi."""

from .gen_poly import GenPoly, GenTerm, Reduction, NonFiniteSolutionSet, reduce_system, to_F
from .layered import Layer, LayeredRep, TooFewTerms, LayerCountMismatch, derivative_layer, recursion_chain
from .phi_map import PhiMap, TrinomialData, NondegeneracyViolated, build_phi, t3_phi

__all__ = [
    'GenPoly', 'GenTerm', 'Reduction', 'NonFiniteSolutionSet', 'reduce_system', 'to_F',
    'Layer', 'LayeredRep', 'TooFewTerms', 'LayerCountMismatch', 'derivative_layer', 'recursion_chain',
    'PhiMap', 'TrinomialData', 'NondegeneracyViolated', 'build_phi', 't3_phi'
]
