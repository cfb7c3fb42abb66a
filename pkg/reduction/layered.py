"""
Layered representations sum x^m * (1-x)^n * h(x) and the derivative recursion.

Stage j of the recursion is f_j; going from f_j to f_(j+1) takes 2^(j-1)
derivatives, which kill the leading layer (a polynomial of degree below
2^(j-1)), and then multiplies by a monomial prefactor so that the next
leading layer is free of x and (1-x) powers.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from algebra.errors import FewnomialError
from algebra.unipoly import UniPoly, UniPolyR
from reduction.gen_poly import GenPoly

logger = logging.getLogger(__name__)


class TooFewTerms(FewnomialError):
    """The recursion needs at least three terms."""


class LayerCountMismatch(FewnomialError):
    """The last stage does not have two distinct layers."""


@dataclass(frozen=True)
class Layer:
    m: Fraction
    n: Fraction
    h: UniPolyR


@dataclass(frozen=True)
class LayeredRep:
    """f_j as a sum of layers, with the Rolle budget 2^(j-1) towards f_(j+1)."""

    layers: Tuple[Layer, ...]
    stage: int
    rolle_budget: int = 0
    order: Tuple[int, ...] = ()

    def to_gen_poly(self) -> GenPoly:
        items = []
        for layer in self.layers:
            for d, c in enumerate(layer.h.coefficients):
                if not c.is_zero:
                    items.append((c, layer.m + d, layer.n))
        return GenPoly.from_terms(items)

    def degrees(self) -> List[int]:
        return [layer.h.structural_degree for layer in self.layers]


_PRODUCT = UniPoly((Fraction(0), Fraction(1), Fraction(-1)))


def _differentiate(layer: Layer) -> Layer:
    # d/dx[x^m (1-x)^n h] = x^(m-1) (1-x)^(n-1) ((m - (m+n)x) h + x(1-x) h')
    factor = UniPoly.linear(layer.m, -(layer.m + layer.n))
    h = layer.h * factor + layer.h.derivative() * _PRODUCT
    return Layer(layer.m - 1, layer.n - 1, h)


def derivative_layer(rep: LayeredRep, r: int) -> LayeredRep:
    """Apply the product-rule identity r times to every layer."""
    layers = list(rep.layers)
    for _ in range(r):
        layers = [_differentiate(layer) for layer in layers]
    return LayeredRep(tuple(layers), rep.stage, rep.rolle_budget, rep.order)


def default_order(F: GenPoly) -> Tuple[int, ...]:
    return tuple(range(len(F)))


def recursion_chain(F: GenPoly, order: Optional[Sequence[int]] = None) -> List[LayeredRep]:
    """
    Stages f_1, ..., f_(t-1) of the derivative recursion.

    Args:
        F: GenPoly with t >= 3 terms
        order: peeling order as a permutation of term indices; defaults to
            ascending (k, l)

    Returns:
        One LayeredRep per stage; f_1 = x^(-k_1) (1-x)^(-l_1) F.
    """
    t = len(F)
    if t < 3:
        raise TooFewTerms(f"recursion needs at least 3 terms, F has {t}")
    order = tuple(order) if order is not None else default_order(F)
    if sorted(order) != list(range(t)):
        raise ValueError(f"order {order} is not a permutation of the {t} terms")
    terms = [F.terms[i] for i in order]
    k1, l1 = terms[0].k, terms[0].l
    layers = tuple(Layer(term.k - k1, term.l - l1, UniPolyR.constant(term.coefficient)) for term in terms)
    stages = [LayeredRep(layers, 1, 1, order)]
    for j in range(1, t - 1):
        r = 2 ** (j - 1)
        current = stages[-1]
        lead = current.layers[0]
        if lead.m != 0 or lead.n != 0 or lead.h.structural_degree >= r:
            raise LayerCountMismatch(f"stage {j} leading layer is not killed by {r} derivatives")
        rest = LayeredRep(current.layers[1:], j)
        differentiated = derivative_layer(rest, r)
        shift_k = terms[j - 1].k - terms[j].k + r
        shift_l = terms[j - 1].l - terms[j].l + r
        shifted = tuple(Layer(L.m + shift_k, L.n + shift_l, L.h) for L in differentiated.layers)
        stages.append(LayeredRep(shifted, j + 1, 2 ** j, order))
        logger.debug("stage %d degrees %s", j + 1, stages[-1].degrees())
    return stages
