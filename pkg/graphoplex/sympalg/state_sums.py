"""
Graph invariants in the exterior algebra of QA_n
"""

import itertools

from fractions import Fraction
from typing import Iterator, List, Tuple, Union

from ..complexes import ChainVector
from ..exceptions import SpeciesMismatch
from ..graphs.canonical import SignedClass
from ..graphs.model import DecoratedGraph
from ..species import SpeciesTag
from .wedges import WedgeElement


def _check_commutative(g: DecoratedGraph) -> None:
    species = g.species
    if species.tag == SpeciesTag.CC:
        return
    if species.tag == SpeciesTag.GROUP and species.group.order == 1:
        return
    raise SpeciesMismatch(f"state sums are defined for commutative decorations, not {species}")


def iter_states(g: DecoratedGraph, n: int) -> Iterator[Tuple[int, List[Tuple[int, ...]]]]:
    """(sign, per-vertex exponent vectors) for every state, before cancellation.

    A state gives each edge an index i and either p_i at the tail and q_i
    at the head (+) or q_i at the tail and p_i at the head (-).
    """
    choices = [(i, polarity) for i in range(n) for polarity in (0, 1)]
    for state in itertools.product(choices, repeat=g.num_edges):
        monomials = [[0] * (2 * n) for _ in range(g.num_vertices)]
        sign = 1
        for (tail, head), (i, polarity) in zip(g.edges, state):
            at_tail, at_head = (i, n + i) if polarity == 0 else (n + i, i)
            if polarity:
                sign = -sign
            monomials[g.vertex_of[tail]][at_tail] += 1
            monomials[g.vertex_of[head]][at_head] += 1
        yield sign, [tuple(m) for m in monomials]


def graph_state_sum(g: DecoratedGraph, n: int) -> WedgeElement:
    """Sum over states of the wedge of vertex monomials, in vertex order"""
    _check_commutative(g)
    if g.num_vertices == 0:
        return WedgeElement.unit(n)
    result = WedgeElement(n)
    for sign, monomials in iter_states(g, n):
        result.add(monomials, sign)
    return result


def invariant_state_sum(x: Union[SignedClass, ChainVector, DecoratedGraph], n: int) -> WedgeElement:
    """I(x) for a class, a graph in its own orientation, or a chain"""
    if n < 1:
        raise ValueError("n must be at least 1")
    if isinstance(x, DecoratedGraph):
        return graph_state_sum(x, n)
    if isinstance(x, SignedClass):
        if x.is_zero:
            return WedgeElement(n)
        return graph_state_sum(x.graph, n).scale(x.sign)
    result = WedgeElement(n)
    for _, coeff, graph in x.items():
        result = result + graph_state_sum(graph, n).scale(Fraction(coeff))
    return result
