"""
Symplectic side for the commutative species
"""
from graphoplex.sympalg.algebra import (
    PolyElement,
    cyclic_partial_derivative,
    generators,
    hamiltonian_matrix,
    is_symplectic_algebra_element,
    partial_derivative,
    phase_space,
    poisson_bracket,
    quadratic_basis,
    random_element,
    symplectic_form,
)
from graphoplex.sympalg.moyal import moyal_associator, moyal_product, moyal_star, moyal_term, series_is_zero
from graphoplex.sympalg.state_sums import graph_state_sum, invariant_state_sum
from graphoplex.sympalg.wedges import WedgeElement, ce_boundary, pairing_Mprime, sp_action

__all__ = [
    "PolyElement", "cyclic_partial_derivative", "generators", "hamiltonian_matrix",
    "is_symplectic_algebra_element", "partial_derivative", "phase_space", "poisson_bracket",
    "quadratic_basis", "random_element", "symplectic_form",
    "moyal_associator", "moyal_product", "moyal_star", "moyal_term", "series_is_zero",
    "graph_state_sum", "invariant_state_sum",
    "WedgeElement", "ce_boundary", "pairing_Mprime", "sp_action",
]
