"""
Quick self checks on small hand-sized examples.
"""

import logging
import tempfile

from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

from sympy import Matrix

from .complexes import (ChainVector, QuasiEdge, SparseMatrix, boundary_E, boundary_H, boundary_matrix, coboundary_E,
                        contract_quasi_edge)
from .exceptions import IsActualEdge
from .graphs.canonical import automorphism_order, canonical_class
from .graphs.enumeration import ComplexFilter, enumerate_basis
from .graphs.model import flip_edge, permute_vertices, polygon
from .linalg import betti_table, rank
from .logging_config import log_suite_result
from .models.reports import VerificationReport
from .pairing import (bracket, disjoint_union, full_block, matchings, pairing_M, unit_chain, verify_adjoint,
                      verify_homotopy)
from .species import AA, CC, group_species, is_fake, list_structures, lookup_group, make_structure, mate, validate_group
from .sympalg.algebra import PolyElement, generators, hamiltonian_matrix, partial_derivative, poisson_bracket
from .sympalg.moyal import moyal_term
from .sympalg.state_sums import iter_states
from .sympalg.wedges import WedgeElement, ce_boundary, pairing_Mprime

logger = logging.getLogger(__name__)

Check = Tuple[str, Callable[[], bool]]
Runner = Callable[[Sequence[str]], int]


def _raises(error, action: Callable[[], object]) -> bool:
    try:
        action()
    except error:
        return True
    return False


def _two_vertex_classes():
    return enumerate_basis(CC, 2, 2) + enumerate_basis(CC, 2, 3)


def _union_commutes() -> bool:
    a = ChainVector.from_class(canonical_class(polygon(CC, 3)))
    for c in _two_vertex_classes():
        b = ChainVector.from_class(c)
        if disjoint_union(a, b) != disjoint_union(b, a).scale((-1) ** (3 * 2)):
            return False
    return True


def _self_bracket_vanishes() -> bool:
    f = _poly(lambda p1, q1: p1 ** 2 * q1, 1)
    return poisson_bracket(f, f).is_zero


def _transposed_and_flipped() -> bool:
    g = polygon(CC, 3)
    moved = flip_edge(permute_vertices(g, (1, 0, 2)), g.edges[0])
    before, after = canonical_class(g), canonical_class(moved)
    return before.encoding == after.encoding and before.sign == after.sign


def _asymmetric_triangle() -> bool:
    return automorphism_order(polygon(group_species("z3"), 3, labels=[0, 1, 2])) == 1


def _poly(expr_builder: Callable, n: int) -> PolyElement:
    return PolyElement.qa(expr_builder(*generators(n)), n)


def _two_factor_boundary() -> bool:
    f = _poly(lambda p1, p2, q1, q2: p1 * q1 * p2, 2)
    h = _poly(lambda p1, p2, q1, q2: p2 * q2, 2)
    return ce_boundary(WedgeElement.wedge([f, h])) == WedgeElement.wedge([poisson_bracket(f, h)])


def _repeated_wedge() -> bool:
    f = _poly(lambda p1, q1: p1 * q1, 1)
    w = WedgeElement.wedge([f, f])
    return w.is_zero and ce_boundary(w).is_zero


def _hamiltonian_q_squared() -> bool:
    return hamiltonian_matrix(_poly(lambda p1, q1: q1 ** 2, 1)) == Matrix([[0, 0], [2, 0]])


def _state_count() -> bool:
    g = polygon(CC, 3)
    return all(sum(1 for _ in iter_states(g, n)) == (2 * n) ** g.num_edges for n in (1, 2))


def _distinct_wedges() -> bool:
    a = WedgeElement.wedge([_poly(lambda p1, q1: p1 * q1, 1)])
    b = WedgeElement.wedge([_poly(lambda p1, q1: p1 ** 2, 1)])
    return pairing_Mprime(a, b) == 0


def _order_zero() -> bool:
    f = PolyElement.full(generators(1)[0] + 1, 1)
    h = PolyElement.full(generators(1)[1] ** 2, 1)
    return moyal_term(f, h, 0) == f * h


def _incompatible_blocks() -> bool:
    report = verify_adjoint(full_block(CC, 3, 3), full_block(CC, 2, 3), CC)
    return report.passed and report.checked > 0


def _z2_adjoint() -> bool:
    z2 = group_species("z2")
    report = verify_adjoint(full_block(z2, 3, 3), full_block(z2, 2, 2), z2)
    return report.passed and report.checked > 0


def library_checks() -> List[Check]:
    trivial = group_species("trivial")
    triangle = canonical_class(polygon(CC, 3))
    return [
        ("AA 3 darts has 2 structures", lambda: len(list_structures(AA, [0, 1, 2])) == 2),
        ("CC 3-dart mate 3-dart is one 4-dart vertex",
         lambda: mate(make_structure(CC, [0, 1, 2]), 2, make_structure(CC, [3, 4, 5]), 3).darts == (0, 1, 4, 5)),
        ("CC trivalent vertex is not fake", lambda: not is_fake(make_structure(CC, [0, 1, 2]))),
        ("Z2 with identity star is valid", lambda: validate_group(lookup_group("z2")).valid),
        ("S3 with identity star is invalid", lambda: not validate_group(lookup_group("s3")).valid),
        ("S3 with inverse star is valid", lambda: validate_group(lookup_group("s3-inv")).valid),
        ("transposed vertices and flipped edge keep the sign", _transposed_and_flipped),
        ("k-gon of fake vertices has 2k automorphisms",
         lambda: all(automorphism_order(polygon(CC, k)) == 2 * k for k in range(1, 6))),
        ("asymmetric graph has one automorphism", _asymmetric_triangle),
        ("k = 0 enumerates nothing", lambda: enumerate_basis(CC, 0, 1) == []),
        ("quasi-edge on an edge is rejected",
         lambda: _raises(IsActualEdge, lambda: contract_quasi_edge(polygon(CC, 3), None, QuasiEdge(1, 2)))),
        ("boundary of the empty chain is empty",
         lambda: boundary_E(ChainVector()).is_zero and boundary_H(ChainVector()).is_zero),
        ("coboundary of the empty chain is empty", lambda: coboundary_E(ChainVector()).is_zero),
        ("empty bases give a 0x0 matrix", lambda: boundary_matrix([], [], "E").shape == (0, 0)),
        ("different vertex counts have no matchings",
         lambda: all(matchings(triangle, c) == [] for c in _two_vertex_classes())),
        ("different vertex counts pair to zero",
         lambda: all(pairing_M(triangle, c).is_zero for c in _two_vertex_classes())),
        ("union is graded-commutative", _union_commutes),
        ("bracket with the empty graph is zero",
         lambda: bracket(unit_chain(CC), ChainVector.from_class(triangle)).is_zero),
        ("incompatible blocks pair to zero on both sides", _incompatible_blocks),
        ("Z2 contraction onto a unit vertex is adjoint", _z2_adjoint),
        ("homotopy on an empty window passes", lambda: verify_homotopy(CC, 0, 0).passed),
        ("zero matrix has rank 0", lambda: rank(SparseMatrix([b"a", b"b"], [b"x", b"y", b"z"])) == 0),
        ("identity has full rank",
         lambda: rank(SparseMatrix([bytes([i]) for i in range(4)], [bytes([i]) for i in range(4)],
                                   {(i, i): Fraction(1) for i in range(4)})) == 4),
        ("empty complex has an all-zero table",
         lambda: all(row.betti == 0 for row in betti_table(trivial, ComplexFilter.CONNECTED, 0, 4).rows)),
        ("derivative in an absent variable is zero",
         lambda: partial_derivative(_poly(lambda p1, p2, q1, q2: p1 ** 2, 2), "q2").is_zero),
        ("{F, F} = 0", _self_bracket_vanishes),
        ("Hamiltonian matrix of q1^2", _hamiltonian_q_squared),
        ("two-factor CE boundary is the bracket", _two_factor_boundary),
        ("repeated factor wedge is zero", _repeated_wedge),
        ("state count is (2n)^e", _state_count),
        ("distinct basis wedges pair to zero", _distinct_wedges),
        ("order 0 Moyal term is the product", _order_zero),
    ]


def _verify_squares(runner: Runner) -> bool:
    # nested runs write their artifacts aside so stdout keeps one document
    with tempfile.TemporaryDirectory() as scratch:
        return runner(["verify", "--suite", "squares", "--species", "cc", "--kmax", "5", "--rmax", "3",
                       "--output", str(Path(scratch) / "squares"), "--no-log-files"]) == 0


def command_checks(runner: Runner) -> List[Check]:
    return [
        ("verify squares on cc passes", lambda: _verify_squares(runner)),
        ("unknown group is a usage error",
         lambda: runner(["homology", "--species", "group:nosuch", "--no-log-files"]) == 2),
    ]


def run_selftest(runner: Optional[Runner] = None) -> VerificationReport:
    """Run every check; command checks need a CLI runner"""
    report = VerificationReport(suite="selftest", species="all")
    checks = library_checks()
    if runner is not None:
        checks += command_checks(runner)
    for name, check in checks:
        report.checked += 1
        witness = {}
        try:
            ok = check()
        except Exception as e:
            logger.error(f"Self check '{name}' raised {type(e).__name__}: {e}")
            witness["error"] = f"{type(e).__name__}: {e}"
            ok = False
        if not ok:
            report.fail("selftest", name, **witness)
    log_suite_result(report.suite, report.species, report.passed, report.checked, len(report.failures))
    return report
