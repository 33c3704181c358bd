"""
Verification suites.

Each suite walks a (k, r) window, checks one family of identities exactly
and returns a VerificationReport; a failed check records a witness instead
of raising.
"""

import itertools
import logging
import math
import random

from typing import Callable, Dict, List, Optional

from .complexes import BoundaryKind, basis_chain, boundary, boundary_E, boundary_H
from .config import GraphConfig, LimitsConfig, get_graph_config, get_limits_config
from .exceptions import UsageError
from .graphs.canonical import SignedClass
from .graphs.enumeration import ComplexFilter, enumerate_basis
from .linalg import betti_table, direct_sum_rows, homology_dims, hopf_dims
from .logging_config import log_suite_result
from .models.common import Window
from .models.reports import VerificationReport
from .pairing import full_block, pairing_determinant, pairing_M, verify_adjoint, verify_homotopy
from .polynomials import evaluate_at_n, poly_text
from .species import SpeciesId, SpeciesTag
from .sympalg.algebra import poisson_bracket, quadratic_basis, random_element
from .sympalg.moyal import antisymmetric_part, moyal_associator, moyal_term
from .sympalg.state_sums import invariant_state_sum
from .sympalg.wedges import ce_boundary, pairing_Mprime, sp_action

logger = logging.getLogger(__name__)

Suite = Callable[..., VerificationReport]


def _report(suite: str, species: SpeciesId, window: Optional[Window]) -> VerificationReport:
    return VerificationReport(suite=suite, species=species.key, window=window)


def _finish(report: VerificationReport) -> VerificationReport:
    if report.checked == 0:
        report.fail("vacuous", "the window holds nothing to compare")
    log_suite_result(report.suite, report.species, report.passed, report.checked, len(report.failures))
    return report


def _require_commutative(suite: str, species: SpeciesId) -> None:
    if species.tag == SpeciesTag.CC:
        return
    if species.tag == SpeciesTag.GROUP and species.group.order == 1:
        return
    raise UsageError(f"suite {suite} needs a commutative species, got {species}")


def _window_classes(species: SpeciesId, window: Window, config: GraphConfig,
                    limits: LimitsConfig, e_max: Optional[int] = None) -> List[SignedClass]:
    """FULL classes of the window, optionally capped in edge count"""
    classes = []
    for k in range(max(window.k_min, 1), window.k_max + 1):
        for r in range(window.r_min, window.r_max + 1):
            if e_max is not None and k + r - 1 > e_max:
                continue
            classes.extend(enumerate_basis(species, k, r, ComplexFilter.FULL, config, limits))
    return classes


def suite_squares(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                  limits: Optional[LimitsConfig] = None, seed: int = 0) -> VerificationReport:
    """dE^2 = 0, dH^2 = 0 and dE dH + dH dE = 0 on every basis class"""
    config = config or get_graph_config()
    report = _report("squares", species, window)
    for c in _window_classes(species, window, config, limits or get_limits_config(), window.e_max):
        chain = basis_chain(c)
        e_image = boundary_E(chain, config=config)
        h_image = boundary_H(chain, config=config)
        report.checked += 1
        if not boundary_E(e_image, config=config).is_zero:
            report.fail("dE^2", "dE dE is not zero", cls=c.encoding.hex())
        if not boundary_H(h_image, config=config).is_zero:
            report.fail("dH^2", "dH dH is not zero", cls=c.encoding.hex())
        if not (boundary_E(h_image, config=config) + boundary_H(e_image, config=config)).is_zero:
            report.fail("dEdH", "dE dH + dH dE is not zero", cls=c.encoding.hex())
    return _finish(report)


def suite_adjoint(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                  limits: Optional[LimitsConfig] = None, seed: int = 0) -> VerificationReport:
    """M(dN x, y) = M(x, dE* y) on (k, e) blocks against (k - 1, e - 1)"""
    config = config or get_graph_config()
    report = _report("adjoint", species, window)
    for k in range(max(window.k_min, 2), window.k_max + 1):
        for r in range(window.r_min, window.r_max + 1):
            e = k + r - 1
            if window.e_max is not None and e > window.e_max:
                continue
            source = full_block(species, k, e, config, limits)
            target = full_block(species, k - 1, e - 1, config, limits)
            report.merge(verify_adjoint(source, target, species, config, window))
    return _finish(report)


def suite_pairing_restriction(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                              limits: Optional[LimitsConfig] = None, seed: int = 0,
                              ns=(1, 2)) -> VerificationReport:
    """M'(n)(I x, I y) = M(n)(x, y) at s = 2n, and M'(n) = M'(n + 1) on index-bounded inputs"""
    _require_commutative("pairing-restriction", species)
    config = config or get_graph_config()
    report = _report("pairing-restriction", species, window)
    e_max = 3 if window.e_max is None else window.e_max
    classes = _window_classes(species, window, config, limits or get_limits_config(), e_max)
    blocks: Dict[tuple, List[SignedClass]] = {}
    for c in classes:
        blocks.setdefault((c.graph.num_vertices, c.graph.num_edges), []).append(c)

    for block in blocks.values():
        for n in ns:
            invariants = {c.encoding: invariant_state_sum(c, n) for c in block}
            lifted = {c.encoding: invariant_state_sum(c, n + 1) for c in block}
            for x, y in itertools.product(block, repeat=2):
                report.checked += 1
                expected = evaluate_at_n(pairing_M(x, y, config), n)
                actual = pairing_Mprime(invariants[x.encoding], invariants[y.encoding])
                if actual != expected:
                    report.fail("restriction", "M' differs from M at s = 2n", n=n,
                                left=x.encoding.hex(), right=y.encoding.hex(),
                                expected=str(expected), actual=str(actual))
                stable = pairing_Mprime(invariants[x.encoding].embed(n + 1), lifted[y.encoding])
                if stable != actual:
                    report.fail("stability", "M'(n) != M'(n + 1) on index-bounded input", n=n,
                                left=x.encoding.hex(), right=y.encoding.hex())
    return _finish(report)


def suite_invariant_diagram(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                            limits: Optional[LimitsConfig] = None, seed: int = 0,
                            ns=(1, 2)) -> VerificationReport:
    """CE boundary of I(G) equals I((2n dE + dH) G)"""
    _require_commutative("invariant-diagram", species)
    config = config or get_graph_config()
    report = _report("invariant-diagram", species, window)
    e_max = 3 if window.e_max is None else window.e_max
    for c in _window_classes(species, window, config, limits or get_limits_config(), e_max):
        chain = basis_chain(c)
        for n in ns:
            report.checked += 1
            left = ce_boundary(invariant_state_sum(chain, n))
            right = invariant_state_sum(boundary(chain, BoundaryKind.N, n=n, config=config), n)
            if left != right:
                report.fail("diagram", "I does not intertwine the boundaries", cls=c.encoding.hex(), n=n,
                            left=left.to_text(), right=right.to_text())
    return _finish(report)


def suite_homotopy(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                   limits: Optional[LimitsConfig] = None, seed: int = 0) -> VerificationReport:
    report = verify_homotopy(species, window.k_max, window.r_max, config, limits, window=window)
    return _finish(report)


def suite_moyal(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                limits: Optional[LimitsConfig] = None, seed: int = 0, triples: int = 20,
                n: int = 2, max_degree: int = 3, order: int = 3) -> VerificationReport:
    """Order 0 and 1 terms, the antisymmetric part and associativity through `order`"""
    report = _report("moyal", species, window)
    rng = random.Random(seed)
    for index in range(triples):
        f, g, h = (random_element(rng, n, max_degree, min_degree=0) for _ in range(3))
        report.checked += 1
        if moyal_term(f, g, 0) != f * g:
            report.fail("order-0", "order 0 term is not the product", triple=index)
        if moyal_term(f, g, 1) != poisson_bracket(f, g):
            report.fail("order-1", "order 1 term is not the Poisson bracket", triple=index)
        if antisymmetric_part(f, g) != poisson_bracket(f, g):
            report.fail("antisymmetry", "antisymmetric part is not the Poisson bracket", triple=index)
        for m, term in enumerate(moyal_associator(f, g, h, order)):
            if not term.is_zero:
                report.fail("associativity", "associator does not vanish", triple=index, order=m,
                            f=f.to_text(), g=g.to_text(), h=h.to_text())
                break
    return _finish(report)


def suite_hopf_dims(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                    limits: Optional[LimitsConfig] = None, seed: int = 0) -> VerificationReport:
    """Homology of all graphs is the free graded-commutative algebra on the connected homology"""
    config = config or get_graph_config()
    report = _report("hopf-dims", species, window)
    r_values = list(range(max(window.r_min, 1), window.r_max + 1))
    connected = betti_table(species, ComplexFilter.CONNECTED, r_values, window.k_max,
                            config=config, limits=limits)
    full = betti_table(species, ComplexFilter.FULL, r_values, window.k_max, config=config, limits=limits)
    rho_max = max(r_values) - 1
    expected = hopf_dims(homology_dims(connected), window.k_max, rho_max)
    for row in full.rows:
        if not row.exact:
            continue
        report.checked += 1
        want = expected.get((row.k, row.r - 1), 0)
        if row.betti != want:
            report.fail("hopf", "dimension differs from the free algebra on primitives",
                        k=row.k, r=row.r, betti=row.betti, expected=want)
    return _finish(report)


def suite_pss_sum(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                  limits: Optional[LimitsConfig] = None, seed: int = 0) -> VerificationReport:
    """H(connected) = H(Q-graphs) + H(bivalent) degree by degree"""
    config = config or get_graph_config()
    report = _report("pss-sum", species, window)
    r_values = list(range(window.r_min, window.r_max + 1))
    tables = [betti_table(species, f, r_values, window.k_max, k_min=max(window.k_min, 1),
                          config=config, limits=limits)
              for f in (ComplexFilter.CONNECTED, ComplexFilter.QGRAPH, ComplexFilter.BIVALENT)]
    for k, r, whole, qgraph, bivalent in direct_sum_rows(*tables):
        report.checked += 1
        if whole != qgraph + bivalent:
            report.fail("direct-sum", "connected homology is not the direct sum",
                        k=k, r=r, connected=whole, qgraph=qgraph, bivalent=bivalent)
    return _finish(report)


def suite_nondegeneracy(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                        limits: Optional[LimitsConfig] = None, seed: int = 0) -> VerificationReport:
    """Each pairing block has a nonzero determinant led by the product of |Aut|"""
    config = config or get_graph_config()
    report = _report("nondegeneracy", species, window)
    for k in range(max(window.k_min, 1), window.k_max + 1):
        for r in range(window.r_min, window.r_max + 1):
            e = k + r - 1
            if window.e_max is not None and e > window.e_max:
                continue
            block = full_block(species, k, e, config, limits)
            if not block:
                continue
            report.checked += 1
            det = pairing_determinant(block, config)
            expected = math.prod(c.automorphisms for c in block)
            if det.is_zero or abs(int(det.LC())) != expected:
                report.fail("determinant", "leading coefficient is not the product of |Aut|",
                            k=k, e=e, det=poly_text(det), expected=expected)
    return _finish(report)


def suite_sp_invariance(species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
                        limits: Optional[LimitsConfig] = None, seed: int = 0, n: int = 1) -> VerificationReport:
    """Every degree-two Hamiltonian acts by zero on I(G)"""
    _require_commutative("sp-invariance", species)
    config = config or get_graph_config()
    report = _report("sp-invariance", species, window)
    e_max = 3 if window.e_max is None else window.e_max
    hamiltonians = quadratic_basis(n)
    for c in _window_classes(species, window, config, limits or get_limits_config(), e_max):
        invariant = invariant_state_sum(c, n)
        for h in hamiltonians:
            report.checked += 1
            if not sp_action(h, invariant).is_zero:
                report.fail("invariance", "sp(2n) acts nontrivially", cls=c.encoding.hex(), h=h.to_text())
    return _finish(report)


SUITES: Dict[str, Suite] = {
    "squares": suite_squares,
    "adjoint": suite_adjoint,
    "pairing-restriction": suite_pairing_restriction,
    "invariant-diagram": suite_invariant_diagram,
    "homotopy": suite_homotopy,
    "moyal": suite_moyal,
    "hopf-dims": suite_hopf_dims,
    "pss-sum": suite_pss_sum,
    "nondegeneracy": suite_nondegeneracy,
    "sp-invariance": suite_sp_invariance,
}


def run_suite(name: str, species: SpeciesId, window: Window, config: Optional[GraphConfig] = None,
              limits: Optional[LimitsConfig] = None, seed: int = 0) -> VerificationReport:
    suite = SUITES.get(name)
    if suite is None:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    logger.info(f"Running suite {name} on {species} window k<={window.k_max} r<={window.r_max}")
    return suite(species, window, config=config, limits=limits, seed=seed)
