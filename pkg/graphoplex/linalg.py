"""
Exact linear algebra on boundary matrices and homology tables
"""

import logging

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import QQ, ZZ, Poly, Rational, Symbol, binomial
from sympy.polys.matrices import DomainMatrix

from .complexes import BoundaryKind, SparseMatrix, boundary_matrix
from .config import GraphConfig, LimitsConfig, get_graph_config, get_limits_config
from .exceptions import ResourceLimit
from .graphs.enumeration import ComplexFilter, check_filter_support, enumerate_basis
from .models.tables import BettiRow, BettiTable
from .polynomials import S, to_fraction
from .species import SpeciesId

logger = logging.getLogger(__name__)


def _as_rational(value) -> Rational:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    return Rational(value)


def to_domain_matrix(m: SparseMatrix) -> DomainMatrix:
    """Sparse DomainMatrix over ZZ from the column-scaled integers, or over ZZ[s] for symbolic entries"""
    rows, cols = m.shape
    if m.is_symbolic:
        ring = ZZ[S]
        field = ring.get_field()
        data: Dict[int, Dict[int, object]] = {}
        for (i, j), value in m.entries.items():
            expr = value.as_expr() if isinstance(value, Poly) else _as_rational(value)
            data.setdefault(i, {})[j] = field.from_sympy(expr)
        return DomainMatrix(data, (rows, cols), field)
    data = {}
    for (i, j), value in m.entries.items():
        data.setdefault(i, {})[j] = ZZ(value)
    return DomainMatrix(data, (rows, cols), ZZ)


def rank(m: SparseMatrix) -> int:
    """Exact rank; fraction-free row reduction over ZZ"""
    if not m.entries:
        return 0
    matrix = to_domain_matrix(m)
    if matrix.domain.is_Field:
        _, pivots = matrix.rref()
    else:
        _, _, pivots = matrix.rref_den()
    return len(pivots)


def kernel(m: SparseMatrix) -> List[List[Fraction]]:
    """Basis of the rational null space, one vector per column of a free variable"""
    if m.is_symbolic:
        raise ValueError("kernel needs a numeric matrix; evaluate it at some n first")
    cols = m.shape[1]
    if not m.entries:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    # columns were scaled by column_scale, so null vectors scale back componentwise
    null = to_domain_matrix(m).convert_to(QQ).nullspace()
    return [[to_fraction(QQ.to_sympy(x)) * m.column_scale.get(j, 1) for j, x in enumerate(row)]
            for row in null.to_list()]


def betti_table(species: SpeciesId, complex_filter: ComplexFilter, r: Union[int, Sequence[int]], k_max: int,
                kind: Union[BoundaryKind, str] = BoundaryKind.E, n: Union[int, str, None] = None,
                k_min: int = 1, config: Optional[GraphConfig] = None,
                limits: Optional[LimitsConfig] = None) -> BettiTable:
    """Betti numbers of the filtered complex for k_min <= k <= k_max.

    The boundary out of degree k_max + 1 is assembled when its basis fits the
    limits; otherwise the k_max rows are flagged inexact (upper bounds).
    """
    if config is None:
        config = get_graph_config()
    if limits is None:
        limits = get_limits_config()
    kind = BoundaryKind(kind)
    complex_filter = ComplexFilter(complex_filter)
    check_filter_support(kind.value, complex_filter)
    r_values = [r] if isinstance(r, int) else list(r)

    rows: List[BettiRow] = []
    for r_value in r_values:
        bases: Dict[int, list] = {}
        for k in range(max(k_min - 1, 0), k_max + 1):
            bases[k] = enumerate_basis(species, k, r_value, complex_filter, config, limits)
        exact_top = True
        try:
            bases[k_max + 1] = enumerate_basis(species, k_max + 1, r_value, complex_filter, config, limits)
        except ResourceLimit as e:
            logger.warning(f"Degree {k_max + 1} not assembled for r={r_value}: {e}")
            exact_top = False

        ranks: Dict[int, int] = {}
        for k in range(k_min, k_max + 2):
            if k not in bases:
                continue
            source, target = bases[k], bases.get(k - 1, [])
            if not source or not target:
                ranks[k] = 0
                continue
            ranks[k] = rank(boundary_matrix(source, target, kind, complex_filter, n, config, limits))

        for k in range(k_min, k_max + 1):
            dim = len(bases[k])
            rank_out = ranks.get(k, 0)
            rank_in = ranks.get(k + 1, 0)
            rows.append(BettiRow(k=k, r=r_value, dim=dim, rank_out=rank_out, rank_in=rank_in,
                                 betti=dim - rank_out - rank_in, exact=exact_top or k < k_max))
    logger.info(f"Betti table for {species} filter={complex_filter.value} kind={kind.value}: {len(rows)} rows")
    return BettiTable(species=species.key, filter=complex_filter.value, kind=kind.value,
                      n=None if n is None else str(n), rows=rows)


def euler_characteristics(table: BettiTable, r: int) -> Tuple[int, int]:
    """Alternating sums of dims and of Betti numbers over the rows with this r"""
    dims = sum((-1) ** row.k * row.dim for row in table.rows if row.r == r)
    bettis = sum((-1) ** row.k * row.betti for row in table.rows if row.r == r)
    return dims, bettis


def hopf_dims(generators: Dict[Tuple[int, int], int], k_max: int, rho_max: int) -> Dict[Tuple[int, int], int]:
    """Bigraded dims of the free graded-commutative algebra on the given generators.

    Generators are keyed by (k, rho) with rho = r - 1; odd k generates an
    exterior factor, even k a polynomial factor. Truncated at k_max, rho_max.
    """
    x, y = Symbol("x"), Symbol("rho")
    series = Poly(1, x, y, domain=ZZ)

    def truncate(p: Poly) -> Poly:
        terms = {monom: c for monom, c in p.terms() if monom[0] <= k_max and monom[1] <= rho_max}
        return Poly.from_dict(terms, x, y, domain=ZZ) if terms else Poly(0, x, y, domain=ZZ)

    for (k, rho), count in sorted(generators.items()):
        if count <= 0 or k <= 0 or k > k_max or rho > rho_max:
            continue
        if k % 2:
            factor = Poly((1 + x ** k * y ** rho) ** count, x, y, domain=ZZ)
        else:
            top = k_max // k
            factor = Poly(sum(binomial(count + j - 1, j) * x ** (k * j) * y ** (rho * j) for j in range(top + 1)),
                          x, y, domain=ZZ)
        series = truncate(series * factor)

    dims = {}
    for (k, rho), c in series.terms():
        if k > 0 and c:
            dims[(k, rho)] = int(c)
    return dims


def homology_dims(table: BettiTable) -> Dict[Tuple[int, int], int]:
    """(k, rho) -> betti from a table"""
    return {(row.k, row.r - 1): row.betti for row in table.rows if row.betti}


def direct_sum_rows(connected: BettiTable, qgraph: BettiTable, bivalent: BettiTable) -> List[Tuple[int, int, int, int, int]]:
    """(k, r, connected, qgraph, bivalent) for every row exact in all three tables"""
    def index(table: BettiTable):
        return {(row.k, row.r): row for row in table.rows}

    q, b = index(qgraph), index(bivalent)
    rows = []
    for row in connected.rows:
        key = (row.k, row.r)
        if key in q and key in b and row.exact and q[key].exact and b[key].exact:
            rows.append((row.k, row.r, row.betti, q[key].betti, b[key].betti))
    return rows
