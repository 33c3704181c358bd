"""
Polynomials in p_1..p_n, q_1..q_n with the Poisson bracket.

QA_n elements have no constant or linear terms; the full polynomial
algebra (used by the Moyal product) admits every degree. Both are
PolyElement values built by different constructors.
"""

import itertools
import random

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from sympy import Expr, Matrix, Poly, QQ, Rational, Symbol, eye, symbols, zeros

from ..exceptions import DimensionMismatch, NotDegreeTwo
from ..polynomials import to_fraction

Variable = Union[str, Symbol]


def phase_space(n: int) -> Tuple[Tuple[Symbol, ...], Tuple[Symbol, ...]]:
    """(p_1..p_n), (q_1..q_n)"""
    if n < 1:
        raise ValueError("n must be at least 1")
    return symbols(f"p1:{n + 1}"), symbols(f"q1:{n + 1}")


def generators(n: int) -> Tuple[Symbol, ...]:
    """Variables in monomial order: p-variables before q-variables"""
    ps, qs = phase_space(n)
    return tuple(ps) + tuple(qs)


@dataclass(frozen=True)
class PolyElement:
    poly: Poly
    n: int

    @classmethod
    def qa(cls, expr: Union[Expr, int], n: int) -> "PolyElement":
        """Element of QA_n; rejects constant and linear terms"""
        element = cls.full(expr, n)
        low = [monom for monom in element.poly.monoms() if sum(monom) < 2]
        if low and not element.is_zero:
            raise ValueError(f"QA elements have degree >= 2, got terms of degree {sorted({sum(m) for m in low})}")
        return element

    @classmethod
    def full(cls, expr: Union[Expr, int], n: int) -> "PolyElement":
        return cls(Poly(expr, *generators(n), domain=QQ), n)

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, ...], Union[int, Fraction]], n: int) -> "PolyElement":
        data = {monom: Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                for monom, c in terms.items() if c}
        if not data:
            return cls.zero(n)
        return cls(Poly.from_dict(data, *generators(n), domain=QQ), n)

    @classmethod
    def zero(cls, n: int) -> "PolyElement":
        return cls(Poly(0, *generators(n), domain=QQ), n)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def terms(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        """Nonzero terms in graded lexicographic order, highest first"""
        if self.is_zero:
            return []
        return [(monom, to_fraction(c)) for monom, c in self.poly.terms(order="grlex")]

    def homogeneous(self, degree: int) -> "PolyElement":
        return PolyElement.from_terms({m: c for m, c in self.terms() if sum(m) == degree}, self.n)

    def degrees(self) -> List[int]:
        return sorted({sum(m) for m, _ in self.terms()})

    def _check(self, other: "PolyElement") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"n = {self.n} and n = {other.n}")

    def __add__(self, other: "PolyElement") -> "PolyElement":
        self._check(other)
        return PolyElement(self.poly + other.poly, self.n)

    def __sub__(self, other: "PolyElement") -> "PolyElement":
        self._check(other)
        return PolyElement(self.poly - other.poly, self.n)

    def __neg__(self) -> "PolyElement":
        return PolyElement(-self.poly, self.n)

    def __mul__(self, other: Union["PolyElement", int, Fraction]) -> "PolyElement":
        if isinstance(other, PolyElement):
            self._check(other)
            return PolyElement(self.poly * other.poly, self.n)
        return PolyElement(self.poly * _rational(other), self.n)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyElement):
            return NotImplemented
        return self.n == other.n and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.terms())))

    def to_text(self) -> str:
        return poly_element_text(self)


def _rational(value: Union[int, Fraction]) -> Rational:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    return Rational(value)


def monomial_text(monom: Sequence[int], n: int) -> str:
    names = [str(g) for g in generators(n)]
    factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e]
    return "*".join(factors) or "1"


def poly_element_text(f: PolyElement) -> str:
    """Sorted monomials with explicit rational coefficients"""
    if f.is_zero:
        return "0"
    return " + ".join(f"{c}*{monomial_text(m, f.n)}" for m, c in f.terms())


def variable(name: Variable, n: int) -> Symbol:
    gens = generators(n)
    if isinstance(name, Symbol):
        if name not in gens:
            raise DimensionMismatch(f"{name} is not a variable for n = {n}")
        return name
    for g in gens:
        if str(g) == name:
            return g
    raise DimensionMismatch(f"{name} is not a variable for n = {n}")


def partial_derivative(f: PolyElement, var: Variable) -> PolyElement:
    """Cutting all inputs labeled var"""
    return PolyElement(f.poly.diff(variable(var, f.n)), f.n)


def cyclic_partial_derivative(word: Sequence[str], var: str) -> Counter:
    """Cut a cyclic word at every occurrence of var, reading the rest from the cut"""
    result: Counter = Counter()
    m = len(word)
    for i, letter in enumerate(word):
        if letter == var:
            result[tuple(word[(i + j) % m] for j in range(1, m))] += 1
    return result


def poisson_bracket(f: PolyElement, h: PolyElement) -> PolyElement:
    """{F, H} = sum_i dF/dp_i dH/dq_i - dF/dq_i dH/dp_i"""
    f._check(h)
    ps, qs = phase_space(f.n)
    total = Poly(0, *generators(f.n), domain=QQ)
    for p, q in zip(ps, qs):
        total += f.poly.diff(p) * h.poly.diff(q) - f.poly.diff(q) * h.poly.diff(p)
    return PolyElement(total, f.n)


def _linear_coordinates(f: PolyElement) -> List[Rational]:
    coords = []
    for g in generators(f.n):
        coords.append(f.poly.coeff_monomial(g))
    return coords


def hamiltonian_matrix(h: PolyElement) -> Matrix:
    """Matrix of xi_H on the basis p_1..p_n, q_1..q_n (columns are images).

    xi_H(p_i) = dH/dq_i and xi_H(q_i) = -dH/dp_i.
    """
    if h.is_zero:
        return zeros(2 * h.n, 2 * h.n)
    if h.degrees() != [2]:
        raise NotDegreeTwo(f"Hamiltonian has degrees {h.degrees()}")
    ps, qs = phase_space(h.n)
    columns = [_linear_coordinates(PolyElement(h.poly.diff(q), h.n)) for q in qs]
    columns += [_linear_coordinates(PolyElement(-h.poly.diff(p), h.n)) for p in ps]
    return Matrix.hstack(*[Matrix(col) for col in columns])


def symplectic_form(n: int) -> Matrix:
    """J = [[0, I], [-I, 0]]"""
    return Matrix.vstack(Matrix.hstack(zeros(n), eye(n)), Matrix.hstack(-eye(n), zeros(n)))


def is_symplectic_algebra_element(m: Matrix) -> bool:
    n = m.shape[0] // 2
    j = symplectic_form(n)
    return (m.T * j + j * m).is_zero_matrix


def quadratic_basis(n: int) -> List[PolyElement]:
    """Monomials of degree 2; their Hamiltonian matrices span sp(2n)"""
    gens = generators(n)
    return [PolyElement.qa(a * b, n) for a, b in itertools.combinations_with_replacement(gens, 2)]


def random_element(rng: random.Random, n: int, max_degree: int, terms: int = 3,
                   min_degree: int = 2, coefficient_range: int = 5) -> PolyElement:
    """Seeded random polynomial with small integer coefficients"""
    data: Dict[Tuple[int, ...], int] = {}
    for _ in range(terms):
        degree = rng.randint(min_degree, max_degree)
        monom = [0] * (2 * n)
        for _ in range(degree):
            monom[rng.randrange(2 * n)] += 1
        c = rng.randint(-coefficient_range, coefficient_range)
        data[tuple(monom)] = data.get(tuple(monom), 0) + c
    return PolyElement.from_terms(data, n)
