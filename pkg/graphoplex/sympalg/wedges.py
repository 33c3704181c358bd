"""
Exterior powers of QA_n and the Chevalley-Eilenberg boundary
"""

import itertools
import math

from fractions import Fraction
from typing import Dict, Iterator, Sequence, Tuple, Union

from sympy.combinatorics import Permutation
from sympy.polys.orderings import grlex

from ..exceptions import DimensionMismatch
from .algebra import PolyElement, monomial_text, poisson_bracket

Monomial = Tuple[int, ...]
WedgeKey = Tuple[Monomial, ...]


def monomial_key(monom: Monomial):
    """Graded lexicographic, p-variables before q-variables"""
    return grlex(monom)


def normalize_wedge(monomials: Sequence[Monomial]) -> Tuple[int, WedgeKey]:
    """Sign and sorted key of a wedge of monomials; sign 0 for a repeated factor"""
    if len(set(monomials)) != len(monomials):
        return 0, ()
    order = sorted(range(len(monomials)), key=lambda i: monomial_key(monomials[i]))
    sign = Permutation(order).signature() if len(order) > 1 else 1
    return sign, tuple(monomials[i] for i in order)


class WedgeElement:
    """Rational combination of wedges of monomials in a fixed number of variables"""

    def __init__(self, n: int, terms: Dict[WedgeKey, Fraction] = None):
        self.n = n
        self.terms: Dict[WedgeKey, Fraction] = {}
        for key, coeff in (terms or {}).items():
            self.add(key, coeff)

    @classmethod
    def wedge(cls, factors: Sequence[PolyElement]) -> "WedgeElement":
        """F_1 ^ ... ^ F_k expanded multilinearly"""
        if not factors:
            raise ValueError("empty wedge; use WedgeElement.unit")
        n = factors[0].n
        result = cls(n)
        for picks in itertools.product(*(f.terms() for f in factors)):
            coeff = Fraction(1)
            for _, c in picks:
                coeff *= c
            result.add(tuple(m for m, _ in picks), coeff)
        return result

    @classmethod
    def unit(cls, n: int) -> "WedgeElement":
        return cls(n, {(): Fraction(1)})

    def add(self, monomials: Sequence[Monomial], coeff: Union[int, Fraction]) -> None:
        if not coeff:
            return
        for m in monomials:
            if len(m) != 2 * self.n:
                raise DimensionMismatch(f"monomial {m} is not in {2 * self.n} variables")
        sign, key = normalize_wedge(monomials)
        if not sign:
            return
        value = self.terms.get(key, Fraction(0)) + sign * coeff
        if value:
            self.terms[key] = value
        else:
            self.terms.pop(key, None)

    def items(self) -> Iterator[Tuple[WedgeKey, Fraction]]:
        for key in sorted(self.terms, key=lambda k: [monomial_key(m) for m in k]):
            yield key, self.terms[key]

    def __add__(self, other: "WedgeElement") -> "WedgeElement":
        self._check(other)
        result = WedgeElement(self.n, dict(self.terms))
        for key, coeff in other.terms.items():
            result.add(key, coeff)
        return result

    def __sub__(self, other: "WedgeElement") -> "WedgeElement":
        return self + other.scale(-1)

    def scale(self, factor: Union[int, Fraction]) -> "WedgeElement":
        return WedgeElement(self.n, {key: value * factor for key, value in self.terms.items()})

    def _check(self, other: "WedgeElement") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"wedges over n = {self.n} and n = {other.n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WedgeElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def embed(self, n: int) -> "WedgeElement":
        """Same element in n >= self.n variables pairs"""
        if n < self.n:
            raise DimensionMismatch(f"cannot embed n = {self.n} into n = {n}")
        pad = n - self.n

        def lift(m: Monomial) -> Monomial:
            return m[:self.n] + (0,) * pad + m[self.n:] + (0,) * pad

        return WedgeElement(n, {tuple(lift(m) for m in key): c for key, c in self.terms.items()})

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, coeff in self.items():
            factors = " ^ ".join(monomial_text(m, self.n) for m in key) or "1"
            parts.append(f"{coeff}*[{factors}]")
        return " + ".join(parts)


def _monomial_element(monom: Monomial, n: int) -> PolyElement:
    return PolyElement.from_terms({monom: 1}, n)


def ce_boundary(w: WedgeElement) -> WedgeElement:
    """sum over s < t of (-1)^(s+t-1) {F_s, F_t} ^ F_1 .. ^F_s .. ^F_t .. F_k, 1-based positions"""
    result = WedgeElement(w.n)
    for key, coeff in w.items():
        k = len(key)
        for s, t in itertools.combinations(range(k), 2):
            sign = -1 if (s + t + 1) % 2 else 1
            bracket = poisson_bracket(_monomial_element(key[s], w.n), _monomial_element(key[t], w.n))
            rest = [m for i, m in enumerate(key) if i not in (s, t)]
            for monom, c in bracket.terms():
                result.add([monom] + rest, sign * coeff * c)
    return result


def monomial_pairing(a: Monomial, b: Monomial) -> int:
    """<x^a, x^b> = delta_ab * a!"""
    if a != b:
        return 0
    return math.prod(math.factorial(e) for e in a)


def pairing_Mprime(w1: WedgeElement, w2: WedgeElement) -> Fraction:
    """Determinant pairing of wedges; on sorted distinct factors only equal keys pair"""
    w1._check(w2)
    total = Fraction(0)
    for key, coeff in w1.terms.items():
        other = w2.terms.get(key)
        if other:
            total += coeff * other * math.prod(monomial_pairing(m, m) for m in key)
    return total


def sp_action(h: PolyElement, w: WedgeElement) -> WedgeElement:
    """Derivation action of the Hamiltonian h: sum_j F_1 ^ .. {F_j, h} .. ^ F_k"""
    result = WedgeElement(w.n)
    for key, coeff in w.items():
        for j, monom in enumerate(key):
            image = poisson_bracket(_monomial_element(monom, w.n), h)
            for m, c in image.terms():
                result.add(key[:j] + (m,) + key[j + 1:], coeff * c)
    return result
