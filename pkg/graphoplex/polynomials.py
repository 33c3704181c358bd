"""
Polynomials in the formal variable s = 2n
"""

from fractions import Fraction
from typing import Dict, Union

from sympy import QQ, ZZ, Poly, Rational, Symbol

S = Symbol("s")

Number = Union[int, Fraction]


def int_poly(counts: Dict[int, int]) -> Poly:
    """Integer polynomial from a degree -> coefficient map"""
    terms = {(degree,): coeff for degree, coeff in counts.items() if coeff}
    if not terms:
        return Poly(0, S, domain=ZZ)
    return Poly.from_dict(terms, S, domain=ZZ)


def rat_poly(counts: Dict[int, Number]) -> Poly:
    terms = {(degree,): Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
             for degree, c in counts.items() if c}
    if not terms:
        return Poly(0, S, domain=QQ)
    return Poly.from_dict(terms, S, domain=QQ)


def zero_poly(rational: bool = True) -> Poly:
    return Poly(0, S, domain=QQ if rational else ZZ)


def to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def coefficient(p: Poly, degree: int) -> Fraction:
    if degree < 0:
        return Fraction(0)
    return to_fraction(p.coeff_monomial(S ** degree))


def evaluate_at_n(p: Poly, n: int) -> Fraction:
    """Value of p at s = 2n"""
    return to_fraction(p.eval(2 * n))


def poly_text(p: Poly) -> str:
    """Canonical text form: highest degree first, explicit rationals"""
    if p.is_zero:
        return "0"
    parts = []
    for (degree,), coeff in sorted(p.terms(), reverse=True):
        c = to_fraction(coeff)
        parts.append(f"{c}*s^{degree}")
    return " + ".join(parts)
