"""
Moyal star product on the full polynomial algebra.

F * H = sum_m t^m B^m(F, H) / m!, where the order m term pairs m cut
inputs of F with m cut inputs of H:
B^m/m! = sum over |u| + |w| = m of (-1)^|w| / (u! w!) d_p^u d_q^w F * d_q^u d_p^w H.
"""

import itertools
import math

from fractions import Fraction
from typing import List, Sequence, Union

from ..exceptions import DimensionMismatch
from .algebra import PolyElement, phase_space

StarSeries = List[PolyElement]


def _multi_indices(n: int, total: int):
    for index in itertools.product(range(total + 1), repeat=n):
        if sum(index) == total:
            yield index


def _derive(f: PolyElement, variables, orders: Sequence[int]):
    poly = f.poly
    for var, order in zip(variables, orders):
        if order:
            poly = poly.diff((var, order))
    return poly


def moyal_term(f: PolyElement, h: PolyElement, m: int) -> PolyElement:
    """B^m(F, H) / m!"""
    if f.n != h.n:
        raise DimensionMismatch(f"n = {f.n} and n = {h.n}")
    n = f.n
    ps, qs = phase_space(n)
    total = PolyElement.zero(n)
    for size_u in range(m + 1):
        for u in _multi_indices(n, size_u):
            for w in _multi_indices(n, m - size_u):
                weight = Fraction((-1) ** (m - size_u),
                                  math.prod(math.factorial(a) for a in u) * math.prod(math.factorial(b) for b in w))
                left = _derive(PolyElement(_derive(f, ps, u), n), qs, w)
                right = _derive(PolyElement(_derive(h, qs, u), n), ps, w)
                total = total + PolyElement(left * right, n) * weight
    return total


def moyal_star(f: PolyElement, h: PolyElement, m_max: int) -> StarSeries:
    """Terms of F * H for orders 0..m_max"""
    return [moyal_term(f, h, m) for m in range(m_max + 1)]


def _as_series(x: Union[PolyElement, StarSeries]) -> StarSeries:
    return [x] if isinstance(x, PolyElement) else list(x)


def moyal_product(x: Union[PolyElement, StarSeries], y: Union[PolyElement, StarSeries], m_max: int) -> StarSeries:
    """Star product of two truncated series in t, truncated at order m_max"""
    a, b = _as_series(x), _as_series(y)
    n = a[0].n
    result = [PolyElement.zero(n) for _ in range(m_max + 1)]
    for i, left in enumerate(a):
        for j, right in enumerate(b):
            for m in range(m_max + 1 - i - j):
                result[i + j + m] = result[i + j + m] + moyal_term(left, right, m)
    return result


def moyal_associator(f: PolyElement, g: PolyElement, h: PolyElement, m_max: int) -> StarSeries:
    """(F * G) * H - F * (G * H), order by order"""
    left = moyal_product(moyal_product(f, g, m_max), h, m_max)
    right = moyal_product(f, moyal_product(g, h, m_max), m_max)
    return [a - b for a, b in zip(left, right)]


def series_is_zero(series: Sequence[PolyElement]) -> bool:
    return all(term.is_zero for term in series)


def antisymmetric_part(f: PolyElement, h: PolyElement) -> PolyElement:
    """(B(F, H) - B(H, F)) / 2"""
    return (moyal_term(f, h, 1) - moyal_term(h, f, 1)) * Fraction(1, 2)
