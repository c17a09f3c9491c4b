"""Resultants of multivariate polynomials with respect to one variable.

Two independent routes:

* :func:`resultant` runs the subresultant polynomial remainder sequence
  (Collins/Brown) over ``Q[other variables]``, using exact multivariate
  division for the subresultant scaling factors;
* :func:`sylvester_resultant` builds the Sylvester matrix and takes its
  determinant with Bareiss fraction-free elimination.

Both return the unnormalized resultant, i.e. the Sylvester determinant with
the rows of ``p`` on top.  Use :func:`normalized_resultant` to split off the
rational content.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from .multipoly import MultiPoly, content_primitive, exact_divide

__all__ = [
    "DegenerateInputError",
    "pseudo_remainder",
    "resultant",
    "normalized_resultant",
    "sylvester_matrix",
    "bareiss_determinant",
    "sylvester_resultant",
]


class DegenerateInputError(ValueError):
    """Raised when a resultant is requested for a zero or constant input."""


def _check(p: MultiPoly, q: MultiPoly, v: str) -> None:
    if p.is_zero() or q.is_zero():
        raise DegenerateInputError("resultant of the zero polynomial")
    if p.degree(v) < 1 or q.degree(v) < 1:
        raise DegenerateInputError(f"both inputs need positive degree in {v}")


def _divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    h = exact_divide(p, q)
    if h is None:
        raise ArithmeticError(f"inexact division in subresultant sequence: ({p}) / ({q})")
    return h


def _strip(a: List[MultiPoly]) -> List[MultiPoly]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def pseudo_remainder(a: List[MultiPoly], b: List[MultiPoly]) -> List[MultiPoly]:
    """``lc(b)**(deg a - deg b + 1) * a  mod  b`` on dense coefficient lists."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b)
    if delta < 0:
        return r
    for _ in range(delta + 1):
        if len(r) - 1 < db:
            # pad the missing multiplications by lc(b)
            break
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, y in enumerate(b):
            r[shift + j] = r[shift + j] - lr * y
        r.pop()
        r = _strip(r)
        delta -= 1
    # account for steps skipped when the degree dropped by more than one
    if delta >= 0:
        factor = lb ** (delta + 1)
        r = [c * factor for c in r]
    return r


def resultant(p: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """Resultant ``Res_v(p, q)`` by the subresultant PRS."""
    _check(p, q, v)
    a = p.coeff_list(v)
    b = q.coeff_list(v)
    sign = 1
    if len(a) < len(b):
        a, b = b, a
        if ((len(a) - 1) * (len(b) - 1)) % 2:
            sign = -sign
    g = MultiPoly.one()
    h = MultiPoly.one()
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = pseudo_remainder(a, b)
        if not r:
            return MultiPoly.zero()
        scale = g * h ** delta
        a = b
        b = [_divide(c, scale) for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _divide(g ** delta, h ** (delta - 1))
        if len(b) == 1:
            break
    da = len(a) - 1
    lb = b[0]
    if da == 1:
        h = lb
    else:
        h = _divide(lb ** da, h ** (da - 1))
    return h * sign


def normalized_resultant(p: MultiPoly, q: MultiPoly, v: str) -> Tuple[Fraction, MultiPoly]:
    """``(scalar, primitive)`` with ``resultant == scalar * primitive``; ``(0, 0)`` if it vanishes."""
    r = resultant(p, q, v)
    if r.is_zero():
        return Fraction(0), r
    return content_primitive(r)


def sylvester_matrix(p: MultiPoly, q: MultiPoly, v: str) -> List[List[MultiPoly]]:
    _check(p, q, v)
    a = list(reversed(p.coeff_list(v)))  # highest power first
    b = list(reversed(q.coeff_list(v)))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MultiPoly.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def bareiss_determinant(matrix: List[List[MultiPoly]]) -> MultiPoly:
    """Fraction-free Gaussian elimination; entries may be any exact ring elements."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return MultiPoly.one()
    sign = 1
    prev = MultiPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = _divide(num, prev) if not prev == 1 else num
            m[i][k] = MultiPoly.zero()
        prev = pivot
    return m[n - 1][n - 1] * sign


def sylvester_resultant(p: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """Resultant as the Bareiss determinant of the Sylvester matrix."""
    return bareiss_determinant(sylvester_matrix(p, q, v))
