"""Dense univariate polynomials over Q as coefficient lists (lowest power first).

Internal helper for gcds, Sturm sequences and root isolation, where the
sparse multivariate representation would only add overhead.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .multipoly import MultiPoly

Dense = List[Fraction]


def trim(a: Sequence) -> Dense:
    # entries stay int or Fraction; every division below goes through Fraction
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(trim(a)) - 1


def from_multipoly(p: MultiPoly, v: str) -> Dense:
    others = set(p.variables()) - {v}
    if others:
        raise ValueError(f"{p} is not univariate in {v} (also involves {sorted(others)})")
    return trim(c.constant_value() for c in p.coeff_list(v))


def to_multipoly(a: Sequence, v: str) -> MultiPoly:
    return MultiPoly.from_coeff_list([MultiPoly.const(c) for c in a], v)


def add(a: Sequence, b: Sequence) -> Dense:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def scale(a: Sequence, s) -> Dense:
    return trim(c * s for c in a)


def mul(a: Sequence, b: Sequence) -> Dense:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def derivative(a: Sequence) -> Dense:
    return trim(i * a[i] for i in range(1, len(a)))


def divmod_(a: Sequence, b: Sequence) -> Tuple[Dense, Dense]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(a) < len(b):
        return [], a
    r = list(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return trim(q), trim(r[: len(b) - 1])


def rem(a: Sequence, b: Sequence) -> Dense:
    return divmod_(a, b)[1]


def monic(a: Sequence) -> Dense:
    a = trim(a)
    if not a:
        return []
    lead = Fraction(a[-1])
    return [c / lead for c in a]


def gcd(a: Sequence, b: Sequence) -> Dense:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def evaluate(a: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign_at(a: Sequence, x) -> int:
    v = evaluate(a, x)
    return (v > 0) - (v < 0)


def sign_at_infinity(a: Sequence, positive: bool) -> int:
    a = trim(a)
    if not a:
        return 0
    s = 1 if a[-1] > 0 else -1
    if not positive and (len(a) - 1) % 2:
        s = -s
    return s


def squarefree_part(a: Sequence) -> Dense:
    a = trim(a)
    if len(a) <= 1:
        return monic(a)
    g = gcd(a, derivative(a))
    q, r = divmod_(a, g)
    assert not r
    return monic(q)


def squarefree_factorization(a: Sequence) -> List[Tuple[Dense, int]]:
    """Yun's algorithm: ``a = lc * prod(f_i ** i)`` with ``f_i`` squarefree, coprime, monic."""
    a = trim(a)
    if len(a) <= 1:
        return []
    out = []
    da = derivative(a)
    g = gcd(a, da)
    b = divmod_(a, g)[0]
    c = divmod_(da, g)[0]
    d = add(c, scale(derivative(b), -1))
    i = 1
    while len(b) > 1:
        g = gcd(b, d)
        b = divmod_(b, g)[0]
        c = divmod_(d, g)[0]
        d = add(c, scale(derivative(b), -1))
        if len(g) > 1:
            out.append((monic(g), i))
        i += 1
    return out


def cauchy_bound(a: Sequence) -> Fraction:
    """Every real root has absolute value strictly below the returned bound."""
    a = trim(a)
    lc = abs(Fraction(a[-1]))
    return 1 + max((abs(c) / lc for c in a[:-1]), default=Fraction(0))
