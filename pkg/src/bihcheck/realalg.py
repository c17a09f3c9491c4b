"""Exact real-root counting, isolation and positivity certificates.

Univariate inputs are :class:`MultiPoly` objects in a single variable.  All
decisions are made with exact rational sign evaluations; infinite interval
endpoints are handled through the leading coefficient and degree parity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import univariate as U
from .exact import RationalInterval, format_rational
from .multipoly import MultiPoly

__all__ = [
    "SturmChain",
    "IsolatedRoot",
    "RootIsolation",
    "PositivityCertificate",
    "NotIsolatingError",
    "sole_variable",
    "sturm_chain",
    "count_real_roots",
    "isolate_roots",
    "refine_root",
    "certify_positive",
    "quadratic_form_definite",
]


class NotIsolatingError(ValueError):
    """The interval handed to :func:`refine_root` does not isolate one simple root."""


def sole_variable(p: MultiPoly, default: str = "X") -> str:
    vs = p.variables()
    if len(vs) > 1:
        raise ValueError(f"{p} is not univariate")
    return vs[0] if vs else default


def _dense(p: MultiPoly, var: Optional[str]) -> Tuple[str, List[Fraction]]:
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    v = var or sole_variable(p)
    return v, U.from_multipoly(p, v)


@dataclass(frozen=True)
class SturmChain:
    var: str
    squarefree: MultiPoly
    polys: Tuple[MultiPoly, ...]

    def _dense_chain(self) -> List[List[Fraction]]:
        return [U.from_multipoly(q, self.var) for q in self.polys]

    def variations_at(self, x: Optional[Fraction], *, side: int = 0) -> int:
        """Sign variations at ``x``; ``x=None`` with ``side=-1/+1`` means -inf/+inf."""
        if x is None:
            signs = [U.sign_at_infinity(q, side > 0) for q in self._dense_chain()]
        else:
            signs = [U.sign_at(q, x) for q in self._dense_chain()]
        return _variations(signs)


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _chain_dense(sf: List[Fraction]) -> List[List[Fraction]]:
    chain = [sf, U.derivative(sf)]
    while chain[-1] and len(chain[-1]) > 1:
        r = U.rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def sturm_chain(p: MultiPoly, var: Optional[str] = None) -> SturmChain:
    v, a = _dense(p, var)
    sf = U.squarefree_part(a)
    chain = _chain_dense(sf)
    return SturmChain(
        var=v,
        squarefree=U.to_multipoly(sf, v),
        polys=tuple(U.to_multipoly(c, v) for c in chain),
    )


class _Counter:
    """Sturm root counting on a fixed squarefree polynomial."""

    def __init__(self, sf: List[Fraction]):
        self.sf = sf
        self.chain = _chain_dense(sf)

    def var_at(self, x: Fraction) -> int:
        return _variations([U.sign_at(q, x) for q in self.chain])

    def var_inf(self, positive: bool) -> int:
        return _variations([U.sign_at_infinity(q, positive) for q in self.chain])

    def count(self, iv: RationalInterval) -> int:
        # V(a) - V(b) counts roots in (a, b] for squarefree input
        va = self.var_inf(False) if iv.lo is None else self.var_at(iv.lo)
        vb = self.var_inf(True) if iv.hi is None else self.var_at(iv.hi)
        n = va - vb
        if iv.hi is not None and not iv.hi_closed and U.evaluate(self.sf, iv.hi) == 0:
            n -= 1
        if iv.lo is not None and iv.lo_closed and U.evaluate(self.sf, iv.lo) == 0:
            n += 1
        return n


def count_real_roots(p: MultiPoly, interval: Optional[RationalInterval] = None,
                     var: Optional[str] = None) -> int:
    """Number of distinct real roots of ``p`` in ``interval`` (default: the real line)."""
    _, a = _dense(p, var)
    if len(a) == 1:
        return 0
    return _Counter(U.squarefree_part(a)).count(interval or RationalInterval.real_line())


@dataclass(frozen=True)
class IsolatedRoot:
    interval: RationalInterval
    multiplicity: int

    @property
    def exact(self) -> Optional[Fraction]:
        return self.interval.lo if self.interval.lo == self.interval.hi else None


@dataclass(frozen=True)
class RootIsolation:
    poly: MultiPoly
    var: str
    squarefree: MultiPoly
    roots: Tuple[IsolatedRoot, ...]

    @property
    def intervals(self) -> List[RationalInterval]:
        return [r.interval for r in self.roots]

    def __len__(self) -> int:
        return len(self.roots)


def _bounded_part(iv: RationalInterval, bound: Fraction) -> Tuple[Fraction, Fraction]:
    lo = -bound if iv.lo is None else iv.lo
    hi = bound if iv.hi is None else iv.hi
    return lo, hi


def isolate_roots(p: MultiPoly, interval: Optional[RationalInterval] = None,
                  var: Optional[str] = None) -> RootIsolation:
    """Disjoint isolating intervals for all distinct real roots of ``p`` in ``interval``.

    Each reported interval is either a degenerate ``[r, r]`` holding an exact
    rational root, or an open interval whose endpoints are not roots and across
    which the squarefree part changes sign.
    """
    interval = interval or RationalInterval.real_line()
    v, a = _dense(p, var)
    sf = U.squarefree_part(a)
    factors = U.squarefree_factorization(a)
    counter = _Counter(sf)
    found: List[RationalInterval] = []

    if len(sf) > 1:
        lo, hi = _bounded_part(interval, U.cauchy_bound(sf))
        for end, closed in ((interval.lo, interval.lo_closed), (interval.hi, interval.hi_closed)):
            if end is not None and closed and U.evaluate(sf, end) == 0:
                found.append(RationalInterval.point(end))
        if lo < hi:
            stack = [(lo, hi)]
            while stack:
                x, y = stack.pop()
                n = counter.count(RationalInterval.open(x, y))
                if n == 0:
                    continue
                sx, sy = U.sign_at(sf, x), U.sign_at(sf, y)
                if n == 1 and sx and sy:
                    found.append(RationalInterval.open(x, y))
                    continue
                m = (x + y) / 2
                if U.evaluate(sf, m) == 0:
                    found.append(RationalInterval.point(m))
                stack.append((x, m))
                stack.append((m, y))

    found.sort(key=lambda iv: iv.lo)
    roots = tuple(IsolatedRoot(iv, _multiplicity(factors, iv)) for iv in found)
    return RootIsolation(poly=p, var=v, squarefree=U.to_multipoly(sf, v), roots=roots)


def _multiplicity(factors, iv: RationalInterval) -> int:
    for f, k in factors:
        if iv.lo == iv.hi:
            if U.evaluate(f, iv.lo) == 0:
                return k
        elif _Counter(f).count(iv) == 1:
            return k
    raise AssertionError(f"no squarefree factor owns the root in {iv}")


def refine_root(p: MultiPoly, iso: RationalInterval, width, var: Optional[str] = None) -> RationalInterval:
    """Shrink an isolating interval by bisection until its width is at most ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("requested width must be positive")
    v, a = _dense(p, var)
    sf = U.squarefree_part(a)
    if not iso.bounded:
        raise NotIsolatingError(f"{iso} is unbounded")
    if iso.lo == iso.hi:
        if U.evaluate(sf, iso.lo) != 0:
            raise NotIsolatingError(f"{iso.lo} is not a root")
        return iso
    if _Counter(sf).count(iso) != 1:
        raise NotIsolatingError(f"{iso} does not isolate exactly one root")
    x, y = iso.lo, iso.hi
    for end in (x, y):
        if U.evaluate(sf, end) == 0 and end in iso:
            return RationalInterval.point(end)
    sx, sy = U.sign_at(sf, x), U.sign_at(sf, y)
    if sx == 0 or sy == 0 or sx == sy:
        # an excluded endpoint is a root of the squarefree part; step inward first
        while True:
            m = (x + y) / 2
            sm = U.sign_at(sf, m)
            if sm == 0:
                return RationalInterval.point(m)
            if _Counter(sf).count(RationalInterval.open(x, m)) == 1:
                y = m
            else:
                x = m
            sx, sy = U.sign_at(sf, x), U.sign_at(sf, y)
            if sx and sy and sx != sy:
                break
    while y - x > width:
        m = (x + y) / 2
        sm = U.sign_at(sf, m)
        if sm == 0:
            return RationalInterval.point(m)
        if sm == sx:
            x = m
        else:
            y = m
    return RationalInterval.open(x, y)


# ---------------------------------------------------------------------------
# positivity


@dataclass(frozen=True)
class PositivityCertificate:
    """Finite exact evidence that a polynomial is positive (or PSD) on a region.

    kinds:
      ``negative-discriminant``  quadratic ``a x^2 + b x + c`` with ``a > 0`` and ``b^2 - 4ac < 0``
      ``no-real-roots+sample``   zero Sturm count on the interval plus one positive sample
      ``square-decomposition``   ``a (x + k y)^2 + e y^2`` with ``a > 0``, ``e >= 0``
    """

    kind: str
    poly: MultiPoly
    interval: Optional[RationalInterval]
    witness: Dict[str, object] = field(default_factory=dict)

    def verify(self) -> bool:
        """Re-check the witness from scratch with exact arithmetic."""
        if self.kind == "negative-discriminant":
            v = self.witness["var"]
            a, b, c = (Fraction(self.witness[k]) for k in "abc")
            expected = a * MultiPoly.var(v, 2) + b * MultiPoly.var(v) + c
            disc = b * b - 4 * a * c
            return expected == self.poly and a > 0 and disc < 0 and disc == self.witness["discriminant"]
        if self.kind == "no-real-roots+sample":
            x = Fraction(self.witness["sample"])
            v = self.witness["var"]
            return (count_real_roots(self.poly, self.interval, v) == 0
                    and x in self.interval
                    and self.poly.evaluate({v: x}) > 0)
        if self.kind == "square-decomposition":
            x, y = self.witness["vars"]
            a, k, e = (Fraction(self.witness[key]) for key in ("a", "shift", "rest"))
            X, Y = MultiPoly.var(x), MultiPoly.var(y)
            rebuilt = a * (X + k * Y) ** 2 + e * Y ** 2
            return rebuilt == self.poly and a > 0 and e >= 0
        return False

    def to_dict(self) -> dict:
        def fmt(val):
            if isinstance(val, (Fraction, int)):
                return format_rational(val)
            if isinstance(val, tuple):
                return list(val)
            return val

        return {
            "kind": self.kind,
            "poly": str(self.poly),
            "interval": None if self.interval is None else str(self.interval),
            "witness": {k: fmt(v) for k, v in sorted(self.witness.items())},
        }


def _sample_point(iv: RationalInterval) -> Fraction:
    if iv.lo is None and iv.hi is None:
        return Fraction(0)
    if iv.lo is None:
        return iv.hi - 1
    if iv.hi is None:
        return iv.lo + 1
    return iv.midpoint


def certify_positive(p: MultiPoly, interval: Optional[RationalInterval] = None,
                     var: Optional[str] = None) -> Optional[PositivityCertificate]:
    """Certificate that ``p > 0`` on ``interval``, or ``None`` when that is false."""
    interval = interval or RationalInterval.real_line()
    v, a = _dense(p, var)
    if len(a) == 3 and interval.lo is None and interval.hi is None:
        c0, b, lead = a
        disc = b * b - 4 * lead * c0
        if lead > 0 and disc < 0:
            return PositivityCertificate(
                "negative-discriminant", p, interval,
                {"var": v, "a": lead, "b": b, "c": c0, "discriminant": disc},
            )
    if count_real_roots(p, interval, v) != 0:
        return None
    x = _sample_point(interval)
    if U.evaluate(a, x) <= 0:
        return None
    return PositivityCertificate("no-real-roots+sample", p, interval, {"var": v, "sample": x})


def quadratic_form_definite(q: MultiPoly, x: Optional[str] = None,
                            y: Optional[str] = None) -> Optional[PositivityCertificate]:
    """PSD certificate ``a(x + b/(2a) y)^2 + (4ac - b^2)/(4a) y^2`` for a binary quadratic form."""
    vs = q.variables()
    if x is None or y is None:
        if len(vs) != 2:
            raise ValueError(f"{q} is not a form in two variables")
        x, y = vs
    if any(v not in (x, y) for v in vs) or any(sum(m) != 2 for m, _ in q.items()):
        raise ValueError(f"{q} is not a homogeneous quadratic form in {x}, {y}")
    X, Y = MultiPoly.var(x), MultiPoly.var(y)

    def coeff(mono: MultiPoly) -> Fraction:
        (m,) = mono.terms
        return Fraction(q.terms.get(m, 0))

    a, b, c = coeff(X * X), coeff(X * Y), coeff(Y * Y)
    if a == 0 and b == 0 and c > 0:
        a, c, x, y = c, a, y, x
    if a <= 0 or 4 * a * c - b * b < 0:
        return None
    return PositivityCertificate(
        "square-decomposition", q, None,
        {"vars": (x, y), "a": a, "shift": b / (2 * a), "rest": (4 * a * c - b * b) / (4 * a)},
    )
