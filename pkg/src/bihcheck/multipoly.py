"""Sparse multivariate polynomials over the rationals.

Polynomials live in a closed alphabet of twelve variables.  Terms are stored
in a dict keyed by exponent tuples whose positions follow the variable
precedence ``gamma > beta > alpha > d > delta > lambda > mu > H > X > B > t > c``;
the term order is graded lexicographic on those tuples, so the leading term
is simply ``max`` over ``(total degree, exponents)``.

Coefficients are ``int`` whenever integral and ``Fraction`` otherwise; mixing
the two is exact in Python and keeps the common integer case fast.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .exact import Scalar, ZeroDenominatorError, format_rational, normalize

VARIABLES: Tuple[str, ...] = (
    "gamma", "beta", "alpha", "d", "delta", "lambda", "mu", "H", "X", "B", "t", "c",
)
NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXP = (0,) * NVARS

Monomial = Tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        pointer = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {pointer}")


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; alphabet is {VARIABLES}") from None


def _grlex(m: Monomial):
    return (sum(m), m)


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != NVARS:
                    raise ValueError(f"monomial {m} has arity {len(m)}, expected {NVARS}")
                if c:
                    clean[m] = normalize(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar]) -> "MultiPoly":
        # trusted constructor: caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls.const(1)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        e = [0] * NVARS
        e[var_index(name)] = power
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, coeff: Scalar, **powers: int) -> "MultiPoly":
        e = [0] * NVARS
        for name, k in powers.items():
            e[var_index(name)] = k
        return cls({tuple(e): coeff})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        return _Parser(text).parse()

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(self._terms.get(_ZERO_EXP, 0))

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self._terms.items(), key=lambda mc: _grlex(mc[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=_grlex)

    def leading_coeff(self) -> Scalar:
        return self._terms[self.leading_monomial()]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def degree(self, v: str) -> int:
        i = var_index(v)
        return max((m[i] for m in self._terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = [False] * NVARS
        for m in self._terms:
            for i, k in enumerate(m):
                if k:
                    used[i] = True
        return tuple(VARIABLES[i] for i in range(NVARS) if used[i])

    def coefficients(self) -> List[Scalar]:
        return [c for _, c in self.sorted_terms()]

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in q._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = normalize(s)
            else:
                out.pop(m, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero()
            return MultiPoly._raw({m: normalize(c * other) for m, c in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational scalar only; see :func:`exact_divide`."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDenominatorError("polynomial divided by zero")
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return self._terms == q._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus and evaluation -------------------------------------------

    def diff(self, v: str) -> "MultiPoly":
        i = var_index(v)
        out = {}
        for m, c in self._terms.items():
            k = m[i]
            if k:
                e = list(m)
                e[i] = k - 1
                out[tuple(e)] = c * k
        return MultiPoly._raw(out)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value; every variable of ``self`` must be assigned."""
        missing = [v for v in self.variables() if v not in point]
        if missing:
            raise KeyError(f"no value assigned to {', '.join(missing)}")
        values = [None] * NVARS
        for name, val in point.items():
            values[var_index(name)] = Fraction(val)
        total = Fraction(0)
        for m, c in self._terms.items():
            term = Fraction(c)
            for i, k in enumerate(m):
                if k:
                    term *= values[i] ** k
            total += term
        return total

    def specialize(self, point: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute rational values for some of the variables."""
        idx = {var_index(name): Fraction(val) for name, val in point.items()}
        out: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            e = list(m)
            coeff = Fraction(c)
            for i, val in idx.items():
                if e[i]:
                    coeff *= val ** e[i]
                    e[i] = 0
            key = tuple(e)
            out[key] = out.get(key, 0) + coeff
        return MultiPoly(out)

    def subs(self, v: str, expr: "MultiPoly") -> "MultiPoly":
        """Polynomial substitution ``v <- expr``."""
        expr = self._lift(expr)
        by_power = self.collect(v)
        result = MultiPoly.zero()
        # Horner in descending powers
        for k in range(max(by_power, default=0), -1, -1):
            result = result * expr + by_power.get(k, MultiPoly.zero())
        return result

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        perm = {var_index(a): var_index(b) for a, b in mapping.items()}
        out: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            e = [0] * NVARS
            for i, k in enumerate(m):
                if k:
                    e[perm.get(i, i)] += k
            key = tuple(e)
            out[key] = out.get(key, 0) + c
        return MultiPoly(out)

    # univariate views ---------------------------------------------------

    def collect(self, v: str) -> Dict[int, "MultiPoly"]:
        """Coefficients of ``self`` as a polynomial in ``v``: ``{power: coeff}``."""
        i = var_index(v)
        buckets: Dict[int, Dict[Monomial, Scalar]] = {}
        for m, c in self._terms.items():
            k = m[i]
            e = m[:i] + (0,) + m[i + 1:]
            buckets.setdefault(k, {})[e] = c
        return {k: MultiPoly._raw(t) for k, t in buckets.items()}

    def coeff_list(self, v: str) -> List["MultiPoly"]:
        """Dense coefficient list in ``v``, lowest power first."""
        by_power = self.collect(v)
        if not by_power:
            return []
        return [by_power.get(k, MultiPoly.zero()) for k in range(max(by_power) + 1)]

    @classmethod
    def from_coeff_list(cls, coeffs: Iterable["MultiPoly"], v: str) -> "MultiPoly":
        x = cls.var(v)
        result = cls.zero()
        for c in reversed(list(coeffs)):
            result = result * x + c
        return result

    def is_even_in(self, v: str) -> bool:
        i = var_index(v)
        return all(m[i] % 2 == 0 for m in self._terms)

    # printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            for i, k in enumerate(m):
                if k == 1:
                    factors.append(VARIABLES[i])
                elif k > 1:
                    factors.append(f"{VARIABLES[i]}^{k}")
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(mag)] + factors)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def P(text: str) -> MultiPoly:
    """Shorthand for :meth:`MultiPoly.parse`."""
    return MultiPoly.parse(text)


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("num", int(text[i:j]), i))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                name = text[i:j]
                if name not in _INDEX:
                    raise ParseError(f"unknown variable {name!r}", text, i)
                tokens.append(("var", name, i))
                i = j
            elif ch in "+-*^/()":
                tokens.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", text, i)
        tokens.append(("end", None, len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", self.text, tok[2])
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", self.text, 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> MultiPoly:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("num")[1]
            return base ** exp
        return base

    def atom(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                if den_tok[1] == 0:
                    raise ParseError("zero denominator", self.text, den_tok[2])
                return MultiPoly.const(Fraction(tok[1], den_tok[1]))
            return MultiPoly.const(tok[1])
        if tok[0] == "var":
            self.take()
            return MultiPoly.var(tok[1])
        if tok[0] == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected {tok[1] if tok[1] is not None else 'end of input'!r}",
                         self.text, tok[2])


# ---------------------------------------------------------------------------
# ring operations


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: MultiPoly, v: str) -> MultiPoly:
    return p.diff(v)


def evaluate(p: MultiPoly, point: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(point)


def exact_divide(p: MultiPoly, q: MultiPoly) -> Optional[MultiPoly]:
    """Return ``h`` with ``p == q*h``, or ``None`` when ``q`` does not divide ``p``."""
    if q.is_zero():
        raise ZeroDenominatorError("division by the zero polynomial")
    if p.is_zero():
        return MultiPoly.zero()
    if q.is_constant():
        return p * (Fraction(1) / q.constant_value())
    lm_q = q.leading_monomial()
    lc_q = Fraction(q.leading_coeff())
    q_terms = list(q.items())
    rem: Dict[Monomial, Scalar] = dict(p._terms)
    quot: Dict[Monomial, Scalar] = {}
    while rem:
        lm_r = max(rem, key=_grlex)
        shift = tuple(a - b for a, b in zip(lm_r, lm_q))
        if min(shift) < 0:
            return None
        c = normalize(rem[lm_r] / lc_q)
        quot[shift] = c
        for m, cq in q_terms:
            key = tuple(a + b for a, b in zip(m, shift))
            s = rem.get(key, 0) - c * cq
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return MultiPoly(quot)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def content_primitive(p: MultiPoly) -> Tuple[Fraction, MultiPoly]:
    """Split ``p = content * primitive``.

    The primitive part has coprime integer coefficients and a positive
    leading coefficient in the graded lexicographic order.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no content")
    coeffs = [Fraction(c) for _, c in p.items()]
    g = reduce(math.gcd, (c.numerator for c in coeffs), 0)
    l = reduce(_lcm, (c.denominator for c in coeffs))
    content = Fraction(g, l)
    if p.leading_coeff() < 0:
        content = -content
    return content, p * (1 / content)


def primitive(p: MultiPoly) -> MultiPoly:
    return p if p.is_zero() else content_primitive(p)[1]


def proportional(p: MultiPoly, q: MultiPoly) -> Optional[Fraction]:
    """Return ``s`` with ``p == s*q``, or ``None`` if no such scalar exists."""
    if p.is_zero() or q.is_zero():
        raise ValueError("proportionality is only defined for nonzero polynomials")
    lm = p.leading_monomial()
    if q.leading_monomial() != lm or len(p) != len(q):
        return None
    s = Fraction(p.leading_coeff()) / Fraction(q.leading_coeff())
    return s if p == q * s else None


def common_monomial_power(p: MultiPoly, v: str) -> int:
    """Largest ``k`` such that ``v**k`` divides ``p``."""
    i = var_index(v)
    return min((m[i] for m in p._terms), default=0)


# ---------------------------------------------------------------------------
# rational functions


class PolyFraction:
    """Quotient of two polynomials with a nonzero denominator.

    Normal form: the denominator is primitive with positive leading
    coefficient (its rational content is moved into the numerator).  When
    numerator and denominator are polynomials in one common variable the
    polynomial gcd is cancelled as well.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = MultiPoly._lift(num)
        den = MultiPoly._lift(den)
        if num is None or den is None:
            raise TypeError("PolyFraction needs polynomial or rational parts")
        if den.is_zero():
            raise ZeroDenominatorError("PolyFraction with zero denominator")
        if num.is_zero():
            self.num, self.den = num, MultiPoly.one()
            return
        num, den = _cancel_univariate(num, den)
        c, den = content_primitive(den)
        self.num = num * (1 / c)
        self.den = den

    @classmethod
    def _lift(cls, x) -> Optional["PolyFraction"]:
        if isinstance(x, PolyFraction):
            return x
        if isinstance(x, (MultiPoly, int, Fraction)):
            return cls(x)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return PolyFraction(self.num + o.num, self.den)
        return PolyFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PolyFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDenominatorError("division by a zero rational function")
        return PolyFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return PolyFraction(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    # cross-multiplied equality has no cheap canonical hash
    __hash__ = None

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def to_poly(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return self.num * (1 / self.den.constant_value())

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDenominatorError(f"denominator {self.den} vanishes at {dict(point)}")
        return self.num.evaluate(point) / d

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"PolyFraction({str(self)!r})"


def _cancel_univariate(num: MultiPoly, den: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    vs = set(num.variables()) | set(den.variables())
    if len(vs) != 1 or den.is_constant():
        return num, den
    (v,) = vs
    g = univariate_gcd(num, den, v)
    if g.is_constant():
        return num, den
    return exact_divide(num, g), exact_divide(den, g)


def univariate_gcd(p: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """Monic gcd of two polynomials in the single variable ``v``."""
    a = [c.constant_value() for c in p.coeff_list(v)]
    b = [c.constant_value() for c in q.coeff_list(v)]
    from .univariate import gcd as _gcd, to_multipoly

    return to_multipoly(_gcd(a, b), v)


def substitute(p: MultiPoly, v: str, expr) -> PolyFraction:
    """Exact substitution ``v <- expr`` where ``expr`` may be a rational function."""
    expr = PolyFraction._lift(expr)
    if expr is None:
        raise TypeError("substitution value must be a polynomial or rational function")
    coeffs = p.coeff_list(v)
    if not coeffs:
        return PolyFraction(MultiPoly.zero())
    k = len(coeffs) - 1
    num = MultiPoly.zero()
    n_pows = [MultiPoly.one()]
    d_pows = [MultiPoly.one()]
    for _ in range(k):
        n_pows.append(n_pows[-1] * expr.num)
        d_pows.append(d_pows[-1] * expr.den)
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            num = num + c * n_pows[i] * d_pows[k - i]
    return PolyFraction(num, d_pows[k])
