"""Orthonormal frames with an almost contact structure, shape-operator templates
and the algebraic part of the Gauss equation in CP^n(4).

Vectors are coordinate tuples in the frame; ``phi`` and ``A`` are matrices
whose column ``j`` holds the image of basis vector ``j``.  The curvature
tensor of the ambient space (with ``c = 1``) is

    R(X,Y)Z = <Y,Z>X - <X,Z>Y + <phiY,Z>phiX - <phiX,Z>phiY - 2<phiX,Y>phiZ
              + <AY,Z>AX - <AX,Z>AY
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .certificate import ChainCertificate, Recorder
from .multipoly import MultiPoly, P, exact_divide

Vector = Tuple[MultiPoly, ...]

GAUSS_C = 1


class FrameError(ValueError):
    pass


def _as_poly(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, str):
        return P(x)
    return MultiPoly.const(x)


def _inner(u: Sequence[MultiPoly], v: Sequence[MultiPoly]) -> MultiPoly:
    total = MultiPoly.zero()
    for a, b in zip(u, v):
        if not a.is_zero() and not b.is_zero():
            total = total + a * b
    return total


def _apply(matrix: Sequence[Sequence[MultiPoly]], v: Sequence[MultiPoly]) -> Vector:
    return tuple(_inner(row, v) for row in matrix)


def _scaled(v: Sequence[MultiPoly], s: MultiPoly) -> Vector:
    return tuple(c * s for c in v)


def _sum(vectors: Sequence[Sequence[MultiPoly]]) -> Vector:
    n = len(vectors[0])
    return tuple(sum((v[i] for v in vectors), MultiPoly.zero()) for i in range(n))


@dataclass(frozen=True)
class Frame:
    labels: Tuple[str, ...]
    xi: str
    phi: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise FrameError("duplicate labels")
        if self.xi not in self.labels:
            raise FrameError(f"xi label {self.xi!r} not in frame")
        if len(self.phi) != n or any(len(r) != n for r in self.phi):
            raise FrameError("phi must be a square matrix matching the labels")
        object.__setattr__(self, "phi", tuple(tuple(Fraction(x) for x in r) for r in self.phi))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown frame label {label!r}") from None

    def basis(self, label: str) -> Vector:
        i = self.index(label)
        return tuple(MultiPoly.one() if j == i else MultiPoly.zero() for j in range(self.dim))

    def phi_matrix(self) -> List[List[MultiPoly]]:
        return [[MultiPoly.const(x) for x in row] for row in self.phi]

    def apply_phi(self, v: Sequence[MultiPoly]) -> Vector:
        return _apply(self.phi_matrix(), v)

    def structure_defects(self) -> List[str]:
        """Violated identities among phi^T = -phi, phi xi = 0, phi^2 = -Id + xi xi^T."""
        n, k = self.dim, self.index(self.xi)
        f = self.phi
        out = []
        if any(f[i][j] != -f[j][i] for i in range(n) for j in range(n)):
            out.append("phi is not skew-symmetric")
        if any(f[i][k] != 0 for i in range(n)):
            out.append("phi xi != 0")
        for i in range(n):
            for j in range(n):
                sq = sum(f[i][l] * f[l][j] for l in range(n))
                want = (-1 if i == j else 0) + (1 if i == j == k else 0)
                if sq != want:
                    out.append("phi^2 != -Id + xi xi^T")
                    return out
        return out

    def check(self) -> None:
        defects = self.structure_defects()
        if defects:
            raise FrameError("; ".join(defects))

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "xi": self.xi,
                "phi": [[str(x) for x in row] for row in self.phi]}


def frame_from_pairs(xi: str, pairs: Sequence[Tuple[str, str]]) -> Frame:
    """Frame ``(xi, X1, phiX1, X2, phiX2, ...)`` with ``phi X = phiX`` and ``phi phiX = -X``."""
    labels = [xi]
    for a, b in pairs:
        labels += [a, b]
    n = len(labels)
    phi = [[0] * n for _ in range(n)]
    for a, b in pairs:
        i, j = labels.index(a), labels.index(b)
        phi[j][i] = 1
        phi[i][j] = -1
    frame = Frame(tuple(labels), xi, tuple(map(tuple, phi)))
    frame.check()
    return frame


def standard_frame(n: int, first: str = "U") -> Frame:
    """``{xi, U, phiU, E1, phiE1, ...}`` spanning a tangent space of dimension ``2n - 1``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    pairs = [(first, "phi" + first)] + [(f"E{k}", f"phiE{k}") for k in range(1, n - 1)]
    return frame_from_pairs("xi", pairs)


def gradient_frame() -> Frame:
    """``{e1, e2 = phi e1, xi}`` with ``e1`` along the gradient of ``H``."""
    labels = ("e1", "e2", "xi")
    phi = ((0, -1, 0), (1, 0, 0), (0, 0, 0))
    frame = Frame(labels, "xi", phi)
    frame.check()
    return frame


@dataclass(frozen=True)
class ShapeTemplate:
    labels: Tuple[str, ...]
    matrix: Tuple[Tuple[MultiPoly, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        m = tuple(tuple(_as_poly(x) for x in row) for row in self.matrix)
        if len(m) != n or any(len(r) != n for r in m):
            raise FrameError("shape matrix must be square and match the labels")
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
            raise FrameError("shape operator must be symmetric")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_columns(cls, frame: Frame, images: Dict[str, Dict[str, object]]) -> "ShapeTemplate":
        """Build from ``{label: {label: coefficient}}`` giving ``A(label)``; unspecified images vanish."""
        n = frame.dim
        m = [[MultiPoly.zero()] * n for _ in range(n)]
        for src, image in images.items():
            j = frame.index(src)
            for dst, c in image.items():
                m[frame.index(dst)][j] = _as_poly(c)
        return cls(frame.labels, tuple(map(tuple, m)))

    @classmethod
    def zero(cls, frame: Frame) -> "ShapeTemplate":
        return cls.from_columns(frame, {})

    def apply(self, v: Sequence[MultiPoly]) -> Vector:
        return _apply(self.matrix, v)

    def subs(self, v: str, value) -> "ShapeTemplate":
        value = _as_poly(value)
        return ShapeTemplate(self.labels, tuple(tuple(x.subs(v, value) for x in row) for row in self.matrix))

    def trace(self) -> MultiPoly:
        return sum((self.matrix[i][i] for i in range(len(self.labels))), MultiPoly.zero())

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "matrix": [[str(x) for x in row] for row in self.matrix]}


def ruled_template(frame: Frame) -> ShapeTemplate:
    """``A xi = alpha xi + beta U``, ``A U = beta xi``, ``A X = 0`` otherwise."""
    return ShapeTemplate.from_columns(frame, {
        frame.xi: {frame.xi: "alpha", "U": "beta"},
        "U": {frame.xi: "beta"},
    })


def nonhopf_template(frame: Frame, first: str = "U") -> ShapeTemplate:
    """Two-by-two block ``[[alpha, beta], [beta, gamma]]`` on ``{xi, X}`` and ``mu`` on ``phi X``."""
    return ShapeTemplate.from_columns(frame, {
        frame.xi: {frame.xi: "alpha", first: "beta"},
        first: {frame.xi: "beta", first: "gamma"},
        "phi" + first: {"phi" + first: "mu"},
    })


def hopf_gradient_template(frame: Frame) -> ShapeTemplate:
    """``diag(-3H/2, lambda, delta)`` in the frame ``{e1, e2, xi}``."""
    return ShapeTemplate.from_columns(frame, {
        "e1": {"e1": "-3/2*H"},
        "e2": {"e2": "lambda"},
        "xi": {"xi": "delta"},
    })


def _check_compatible(frame: Frame, A: ShapeTemplate) -> None:
    if tuple(A.labels) != tuple(frame.labels):
        raise FrameError("template labels differ from the frame labels")


def gauss_component(frame: Frame, A: ShapeTemplate, X: str, Y: str, Z: str, W: str) -> MultiPoly:
    """``<R(X,Y)Z, W>`` on basis vectors of ``frame``."""
    _check_compatible(frame, A)
    x, y, z, w = (frame.basis(label) for label in (X, Y, Z, W))
    px, py, pz = frame.apply_phi(x), frame.apply_phi(y), frame.apply_phi(z)
    ax, ay = A.apply(x), A.apply(y)
    c = MultiPoly.const(GAUSS_C)
    terms = [
        _scaled(x, c * _inner(y, z)),
        _scaled(y, -c * _inner(x, z)),
        _scaled(px, c * _inner(py, z)),
        _scaled(py, -c * _inner(px, z)),
        _scaled(pz, -2 * c * _inner(px, y)),
        _scaled(ax, _inner(ay, z)),
        _scaled(ay, -_inner(ax, z)),
    ]
    return _inner(_sum(terms), w)


def hopf_obstructions(A: ShapeTemplate, frame: Frame) -> Dict[str, MultiPoly]:
    """Nonzero components of ``A xi`` off ``xi``."""
    _check_compatible(frame, A)
    axi = A.apply(frame.basis(frame.xi))
    return {label: c for label, c in zip(frame.labels, axi) if label != frame.xi and not c.is_zero()}


def hopf_test(A: ShapeTemplate, frame: Frame) -> bool:
    return not hopf_obstructions(A, frame)


def trace_and_H(A: ShapeTemplate, n: int) -> Tuple[MultiPoly, MultiPoly]:
    tr = A.trace()
    return tr, tr * Fraction(1, 2 * n - 1)


def mean_curvature_relation(A: ShapeTemplate, n: int) -> MultiPoly:
    """``trA - (2n-1) H`` with ``H`` kept as a symbol."""
    return A.trace() - MultiPoly.var("H") * (2 * n - 1)


# ---------------------------------------------------------------------------
# ruled hypersurfaces


@dataclass
class RuledVerdict:
    n: int
    verdict: str
    certificate: ChainCertificate

    @property
    def ok(self) -> bool:
        return self.certificate.ok

    def to_dict(self) -> dict:
        return {"n": self.n, "verdict": self.verdict, "certificate": self.certificate.to_dict()}


def ruled_scenario(n: int, alpha=None) -> RuledVerdict:
    """Replay the minimality argument for a biharmonic ruled hypersurface.

    The curvature component ``<R(phiU, xi)U, phiU>`` equals
    ``alpha (2 beta - 1/beta)`` by a connection computation that is taken as
    input here; the Gauss side is computed from the template.  ``alpha`` may
    be overridden (e.g. by ``0``) to replay degenerate inputs.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    a = MultiPoly.var("alpha") if alpha is None else _as_poly(alpha)
    beta = MultiPoly.var("beta")
    cert = ChainCertificate(f"ruled hypersurface, n = {n}",
                            assumptions=["beta != 0 on an open dense subset", "c = 1"])
    rec = Recorder(cert)

    # alpha (2 beta - 1/beta) = alpha (2 beta^2 - 1) / beta, and beta != 0
    connection_numerator = a * (2 * beta * beta - 1)

    with rec.step("gauss side", "<R(phiU, xi)U, phiU> from the seven-term curvature tensor") as s:
        sub = standard_frame(2)
        value = gauss_component(sub, ruled_template(sub).subs("alpha", a), "phiU", "xi", "U", "phiU")
        s.produced = value
        s.data["sub-frame labels"] = list(sub.labels)
        if n >= 3:
            full = standard_frame(n)
            full_value = gauss_component(full, ruled_template(full).subs("alpha", a), "phiU", "xi", "U", "phiU")
            s.data["explicit frame labels"] = list(full.labels)
            s.data["explicit frame agrees"] = full_value == value
        s.ok = value.is_zero() and s.data.get("explicit frame agrees", True)
        if not value.is_zero():
            s.note = f"discrepancy polynomial {value}"

    with rec.step("branches", "alpha (2 beta - 1/beta) = 0 splits into alpha = 0 or beta^2 = 1/2") as s:
        residual = connection_numerator - value * beta
        s.produced = residual
        s.data["connection value"] = "alpha*(2*beta^2 - 1)/beta (taken as given)"
        if residual.is_zero():
            s.data["branches"] = []
            s.note = "identity 0 = 0"
            s.ok = True
        else:
            rest = exact_divide(residual, a) if not a.is_constant() else None
            s.factors = (str(a), "2*beta^2 - 1")
            s.ok = rest is not None and rest == 2 * beta * beta - 1
            s.data["branches"] = ["alpha = 0", "beta^2 = 1/2"]

    with rec.step("reject beta^2 = 1/2", "phiU(beta) = beta^2 + 1 cannot vanish") as s:
        # beta is constant on this branch, so phiU(beta) = 0, yet phiU(beta) = beta^2 + 1
        at_branch = P("B + 1").subs("B", MultiPoly.const(Fraction(1, 2)))
        s.produced = at_branch
        s.data["witness"] = at_branch.constant_value()
        s.ok = at_branch.is_constant() and at_branch.constant_value() == Fraction(3, 2)
        s.note = "3/2 != 0"

    with rec.step("mean curvature", "H = alpha/(2n - 1) vanishes on alpha = 0") as s:
        frame = standard_frame(n)
        _, H = trace_and_H(ruled_template(frame).subs("alpha", a), n)
        s.produced = H
        s.expected = a * Fraction(1, 2 * n - 1)
        H0 = H.subs("alpha", MultiPoly.zero()) if not H.is_zero() else H
        s.data["H on alpha = 0"] = H0
        s.ok = H == s.expected and H0.is_zero()

    verdict = "minimal" if cert.ok else "inconclusive"
    return RuledVerdict(n, verdict, cert)

