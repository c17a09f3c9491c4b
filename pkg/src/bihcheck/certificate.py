"""Step-by-step certificates shared by the derivation chains and the frame computations."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exact import format_rational
from .multipoly import MultiPoly, PolyFraction


@dataclass
class ChainStep:
    name: str
    anchor: str
    ok: bool
    produced: Optional[MultiPoly] = None
    expected: Optional[MultiPoly] = None
    scalar: Optional[Fraction] = None
    factors: Tuple[str, ...] = ()
    data: Dict[str, object] = field(default_factory=dict)
    derived: bool = False
    millis: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "ok": self.ok,
            "produced": None if self.produced is None else str(self.produced),
            "expected": None if self.expected is None else str(self.expected),
            "scalar": None if self.scalar is None else format_rational(self.scalar),
            "factors": list(self.factors),
            "data": _jsonable(self.data),
            "derived": self.derived,
            "note": self.note,
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (Fraction,)):
        return format_rational(x)
    if isinstance(x, (MultiPoly, PolyFraction)):
        return str(x)
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return x


@dataclass
class ChainCertificate:
    name: str
    steps: List[ChainStep] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    @property
    def first_failure(self) -> Optional[ChainStep]:
        return next((s for s in self.steps if not s.ok), None)

    def step(self, name: str) -> ChainStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "assumptions": list(self.assumptions),
            "steps": [s.to_dict() for s in self.steps],
        }


class Recorder:
    def __init__(self, cert: ChainCertificate):
        self.cert = cert

    @contextmanager
    def step(self, name: str, anchor: str):
        s = ChainStep(name=name, anchor=anchor, ok=False)
        t0 = time.perf_counter()
        try:
            yield s
        finally:
            s.millis = (time.perf_counter() - t0) * 1000.0
            self.cert.steps.append(s)
