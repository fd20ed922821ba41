"""Right-hand sequences of exact rationals.

A :class:`Sequence` stores a finite window of terms starting at ``start``;
every index outside the window reads as zero. Leading zeros are stripped on
construction so ``start`` is the leading index of a nonzero sequence.
Trailing zeros are kept: they record how far the window was computed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, ParseError
from .exact_scalar import format_rational, parse_rational, to_rational


@dataclass(frozen=True, eq=False)
class Sequence:
    start: int
    terms: tuple[Fraction, ...]

    def __init__(self, start: int = 0, terms: Iterable = ()):
        values = [to_rational(t) for t in terms]
        lead = 0
        while lead < len(values) and values[lead] == 0:
            lead += 1
        if lead == len(values):
            start, values = 0, []
        else:
            start, values = start + lead, values[lead:]
        object.__setattr__(self, "start", int(start))
        object.__setattr__(self, "terms", tuple(values))

    @classmethod
    def delta(cls) -> "Sequence":
        return cls(0, [1])

    @classmethod
    def zero(cls) -> "Sequence":
        return cls(0, [])

    @classmethod
    def from_function(cls, f, start: int, stop: int) -> "Sequence":
        """Terms ``f(start) ... f(stop)`` inclusive."""
        return cls(start, [f(i) for i in range(start, stop + 1)])

    def __getitem__(self, n: int) -> Fraction:
        i = n - self.start
        if 0 <= i < len(self.terms):
            return self.terms[i]
        return Fraction(0)

    @property
    def stop(self) -> int:
        """Last index of the stored window (``start - 1`` when empty)."""
        return self.start + len(self.terms) - 1

    def is_zero(self) -> bool:
        return not self.terms

    def _support(self):
        terms = list(self.terms)
        while terms and terms[-1] == 0:
            terms.pop()
        return self.start, tuple(terms)

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        return self._support() == other._support()

    def __hash__(self):
        return hash(self._support())

    def __repr__(self):
        body = ", ".join(format_rational(t) for t in self.terms)
        return f"Sequence(start={self.start}, [{body}])"

    def window(self, lo: int, hi: int) -> list[Fraction]:
        return [self[i] for i in range(lo, hi + 1)]

    def truncate(self, upto: int) -> "Sequence":
        return Sequence(self.start, self.terms[: max(0, upto - self.start + 1)])

    def scale(self, c) -> "Sequence":
        c = to_rational(c)
        return Sequence(self.start, [c * t for t in self.terms])

    def to_json_obj(self) -> dict:
        return {"start": self.start, "terms": [format_rational(t) for t in self.terms]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "Sequence":
        if not isinstance(obj, dict):
            raise ParseError("sequence document must be a JSON object", code="MALFORMED_JSON")
        for key in ("start", "terms"):
            if key not in obj:
                raise ParseError(f"sequence document lacks {key!r}", code="MISSING_FIELD")
        start, terms = obj["start"], obj["terms"]
        if not isinstance(start, int) or isinstance(start, bool):
            raise ParseError("'start' must be an integer", code="INVALID_FIELD")
        if not isinstance(terms, list):
            raise ParseError("'terms' must be a list", code="INVALID_FIELD")
        values = []
        for t in terms:
            if not isinstance(t, str):
                # JSON numbers are refused: 1.5 would silently become a float
                raise ParseError(f"term {t!r} must be a \"p/q\" string")
            values.append(parse_rational(t))
        return cls(start, values)

    @classmethod
    def from_json(cls, text: str) -> "Sequence":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", code="MALFORMED_JSON") from None
        return cls.from_json_obj(obj)


def leading_index(x: Sequence) -> int | None:
    return None if x.is_zero() else x.start


def shift(x: Sequence, d: int) -> Sequence:
    """``y[n] = x[n - d]``."""
    return Sequence(x.start + d, x.terms)


def convolve(a: Sequence, b: Sequence, upto: int) -> Sequence:
    """``(a*b)[n] = sum_j a[j] b[n-j]`` for ``n <= upto``."""
    start = a.start + b.start
    if upto < start:
        raise DomainError(f"window end {upto} precedes result start {start}")
    out = []
    for n in range(start, upto + 1):
        s = Fraction(0)
        # j ranges over a's window with n-j inside b's window
        lo = max(a.start, n - b.stop)
        hi = min(a.stop, n - b.start)
        for j in range(lo, hi + 1):
            s += a.terms[j - a.start] * b.terms[n - j - b.start]
        out.append(s)
    return Sequence(start, out)


def conv_power(x: Sequence, k: int, upto: int) -> Sequence:
    """``x^{*k}`` through ``upto`` by repeated squaring."""
    if k < 0:
        raise DomainError(f"convolution power needs k >= 0, got {k}")
    if k == 0:
        return Sequence.delta().truncate(upto)
    if x.is_zero() or k * x.start > upto:
        return Sequence.zero()
    # work at start 0 so truncating partial products at the window is exact
    offset = k * x.start
    top = upto - offset
    base = shift(x, -x.start).truncate(top)
    result = Sequence.delta()
    while k:
        if k & 1:
            result = convolve(result, base, top)
        k >>= 1
        if k:
            base = convolve(base, base, top)
    return shift(result, offset)
