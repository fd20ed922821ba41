"""Exact scalars and the combinatorial functions built on them.

``Rational`` is :class:`fractions.Fraction`: always reduced, denominator
positive, immutable.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DomainError, ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    # str(Fraction) already omits "/1" and keeps the sign on the numerator
    return str(Fraction(q))


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.factorial(n)


def falling_factorial(n: int, k: int) -> int:
    """``n (n-1) ... (n-k+1)``, the number of k-permutations of n."""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"falling factorial needs 0 <= k <= n, got n={n}, k={k}")
    out = 1
    for i in range(n - k + 1, n + 1):
        out *= i
    return out


def binomial_int(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise DomainError(f"binomial_int needs non-negative arguments, got ({n}, {k})")
    return math.comb(n, k)


def binomial_rational(alpha, k: int) -> Fraction:
    """Generalized binomial coefficient via the finite product
    ``alpha (alpha-1) ... (alpha-k+1) / k!``."""
    if k < 0:
        raise DomainError(f"binomial_rational needs k >= 0, got {k}")
    alpha = to_rational(alpha)
    num = Fraction(1)
    for i in range(k):
        num *= alpha - i
    return num / math.factorial(k)


def integer_root(a: int, k: int) -> int | None:
    """Exact k-th root of a non-negative integer, or None."""
    if a < 0 or k < 1:
        raise DomainError("integer_root needs a >= 0 and k >= 1")
    if a < 2 or k == 1:
        return a
    if k == 2:
        r = math.isqrt(a)
    else:
        # Newton iteration from an overestimate
        r = 1 << (-(-a.bit_length() // k))
        while True:
            s = ((k - 1) * r + a // r ** (k - 1)) // k
            if s >= r:
                break
            r = s
    return r if r ** k == a else None


def rational_root(q, k: int) -> Fraction | None:
    """Real k-th root of ``q`` if it is rational, else None.

    For even ``k`` the non-negative root is returned; negative ``q`` with even
    ``k`` has no real root and also gives None.
    """
    q = to_rational(q)
    if k < 1:
        raise DomainError(f"root order must be positive, got {k}")
    if q < 0:
        if k % 2 == 0:
            return None
        r = rational_root(-q, k)
        return None if r is None else -r
    num = integer_root(q.numerator, k)
    den = integer_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)
