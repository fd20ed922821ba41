"""Convolution powers and roots through ordinary Bell polynomials, the inverse
of a single partial Bell polynomial, the nested-ratio constant, and compound
distributions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bell_basic import exponential_bell_table, ordinary_bell_table
from .bell_factorized import bell_ordinary
from .errors import (
    DegenerateError,
    DomainError,
    InsufficientDataError,
    InvalidDistribution,
    IrrationalLeadingRoot,
    NonInvertibleError,
    NoRootError,
)
from .exact_scalar import binomial_rational, rational_root, to_rational
from .sequence import Sequence, leading_index


@dataclass(frozen=True)
class RootResult:
    root: Sequence
    k: int
    # for even k the negated root is an equally valid answer
    sign_pair: bool


def conv_power_via_bell(x: Sequence, k: int, upto: int) -> Sequence:
    """``x^{*k}[n] = B^_{n + k(1 - n0), k}(y)`` with ``y_m = x[m - 1 + n0]``."""
    if k < 0:
        raise DomainError(f"convolution power needs k >= 0, got {k}")
    n0 = leading_index(x)
    if k == 0:
        return Sequence.delta().truncate(upto)
    if n0 is None or k * n0 > upto:
        return Sequence.zero()
    m_max = upto + k * (1 - n0)
    y = Sequence(1, x.window(n0, n0 + m_max - 1))
    row = ordinary_bell_table(y, m_max, k)[k]
    return Sequence(k * n0, [row[n + k * (1 - n0)] for n in range(k * n0, upto + 1)])


def _leading_root(value: Fraction, k: int) -> Fraction:
    if value < 0 and k % 2 == 0:
        raise NoRootError(f"negative leading term {value} has no real root of even order {k}")
    root = rational_root(value, k)
    if root is None:
        raise IrrationalLeadingRoot(f"leading term {value} has no rational {k}-th root")
    return root


def conv_root(x: Sequence, k: int, upto: int) -> RootResult:
    """``k``-th convolution root through ``upto``.

    Requires ``k | n0`` and a rational ``k``-th root of the leading term; for
    even ``k`` the branch with positive leading term is returned.
    """
    if k < 1:
        raise DomainError(f"root order must be positive, got {k}")
    n0 = leading_index(x)
    if n0 is None:
        raise DomainError("the zero sequence has no distinguished convolution root")
    if n0 % k:
        raise NoRootError(f"leading index {n0} is not divisible by {k}")
    lead = x[n0]
    scale = _leading_root(lead, k)
    s = n0 // k
    if upto < s:
        return RootResult(Sequence.zero(), k, k % 2 == 0)
    m_max = upto - s
    y = Sequence(1, [x[m + n0] / lead for m in range(1, m_max + 1)])
    table = ordinary_bell_table(y, m_max, m_max)
    coeffs = [binomial_rational(Fraction(1, k), j) for j in range(m_max + 1)]
    terms = []
    for m in range(m_max + 1):
        terms.append(scale * sum(coeffs[j] * table[j][m] for j in range(m + 1)))
    return RootResult(Sequence(s, terms), k, k % 2 == 0)


def _recover_x1(y: Sequence, k: int, x1) -> Fraction:
    yk = y[k]
    if yk == 0:
        raise NonInvertibleError(f"y_{k} = 0 forces x_1 = 0")
    if x1 is None:
        return _leading_root(yk, k)
    x1 = to_rational(x1)
    if x1 ** k != yk:
        raise DomainError(f"x1 = {x1} is inconsistent with y_{k} = {yk}")
    return x1


def _check_window(y: Sequence, k: int, upto: int) -> None:
    need = upto - 1 + k
    if y.stop < need:
        raise InsufficientDataError(
            f"recovering x through {upto} needs y through index {need}; window ends at {y.stop}"
        )


def invert_bell_ordinary(y: Sequence, k: int, x1=None, upto: int = 1) -> Sequence:
    """Recover ``x_1..x_upto`` from ``y_n = B^_{n,k}(x)``.

    ``y`` must be stored through index ``upto - 1 + k``. ``x1`` defaults to the
    (positive, for even ``k``) rational ``k``-th root of ``y_k``.
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    x1 = _recover_x1(y, k, x1)
    _check_window(y, k, upto)
    m_max = upto - 1
    w = Sequence(1, [y[m + k] for m in range(1, m_max + 1)])
    table = ordinary_bell_table(w, m_max, m_max)
    coeffs = [binomial_rational(Fraction(1, k), j) for j in range(upto)]
    terms = []
    for n in range(1, upto + 1):
        terms.append(sum(coeffs[j] * x1 ** (1 - k * j) * table[j][n - 1] for j in range(n)))
    return Sequence(1, terms)


def invert_bell_exponential(y: Sequence, k: int, x1=None, upto: int = 1) -> Sequence:
    """Recover ``x_1..x_upto`` from ``y_n = B_{n,k}(x)``; same window rule as
    :func:`invert_bell_ordinary`."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    x1 = _recover_x1(y, k, x1)
    _check_window(y, k, upto)
    m_max = upto - 1
    w = Sequence(1, [y[m + k] / math.comb(m + k, k) for m in range(1, m_max + 1)])
    table = exponential_bell_table(w, m_max, m_max)
    coeffs = [binomial_rational(Fraction(1, k), j) for j in range(upto)]
    terms = []
    for n in range(1, upto + 1):
        terms.append(sum(
            coeffs[j] * x1 ** (1 - k * j) * math.factorial(j) * n * table[j][n - 1]
            for j in range(n)
        ))
    return Sequence(1, terms)


def nested_ratio_check(x: Sequence, n: int, k1: int, k2: int) -> Fraction:
    """``B_{n,k1}(y'') / B_{n,k2}(y')`` with ``y' = B_{.,k1}(x)``, ``y'' = B_{.,k2}(x)``.

    The value is ``(k1!)^(k2-1) / (k2!)^(k1-1)`` whatever ``x`` is.
    """
    if min(k1, k2) < 1 or n < 0:
        raise DomainError("nested ratio needs k1, k2 >= 1 and n >= 0")
    inner = exponential_bell_table(x, n, max(k1, k2))
    y1 = Sequence(1, inner[k1][1:])
    y2 = Sequence(1, inner[k2][1:])
    den = exponential_bell_table(y1, n, k2)[k2][n]
    if den == 0:
        raise DegenerateError(f"B_{{{n},{k2}}}(y') vanishes")
    num = exponential_bell_table(y2, n, k1)[k1][n]
    return num / den


def nested_ratio_constant(k1: int, k2: int) -> Fraction:
    return Fraction(math.factorial(k1) ** (k2 - 1), math.factorial(k2) ** (k1 - 1))


def compound_distribution(p: Sequence, k: int, n: int) -> Fraction:
    """``P(S_k = n)`` for the sum of ``k`` i.i.d. steps with law ``p`` on 1, 2, ..."""
    if k < 1:
        raise DomainError(f"number of summands must be positive, got {k}")
    if not p.is_zero() and p.start < 1:
        raise InvalidDistribution("step distribution must live on positive integers")
    if any(t < 0 for t in p.terms):
        raise InvalidDistribution("probabilities must be non-negative")
    if sum(p.terms, Fraction(0)) != 1:
        raise InvalidDistribution(f"probabilities sum to {sum(p.terms, Fraction(0))}, not 1")
    return bell_ordinary(p, n, k).value
