"""Factorized evaluation of partial Bell polynomials.

The second index is split into prime factors ``k = p_1 ... p_sigma`` and the
ordinary polynomial is built as nested polynomials of index ``p``, smallest
factor first. Arguments with ``n0`` leading zeros are first reduced to first
index ``n - k n0``. :func:`select_algorithm` chooses between this path and the
single-pass algorithm by predicted operation count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bell_basic import (
    Algorithm,
    BellResult,
    Flavor,
    bell_exp_alg91,
    build_factorials,
    check_argument,
    ordinary_single_pass,
)
from .cost_model import CostReport, OpCounter, cost_q, cost_qprime, cost_qprime_n0
from .errors import DomainError
from .factorization import Factorization, as_factor_tuple, factorize
from .sequence import Sequence, leading_index


@dataclass(frozen=True)
class AlgorithmChoice:
    tag: Algorithm
    factorization: Factorization | None
    n0: int
    predicted_cost: int


def nested_ordinary(ys: list, n: int, factors, counter: OpCounter | None = None) -> Fraction:
    """``B^_{n,k}(y)`` for ``k = prod(factors)`` by nested stages.

    ``ys[1 .. n + sigma - sum(factors)]`` must hold the argument; the list is
    overwritten stage by stage. Stage ``j`` applies the factor at position
    ``sigma - j`` (0-based) and covers the first indices the later stages read.
    """
    factors = tuple(factors)
    sigma = len(factors)
    r = sum(factors)
    for j in range(1, sigma + 1):
        p = factors[sigma - j]
        if j > 1:
            r -= factors[sigma - j + 1]
            if counter is not None:
                counter.add(1)
        width = n - r + sigma - j
        prev = [Fraction(1)] + [Fraction(0)] * width  # layer 0 on 0..width
        for l in range(1, p + 1):
            row = [Fraction(0)] * (l + width + 1)
            for i in range(l, l + width + 1):
                m = i - l + 1
                s = ys[1] * prev[i - 1]
                for t in range(2, m + 1):
                    s += ys[t] * prev[i - t]
                row[i] = s
                if counter is not None:
                    counter.add(2 * m - 1)
            prev = row
        # indices 1..p-1 of the new argument are zero; prev[l] = B^_{l,p}(y) beyond
        ys = [Fraction(0)] * p + prev[p : p + width + 1]
    return ys[n]


def _detect_n0(x: Sequence, n0: int | None) -> int:
    lead = leading_index(x)
    detected = 0 if lead is None else lead - 1
    if n0 is None:
        return detected
    if n0 < 0 or n0 > detected:
        raise DomainError(
            f"n0={n0} is invalid: the argument has only {detected} leading zeros"
        )
    return n0


def _factorized_exp(x, n, k, factors, n0, counter, tag) -> BellResult:
    reduced = n - k * n0
    sigma, total = len(factors), sum(factors)
    start = counter.count if counter is not None else 0
    # largest factorial the rescaling touches, or the reduced first index
    top = max(reduced, reduced + n0 + sigma - total)
    facts = build_factorials(top, counter)
    count = reduced + sigma - total
    ys = [Fraction(0)] + [x[i + n0] / facts[i + n0] for i in range(1, count + 1)]
    if counter is not None:
        counter.add(count)
    bhat = nested_ordinary(ys, reduced, factors, counter)
    value = math.factorial(n) * bhat / math.factorial(k)
    if counter is not None:
        counter.add(2)
    measured = counter.count - start if counter is not None else None
    fac = Factorization(k, factors) if list(factors) == sorted(factors, reverse=True) else factors
    predicted = cost_qprime_n0(n, k, factors, n0)
    cost = CostReport(predicted, measured, n, k, n0, fac)
    return BellResult(value, n, k, Flavor.EXPONENTIAL, tag, cost)


def bell_exp_alg92(
    x: Sequence, n: int, k: int, f=None, counter: OpCounter | None = None
) -> BellResult:
    """Exponential Bell polynomial by the factorized nested recurrence.

    ``f`` defaults to the descending prime factorization; any ordering of a
    factorization of ``k`` is accepted. Leading zeros of ``x`` are not used.
    """
    check_argument(x)
    if not 2 <= k <= n:
        raise DomainError(f"factorized algorithm needs n >= k >= 2, got n={n}, k={k}")
    factors = as_factor_tuple(k, f)
    return _factorized_exp(x, n, k, factors, 0, counter, Algorithm.ALG92)


def bell_exp_genal(
    x: Sequence, n: int, k: int, counter: OpCounter | None = None, n0: int | None = None, f=None
) -> BellResult:
    """Factorized evaluation after dropping the ``n0`` leading zeros of ``x``.

    ``n0`` is detected from ``x`` unless given (it may not exceed the detected
    count). Returns 0 without cost when ``n < k (n0 + 1)``.
    """
    check_argument(x)
    if n < 0 or k < 0:
        raise DomainError(f"Bell indices must be non-negative, got n={n}, k={k}")
    n0 = _detect_n0(x, n0)
    if k == 0 or n < k or n - k * n0 < k or x.is_zero():
        value = Fraction(int(n == k == 0))
        return BellResult(value, n, k, Flavor.EXPONENTIAL, Algorithm.GENAL, None)
    if k == 1:
        return bell_exp_alg91(x, n, k, counter)
    factors = as_factor_tuple(k, f)
    return _factorized_exp(x, n, k, factors, n0, counter, Algorithm.GENAL)


def select_algorithm(n: int, k: int, n0: int = 0) -> AlgorithmChoice:
    """Cheapest algorithm by predicted count; ties go to the single pass."""
    if not 1 <= k <= n:
        raise DomainError(f"selection needs n >= k >= 1, got n={n}, k={k}")
    q = cost_q(n, k)
    if k == 1:
        return AlgorithmChoice(Algorithm.ALG91, None, n0, q)
    f = factorize(k)
    qp = cost_qprime_n0(n, k, f, n0)
    if qp < q:
        tag = Algorithm.ALG92 if n0 == 0 else Algorithm.GENAL
        return AlgorithmChoice(tag, f, n0, qp)
    return AlgorithmChoice(Algorithm.ALG91, None, n0, q)


def _normalize_algorithm(algorithm) -> str:
    name = getattr(algorithm, "value", algorithm)
    name = str(name).lower()
    if name not in {"auto", "91", "92", "genal", "recurrence", "bruteforce"}:
        raise DomainError(f"unknown algorithm {algorithm!r}")
    return name


def bell_exp(
    x: Sequence, n: int, k: int, algorithm="auto", counter: OpCounter | None = None
) -> BellResult:
    """``B_{n,k}(x)`` by the requested algorithm (``"auto"`` selects by cost)."""
    from .bell_basic import bell_exp_bruteforce, bell_exp_recurrence

    check_argument(x)
    if n < 0 or k < 0:
        raise DomainError(f"Bell indices must be non-negative, got n={n}, k={k}")
    name = _normalize_algorithm(algorithm)
    if name == "recurrence":
        return bell_exp_recurrence(x, n, k)
    if name == "bruteforce":
        value = bell_exp_bruteforce(x, n, k)
        return BellResult(value, n, k, Flavor.EXPONENTIAL, Algorithm.BRUTEFORCE)
    if k == 0 or n < k or x.is_zero():
        value = Fraction(int(n == k == 0))
        return BellResult(value, n, k, Flavor.EXPONENTIAL, Algorithm.RECURRENCE)
    n0 = _detect_n0(x, None)
    if name == "auto":
        if n - k * n0 < k:
            return BellResult(Fraction(0), n, k, Flavor.EXPONENTIAL, Algorithm.GENAL)
        name = select_algorithm(n, k, n0).tag.value
    if name == "91" or k == 1:
        return bell_exp_alg91(x, n, k, counter)
    if name == "92":
        return bell_exp_alg92(x, n, k, counter=counter)
    return bell_exp_genal(x, n, k, counter=counter)


def bell_ordinary(
    x: Sequence, n: int, k: int, algorithm="auto", counter: OpCounter | None = None
) -> BellResult:
    """``B^_{n,k}(x)`` by the ordinary cores directly (no factorial rescaling).

    Leading zeros are skipped for ``"auto"`` and ``"genal"``. The counter sees
    only the recurrence work, so no predicted cost is attached.
    """
    from .bell_basic import bell_ord_recurrence

    check_argument(x)
    if n < 0 or k < 0:
        raise DomainError(f"Bell indices must be non-negative, got n={n}, k={k}")
    name = _normalize_algorithm(algorithm)
    if name in {"recurrence", "bruteforce"}:
        return bell_ord_recurrence(x, n, k)
    if k == 0 or n < k or x.is_zero():
        value = Fraction(int(n == k == 0))
        return BellResult(value, n, k, Flavor.ORDINARY, Algorithm.RECURRENCE)
    n0 = _detect_n0(x, None) if name in {"auto", "genal"} else 0
    reduced = n - k * n0
    if reduced < k:
        return BellResult(Fraction(0), n, k, Flavor.ORDINARY, Algorithm.GENAL)
    if name == "auto":
        name = select_algorithm(n, k, n0).tag.value
    if name == "91" or k == 1:
        ys = [Fraction(0)] + [x[i] for i in range(1, n - k + 2)]
        value = ordinary_single_pass(ys, n, k, counter)
        return BellResult(value, n, k, Flavor.ORDINARY, Algorithm.ALG91)
    factors = factorize(k).factors
    count = reduced + len(factors) - sum(factors)
    ys = [Fraction(0)] + [x[i + n0] for i in range(1, count + 1)]
    value = nested_ordinary(ys, reduced, factors, counter)
    tag = Algorithm.ALG92 if name == "92" else Algorithm.GENAL
    return BellResult(value, n, k, Flavor.ORDINARY, tag)
