"""Partial Bell polynomials: definitional sum, the two classical recurrences,
ordinary/exponential conversion and the single-pass ordinary algorithm.

Argument sequences are indexed from 1: ``x.start >= 1`` (or ``x`` is zero).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .cost_model import CostReport, OpCounter, cost_q
from .errors import DomainError
from .sequence import Sequence


class Flavor(str, enum.Enum):
    EXPONENTIAL = "exp"
    ORDINARY = "ord"


class Algorithm(str, enum.Enum):
    BRUTEFORCE = "bruteforce"
    RECURRENCE = "recurrence"
    ALG91 = "91"
    ALG92 = "92"
    GENAL = "genal"


@dataclass(frozen=True)
class BellResult:
    value: Fraction
    n: int
    k: int
    flavor: Flavor
    algorithm: Algorithm
    cost: CostReport | None = None


def check_argument(x: Sequence) -> None:
    if not x.is_zero() and x.start < 1:
        raise DomainError(
            f"Bell arguments are indexed from 1; got nonzero term at index {x.start}"
        )


def _check_indices(n: int, k: int) -> None:
    if n < 0 or k < 0:
        raise DomainError(f"Bell indices must be non-negative, got n={n}, k={k}")


def _partitions(n: int, k: int, largest: int):
    """Multiplicity maps ``{part: count}`` of partitions of ``n`` into exactly
    ``k`` parts, each part at most ``largest``."""
    if k == 0:
        if n == 0:
            yield {}
        return
    if n < k:
        return
    # choose how many copies of the largest admissible part appear
    top = min(largest, n - (k - 1))
    for part in range(top, 0, -1):
        for count in range(1, k + 1):
            if part * count > n:
                break
            for rest in _partitions(n - part * count, k - count, part - 1):
                yield {part: count, **rest}


def bell_exp_bruteforce(x: Sequence, n: int, k: int) -> Fraction:
    """Sum over all ``(j_1..j_n)`` with ``sum j_i = k`` and ``sum i j_i = n`` of
    ``n! / prod(j_i!) * prod((x_i / i!)^j_i)``. Oracle use only."""
    _check_indices(n, k)
    check_argument(x)
    total = Fraction(0)
    for mult in _partitions(n, k, n):
        term = Fraction(math.factorial(n))
        for i, j in mult.items():
            term *= (x[i] / math.factorial(i)) ** j / math.factorial(j)
        total += term
    return total


def exponential_bell_table(x: Sequence, m_max: int, k_max: int) -> list[list[Fraction]]:
    """``T[j][m] = B_{m,j}(x)`` for ``0 <= j <= k_max``, ``0 <= m <= m_max``,
    by the binomial-weighted recurrence."""
    check_argument(x)
    xs = [Fraction(0)] + [x[i] for i in range(1, m_max + 1)]
    prev = [Fraction(1)] + [Fraction(0)] * m_max
    table = [prev]
    for j in range(1, k_max + 1):
        row = [Fraction(0)] * (m_max + 1)
        for m in range(j, m_max + 1):
            s = Fraction(0)
            for i in range(1, m - j + 2):
                s += math.comb(m - 1, i - 1) * xs[i] * prev[m - i]
            row[m] = s
        table.append(row)
        prev = row
    return table


def ordinary_bell_table(x: Sequence, m_max: int, k_max: int) -> list[list[Fraction]]:
    """``T[j][m] = B^_{m,j}(x)`` by the ordinary recurrence."""
    check_argument(x)
    xs = [Fraction(0)] + [x[i] for i in range(1, m_max + 1)]
    prev = [Fraction(1)] + [Fraction(0)] * m_max
    table = [prev]
    for j in range(1, k_max + 1):
        row = [Fraction(0)] * (m_max + 1)
        for m in range(j, m_max + 1):
            s = Fraction(0)
            for i in range(1, m - j + 2):
                s += xs[i] * prev[m - i]
            row[m] = s
        table.append(row)
        prev = row
    return table


def bell_exp_recurrence(x: Sequence, n: int, k: int) -> BellResult:
    _check_indices(n, k)
    check_argument(x)
    if k == 0 or n < k:
        value = Fraction(int(n == k))
    else:
        # only the previous layer is kept
        xs = [Fraction(0)] + [x[i] for i in range(1, n + 1)]
        prev = [Fraction(1)] + [Fraction(0)] * n
        for j in range(1, k + 1):
            row = [Fraction(0)] * (n + 1)
            for m in range(j, n - k + j + 1):
                s = Fraction(0)
                for i in range(1, m - j + 2):
                    s += math.comb(m - 1, i - 1) * xs[i] * prev[m - i]
                row[m] = s
            prev = row
        value = prev[n]
    return BellResult(value, n, k, Flavor.EXPONENTIAL, Algorithm.RECURRENCE)


def bell_ord_recurrence(x: Sequence, n: int, k: int) -> BellResult:
    _check_indices(n, k)
    check_argument(x)
    if k == 0 or n < k:
        value = Fraction(int(n == k))
    else:
        ys = [Fraction(0)] + [x[i] for i in range(1, n - k + 2)]
        value = ordinary_single_pass(ys, n, k)
    return BellResult(value, n, k, Flavor.ORDINARY, Algorithm.RECURRENCE)


def convert_ord_to_exp(bhat, n: int, k: int) -> Fraction:
    """``B_{n,k}(x) = (n!/k!) B^_{n,k}(y)`` where ``y_i = x_i / i!``."""
    if not 0 <= k <= n:
        raise DomainError(f"conversion needs n >= k >= 0, got n={n}, k={k}")
    return Fraction(math.factorial(n), math.factorial(k)) * bhat


def convert_exp_arg(x: Sequence) -> Sequence:
    """``y_i = x_i / i!`` over the stored window of ``x``."""
    check_argument(x)
    return Sequence(x.start, [t / math.factorial(i) for i, t in enumerate(x.terms, x.start)])


def convert_ord_arg(x: Sequence) -> Sequence:
    """``y_i = i! x_i``; the inverse of :func:`convert_exp_arg`."""
    check_argument(x)
    return Sequence(x.start, [t * math.factorial(i) for i, t in enumerate(x.terms, x.start)])


def ordinary_single_pass(ys: list, n: int, k: int, counter: OpCounter | None = None) -> Fraction:
    """``B^_{n,k}(y)`` from ``ys[1..n-k+1]`` (``ys[0]`` ignored), computing
    layers ``l = 1..k`` over ``i = l..n-k+l`` only."""
    width = n - k
    prev = [Fraction(1)] + [Fraction(0)] * width  # layer 0 on indices 0..n-k
    for l in range(1, k + 1):
        row = [Fraction(0)] * (l + width + 1)
        for i in range(l, l + width + 1):
            m = i - l + 1
            s = ys[1] * prev[i - 1]
            for j in range(2, m + 1):
                s += ys[j] * prev[i - j]
            row[i] = s
            if counter is not None:
                counter.add(2 * m - 1)
        prev = row
    return prev[n]


def build_factorials(top: int, counter: OpCounter | None = None) -> list[int]:
    """``[0!, 1!, ..., top!]``; charges one multiplication per entry past 1!."""
    facts = [1, 1]
    for i in range(2, top + 1):
        facts.append(facts[-1] * i)
    if counter is not None and top >= 2:
        counter.add(top - 1)
    return facts[: top + 1] if top >= 1 else facts[:1]


def bell_exp_alg91(x: Sequence, n: int, k: int, counter: OpCounter | None = None) -> BellResult:
    """Exponential Bell polynomial through one ordinary recurrence pass.

    With ``counter`` the operations charged equal :func:`cost_q` exactly.
    """
    _check_indices(n, k)
    check_argument(x)
    if not 1 <= k <= n:
        raise DomainError(f"single-pass algorithm needs n >= k >= 1, got n={n}, k={k}")
    start = counter.count if counter is not None else 0
    facts = build_factorials(n, counter)
    ys = [Fraction(0)] + [x[i] / facts[i] for i in range(1, n - k + 2)]
    if counter is not None:
        counter.add(n - k + 1)
    bhat = ordinary_single_pass(ys, n, k, counter)
    value = facts[n] * bhat / facts[k]
    if counter is not None:
        counter.add(2)
    measured = counter.count - start if counter is not None else None
    cost = CostReport(cost_q(n, k), measured, n, k)
    return BellResult(value, n, k, Flavor.EXPONENTIAL, Algorithm.ALG91, cost)
