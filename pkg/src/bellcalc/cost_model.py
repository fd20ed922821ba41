"""Operation counts of the Bell polynomial algorithms.

Charging convention used by the instrumented evaluators (one unit per
addition, subtraction, multiplication or division of sequence values):

* an inner recurrence sum of ``m`` products costs ``2m - 1``;
* the factorial table ``1!, ..., T!`` is built incrementally for ``T - 1``;
  ``T = n`` for the plain algorithms and ``T = max(N, N + n0 + sigma - sum p)``
  with ``N = n - k n0`` when leading zeros are skipped (``n!`` for the final
  scaling is then an integer constant, like ``k!``);
* each argument rescaling ``x_i / i!`` costs one division;
* the final scaling ``n! * b / k!`` costs 2;
* the factorized algorithm pays 1 per stage after the first to update the
  running factor sum ``r_j = r_{j-1} - p``.

With these charges the measured totals equal :func:`cost_q`,
:func:`cost_qprime` and :func:`cost_qprime_n0` exactly.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .factorization import Factorization, as_factor_tuple, factorize


class OpCounter:
    """Caller-owned accumulator of basic arithmetic operations."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, m: int = 1) -> None:
        if m < 0:
            raise ValueError("operation counts only grow")
        self.count += m

    def __repr__(self):
        return f"OpCounter({self.count})"


@dataclass(frozen=True)
class CostReport:
    predicted: int
    measured: int | None
    n: int
    k: int
    n0: int = 0
    factorization: Factorization | tuple | None = None

    @property
    def exact(self) -> bool | None:
        return None if self.measured is None else self.measured == self.predicted


def cost_q(n: int, k: int) -> int:
    """Operations of the single-pass ordinary recurrence with conversion."""
    if not 1 <= k <= n:
        raise DomainError(f"cost_q needs n >= k >= 1, got n={n}, k={k}")
    return k * n * n + 2 * (-k * k + k + 1) * n + k ** 3 - 2 * k * k + 2


def qprime_coefficients(k: int, f=None) -> tuple[int, int, int]:
    """``(a, b, c)`` with ``Q'(n, k) = a n^2 + b n + c`` for the given ordering."""
    factors = as_factor_tuple(k, f)
    a = sum(factors)
    b = 2
    c = -a + 2 * len(factors)
    running = 0
    for j, p in enumerate(factors, start=1):
        running += p
        b += 2 * (j - running) * p
        c += (j - running) ** 2 * p
    return a, b, c


def cost_qprime(n: int, k: int, f=None) -> int:
    if not 2 <= k <= n:
        raise DomainError(f"cost_qprime needs n >= k >= 2, got n={n}, k={k}")
    a, b, c = qprime_coefficients(k, f)
    return a * n * n + b * n + c


def cost_qprime_n0(n: int, k: int, f=None, n0: int = 0) -> int:
    if n0 < 0:
        raise DomainError(f"n0 must be non-negative, got {n0}")
    if n - k * n0 < k:
        raise DomainError(f"reduced first index n - k*n0 = {n - k * n0} is below k = {k}")
    factors = as_factor_tuple(k, f)
    return cost_qprime(n - k * n0, k, factors) + max(0, n0 + len(factors) - sum(factors))


def savings(n: int, k: int, n0: int = 0, f=None) -> Fraction:
    """Percentage of operations saved against the single-pass algorithm."""
    q = cost_q(n, k)
    return Fraction(100 * (q - cost_qprime_n0(n, k, f, n0)), q)


def savings_limit(k: int) -> Fraction:
    factors = factorize(k).factors
    return 100 * (1 - Fraction(sum(factors), k))


def ordering_delta_closed_form(n: int, factors, i: int) -> int:
    """Closed-form cost change from swapping positions ``i`` and ``i+1``
    (0-based) of a factor ordering."""
    factors = tuple(factors)
    p, q = factors[i], factors[i + 1]
    u = i - sum(factors[:i])
    return (p - q) * (2 * n + p * q - 2 * p - 2 * q + 2 * u + 3)


def ordering_cost_delta(n: int, k: int, factors, i: int) -> int:
    """``Q'(swapped) - Q'(factors)`` for swapping positions ``i``, ``i+1``.

    Computed by differencing the cost polynomial and checked against the
    closed form; a disagreement raises ``ArithmeticError``.
    """
    factors = as_factor_tuple(k, factors)
    if not 0 <= i < len(factors) - 1:
        raise DomainError(f"no adjacent pair at position {i} of {factors}")
    swapped = list(factors)
    swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
    delta = cost_qprime(n, k, swapped) - cost_qprime(n, k, factors)
    closed = ordering_delta_closed_form(n, factors, i)
    if delta != closed:
        raise ArithmeticError(f"closed form {closed} != polynomial difference {delta}")
    return delta


def ordering_lower_bound(n: int, k: int, factors, i: int) -> int:
    factors = tuple(factors)
    p, q = factors[i], factors[i + 1]
    return (p - q) * (2 * (n - k) + p * q + 2 * (len(factors) - 2) + 3)


def best_ordering(n: int, k: int) -> tuple[int, ...]:
    """Exhaustive search over orderings of the prime multiset of ``k``."""
    perms = set(itertools.permutations(factorize(k).factors))
    return min(sorted(perms, reverse=True), key=lambda f: cost_qprime(n, k, f))


def round_half_up(q: Fraction, places: int = 1) -> str:
    scale = 10 ** places
    mag = abs(q) * scale
    units = int(mag + Fraction(1, 2))  # floor for non-negative values
    sign = "-" if q < 0 and units else ""
    whole, frac = divmod(units, scale)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


# Grid of the published savings table.
TABLE1_NS = (50, 100, 250, 500, 750, 1000, 5000, 10_000, 100_000)
TABLE1_KS = (10, 50, 100, 250, 500, 750, 1000, 5000, 10_000)


@dataclass(frozen=True)
class TableCell:
    n: int
    k: int
    n0: int
    q: int | None
    qprime: int | None
    percent: Fraction | None
    prime_k: bool = False

    def csv_row(self) -> list[str]:
        if self.percent is None:
            return [str(self.n), str(self.k), str(self.n0), "", "", ""]
        return [str(self.n), str(self.k), str(self.n0), str(self.q), str(self.qprime),
                round_half_up(self.percent)]


def table_cell(n: int, k: int, n0: int = 0) -> TableCell:
    if n < k or n - k * n0 < k or k < 2:
        return TableCell(n, k, n0, None, None, None)
    f = factorize(k)
    q = cost_q(n, k)
    qp = cost_qprime_n0(n, k, f, n0)
    return TableCell(n, k, n0, q, qp, Fraction(100 * (q - qp), q), prime_k=f.sigma == 1)


def table1(ns=TABLE1_NS, ks=TABLE1_KS) -> list[list[Fraction | None]]:
    """Savings matrix, rows by ``k`` and columns by ``n``; ``None`` where n < k."""
    return [[table_cell(n, k).percent for n in ns] for k in ks]


def figure1_data(k: int = 50, n_max: int = 2500, n0s=range(6)) -> list[TableCell]:
    """Savings curves against ``n = k ... n_max``, one cell per ``(n, n0)``."""
    if k < 2:
        raise DomainError(f"figure data needs k >= 2, got {k}")
    return [table_cell(n, k, n0) for n in range(k, n_max + 1) for n0 in n0s]


CSV_HEADER = ("n", "k", "n0", "Q", "Qprime", "e_percent")


def cells_to_csv(cells) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cell in cells:
        writer.writerow(cell.csv_row())
    return buf.getvalue()


def table1_csv(ns=TABLE1_NS, ks=TABLE1_KS) -> str:
    return cells_to_csv(table_cell(n, k) for k in ks for n in ns)


def table1_grid_csv(ns=TABLE1_NS, ks=TABLE1_KS) -> str:
    """The savings matrix laid out like the published table."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k\\n", *ns])
    for k, row in zip(ks, table1(ns, ks)):
        writer.writerow([k, *("" if v is None else round_half_up(v) for v in row)])
    return buf.getvalue()


def figure1_wide_csv(k: int = 50, n_max: int = 2500, n0s=range(6)) -> str:
    n0s = list(n0s)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", *(f"e_n0_{n0}" for n0 in n0s)])
    for n in range(k, n_max + 1):
        row = [n]
        for n0 in n0s:
            cell = table_cell(n, k, n0)
            row.append("" if cell.percent is None else round_half_up(cell.percent))
        writer.writerow(row)
    return buf.getvalue()
