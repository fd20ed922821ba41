import random
from fractions import Fraction

import pytest

from bellcalc.sequence import Sequence

ACCEPTANCE_RESULTS = []


def random_rational(rng, num=9, den=6):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_sequence(rng, start, length, nonzero_first=True, **kw):
    terms = [random_rational(rng, **kw) for _ in range(length)]
    if nonzero_first and terms and terms[0] == 0:
        terms[0] = Fraction(1)
    return Sequence(start, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
