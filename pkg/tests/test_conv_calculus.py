import math
from fractions import Fraction

import pytest

from bellcalc.bell_basic import (
    bell_exp_recurrence,
    bell_ord_recurrence,
    convert_exp_arg,
    exponential_bell_table,
    ordinary_bell_table,
)
from bellcalc.conv_calculus import (
    RootResult,
    compound_distribution,
    conv_power_via_bell,
    conv_root,
    invert_bell_exponential,
    invert_bell_ordinary,
    nested_ratio_check,
    nested_ratio_constant,
)
from bellcalc.errors import (
    DegenerateError,
    DomainError,
    InsufficientDataError,
    InvalidDistribution,
    IrrationalLeadingRoot,
    NonInvertibleError,
    NoRootError,
)
from bellcalc.sequence import Sequence, conv_power

from conftest import random_rational, random_sequence


def test_power_via_bell_examples():
    assert conv_power_via_bell(Sequence.delta(), 4, 6) == Sequence.delta()
    assert conv_power_via_bell(Sequence(0, [1, 1]), 2, 2) == Sequence(0, [1, 2, 1])
    assert conv_power_via_bell(Sequence(1, [2, 1]), 3, 8).start == 3


def test_power_via_bell_matches_repeated_squaring(rng):
    for _ in range(20):
        start = rng.randint(-3, 3)
        x = random_sequence(rng, start, 8)
        for k in range(6):
            top = k * start + 10
            assert conv_power_via_bell(x, k, top) == conv_power(x, k, top)


def test_root_example():
    res = conv_root(Sequence(0, [1, 2]), 2, 3)
    assert res.root == Sequence(0, [1, 1, Fraction(-1, 2), Fraction(1, 2)])
    assert res.sign_pair
    assert conv_power(res.root, 2, 3) == Sequence(0, [1, 2, 0, 0])


def test_root_recovers_cube(rng):
    for _ in range(10):
        y = Sequence(0, [1] + [random_rational(rng) for _ in range(12)])
        x = conv_power(y, 3, 12)
        res = conv_root(x, 3, 12)
        assert res.root == y and not res.sign_pair


def test_root_general_leading_index(rng):
    y = Sequence(2, [Fraction(2, 3)] + [random_rational(rng) for _ in range(8)])
    x = conv_power(y, 3, 14)
    assert x.start == 6
    res = conv_root(x, 3, 10)
    assert res.root == y.truncate(10)


def test_even_root_sign_pair(rng):
    x = Sequence(0, [Fraction(9, 4)] + [random_rational(rng) for _ in range(10)])
    res = conv_root(x, 2, 10)
    assert res.root[0] == Fraction(3, 2)
    assert conv_power(res.root, 2, 10) == x
    assert conv_power(res.root.scale(-1), 2, 10) == x


@pytest.mark.parametrize(
    "x, k, err",
    [
        (Sequence(2, [1, 1]), 3, NoRootError),
        (Sequence(0, [2, 1]), 2, IrrationalLeadingRoot),
        (Sequence(0, [-4, 1]), 2, NoRootError),
        (Sequence.zero(), 2, DomainError),
    ],
)
def test_root_errors(x, k, err):
    with pytest.raises(err):
        conv_root(x, k, 5)


def test_inverse_ordinary_round_trip(rng):
    x = Sequence(1, [1] + [random_rational(rng) for _ in range(12)])
    y = Sequence(1, ordinary_bell_table(x, 13, 3)[3][1:])
    assert invert_bell_ordinary(y, 3, upto=10) == x.truncate(10)
    assert invert_bell_ordinary(y, 3, x1=1, upto=10) == x.truncate(10)


def test_inverse_k1_is_identity(rng):
    y = Sequence(1, [Fraction(5, 2)] + [random_rational(rng) for _ in range(6)])
    assert invert_bell_ordinary(y, 1, upto=7) == y
    assert invert_bell_exponential(y, 1, upto=7) == y


def test_inverse_first_term(rng):
    x = Sequence(1, [Fraction(-2, 3), 4, 5])
    y = Sequence(1, ordinary_bell_table(x, 5, 3)[3][1:])
    assert invert_bell_ordinary(y, 3, upto=1) == Sequence(1, [Fraction(-2, 3)])


def test_inverse_exponential_round_trip(rng):
    x = Sequence(1, [1] + [random_rational(rng) for _ in range(9)])
    y = Sequence(1, exponential_bell_table(x, 10, 2)[2][1:])
    assert invert_bell_exponential(y, 2, upto=8) == x.truncate(8)


def test_inverse_flavors_agree(rng):
    x = Sequence(1, [1] + [random_rational(rng) for _ in range(9)])
    k = 3
    y_exp = Sequence(1, exponential_bell_table(x, 12, k)[k][1:])
    # ordinary data for the rescaled argument x_n / n!
    y_ord = Sequence(1, ordinary_bell_table(convert_exp_arg(x), 12, k)[k][1:])
    via_ord = invert_bell_ordinary(y_ord, k, upto=10)
    via_exp = invert_bell_exponential(y_exp, k, upto=10)
    assert via_exp == Sequence(1, [via_ord[n] * math.factorial(n) for n in range(1, 11)])


def test_inverse_errors():
    x = Sequence(1, [1, 2, 3, 4])
    y = Sequence(1, ordinary_bell_table(x, 6, 2)[2][1:])
    with pytest.raises(InsufficientDataError):
        invert_bell_ordinary(y, 2, upto=6)
    with pytest.raises(NonInvertibleError):
        invert_bell_ordinary(Sequence(3, [1, 1, 1]), 2, upto=2)
    with pytest.raises(IrrationalLeadingRoot):
        invert_bell_ordinary(Sequence(2, [2, 1, 1]), 2, upto=2)
    with pytest.raises(DomainError):
        invert_bell_ordinary(y, 2, x1=3, upto=3)


@pytest.mark.parametrize("k1, k2, expected", [(2, 3, Fraction(2, 3)), (3, 3, 1), (1, 2, 1), (2, 2, 1), (3, 2, Fraction(3, 2))])
def test_nested_ratio(rng, k1, k2, expected):
    assert nested_ratio_constant(k1, k2) == expected
    n = k1 * k2 + 3
    a = Sequence(1, [1] + [random_rational(rng) for _ in range(n)])
    b = Sequence(1, [Fraction(2, 5)] + [random_rational(rng) for _ in range(n)])
    assert nested_ratio_check(a, n, k1, k2) == nested_ratio_check(b, n, k1, k2) == expected


def test_nested_ratio_degenerate():
    with pytest.raises(DegenerateError):
        nested_ratio_check(Sequence(1, [1, 1, 1]), 5, 2, 3)


def test_compound_two_fair_coins():
    p = Sequence(1, [Fraction(1, 2), Fraction(1, 2)])
    # outcomes (1,2), (2,1) of four sum to 3
    outcomes = [a + b for a in (1, 2) for b in (1, 2)]
    assert compound_distribution(p, 2, 3) == Fraction(outcomes.count(3), 4)


def test_compound_properties(rng):
    weights = [rng.randint(0, 5) for _ in range(6)]
    weights[0] += 1
    total = sum(weights)
    p = Sequence(1, [Fraction(w, total) for w in weights])
    for n in range(1, 8):
        assert compound_distribution(p, 1, n) == p[n]
    for k in (2, 3, 4, 6):
        mass = sum(compound_distribution(p, k, n) for n in range(k, 6 * k + 1))
        assert mass == 1
        assert compound_distribution(p, k, 10) == bell_ord_recurrence(p, 10, k).value


@pytest.mark.parametrize(
    "p",
    [
        Sequence(1, [Fraction(1, 2), Fraction(1, 3)]),
        Sequence(1, [Fraction(3, 2), Fraction(-1, 2)]),
        Sequence(0, [Fraction(1, 2), Fraction(1, 2)]),
    ],
)
def test_compound_rejects_non_distributions(p):
    with pytest.raises(InvalidDistribution):
        compound_distribution(p, 2, 3)
