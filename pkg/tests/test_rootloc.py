import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import house_interval
from pfdil.errors import DomainError
from pfdil.intpoly import from_coeffs, lt_polynomial, named_polynomial, parse
from pfdil.rootloc import (
    GOLDEN,
    Indeterminate,
    RootEnclosure,
    cauchy_bound,
    count_roots_in_disk,
    house,
    is_perron_poly,
    mahler_measure,
    positive_real_roots_may_exist,
)

GAMMA2 = (3 + math.sqrt(5)) / 2


@pytest.mark.parametrize(
    "text, bound",
    [("t^2 - t - 1", 2.0), ("t^5 - 2", 3.0), ("t^4 - t^3 - t^2 - t + 1", 2.0)],
)
def test_cauchy_bound(text, bound):
    assert cauchy_bound(parse(text)) == bound


def test_cauchy_bound_constant():
    with pytest.raises(DomainError):
        cauchy_bound(parse("5"))


@pytest.mark.parametrize(
    "p, value, tol",
    [
        (lt_polynomial(1, 2), 1.72208, 1e-5),
        (parse("t^2 - t - 1"), 1.6180339887, 1e-9),
        (named_polynomial("lehmer"), 1.17628, 1e-5),
        (parse("t^2 - 3*t + 1"), 2.6180339887, 1e-9),
    ],
)
def test_house_examples(p, value, tol):
    enc = house(p, tol)
    assert enc.width <= tol
    assert enc.contains(value, slack=1e-5 if tol >= 1e-5 else 1e-10)


def test_house_golden_exact():
    enc = house(parse("t^2 - t - 1"), 1e-12)
    lo5 = Fraction(math.isqrt(5 * 10**40), 10**20)
    hi5 = lo5 + Fraction(1, 10**20)
    assert enc.lo <= (1 + hi5) / 2 and (1 + lo5) / 2 <= enc.hi


def test_house_ignores_monomial_content():
    assert house(parse("t^7 - t^6 - t^5"), 1e-10).contains(GOLDEN, slack=1e-10)


def test_house_of_unimodular():
    enc = house(named_polynomial("sigma"), 1e-8)
    assert enc.contains(1)


def test_house_non_perron_dominant():
    # roots +-sqrt(2) i and 1: the house is sqrt(2) but not a real dominant root
    enc = house(parse("t^3 - t^2 + 2*t - 2"), 1e-9)
    assert enc.contains(math.sqrt(2), slack=1e-9)


@pytest.mark.parametrize("tol", [0, -1e-3])
def test_house_bad_tol(tol):
    with pytest.raises(DomainError):
        house(lt_polynomial(1, 2), tol)


def test_house_constant():
    with pytest.raises(DomainError):
        house(parse("3"), 1e-6)


@pytest.mark.parametrize(
    "p, value",
    [
        (named_polynomial("lehmer"), 1.17628),
        (named_polynomial("smyth"), 1.32472),
        (named_polynomial("sigma"), 1.0),
        (parse("t - 2"), 2.0),
        (parse("t^2 - 2"), 2.0),
        (parse("t^3 - 2"), 2.0),
    ],
)
def test_mahler_examples(p, value):
    enc = mahler_measure(p, 1e-6)
    assert enc.width <= 1e-6
    assert enc.contains(value, slack=1e-5)


def test_mahler_leading_coefficient():
    assert mahler_measure(parse("3*t^2 - 1"), 1e-8).contains(3, slack=1e-8)


@pytest.mark.parametrize("b", [2, 3, 5, 8])
def test_house_le_mahler_le_power(b):
    p = lt_polynomial(1, b)
    h = house(p, 1e-10)
    m = mahler_measure(p, 1e-8)
    assert h.lo <= m.hi
    assert m.lo <= h.power(p.degree()).hi


@pytest.mark.parametrize(
    "p, expected",
    [
        (lt_polynomial(1, 2), True),
        (parse("t^2 - t - 1"), True),
        (parse("t^2 - 3*t + 1"), True),
        (named_polynomial("smyth"), True),
        (parse("t^2 + 1"), False),
        (parse("t + 2"), False),
        (parse("t - 1"), False),
        (parse("2*t - 1"), False),
        (named_polynomial("sigma"), False),
        (parse("t^2 - 2"), Indeterminate),
        (parse("t^3 - 2"), Indeterminate),
    ],
)
def test_is_perron_poly(p, expected):
    assert is_perron_poly(p, 1e-10) is expected


def test_indeterminate_is_not_a_bool():
    with pytest.raises(TypeError):
        bool(Indeterminate)
    assert repr(Indeterminate) == "Indeterminate"


def test_count_roots_in_disk():
    p = parse("t^2 - t - 1")
    assert count_roots_in_disk(p, Fraction(11, 10)) == 1
    assert count_roots_in_disk(p, Fraction(2)) == 2
    assert count_roots_in_disk(p, Fraction(1, 2)) == 0
    # |a_0| = |a_d| makes the Schur-Cohn step degenerate at r = 1
    assert count_roots_in_disk(p, Fraction(1)) is None
    # a root on the circle: the count is reported as unknown
    assert count_roots_in_disk(parse("t - 1"), Fraction(1)) is None


def test_positive_real_roots():
    p = parse("t^2 - 2")
    assert positive_real_roots_may_exist(p, Fraction(1), Fraction(2))
    assert not positive_real_roots_may_exist(p, Fraction(3, 2), Fraction(2))


def test_enclosure_methods():
    e = RootEnclosure(Fraction(3, 2), Fraction(2), 0.5)
    assert e.mid == 1.75
    assert e.power(2) == RootEnclosure(Fraction(9, 4), Fraction(4), 1.75)
    assert e.rounded(2) == ("1.50", "2.00")
    assert e.to_json(1) == {"lo": "1.5", "hi": "2.0", "tol": "0.5"}
    with pytest.raises(ValueError):
        RootEnclosure(Fraction(2), Fraction(1), 0.1)
    with pytest.raises(DomainError):
        e.power(-1)


def test_rounding_is_outward():
    e = RootEnclosure(Fraction(1, 3), Fraction(2, 3), 1.0)
    lo, hi = e.rounded(3)
    assert Fraction(lo) <= e.lo and Fraction(hi) >= e.hi


# --- properties -----------------------------------------------------------

coeff_lists = st.lists(st.integers(-4, 4), min_size=2, max_size=11).filter(lambda c: c[-1] != 0 and c[0] != 0)


@settings(max_examples=25)
@given(coeff_lists)
def test_house_contains_exact_isolation(c):
    p = from_coeffs(c)
    enc = house(p, 1e-8)
    lo, hi = house_interval(c)
    # intervals overlap within the 1e-6 resolution of the oracle
    assert float(enc.lo) <= hi + 1e-6 and lo - 1e-6 <= float(enc.hi)


@pytest.mark.parametrize("b", [7, 10])
def test_house_degree_up_to_20_against_isolation(b):
    c = lt_polynomial(1, b).coeffs()
    lo, hi = house_interval(c)
    enc = house(lt_polynomial(1, b), 1e-10)
    assert float(enc.lo) <= hi + 1e-6 and lo - 1e-6 <= float(enc.hi)


@settings(max_examples=40)
@given(coeff_lists, st.fractions(Fraction(1, 4), Fraction(3)))
def test_disk_count_matches_numpy(c, r):
    n = count_roots_in_disk(c, r)
    mods = np.abs(np.roots(list(reversed(c))))
    if n is None or np.any(np.abs(mods - float(r)) < 1e-6):
        return
    assert n == int(np.sum(mods < float(r)))


def test_pn_normalized_house_decreases_to_two():
    prev = None
    for n in range(4, 31):
        v = house(named_polynomial("pn", n), 1e-12).power(n)
        assert v.lo > 2
        if prev is not None:
            assert v.hi < prev.lo
        prev = v


def test_lt_house_minimal_at_a_equal_one():
    for n in range(2, 16):
        base = house(lt_polynomial(1, n), 1e-10)
        for a in range(2, n):
            assert base.lo <= house(lt_polynomial(a, n), 1e-10).hi


def test_lt_doubled_power_decreases_to_golden_fourth():
    g4 = (7 + 3 * math.sqrt(5)) / 2
    prev = None
    for n in range(2, 41):
        v = house(lt_polynomial(1, n), 1e-12).power(2 * n)
        assert float(v.lo) > g4 - 1e-6
        if prev is not None:
            assert v.hi < prev.lo + Fraction(1, 10**6)
        prev = v
    assert abs(prev.mid - g4) < 0.01
