import pytest
from hypothesis import given
from hypothesis import strategies as st

from pfdil.errors import DivisionError, DomainError, PolySyntaxError
from pfdil.intpoly import (
    IntLaurentPoly,
    arith,
    format_poly,
    from_coeffs,
    is_reciprocal,
    lt_polynomial,
    monomial,
    named_polynomial,
    parse,
    specialize,
)

T = ("t",)
XYZ = ("x", "y", "z")


def terms_strategy(nvars, max_terms=5, lo=-3, hi=4):
    exps = st.tuples(*[st.integers(lo, hi)] * nvars)
    return st.dictionaries(exps, st.integers(-5, 5).filter(bool), max_size=max_terms)


def polys(variables=XYZ, **kw):
    return terms_strategy(len(variables), **kw).map(lambda d: IntLaurentPoly(variables, d))


# --- construction and parsing ---------------------------------------------

def test_zero_coefficients_are_dropped():
    p = IntLaurentPoly(T, {(1,): 0, (0,): 2})
    assert p.terms == {(0,): 2}


def test_exponent_length_checked():
    with pytest.raises(DomainError):
        IntLaurentPoly(("x", "y"), {(1,): 1})


def test_parse_lt12():
    p = parse("t^4 - t^3 - t^2 - t + 1")
    assert p == lt_polynomial(1, 2)
    assert p.coeffs() == [1, -1, -1, -1, 1]


def test_parse_zero():
    assert parse("0").is_zero()
    assert parse("0").terms == {}


def test_parse_bivariate():
    p = parse("x*y - x - y + 1")
    assert len(p) == 4
    assert p == parse("x - 1", ("x", "y")) * parse("y - 1", ("x", "y"))


@pytest.mark.parametrize("text", ["t^-2 + 1", "t^(-2) + 1", "1 + t^-2"])
def test_parse_negative_exponents(text):
    assert parse(text).terms == {(-2,): 1, (0,): 1}


def test_parse_coefficients_and_star():
    assert parse("3*t^2 - 12t + 7").coeffs() == [7, -12, 3]


def test_parse_unknown_variable():
    with pytest.raises(PolySyntaxError):
        parse("t + s", ("t",))


@pytest.mark.parametrize("bad", ["t^", "t +", "* t", "t^^2", "2 3", ""])
def test_parse_errors_carry_position(bad):
    with pytest.raises(PolySyntaxError) as exc:
        parse(bad)
    assert exc.value.text == bad


@pytest.mark.parametrize(
    "text, canonical",
    [
        ("1 + t - t^4", "-t^4 + t + 1"),
        ("t^4 - t^3 - t^2 - t + 1", "t^4 - t^3 - t^2 - t + 1"),
        ("x*y*z^-1 - x + 1", "x*y*z^-1 - x + 1"),
        ("0", "0"),
    ],
)
def test_format_canonical(text, canonical):
    assert format_poly(parse(text)) == canonical


@given(polys())
def test_format_parse_round_trip(p):
    assert parse(format_poly(p), XYZ) == p


# --- arithmetic -----------------------------------------------------------

def test_dehn_factor_product_a1_b2():
    p = arith(parse("t^3 + 1"), lt_polynomial(1, 2), "mul")
    assert p == parse("t^7 - t^6 - t^5 - t^2 - t + 1")


def test_exact_div_lehmer():
    q = arith(lt_polynomial(1, 6), named_polynomial("sigma"), "exact_div")
    assert q == named_polynomial("lehmer")
    assert q.coeffs() == [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]


def test_exact_div_remainder_raises():
    with pytest.raises(DivisionError):
        lt_polynomial(1, 4).exact_div(named_polynomial("sigma"))


def test_exact_div_by_zero():
    with pytest.raises((DivisionError, DomainError, ZeroDivisionError)):
        lt_polynomial(1, 4).exact_div(IntLaurentPoly(T))


def test_exact_div_ignores_monomial_content():
    p = lt_polynomial(1, 6) * monomial(-7)
    assert p.exact_div(named_polynomial("sigma") * monomial(3)).strip_content() == named_polynomial("lehmer")


def test_add_zero_identity():
    p = lt_polynomial(2, 5)
    assert arith(p, IntLaurentPoly(T), "add") == p


def test_mismatched_variables():
    with pytest.raises(DomainError):
        parse("x + 1", ("x",)) + parse("y + 1", ("y",))


def test_power():
    assert parse("t + 1") ** 3 == parse("t^3 + 3*t^2 + 3*t + 1")
    assert parse("t") ** -2 == parse("t^-2")


@given(polys(), polys(), polys())
def test_distributive(p, q, r):
    assert (p + q) * r == p * r + q * r


@given(polys(), polys())
def test_commutative(p, q):
    assert p * q == q * p
    assert p + q == q + p


@given(polys(), polys(), polys())
def test_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(polys(), polys())
def test_exact_div_inverts_mul(p, q):
    if q.is_zero():
        return
    r = (p * q).exact_div(q)
    assert (r * q).strip_content() == (p * q).strip_content()


@given(polys(), polys(), st.tuples(*[st.integers(-4, 4)] * 3))
def test_specialize_is_ring_homomorphism(p, q, m):
    assert specialize(p * q, m) == specialize(p, m) * specialize(q, m)
    assert specialize(p + q, m) == specialize(p, m) + specialize(q, m)


# --- specialization -------------------------------------------------------

MAGIC = parse("x*y*z^-1 - x - y - x*z^-1 - y*z^-1 + 1", XYZ)


def test_specialize_magic_10_8_3():
    assert specialize(MAGIC, (10, 8, 3)) == parse("t^15 - t^10 - t^8 - t^7 - t^5 + 1")


def test_specialize_identity_weights_collapses():
    p = parse("x*y - x - y + 1", ("x", "y"))
    assert specialize(p, (1, 1)) == parse("t^2 - 2*t + 1")


def test_specialize_length_mismatch():
    with pytest.raises(DomainError):
        specialize(MAGIC, (1, 2))


def test_specialize_laurent_output():
    assert specialize(parse("x*y^-1", ("x", "y")), (1, 3)) == parse("t^-2")


def test_evaluate_matches_specialize():
    p = specialize(MAGIC, (3, 4, 1))
    assert p.evaluate(2) == MAGIC.evaluate(2**3, 2**4, 2)


# --- reciprocity and named polynomials ------------------------------------

@pytest.mark.parametrize(
    "p, expected",
    [
        (lt_polynomial(1, 4), True),
        (named_polynomial("pn", 3), False),
        (parse("t - 1"), True),
        (named_polynomial("lehmer"), True),
    ],
)
def test_is_reciprocal(p, expected):
    assert is_reciprocal(p) is expected


def test_is_reciprocal_zero_raises():
    with pytest.raises(DomainError):
        is_reciprocal(IntLaurentPoly(T))


@pytest.mark.parametrize("b", range(1, 13))
def test_lt_reciprocal(b):
    for a in range(b):
        assert is_reciprocal(lt_polynomial(a, b))


@pytest.mark.parametrize(
    "a, b, text",
    [
        (1, 2, "t^4 - t^3 - t^2 - t + 1"),
        (3, 4, "t^8 - t^7 - t^4 - t + 1"),
        (0, 1, "t^2 - 3*t + 1"),
        (0, 3, "t^6 - 3*t^3 + 1"),
    ],
)
def test_lt_polynomial(a, b, text):
    assert lt_polynomial(a, b) == parse(text)


@pytest.mark.parametrize("a, b", [(2, 2), (3, 1), (-1, 2), (0, 0)])
def test_lt_polynomial_domain(a, b):
    with pytest.raises(DomainError):
        lt_polynomial(a, b)


def test_named():
    assert named_polynomial("pn(3)") == parse("t^3 - t - 1")
    assert named_polynomial("pn", 5) == parse("t^5 - t - 1")
    assert named_polynomial("sigma") == parse("t^2 - t + 1")
    assert named_polynomial("smyth") == parse("t^3 - t - 1")
    assert named_polynomial("lehmer").degree() == 10


@pytest.mark.parametrize("name", ["pn(1)", "bogus"])
def test_named_errors(name):
    with pytest.raises(DomainError):
        named_polynomial(name)


def test_from_coeffs_shift():
    assert from_coeffs([1, 2], shift=-1) == parse("t^-1 + 2")


def test_table_factorizations_exact():
    sigma = named_polynomial("sigma")
    assert lt_polynomial(3, 4).exact_div(sigma) == parse("t^6 - t^4 - t^3 - t^2 + 1")
    assert lt_polynomial(1, 6).exact_div(sigma) == named_polynomial("lehmer")
    for a, b in [(1, 4), (1, 8), (1, 2)]:
        with pytest.raises(DivisionError):
            lt_polynomial(a, b).exact_div(sigma)


def test_lt_2_9_cyclotomic_factor():
    phi10 = parse("t^4 - t^3 + t^2 - t + 1")
    cof = parse("t^14 + t^13 - t^9 - t^8 - t^7 - t^6 - t^5 + t + 1")
    assert lt_polynomial(2, 9) == phi10 * cof
    with pytest.raises(DivisionError):
        lt_polynomial(2, 9).exact_div(named_polynomial("sigma"))
