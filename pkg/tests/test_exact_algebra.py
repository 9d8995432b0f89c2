import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlie.central_extension import legendre
from hyperlie.exact_algebra import (
    AlgebraError,
    LaurentPoly,
    ParamFrac,
    ParamPoly,
    TruncSeries,
    bell_polynomial,
    bell_table,
    double_factorial,
    h_coefficients,
    poly_arith,
    series_inv_sqrt,
    series_quotient,
)
from hyperlie.parsing import parse_laurent, parse_scalar

from strategies import laurent_polys, param_fracs, small_rational

t = LaurentPoly.monomial(1)
a = ParamFrac.var("a")
b = ParamFrac.var("b")


# -- canonical forms --------------------------------------------------------------


def test_difference_of_squares():
    x = t + LaurentPoly.monomial(-1)
    y = t - LaurentPoly.monomial(-1)
    assert poly_arith(x, y, "mul") == LaurentPoly.monomial(2) - LaurentPoly.monomial(-2)


def test_power_rule():
    assert poly_arith(LaurentPoly.monomial(3, b), op="derivative_t") == LaurentPoly.monomial(2, b * 3)


def test_canonical_product():
    x = t * a
    assert x * x == LaurentPoly.monomial(2, a * a)
    assert str(x * x) == "a^2*t^2"


def test_canonical_fraction_string():
    assert str(parse_scalar("-(15*a^3+24)/48")) == "(-5*a^3 - 8)/16"
    assert str(parse_scalar("-3*a/5")) == "-3/5*a"
    assert str(ParamFrac.var("beta") ** -1 * 3 / (ParamFrac.var("beta") ** 2 - 1)) == "3/(beta*(beta-1)*(beta+1))"


def test_atoms_reduce_against_numerator():
    beta = ParamFrac.var("beta")
    assert (beta * beta - 1) / (beta - 1) == beta + 1
    assert ((beta * beta - 1) / (beta - 1)).atoms == ()


def test_undeclared_denominator_is_rejected():
    with pytest.raises(AlgebraError):
        ParamFrac.one() / (a + 1)


def test_derivative_z_only_on_series():
    with pytest.raises(AlgebraError):
        poly_arith(t, op="derivative_z")
    s = TruncSeries([1, 2, 3], 2)
    assert poly_arith(s, op="derivative_z").as_power_series(1) == [2, 6]


# -- ring axioms (hypothesis) -------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(param_fracs(), param_fracs(), param_fracs())
def test_paramfrac_field_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


@settings(max_examples=200, deadline=None)
@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_laurent_ring_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).derivative() == x.derivative() * y + x * y.derivative()


@settings(max_examples=100, deadline=None)
@given(laurent_polys())
def test_canonical_string_round_trips(x):
    assert parse_laurent(str(x)) == x


# -- Bell polynomials ---------------------------------------------------------------


def _brute_bell(m, k, z):
    """Sum over set partitions of {1..m} into k blocks of prod z_{|block|}."""
    total = 0
    for labels in itertools.product(range(k), repeat=m):
        # canonical labelling: first occurrences in increasing order
        seen = []
        for lab in labels:
            if lab not in seen:
                seen.append(lab)
        if len(seen) != k or seen != sorted(seen):
            continue
        term = 1
        for blk in range(k):
            term *= z[labels.count(blk) - 1]
        total += term
    return total


def test_bell_small_cases():
    z = [ParamFrac.var(f"z{i}") for i in range(1, 6)]
    assert bell_polynomial(3, 2, z[:2]) == z[0] * z[1] * 3
    for m in range(1, 6):
        assert bell_polynomial(m, m, z[:1]) == z[0] ** m
        assert bell_polynomial(m, 1, z[:m]) == z[m - 1]
    with pytest.raises(AlgebraError):
        bell_polynomial(2, 3, z)


def test_bell_against_set_partition_count():
    z = [Fraction(p) for p in (2, 3, 5, 7, 11, 13, 17, 19)]
    for m in range(1, 8):
        for k in range(1, m + 1):
            assert bell_polynomial(m, k, z[: m - k + 1]) == _brute_bell(m, k, z)


def test_bell_recurrence_and_table():
    z = [ParamFrac.var(f"z{i}") for i in range(1, 10)]
    table = bell_table(8, z)
    for m in range(0, 8):
        for k in range(1, m + 2):
            rhs = sum((z[j] * bell_polynomial(m - j, k - 1, z) * math.comb(m, j) for j in range(m - k + 2)
                       if k - 1 <= m - j), ParamFrac.zero())
            assert bell_polynomial(m + 1, k, z) == rhs
    for m in range(9):
        for k in range(m + 1):
            assert table[m][k] == bell_polynomial(m, k, z)


def test_double_factorial_extension():
    assert [double_factorial(n) for n in (-5, -3, -1, 0, 1, 5, 6)] == [
        Fraction(1, 3), -1, 1, 1, 1, 15, 48]


# -- series -----------------------------------------------------------------------


def test_inv_sqrt_of_one():
    assert list(series_inv_sqrt(TruncSeries([1], 5)).coeffs) == [1, 0, 0, 0, 0, 0]


def test_inv_sqrt_reversed_cubic():
    p = TruncSeries([1, 0, a, 1], 8)
    s = series_inv_sqrt(p, 8)
    want = [parse_scalar(c) for c in ("1", "0", "-a/2", "-1/2", "3*a^2/8")]
    assert list(s.coeffs[:5]) == want
    assert list((s * s * p).coeffs) == [1] + [0] * 8


def test_inv_sqrt_is_legendre_generating_function():
    s = series_inv_sqrt(TruncSeries([1, -2 * b, 1], 12), 12)
    assert s.coeffs[2] == (3 * b * b - 1) / 2
    assert all(s.coeffs[k] == legendre(k, b) for k in range(13))


def test_inv_sqrt_needs_constant_term():
    with pytest.raises(AlgebraError):
        series_inv_sqrt(TruncSeries([0, 1], 4))


@settings(max_examples=50, deadline=None)
@given(st.lists(small_rational, min_size=1, max_size=6))
def test_inv_sqrt_squares_back(tail):
    p = TruncSeries([Fraction(1)] + tail, 32)
    s = series_inv_sqrt(p, 32)
    assert list((s * s * p).coeffs) == [1] + [0] * 32


def test_half_integer_shift_ledger():
    x = TruncSeries([1, 2], 4, shift=Fraction(-3, 2))
    y = TruncSeries([1, 1], 4, shift=Fraction(1, 2))
    assert (x * y).shift == -1
    integ = x.integrate()
    assert integ.shift == Fraction(-1, 2)
    assert integ.coefficient(Fraction(-1, 2)) == -2


def test_h_coefficients(cubic, legendre_c):
    assert h_coefficients(cubic, 3) == [1, 0, -a / 2, ParamFrac.coerce(Fraction(-1, 2))]
    assert h_coefficients(legendre_c, 1)[1] == b
    assert h_coefficients(legendre_c, 0) == [1]


def test_series_quotient_geometric():
    assert series_quotient([1], [1, -1], 5) == [1] * 6
