from fractions import Fraction

import pytest

from hyperlie.central_extension import legendre, reduce_power
from hyperlie.exact_algebra import LaurentPoly, ParamFrac
from hyperlie.genfun import (
    assoc_legendre_class,
    assoc_legendre_family,
    build_ode_data,
    emit,
    genfun_solve,
    integration_constant,
    legendre_curve,
    ode_residual,
    series_rows,
    table_coefficients,
)
from hyperlie.hyperelliptic_ring import Curve, CurveError
from hyperlie.parsing import parse_laurent, parse_scalar

b = ParamFrac.var("b")


def Z(text):
    return parse_laurent(text, var="z")


def test_rhs_examples(cubic):
    assert build_ode_data(cubic, 0).rhs == Z("-z")
    assert build_ode_data(cubic, 1).rhs == Z("z^2")
    assert build_ode_data(cubic, 0, "backward").rhs == Z("-2*z-a*z^2")
    assert build_ode_data(cubic, 1, "backward").rhs == Z("-4-3*a*z")
    assert build_ode_data(cubic, -1, "backward").rhs.is_zero()


def test_q_polynomials(cubic):
    fwd = build_ode_data(cubic, 0)
    assert fwd.Q == Z("-3-a*z^2")
    assert fwd.A == Z("1+a*z^2+z^3")
    bwd = build_ode_data(cubic, 0, "backward")
    assert bwd.A == Z("1+a*z+z^3")
    assert bwd.Q == Z("-4-3*a*z-z^3")


def test_r_minus_one_follows_the_definition(cubic):
    """R_{-1} is -3 - a z^2 = Q(z), solved by P_{-1} = 1 (t^-1 is a basis element)."""
    data = build_ode_data(cubic, -1)
    assert data.rhs == data.Q == Z("-3-a*z^2")
    assert list(genfun_solve(data, 10).coeffs) == [1] + [0] * 10


@pytest.mark.xfail(strict=True, reason="the printed R_{-1} = 0 contradicts the definition of R_i (see ledger)")
def test_r_minus_one_printed_value(cubic):
    assert build_ode_data(cubic, -1).rhs.is_zero()


@pytest.mark.parametrize("i", [-1, 0, 1])
def test_printed_sum_range_gives_same_rhs(cubic, i):
    assert build_ode_data(cubic, i, rhs_range="printed").rhs == build_ode_data(cubic, i).rhs


def test_printed_series(cubic):
    p0 = genfun_solve(build_ode_data(cubic, 0), 7)
    want = ["0", "1", "0", "-a/3", "-2/5", "5*a^2/21", "8/15*a", "16/55-15*a^3/77"]
    assert list(p0.coeffs) == [parse_scalar(c) for c in want]
    q1 = genfun_solve(build_ode_data(cubic, 1, "backward"), 5, "integrating_factor")
    assert list(q1.coeffs) == [parse_scalar(c) for c in ["1", "0", "0", "1/2", "-3*a/8", "5*a^2/16"]]


def test_integration_constants(cubic):
    got = [integration_constant(build_ode_data(cubic, i, "backward"), 6) for i in (-1, 0, 1)]
    assert got == [1, parse_scalar("a/2"), parse_scalar("-a^2/8")]
    # odd n: the homogeneous solution of the forward equation has half-integer powers
    assert integration_constant(build_ode_data(cubic, 0), 6) == 0


@pytest.mark.parametrize("spec", ["t^2-2*b*t+1", "t^3+a*t+1", "t^4-2*b*t^2+1"])
def test_methods_agree_and_match_tables(spec):
    c = Curve.parse(spec)
    order = 32
    for direction in ("forward", "backward"):
        for i in range(-1, c.degree - 1):
            data = build_ode_data(c, i, direction)
            rec = genfun_solve(data, order)
            itf = genfun_solve(data, order, "integrating_factor")
            assert rec == itf
            assert list(rec.coeffs) == table_coefficients(c, i, direction, order)
            assert all(r.is_zero() for r in ode_residual(data, rec)[: order - c.degree])


def test_scope_errors(lemma_c, cubic):
    with pytest.raises(CurveError):
        build_ode_data(lemma_c, 0)
    with pytest.raises(ValueError):
        build_ode_data(cubic, 2)
    with pytest.raises(ValueError):
        build_ode_data(cubic, 0, "sideways")
    with pytest.raises(ValueError):
        genfun_solve(build_ode_data(cubic, 0), 4, "guess")


def test_emission_is_stable(cubic):
    rows = series_rows(cubic, 0, "forward", genfun_solve(build_ode_data(cubic, 0), 3))
    assert emit(rows, "csv").splitlines()[:3] == ["curve,i,direction,k,coeff", "t^3 + a*t + 1,0,forward,0,0",
                                                  "t^3 + a*t + 1,0,forward,1,1"]
    assert emit(rows, "json") == emit(rows, "json")


# -- associated Legendre ---------------------------------------------------------------


def test_legendre_degenerate_case():
    rho, _ = assoc_legendre_family(1, 0, 10)
    assert rho[2] == (3 * b * b - 1) / 2
    assert all(rho[k] == legendre(k, b) for k in range(11))
    assert rho.recursion_holds()


@pytest.mark.parametrize("r", [1, 2, 3])
def test_initial_condition(r):
    for q in range(r):
        rho, sigma = assoc_legendre_family(r, q, 3)
        assert (rho[-1], rho[0], sigma[-1], sigma[0]) == (0, 1, 1, 0)


def test_cross_module_example():
    c = legendre_curve(2)
    rho, _ = assoc_legendre_family(2, 0, 2)
    assert reduce_power(3, c).coord(1) == rho[1]


@pytest.mark.parametrize("r", [1, 2, 3])
def test_reindexing_matches_reduction(r):
    c = legendre_curve(r)
    for q in range(r):
        for l in range(-8, 9):  # noqa: E741
            assert assoc_legendre_class(r, q, l) == reduce_power((l + 1) * r + q - 1, c), (q, l)


def test_family_arguments():
    with pytest.raises(ValueError):
        assoc_legendre_family(2, 2, 4)
