from fractions import Fraction

import pytest

from hyperlie.exact_algebra import LaurentPoly, ParamFrac
from hyperlie.families import PolynomialFamily, Scaling
from hyperlie.hyperelliptic_ring import djkm_radicals
from hyperlie.parsing import parse_laurent
from hyperlie import unit_families as uf

BETA = Fraction(17, 8)
beta = ParamFrac.var("beta")
T2 = LaurentPoly.monomial(2)


def L(text):
    return parse_laurent(text)


@pytest.fixture(scope="module")
def fams():
    U, V = uf.family_uv(16)
    A, W = uf.family_ab(12)
    C, D = uf.family_cd(12)
    return {"U": U, "V": V, "A": A, "W": W, "C": C, "D": D}


def test_chebyshev():
    x = LaurentPoly.monomial(1)
    assert uf.chebyshev("T", 0) == 1
    assert uf.chebyshev("T", 1) == x
    assert uf.chebyshev("T", 2) == x * x * 2 - 1
    assert uf.chebyshev("U", 1) == x * 2
    with pytest.raises(ValueError):
        uf.chebyshev("T", -1)
    with pytest.raises(ValueError):
        uf.chebyshev("V", 2)


def test_first_members(fams):
    assert fams["U"][1] == T2 - beta
    assert fams["U"][2] == (T2 - beta) * (T2 - beta) * 2 - (beta * beta - 1)
    assert fams["W"][2] == L("4*(t^2-1)^2") - T2 * ((beta - 1) * 2)
    assert (fams["C"][0], fams["D"][0]) == (1, 0)


def test_recursions_hold(fams):
    for f in fams.values():
        assert f.recursion_holds(), f.name


def test_u2_against_ring_power(fams):
    fs, gs = uf.power_parts(0, 2, BETA)
    assert fams["U"][2].subs({"beta": ParamFrac.coerce(BETA)}) == fs[2]


@pytest.mark.parametrize("which", [0, 1, 2])
def test_ring_powers(which):
    assert all(uf.ring_identity(which, n, BETA) for n in range(9))


def test_printed_b(fams):
    for n in range(5):
        assert uf.reconstruct(fams["W"], n, BETA) == uf.printed_b(n, BETA)


def test_a_from_b(fams):
    mu, nu, _ = djkm_radicals(BETA)
    a1 = (T2 - 1) * (1 / mu)
    b0 = nu / 2
    for n in range(1, 10):
        b_n = uf.reconstruct(fams["W"], n, BETA)
        b_prev = uf.reconstruct(fams["W"], n - 1, BETA)
        assert uf.reconstruct(fams["A"], n, BETA) == (b_n - a1 * b_prev) * (1 / b0)


def test_pell_identity(fams):
    p = uf.p_poly()
    for n in range(1, 13):
        assert fams["U"][n] ** 2 - fams["V"][n - 1] ** 2 * p == LaurentPoly.const((beta * beta - 1) ** n)


def test_generating_functions(fams):
    gu = uf.generating_function_coefficients("u", 16)
    gv = uf.generating_function_coefficients("v", 16)
    assert all(gu[n] == fams["U"][n] for n in range(17))
    assert all(gv[n] == fams["V"][n] for n in range(17))


def test_chebyshev_identification(fams):
    _, _, rho = djkm_radicals(BETA)
    q = (T2 - BETA) * (1 / rho)
    for n in range(13):
        assert uf.compose(uf.chebyshev("T", n), q) == uf.reconstruct(fams["U"], n, BETA)
        assert uf.compose(uf.chebyshev("U", n), q) == uf.reconstruct(fams["V"], n, BETA)


def test_duality(fams):
    Cd, Dd = uf.family_cd_direct(10)
    for n in range(11):
        assert fams["C"][n] == Cd[n] and fams["D"][n] == Dd[n]
        assert uf.dual(uf.dual(fams["W"][n])) == fams["W"][n]
    with pytest.raises(ValueError):
        uf.dual(LaurentPoly.monomial(1))


# -- ODEs -------------------------------------------------------------------------------


def test_ode_data_printed_pieces():
    assert uf.ode_for("b", 3).r == L("-2*3*(2*t^5+t^3*(beta+(beta+1)*3+5)+t*(-beta+(beta+1)*3+1))")
    assert uf.ode_for("d", 2).p == L("t*(1-t^2)*(t^4-2*beta*t^2+1)")
    for n in range(13):
        assert uf.Q_b(n + 1) - uf.Q_b(n) == uf.P1() * LaurentPoly.monomial(-1) * -2
    with pytest.raises(ValueError):
        uf.ode_for("z", 1)


def test_u1_is_trivially_annihilated():
    q = T2 - beta
    assert uf.ode_annihilates(uf.ode_for("u", 1), q).is_zero()


@pytest.mark.parametrize("family,key,lo,hi,shift", [
    ("u", "U", 0, 12, 0), ("v", "V", 0, 12, 0), ("b", "W", 1, 10, 0), ("d", "D", 0, 10, 1)])
def test_odes_annihilate(fams, family, key, lo, hi, shift):
    for n in range(lo, hi + 1):
        assert uf.ode_annihilates(uf.ode_for(family, n), fams[key][n + shift]).is_zero(), n


def test_wrong_index_is_detected(fams):
    assert not uf.ode_annihilates(uf.ode_for("u", 3), fams["U"][4]).is_zero()
    assert not uf.ode_annihilates(uf.ode_for("d", 3), fams["D"][3]).is_zero()


def test_printed_chebyshev_ode_only_covers_low_degree():
    Ub = uf.family_uv(4, BETA)[0]
    res = [uf.ode_annihilates(uf.printed_chebyshev_ode("u", n, BETA), Ub[n]).is_zero() for n in range(5)]
    assert res == [True, True, False, False, False]


def test_rem_identities(fams):
    for n in range(1, 11):
        assert uf.rem(n, fams["W"]).is_zero()
    for n in range(2, 11):
        assert uf.rem_three_term(n, fams["W"]).is_zero()


@pytest.mark.parametrize("n", range(1, 7))
def test_sturm_liouville(n):
    assert uf.sturm_liouville_check(n).ok
    bad = uf.sturm_liouville_check(n, 2 * n)
    assert not bad.derivative_term and not bad.ok


# -- container and dumps --------------------------------------------------------------------


def test_scaling_ledger():
    _, _, rho = djkm_radicals(BETA)
    mu, nu, _ = djkm_radicals(BETA)
    assert rho == mu * nu / 2
    assert Scaling(Fraction(1, 2), mu=-1, nu=1).value(mu, nu, rho) == nu / (2 * mu)


def test_family_container():
    f = PolynomialFamily("x", {0: LaurentPoly.const(1), 1: T2}, lambda n: (T2, LaurentPoly.const(0)))
    assert len(f) == 2 and f.indices() == [0, 1] and f.recursion_holds()


def test_family_dump():
    rows = uf.family_dump("b", 2, BETA)
    assert rows[2] == {"family": "b", "beta": "17/8", "n": 2, "scaled": "4*t^4 - 41/4*t^2 + 4",
                       "ledger": {"mu": -2, "nu": 1, "rho": 0}, "const": "1/2"}
    assert uf.family_dump("u", 1)[1]["scaled"] == "t^2 - beta"
    with pytest.raises(ValueError):
        uf.family_dump("q", 2)
