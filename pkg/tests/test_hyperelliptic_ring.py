import random
from fractions import Fraction

import pytest

from hyperlie.exact_algebra import LaurentPoly, ParamFrac
from hyperlie.hyperelliptic_ring import (
    Curve,
    CurveError,
    RingElement,
    apply_delta,
    build_unit,
    conjugate,
    djkm_curve,
    djkm_generators,
    djkm_radicals,
    is_unit,
    norm,
    recognize_unit,
    ring_mul,
)
from hyperlie.parsing import parse_laurent
from hyperlie.verify import random_element

BETA = Fraction(17, 8)
t = LaurentPoly.monomial(1)


def L(text):
    return parse_laurent(text)


# -- curves -------------------------------------------------------------------------


def test_curve_shapes():
    c = Curve.parse("t^2-2*b*t+1")
    assert (c.l, c.n, c.params()) == (0, 2, ["b"])
    c = Curve.parse("t^2-2*b*t")
    assert (c.l, c.n) == (1, 1)
    assert c.basis_exponents() == (0,)


@pytest.mark.parametrize("spec", ["2*t^2-1", "t^3+t^2"])
def test_curve_rejections(spec):
    with pytest.raises(CurveError):
        Curve.parse(spec)


def test_nonmonic_message_cites_normalization():
    with pytest.raises(CurveError, match="b_\\{n\\+l\\}=1"):
        Curve.parse("2*t^2-1")


def test_repeated_root_detected():
    with pytest.raises(CurveError, match="repeated root"):
        Curve.parse("t^3-3*t+2")  # (t-1)^2 (t+2)


def test_round_trip_through_text(cubic, legendre_c, lemma_c):
    for c in (cubic, legendre_c, lemma_c):
        assert Curve.parse(str(c)) == c


# -- ring arithmetic ----------------------------------------------------------------


def test_norm_example(cubic):
    x = RingElement(t, 1, cubic)
    assert ring_mul(x, conjugate(x)).f == L("t^2-t^3-a*t-1")
    assert ring_mul(x, conjugate(x)).g.is_zero()


def test_u_squared_is_p(cubic):
    u = RingElement.u(cubic)
    assert u * u == RingElement(cubic.poly(), 0, cubic)


def test_curve_mismatch(cubic, legendre_c):
    with pytest.raises(CurveError):
        RingElement.u(cubic) * RingElement.u(legendre_c)


def test_derivation_basics(cubic, legendre_c):
    assert apply_delta(RingElement(t, 0, cubic)) == RingElement.u(cubic)
    assert apply_delta(RingElement.u(cubic)) == RingElement(cubic.poly().derivative() / 2, 0, cubic)
    for k in range(-4, 5):
        got = apply_delta(RingElement(0, LaurentPoly.monomial(k), legendre_c)).f
        want = LaurentPoly.monomial(k + 1, k + 1) - LaurentPoly.monomial(k, ParamFrac.var("b") * (2 * k + 1)) + LaurentPoly.monomial(k - 1, k)
        assert got == want


def test_leibniz_conjugation_norm_random(cubic):
    rng = random.Random(1)
    for _ in range(100):
        x, y = random_element(rng, cubic), random_element(rng, cubic)
        assert apply_delta(x * y) == apply_delta(x) * y + x * apply_delta(y)
        assert conjugate(x * y) == conjugate(x) * conjugate(y)
        assert norm(x * y) == norm(x) * norm(y)


def test_is_unit(cubic):
    assert is_unit(RingElement(LaurentPoly.monomial(5), 0, cubic)) == (True, 1, 10)
    assert not is_unit(RingElement(1, 1, cubic)).is_unit
    lam2 = djkm_generators(BETA).lam2
    v = is_unit(lam2)
    assert v.is_unit and v.constant == 1 and v.exponent == 2


# -- units on the quartic ------------------------------------------------------------


def test_radicals():
    assert djkm_radicals(BETA) == (Fraction(3, 2), Fraction(5, 2), Fraction(15, 8))
    with pytest.raises(CurveError):
        djkm_radicals(Fraction(3))


def test_curve_normalization():
    c = djkm_curve(BETA)
    assert c.monic() == L("t^4-17/4*t^2+1")
    assert c.scale == Fraction(64, 225)


def test_generator_relations():
    g = djkm_generators(BETA)
    t2 = RingElement(LaurentPoly.monomial(2), 0, g.lam0.curve)
    assert g.lam0 == RingElement(L("(t^2-17/8)*8/15"), 1, g.lam0.curve)
    assert norm(g.lam0) == 1
    assert norm(g.lam1) == LaurentPoly.monomial(2)
    assert norm(g.lam2) == LaurentPoly.monomial(2)
    assert g.lam1 * g.lam2 == t2 * g.lam0
    assert g.lam1 * g.lam2 * g.lam0.inverse() == t2


def test_recognize_examples():
    g = djkm_generators(BETA)
    t2 = RingElement(LaurentPoly.monomial(2), 0, g.lam0.curve)
    assert tuple(recognize_unit(t2 * g.lam0, 4, BETA)) == (1, 0, 1, 1)
    assert tuple(recognize_unit(g.lam1 ** 2, 3, BETA)) == (1, 0, 2, 0)
    x = RingElement(LaurentPoly.monomial(-1, 5), 0, g.lam0.curve) * g.lam2
    assert tuple(recognize_unit(x, 4, BETA)) == (5, -1, 0, 1)


def test_recognize_round_trip_and_not_found():
    g = djkm_generators(BETA)
    x = build_unit(Fraction(3, 2), 1, 2, -3, g)
    assert tuple(recognize_unit(x, 4, BETA)) == (Fraction(3, 2), 1, 2, -3)
    assert recognize_unit(g.lam1 ** 5, 4, BETA) is None
    assert recognize_unit(g.lam1 + g.lam2, 4, BETA) is None


def test_ring_element_text():
    c = Curve.parse("t^3+a*t+1")
    assert str(RingElement(t, 1, c)) == "t | 1"
