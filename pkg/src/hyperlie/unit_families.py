"""Polynomial families attached to powers of the units lambda_0, lambda_1, lambda_2.

Everything is stored radical-free.  With p = t^4 - 2 beta t^2 + 1, J^2 = p and

    mu = sqrt(2(beta-1)),  nu = sqrt(2(beta+1)),  rho = sqrt(beta^2-1) = mu nu / 2,

the units are lambda_0 = (t^2-beta+J)/rho, lambda_1 = (t^2+1+J)/nu and
lambda_2 = (t^2-1+J)/mu, where sqrt(P) = J/rho.  Powers of the numerators have
coefficients in Q(beta)[t]; a per-family ledger restores the radicals.

    U_n + ... = (t^2-beta+J)^n       u_n = U_n rho^-n,   v_m = V_m rho^-m
    A_n + W_{n-1} J = (t^2-1+J)^n    a_n = A_n mu^-n,    b_n = W_n (nu/2) mu^-n
    C_n + D_n J = (t^2+1+J)^n        c_n = C_n nu^-n,    d_n = D_n rho nu^-n
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import LaurentPoly, ParamFrac, series_quotient
from .families import PolynomialFamily, Scaling
from .hyperelliptic_ring import Curve, RingElement, djkm_generators, djkm_radicals, quartic

BETA = ParamFrac.var("beta")
T2 = LaurentPoly.monomial(2)
FAMILIES = ("u", "v", "b", "d")


def _beta(beta=None) -> ParamFrac:
    return BETA if beta is None else ParamFrac.coerce(beta)


def p_poly(beta=None) -> LaurentPoly:
    return quartic(_beta(beta))


def j_curve(beta=None) -> Curve:
    """u^2 = t^4 - 2 beta t^2 + 1, the ring in which J lives."""
    return Curve(tuple(p_poly(beta).coeff(i) for i in range(5)))


# -- Chebyshev ---------------------------------------------------------------------


def chebyshev(kind: str, n: int) -> LaurentPoly:
    """T_n or U_n as a polynomial in one variable (printed with t)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = LaurentPoly.monomial(1)
    if kind == "T":
        prev, cur = LaurentPoly.const(1), x
    elif kind == "U":
        prev, cur = LaurentPoly.const(1), x * 2
    else:
        raise ValueError("kind must be 'T' or 'U'")
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, x * cur * 2 - prev
    return cur


def compose(poly: LaurentPoly, x: LaurentPoly) -> LaurentPoly:
    """poly(x) for a polynomial poly (Horner)."""
    if poly.is_zero():
        return poly
    if poly.min_exp() < 0:
        raise ValueError("compose needs a polynomial")
    out = LaurentPoly()
    for k in range(poly.max_exp(), -1, -1):
        out = out * x + poly.coeff(k)
    return out


# -- families ----------------------------------------------------------------------


def _power_parts(base: LaurentPoly, order: int, beta=None):
    """f- and J-parts of (base + J)^n for 0 <= n <= order."""
    c = j_curve(beta)
    x = RingElement(base, 1, c)
    acc = RingElement(1, 0, c)
    fs, gs = [], []
    for _ in range(order + 1):
        fs.append(acc.f)
        gs.append(acc.g)
        acc = acc * x
    return fs, gs


def _three_term(x0, x1, a, b, order):
    xs = [x0, x1]
    while len(xs) <= order:
        xs.append(a * xs[-1] + b * xs[-2])
    return xs[: order + 1]


def family_uv(order: int, beta=None) -> tuple[PolynomialFamily, PolynomialFamily]:
    """U_n (n <= order) and V_m (m <= order) by the recursion x' = 2(t^2-beta) x - (beta^2-1) x''."""
    b = _beta(beta)
    a = (T2 - b) * 2
    c = LaurentPoly.const(-(b * b - 1))
    us = _three_term(LaurentPoly.const(1), T2 - b, a, c, order)
    vs = _three_term(LaurentPoly.const(1), (T2 - b) * 2, a, c, order)
    rec = lambda n: (a, c)  # noqa: E731
    U = PolynomialFamily("u", dict(enumerate(us)), rec, lambda n: Scaling(rho=-n), "f-part of (t^2-beta+J)^n")
    V = PolynomialFamily("v", dict(enumerate(vs)), rec, lambda n: Scaling(rho=-n), "J-part of (t^2-beta+J)^(n+1)")
    return U, V


def family_ab(order: int, beta=None) -> tuple[PolynomialFamily, PolynomialFamily]:
    """A_n and W_n with x' = 2(t^2-1) x - 2(beta-1) t^2 x''."""
    b = _beta(beta)
    a = (T2 - 1) * 2
    c = T2 * ((b - 1) * -2)
    ws = _three_term(LaurentPoly.const(1), (T2 - 1) * 2, a, c, order)
    As = [LaurentPoly.const(1)] + [ws[n] - (T2 - 1) * ws[n - 1] for n in range(1, order + 1)]
    rec = lambda n: (a, c)  # noqa: E731
    A = PolynomialFamily("a", dict(enumerate(As)), rec, lambda n: Scaling(mu=-n), "f-part of (t^2-1+J)^n")
    W = PolynomialFamily(
        "b", dict(enumerate(ws)), rec, lambda n: Scaling(Fraction(1, 2), mu=-n, nu=1), "J-part of (t^2-1+J)^(n+1)"
    )
    return A, W


def dual(x: LaurentPoly) -> LaurentPoly:
    """(beta, t) -> (-beta, i t) on polynomials in t^2: t^(2k) -> (-1)^k t^(2k)."""
    out = {}
    for k, c in x.coeffs.items():
        if k % 2:
            raise ValueError("the duality map is only defined on even polynomials")
        c = c.subs({"beta": -BETA}) if "beta" in c.variables() else c
        out[k] = c * (-1) ** (k // 2)
    return LaurentPoly(out)


def family_cd(order: int, beta=None) -> tuple[PolynomialFamily, PolynomialFamily]:
    """C_n and D_n from the a/b families through the duality.

    lambda_1(beta, t) and lambda_2(-beta, i t) agree up to a unit factor, which
    in radical-free form reads C_n = (-1)^n A_n(-beta, i t) and
    D_n = (-1)^(n+1) W_{n-1}(-beta, i t); the i-powers cancel.
    """
    A, W = family_ab(order)
    cs = {n: dual(A[n]) * (-1) ** n for n in range(order + 1)}
    ds = {0: LaurentPoly()}
    for n in range(1, order + 1):
        ds[n] = dual(W[n - 1]) * (-1) ** (n + 1)
    if beta is not None:
        mp = {"beta": _beta(beta)}
        cs = {n: v.subs(mp) for n, v in cs.items()}
        ds = {n: v.subs(mp) for n, v in ds.items()}
    b = _beta(beta)
    a = (T2 + 1) * 2
    c = T2 * ((b + 1) * -2)
    rec = lambda n: (a, c)  # noqa: E731
    C = PolynomialFamily("c", cs, rec, lambda n: Scaling(nu=-n), "f-part of (t^2+1+J)^n")
    D = PolynomialFamily("d", ds, rec, lambda n: Scaling(nu=-n, rho=1), "J-part of (t^2+1+J)^n")
    return C, D


def family_cd_direct(order: int, beta=None) -> tuple[PolynomialFamily, PolynomialFamily]:
    """Same families by expanding (t^2+1+J)^n in the ring (cross-check)."""
    fs, gs = _power_parts(T2 + 1, order, beta)
    C = PolynomialFamily("c", dict(enumerate(fs)), None, lambda n: Scaling(nu=-n))
    D = PolynomialFamily("d", dict(enumerate(gs)), None, lambda n: Scaling(nu=-n, rho=1))
    return C, D


def power_parts(which: int, order: int, beta=None):
    """Radical-free (f, J) parts of the numerator of lambda_which^n."""
    base = {0: T2 - _beta(beta), 1: T2 + 1, 2: T2 - 1}[which]
    return _power_parts(base, order, beta)


# -- reconstruction at an admissible beta --------------------------------------------


def reconstruct(fam: PolynomialFamily, n: int, beta) -> LaurentPoly:
    """The family member with radicals restored, at a rational admissible beta."""
    mu, nu, rho = djkm_radicals(beta)
    entry = fam[n].subs({"beta": ParamFrac.coerce(beta)})
    return entry * fam.scaling(n).value(mu, nu, rho)


def ring_identity(which: int, n: int, beta) -> bool:
    """f_n + g_n sqrt(P) == lambda_which^n in the ring at rational beta."""
    gens = djkm_generators(beta)
    lam = (gens.lam0, gens.lam1, gens.lam2)[which]
    if which == 0:
        U, V = family_uv(n)
        f = reconstruct(U, n, beta)
        g = reconstruct(V, n - 1, beta) if n >= 1 else LaurentPoly()
    elif which == 2:
        A, W = family_ab(n)
        f = reconstruct(A, n, beta)
        g = reconstruct(W, n - 1, beta) if n >= 1 else LaurentPoly()
    else:
        C, D = family_cd(n)
        f = reconstruct(C, n, beta)
        g = reconstruct(D, n, beta)
    return RingElement(f, g, lam.curve) == lam**n


def printed_b(n: int, beta) -> LaurentPoly:
    """b_0..b_4 in terms of a_1 = (t^2-1)/mu and b_0 = nu/2, as printed."""
    mu, nu, _ = djkm_radicals(beta)
    a1 = (T2 - 1) * (1 / mu)
    b0 = nu / 2
    t2 = T2
    forms = {
        0: LaurentPoly.const(b0),
        1: a1 * (2 * b0),
        2: (a1 * a1 * 4 - t2) * b0,
        3: a1 * (a1 * a1 * 2 - t2) * (4 * b0),
        4: (a1**4 * 16 - a1 * a1 * t2 * 12 + t2 * t2) * b0,
    }
    return forms[n]


# -- second-order ODEs ---------------------------------------------------------------


@dataclass(frozen=True)
class OdeSpec:
    """p y'' + q y' + r y."""

    p: LaurentPoly
    q: LaurentPoly
    r: LaurentPoly
    label: str = ""

    def apply(self, y: LaurentPoly) -> LaurentPoly:
        d1 = y.derivative()
        return self.p * d1.derivative() + self.q * d1 + self.r * y


def ode_annihilates(spec: OdeSpec, y: LaurentPoly) -> LaurentPoly:
    """The exact residual; zero certifies that y solves the ODE."""
    return spec.apply(y)


def P1(beta=None) -> LaurentPoly:
    return LaurentPoly.monomial(1) * (T2 + 1) * p_poly(beta)


def Q_b(n: int, beta=None, form: str = "expanded") -> LaurentPoly:
    b = _beta(beta)
    t = lambda k: LaurentPoly.monomial(k)  # noqa: E731
    if form == "expanded":
        return -(
            t(6) * (2 * n - 3)
            + t(4) * (b * (-4 * n) + (2 * n - 5))
            + t(2) * (b * (4 - 4 * n) + (2 * n + 3))
            + (2 * n + 1)
        )
    return (T2 + 1) * p_poly(beta) * (-2 * (n - 1)) + t(6) + t(4) * (b * 4 + 3) - t(2) * 5 - 3


def R_b(n: int, beta=None) -> LaurentPoly:
    b = _beta(beta)
    t = lambda k: LaurentPoly.monomial(k)  # noqa: E731
    return (t(5) * 2 + t(3) * (b + (b + 1) * n + 5) + t(1) * (-b + (b + 1) * n + 1)) * (-2 * n)


def ode_for(family: str, n: int, beta=None) -> OdeSpec:
    """Radical-free ODE for the stored members of a family.

    u, v: the Chebyshev equations pulled back along q = (t^2-beta)/rho and
    multiplied by rho^3.  b: P^1, Q_n, R_n.  d: P^2, Q^2_n, R^2_n.
    """
    b = _beta(beta)
    t = lambda k: LaurentPoly.monomial(k)  # noqa: E731
    p = p_poly(beta)
    if family == "u":
        return OdeSpec(t(1) * p * -2, p * 2 - t(2) * (T2 - b) * 4, t(3) * (8 * n * n), f"u_{n}")
    if family == "v":
        return OdeSpec(t(1) * p * -2, p * 2 - t(2) * (T2 - b) * 12, t(3) * (8 * n * (n + 2)), f"v_{n}")
    if family == "b":
        return OdeSpec(P1(beta), Q_b(n, beta), R_b(n, beta), f"b_{n}")
    if family == "d":
        P2 = t(1) * (1 - T2) * p
        Q2 = (
            t(6) * (2 * n - 3)
            - t(4) * (b * (4 * n) + (2 * n - 5))
            + t(2) * (b * (4 * n - 4) + (2 * n + 3))
            - (2 * n + 1)
        )
        R2 = t(1) * (b - (b - 1) * n + T2 * (b + (b - 1) * n - 5) + t(4) * 2 + 1) * (2 * n)
        return OdeSpec(P2, Q2, R2, f"d_{n}")
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def printed_chebyshev_ode(kind: str, n: int, beta) -> OdeSpec:
    """-P q' y'' + (P q'' - c q q') y' + k q'^2 y as typeset (c = 1, 3), times rho^3.

    Needs a rational beta because the q q' and q'^2 terms keep one factor rho.
    """
    _, _, rho = djkm_radicals(beta)
    b = ParamFrac.coerce(beta)
    p = p_poly(b)
    t = LaurentPoly.monomial(1)
    c, k = (1, n * n) if kind == "u" else (3, n * (n + 2))
    return OdeSpec(t * p * -2, p * 2 - t * (T2 - b) * (2 * c * rho), T2 * (4 * k * rho), f"printed {kind}_{n}")


# -- the induction step for the b-family ---------------------------------------------


def rem(n: int, W: PolynomialFamily, beta=None) -> LaurentPoly:
    """Rem(t, n) times mu^(n+1) (2/nu), in terms of W_n, W_n', W_{n-1}."""
    b = _beta(beta)
    t = LaurentPoly.monomial(1)
    one_t2 = T2 + 1
    return (
        t * one_t2 * one_t2 * (T2 - b) * W[n] * (-8 * n)
        + one_t2 * one_t2 * p_poly(beta) * W[n].derivative() * 4
        + t * one_t2 * one_t2 * one_t2 * W[n - 1] * ((b - 1) * (8 * (n + 1)))
    )


def rem_three_term(n: int, W: PolynomialFamily, beta=None) -> LaurentPoly:
    """Rem(n+1) - 2 a_1 Rem(n) + t^2 Rem(n-1), radical-free."""
    b = _beta(beta)
    return rem(n + 1, W, beta) - (T2 - 1) * rem(n, W, beta) * 2 + T2 * rem(n - 1, W, beta) * ((b - 1) * 2)


# -- Sturm-Liouville form ----------------------------------------------------------


class JFrac:
    """num / den with num in Q(beta)[t^{+-1}][J]/(J^2 - p) and den in Q(beta)[t]."""

    __slots__ = ("num", "den")

    def __init__(self, num: RingElement, den: LaurentPoly):
        self.num = num
        self.den = LaurentPoly.coerce(den)

    def __mul__(self, other):
        if isinstance(other, JFrac):
            return JFrac(self.num * other.num, self.den * other.den)
        return JFrac(self.num * other, self.den)

    def __truediv__(self, other: LaurentPoly):
        return JFrac(self.num, self.den * other)

    def derivative(self) -> JFrac:
        p = self.num.curve.poly()
        f, g = self.num.f, self.num.g
        # (f + g J)' = (2p f' + (2p g' + g p') J) / (2p)
        top = RingElement(p * f.derivative() * 2, p * g.derivative() * 2 + g * p.derivative(), self.num.curve)
        num = top * self.den - self.num * self.den.derivative() * p * 2
        return JFrac(num, self.den * self.den * p * 2)

    def __eq__(self, other):
        return self.num * other.den == other.num * self.den


@dataclass(frozen=True)
class SturmLiouvilleVerdict:
    n: int
    exponent: int
    derivative_term: bool
    potential_term: bool

    @property
    def ok(self) -> bool:
        return self.derivative_term and self.potential_term


def sturm_liouville_check(n: int, exponent: int | None = None, beta=None) -> SturmLiouvilleVerdict:
    """d/dt(I y') + (J R_n / ((t^2+1)^2 t^(2n+2))) y == (I/P^1)(P^1 y'' + Q_n y' + R_n y).

    With I = J^3 / ((t^2+1) t^e) both sides share the y'' coefficient I, so the
    identity holds iff I' P^1 = I Q_n and the printed potential equals I R_n / P^1.
    """
    e = 2 * n + 1 if exponent is None else exponent
    c = j_curve(beta)
    p = p_poly(beta)
    J = RingElement(0, 1, c)
    den = (T2 + 1) * LaurentPoly.monomial(e)
    I = JFrac(J * J * J, den)  # noqa: E741
    P1_ = P1(beta)
    lhs_d = I.derivative() * P1_
    rhs_d = I * Q_b(n, beta)
    pot = JFrac(J * R_b(n, beta), (T2 + 1) * (T2 + 1) * LaurentPoly.monomial(2 * n + 2))
    rhs_pot = I * R_b(n, beta) / P1_
    return SturmLiouvilleVerdict(n, e, lhs_d == rhs_d, pot == rhs_pot)


# -- dumps ---------------------------------------------------------------------------


def family_dump(name: str, order: int, beta=None) -> list[dict]:
    if name in ("u", "v"):
        fam = dict(zip("uv", family_uv(order)))[name]
    elif name in ("a", "b"):
        fam = dict(zip("ab", family_ab(order)))[name]
    elif name in ("c", "d"):
        fam = dict(zip("cd", family_cd(order)))[name]
    else:
        raise ValueError(f"unknown family {name!r}")
    label = "symbolic"
    if beta is not None:
        fam = fam.specialize({"beta": ParamFrac.coerce(beta)})
        label = str(ParamFrac.coerce(beta))
    return fam.dump(label)


def generating_function_coefficients(kind: str, order: int, beta=None) -> list[LaurentPoly]:
    """Radical-free coefficients of (1 - q z)/(1 - 2qz + z^2) (kind 'u') or
    1/(1 - 2qz + z^2) (kind 'v') after z = rho w."""
    b = _beta(beta)
    den = [LaurentPoly.const(1), (T2 - b) * -2, LaurentPoly.const(b * b - 1)]
    num = [LaurentPoly.const(1), -(T2 - b)] if kind == "u" else [LaurentPoly.const(1)]
    return series_quotient(num, den, order)


__all__ = [
    "chebyshev",
    "compose",
    "family_uv",
    "family_ab",
    "family_cd",
    "family_cd_direct",
    "power_parts",
    "dual",
    "reconstruct",
    "ring_identity",
    "printed_b",
    "OdeSpec",
    "ode_for",
    "ode_annihilates",
    "printed_chebyshev_ode",
    "P1",
    "Q_b",
    "R_b",
    "rem",
    "rem_three_term",
    "sturm_liouville_check",
    "SturmLiouvilleVerdict",
    "family_dump",
    "generating_function_coefficients",
    "p_poly",
    "j_curve",
]
