"""Generating functions of the reduction coefficients.

For a curve with l = 0 and -1 <= i <= n-2,

    P_i(z) = sum_k p_{k-1,i} z^k      (forward:  2z Pbar P_i' + Q P_i = R_i)
    Q_i(z) = sum_k q_{k-n+2,i} z^k    (backward: 2z P Q_i' + Q Q_i = S_i)

where Pbar(z) = z^n P(1/z).  Each is solved by the coefficient recursion the
ODE encodes, and independently through the integrating factor with formal
term-wise integration of half-integer powers.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .central_extension import reduce_power
from .exact_algebra import AlgebraError, LaurentPoly, ParamFrac, TruncSeries, series_inv_sqrt
from .families import PolynomialFamily
from .hyperelliptic_ring import Curve, CurveError

DEFAULT_ORDER = 32
DIRECTIONS = ("forward", "backward")


@dataclass(frozen=True)
class OdeData:
    """2z A(z) G'(z) + Q(z) G(z) = rhs(z) with the initial window of G."""

    curve: Curve
    index: int
    direction: str
    A: LaurentPoly  # Pbar (forward) or P(z) (backward), as polynomials in z
    Q: LaurentPoly
    rhs: LaurentPoly
    window: tuple  # G_0 .. G_{n-1}

    @property
    def n(self) -> int:
        return self.curve.degree

    @property
    def singular(self) -> Fraction:
        """The index m at which the recursion's leading factor vanishes."""
        return Fraction(self.n, 2) if self.direction == "forward" else Fraction(self.n - 1)

    def describe(self) -> dict:
        return {
            "curve": str(self.curve),
            "i": self.index,
            "direction": self.direction,
            "A": self.A.to_string("z"),
            "Q": self.Q.to_string("z"),
            "rhs": self.rhs.to_string("z"),
        }


def _check_curve(curve: Curve, i: int):
    if curve.l != 0:
        raise CurveError("generating functions need l = 0 (b_0 != 0)")
    n = curve.degree
    if not -1 <= i <= n - 2:
        raise ValueError(f"index i={i} outside -1..{n - 2}")


def _window(curve: Curve, i: int, direction: str) -> tuple:
    n = curve.degree
    one, zero = ParamFrac.one(), ParamFrac.zero()
    if direction == "forward":  # G_m = p_{m-1,i} = delta_{m-1,i}
        return tuple(one if m - 1 == i else zero for m in range(n))
    # G_k = q_{k-n+2,i} = delta_{k-n+2,-i}
    return tuple(one if k - n + 2 == -i else zero for k in range(n))


def build_ode_data(curve: Curve, i: int, direction: str = "forward", rhs_range: str = "window") -> OdeData:
    """Assemble the first-order ODE for P_i or Q_i.

    The right-hand side only involves initial-window values.  With
    ``rhs_range='printed'`` the forward sum runs over the longer range
    -j <= l < n-1 (using reduced values of p beyond the window); the extra
    terms are themselves relations and cancel.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    _check_curve(curve, i)
    n = curve.degree
    b = curve.b
    win = _window(curve, i, direction)

    def g(m):
        if m < 0:
            return ParamFrac.zero()
        if m < n:
            return win[m]
        if direction == "forward":
            return reduce_power(m - 1, curve).coord(i)
        return reduce_power(n - 2 - m, curve).coord(i)

    rhs = {}
    if direction == "forward":
        A = LaurentPoly({e: b(n - e) for e in range(n + 1)})
        Q = LaurentPoly({e: b(n - e) * (e - n) for e in range(n + 1)})
        top = n - 1 if rhs_range == "printed" else 0
        for j in range(n + 1):
            for l in range(-j, top):  # noqa: E741
                c = b(j) * (2 * l + j) * g(l + j)
                if not c.is_zero():
                    rhs[n + l] = rhs.get(n + l, ParamFrac.zero()) + c
    else:
        A = LaurentPoly({e: b(e) for e in range(n + 1)})
        Q = LaurentPoly({e: b(e) * (e - 2 * (n - 1)) for e in range(n + 1)})
        for j in range(n + 1):
            for l in range(j - n + 2, 2):  # noqa: E741
                c = b(j) * (2 * l - (j + 2)) * g(l - j + n - 2)
                if not c.is_zero():
                    rhs[l + n - 2] = rhs.get(l + n - 2, ParamFrac.zero()) + c
    return OdeData(curve, i, direction, A, Q, LaurentPoly(rhs), win)


def _solve_recursion(data: OdeData, order: int) -> TruncSeries:
    """Read off the z^m coefficient of the ODE and solve for G_m.

    Forward: sum_e b_{n-e} (2m - e - n) G_{m-e} = R_m.
    Backward: sum_e b_e (2m - e - 2n + 2) G_{m-e} = S_m.
    At the singular index the window supplies G_m.
    """
    n = data.n
    A = data.A
    shift = n if data.direction == "forward" else 2 * n - 2
    a0 = A.coeff(0)
    a0_inv = a0.inverse()
    g: list[ParamFrac] = []
    for m in range(order + 1):
        lead = 2 * m - shift
        if lead == 0:
            g.append(data.window[m])
            continue
        acc = data.rhs.coeff(m)
        for e in range(1, min(m, n) + 1):
            ae = A.coeff(e)
            w = 2 * m - e - shift
            if not ae.is_zero() and w and not g[m - e].is_zero():
                acc = acc - ae * g[m - e] * w
        g.append(acc * a0_inv / lead)
    for m, w in enumerate(data.window[: order + 1]):
        if g[m] != w:
            raise AlgebraError(f"recursion disagrees with the initial window at z^{m}")
    return TruncSeries(g, order)


@dataclass(frozen=True)
class IntegratingFactorSolution:
    series: TruncSeries
    constant: ParamFrac


def _solve_integrating_factor(data: OdeData, order: int) -> IntegratingFactorSolution:
    n = data.n
    if data.A.coeff(0) != 1:
        raise AlgebraError("the integrating factor route needs A(0) = 1")
    h = series_inv_sqrt(TruncSeries.from_laurent(data.A, order), order)
    rhs = TruncSeries.from_laurent(data.rhs, order)
    if data.direction == "forward":
        pre, inner = Fraction(n, 2), -Fraction(n + 2, 2)
    else:
        pre, inner = Fraction(n - 1), -Fraction(n)
    integrand = (rhs * h * Fraction(1, 2)).times_power(inner)
    integral = integrand.integrate()
    base = (h * integral).times_power(pre)
    # the homogeneous solution C z^pre h(z): integral powers only if pre is
    m0 = data.singular
    if pre.denominator == 1 and int(pre) < len(data.window):
        known = base.coefficient(m0)
        constant = data.window[int(m0)] - known
    else:
        constant = ParamFrac.zero()
    total = base
    if not constant.is_zero():
        total = total + (h * constant).times_power(pre)
    coeffs = []
    for m in range(order + 1):
        try:
            coeffs.append(total.coefficient(m))
        except AlgebraError:
            break
    series = TruncSeries(coeffs, len(coeffs) - 1)
    for m, w in enumerate(data.window[: len(coeffs)]):
        if series.coeffs[m] != w:
            raise AlgebraError(
                f"integration constant {constant} does not reproduce the initial window at z^{m}"
            )
    return IntegratingFactorSolution(series, constant)


def genfun_solve(data: OdeData, order: int = DEFAULT_ORDER, method: str = "recursion") -> TruncSeries:
    if method == "recursion":
        return _solve_recursion(data, order)
    if method == "integrating_factor":
        return _solve_integrating_factor(data, order).series
    raise ValueError(f"unknown method {method!r}")


def integration_constant(data: OdeData, order: int = DEFAULT_ORDER) -> ParamFrac:
    return _solve_integrating_factor(data, order).constant


def ode_residual(data: OdeData, series: TruncSeries) -> list[ParamFrac]:
    """Coefficients of 2z A G' + Q G - rhs through the known order."""
    order = series.order
    A = TruncSeries.from_laurent(data.A, order)
    Q = TruncSeries.from_laurent(data.Q, order)
    lhs = (A * series.derivative().times_power(1)) * 2 + Q * series
    rhs = TruncSeries.from_laurent(data.rhs, order)
    diff = lhs - rhs
    return [diff.coefficient(m) for m in range(order + 1)]


def table_coefficients(curve: Curve, i: int, direction: str, order: int) -> list[ParamFrac]:
    """The same coefficients read from the reduction table (cross-module oracle)."""
    n = curve.degree
    if direction == "forward":
        return [reduce_power(k - 1, curve).coord(i) for k in range(order + 1)]
    return [reduce_power(n - 2 - k, curve).coord(i) for k in range(order + 1)]


# -- associated Legendre reindexing for t^(2r) - 2b t^r + 1 ----------------------


def legendre_curve(r: int, b: str = "b") -> Curve:
    return Curve.parse(f"t^{2 * r}-2*{b}*t^{r}+1")


def assoc_legendre_family(r: int, q: int, order: int, b: str = "b", backward: bool = False) -> tuple[PolynomialFamily, PolynomialFamily]:
    """Two solutions of (s+c+1) X_{s+1} - b(2s+2c+1) X_s + (s+c) X_{s-1} = 0, c = q/r.

    rho has rho_{-1} = 0, rho_0 = 1 and sigma has sigma_{-1} = 1, sigma_0 = 0, so
    class(t^((l+1)r+q-1)) = rho_l * t^(r+q-1) + sigma_l * t^(q-1)
    over the basis of t^(2r) - 2b t^r + 1.  With ``backward`` the recursion is
    also run to negative l, which covers the classes of negative powers.
    """
    if r < 1 or not 0 <= q < r:
        raise ValueError("need r >= 1 and 0 <= q < r")
    c = Fraction(q, r)
    bb = ParamFrac.var(b)

    def rec(s):
        # X_{s+1} = A X_s + B X_{s-1}
        return bb * ((2 * s + 2 * c + 1) / (s + c + 1)), ParamFrac.coerce(-(s + c) / (s + c + 1))

    fams = []
    for start in ((ParamFrac.zero(), ParamFrac.one()), (ParamFrac.one(), ParamFrac.zero())):
        ent = {-1: start[0], 0: start[1]}
        for s in range(0, order):
            a, bcoef = rec(s)
            ent[s + 1] = a * ent[s] + bcoef * ent[s - 1]
        if backward:
            for s in range(-1, -order - 1, -1):
                # X_{s-1} = (b(2s+2c+1) X_s - (s+c+1) X_{s+1}) / (s+c)
                ent[s - 1] = (bb * (2 * s + 2 * c + 1) * ent[s] - ent[s + 1] * (s + c + 1)) / (s + c)
        fams.append(ent)
    rho = PolynomialFamily(f"rho^{q}/{r}", fams[0], rec, description=f"associated Legendre, c={c}")
    sigma = PolynomialFamily(f"sigma^{q}/{r}", fams[1], rec, description=f"second solution, c={c}")
    return rho, sigma


def assoc_legendre_class(r: int, q: int, l: int, b: str = "b"):  # noqa: E741
    """(rho_l, sigma_l) as a class vector over the basis of t^(2r) - 2b t^r + 1."""
    rho, sigma = assoc_legendre_family(r, q, max(abs(l), 1), b, backward=l < -1)
    from .central_extension import ClassVector

    curve = legendre_curve(r, b)
    basis = curve.basis_exponents()
    lau = {}
    for k, v in ((r + q - 1, rho[l]), (q - 1, sigma[l])):
        lau[k] = lau.get(k, ParamFrac.zero()) + v
    return ClassVector(0, lau, basis)


# -- emission ----------------------------------------------------------------------


def series_rows(curve: Curve, i: int, direction: str, series: TruncSeries) -> list[dict]:
    return [
        {"curve": str(curve), "i": i, "direction": direction, "k": k, "coeff": str(c)}
        for k, c in enumerate(series.coeffs)
    ]


def emit(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["k"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


__all__ = [
    "OdeData",
    "build_ode_data",
    "genfun_solve",
    "integration_constant",
    "ode_residual",
    "table_coefficients",
    "assoc_legendre_family",
    "assoc_legendre_class",
    "legendre_curve",
    "series_rows",
    "emit",
]
