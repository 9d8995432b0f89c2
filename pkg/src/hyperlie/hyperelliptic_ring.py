"""The ring R(P) = C[t, 1/t, u]/(u^2 - P(t)) and its derivation sqrt(P) d/dt."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .exact_algebra import AlgebraError, LaurentPoly, ParamFrac, ParamPoly


class CurveError(ValueError):
    pass


def _poly_gcd_q(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """gcd of dense rational polynomials (lowest degree first), monic."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= f * c
            trim(r)
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


@dataclass(frozen=True)
class Curve:
    """u^2 = scale * (t^d + c_{d-1} t^{d-1} + ... + c_0), with d = n + l.

    ``coeffs[i]`` is the coefficient of t^i of the monic part (the b_i of the
    Lie-algebra formulas when scale == 1).
    """

    coeffs: tuple
    scale: ParamFrac = ParamFrac.one()

    def __post_init__(self):
        cs = tuple(ParamFrac.coerce(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "scale", ParamFrac.coerce(self.scale))
        if not cs or cs[-1] != 1:
            raise CurveError("P(t) must be monic (normalization b_{n+l}=1)")
        if len(cs) < 2:
            raise CurveError("P(t) must have positive degree")
        if cs[0].is_zero() and cs[1].is_zero():
            raise CurveError("t^2 divides P(t); only l = 0 or 1 is supported")

    @classmethod
    def from_laurent(cls, p: LaurentPoly, scale=1) -> Curve:
        if p.is_zero() or p.min_exp() < 0:
            raise CurveError("P(t) must be a nonzero polynomial in t")
        d = p.max_exp()
        curve = cls(tuple(p.coeff(i) for i in range(d + 1)), ParamFrac.coerce(scale))
        curve.check_squarefree()
        return curve

    @classmethod
    def parse(cls, spec: str) -> Curve:
        from .parsing import parse_laurent

        return cls.from_laurent(parse_laurent(spec))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def l(self) -> int:  # noqa: E743
        return 0 if not self.coeffs[0].is_zero() else 1

    @property
    def n(self) -> int:
        return self.degree - self.l

    def b(self, i: int) -> ParamFrac:
        if 0 <= i <= self.degree:
            return self.coeffs[i]
        return ParamFrac.zero()

    def params(self) -> list[str]:
        vs = set()
        for c in self.coeffs + (self.scale,):
            vs |= set(c.variables())
        return sorted(vs)

    def monic(self) -> LaurentPoly:
        return LaurentPoly({i: c for i, c in enumerate(self.coeffs)})

    def poly(self) -> LaurentPoly:
        """P(t) including the scalar factor."""
        return self.monic() * self.scale

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def check_squarefree(self):
        """Distinct roots via gcd(P, P'); symbolic curves are not checked."""
        if not self.is_constant():
            return
        cs = [c.constant_value() for c in self.coeffs]
        ds = [i * c for i, c in enumerate(cs)][1:]
        if len(_poly_gcd_q(cs, ds)) > 1:
            raise CurveError(f"P(t) = {self.monic()} has a repeated root")

    def basis_exponents(self) -> tuple[int, ...]:
        """Exponents k whose classes of t^k, with omega0, span R/dR."""
        return tuple(range(self.l - 1, self.l + self.n - 1))

    def specialize(self, mapping: dict) -> Curve:
        return Curve(tuple(c.subs(mapping) for c in self.coeffs), self.scale.subs(mapping))

    def __str__(self):
        s = str(self.monic())
        if self.scale != 1:
            s = f"({s})*({self.scale})"
        return s


class RingElement:
    """f + g*u in R(P)."""

    __slots__ = ("f", "g", "curve")

    def __init__(self, f, g, curve: Curve):
        self.f = LaurentPoly.coerce(f)
        self.g = LaurentPoly.coerce(g)
        self.curve = curve

    @classmethod
    def t_power(cls, k: int, curve: Curve, c=1) -> RingElement:
        return cls(LaurentPoly.monomial(k, c), 0, curve)

    @classmethod
    def u(cls, curve: Curve) -> RingElement:
        return cls(0, 1, curve)

    def _same(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.curve != self.curve:
                raise CurveError("ring elements live on different curves")
            return other
        return RingElement(LaurentPoly.coerce(other), 0, self.curve)

    def __add__(self, other):
        other = self._same(other)
        return RingElement(self.f + other.f, self.g + other.g, self.curve)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(-self.f, -self.g, self.curve)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        P = self.curve.poly()
        f = self.f * other.f
        if not self.g.is_zero() and not other.g.is_zero():
            f = f + self.g * other.g * P
        g = self.f * other.g + self.g * other.f
        return RingElement(f, g, self.curve)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RingElement(1, 0, self.curve)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> RingElement:
        return RingElement(self.f, -self.g, self.curve)

    def norm(self) -> LaurentPoly:
        return self.f * self.f - self.g * self.g * self.curve.poly()

    def inverse(self) -> RingElement:
        nm = self.norm()
        if not nm.is_monomial():
            raise AlgebraError(f"{self} is not a unit (norm {nm})")
        ((k, c),) = nm.coeffs.items()
        inv = LaurentPoly({-k: c.inverse()})
        return RingElement(self.f * inv, -self.g * inv, self.curve)

    def delta(self) -> RingElement:
        """sqrt(P) d/dt applied to f + g u, i.e. (g'P + g P'/2) + f' u."""
        P = self.curve.poly()
        f = self.g.derivative() * P + self.g * P.derivative() * Fraction(1, 2)
        return RingElement(f, self.f.derivative(), self.curve)

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            if isinstance(other, (int, Fraction, ParamFrac, LaurentPoly)):
                other = RingElement(LaurentPoly.coerce(other), 0, self.curve)
            else:
                return NotImplemented
        return self.curve == other.curve and self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((str(self.f), str(self.g)))

    def __str__(self):
        return f"{self.f} | {self.g}"

    def __repr__(self):
        return f"RingElement({self})"


def ring_mul(x: RingElement, y: RingElement, c: Curve | None = None) -> RingElement:
    if c is not None and (x.curve != c or y.curve != c):
        raise CurveError("ring elements live on a different curve")
    return x * y


def conjugate(x: RingElement) -> RingElement:
    return x.conjugate()


def norm(x: RingElement) -> LaurentPoly:
    return x.norm()


def apply_delta(x: RingElement) -> RingElement:
    return x.delta()


class UnitVerdict(NamedTuple):
    is_unit: bool
    constant: ParamFrac | None = None
    exponent: int | None = None


def is_unit(x: RingElement) -> UnitVerdict:
    """x is a unit iff its norm is c * t^k with c a nonzero constant."""
    nm = x.norm()
    if not nm.is_monomial():
        return UnitVerdict(False)
    ((k, c),) = nm.coeffs.items()
    if c.variables():
        # a parameter-dependent scalar counts only if it is invertible in our atom set
        try:
            c.inverse()
        except AlgebraError:
            return UnitVerdict(False)
    return UnitVerdict(True, c, k)


# -- the quartic curve u^2 = (t^4 - 2 beta t^2 + 1)/(beta^2 - 1) -------------


def quartic(beta) -> LaurentPoly:
    beta = ParamFrac.coerce(beta)
    return LaurentPoly({4: 1, 2: beta * -2, 0: 1})


def djkm_curve(beta="beta") -> Curve:
    beta = ParamFrac.var("beta") if beta == "beta" else ParamFrac.coerce(beta)
    scale = (beta * beta - 1).inverse()
    return Curve(tuple(quartic(beta).coeff(i) for i in range(5)), scale)


def _sqrt_rational(x: Fraction):
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


class Radicals(NamedTuple):
    """mu = sqrt(2(beta-1)), nu = sqrt(2(beta+1)), rho = sqrt(beta^2-1) = mu*nu/2."""

    mu: Fraction
    nu: Fraction
    rho: Fraction


def djkm_radicals(beta) -> Radicals:
    b = ParamFrac.coerce(beta)
    if not b.is_constant():
        raise CurveError("radicals are only exact at rational beta")
    b = b.constant_value()
    if b in (1, -1):
        raise CurveError("beta must differ from +1 and -1")
    mu, nu = _sqrt_rational(2 * (b - 1)), _sqrt_rational(2 * (b + 1))
    if mu is None or nu is None:
        raise CurveError(f"beta={b} does not make 2(beta-1) and 2(beta+1) rational squares")
    return Radicals(mu, nu, mu * nu / 2)


class Generators(NamedTuple):
    lam0: RingElement
    lam1: RingElement
    lam2: RingElement


class ScaledGenerators(NamedTuple):
    """Radical-free numerators over u^2 = t^4 - 2 beta t^2 + 1.

    lam0 = num0/rho, lam1 = num1/nu, lam2 = num2/mu once u is rescaled by rho.
    """

    num0: RingElement
    num1: RingElement
    num2: RingElement
    divisors: tuple = ("rho", "nu", "mu")


def djkm_generators(beta="beta", scaled: bool = False):
    """lambda_0, lambda_1, lambda_2 on the quartic curve.

    At an admissible rational beta (e.g. 17/8) the generators are returned
    exactly.  Otherwise ``scaled=True`` gives the radical-free numerators.
    """
    if scaled:
        b = ParamFrac.var("beta") if beta == "beta" else ParamFrac.coerce(beta)
        c = Curve(tuple(quartic(b).coeff(i) for i in range(5)))
        t2 = LaurentPoly.monomial(2)
        return ScaledGenerators(
            RingElement(t2 - b, 1, c), RingElement(t2 + 1, 1, c), RingElement(t2 - 1, 1, c)
        )
    mu, nu, rho = djkm_radicals(beta)
    b = ParamFrac.coerce(beta)
    c = djkm_curve(b)
    t2 = LaurentPoly.monomial(2)
    lam0 = RingElement((t2 - b) * (1 / rho), 1, c)
    lam1 = RingElement((t2 + 1) * (1 / nu), mu / 2, c)
    lam2 = RingElement((t2 - 1) * (1 / mu), nu / 2, c)
    return Generators(lam0, lam1, lam2)


class UnitExponents(NamedTuple):
    constant: ParamFrac
    e_t: int
    e1: int
    e2: int


def build_unit(c0, e_t: int, e1: int, e2: int, gens: Generators) -> RingElement:
    curve = gens.lam1.curve
    x = RingElement.t_power(e_t, curve, c0)
    return x * gens.lam1**e1 * gens.lam2**e2


def recognize_unit(x: RingElement, bound: int = 4, beta=None) -> UnitExponents | None:
    """Write x = c0 t^e_t lam1^e1 lam2^e2 with |e1|, |e2| <= bound, or return None.

    The norm fixes c0^2 and e_t + e1 + e2; the remaining pair is searched in
    order of increasing |e1| + |e2|.  Candidates whose t-support width differs
    from that of x are skipped before the exact division.
    """
    curve = x.curve
    if beta is None:
        beta = _beta_of(curve)
    gens = djkm_generators(beta)
    if gens.lam0.curve != curve:
        raise CurveError("recognize_unit needs the quartic curve at the given beta")
    verdict = is_unit(x)
    if not verdict.is_unit or verdict.exponent % 2:
        return None
    half = verdict.exponent // 2

    def width(e: RingElement):
        parts = [p for p in (e.f, e.g) if not p.is_zero()]
        lo = min(p.min_exp() for p in parts)
        hi = max(p.max_exp() for p in parts)
        return hi - lo, [p.is_zero() for p in (e.f, e.g)]

    target = width(x)
    p1 = {e: gens.lam1**e for e in range(-bound, bound + 1)}
    p2 = {e: gens.lam2**e for e in range(-bound, bound + 1)}
    pairs = sorted(
        ((e1, e2) for e1 in range(-bound, bound + 1) for e2 in range(-bound, bound + 1)),
        key=lambda p: (abs(p[0]) + abs(p[1]), p),
    )
    for e1, e2 in pairs:
        cand = p1[e1] * p2[e2]
        if width(cand) != target:
            continue
        e_t = half - e1 - e2
        y = x * RingElement.t_power(-e_t, curve) * cand.inverse()
        if y.g.is_zero() and set(y.f.coeffs) == {0}:
            c0 = y.f.coeff(0)
            if c0.is_constant():
                return UnitExponents(c0, e_t, e1, e2)
    return None


def _beta_of(curve: Curve):
    if curve.degree != 4:
        raise CurveError("not the quartic curve")
    return curve.b(2) * Fraction(-1, 2)


__all__ = [
    "Curve",
    "CurveError",
    "RingElement",
    "ring_mul",
    "conjugate",
    "norm",
    "apply_delta",
    "is_unit",
    "UnitVerdict",
    "djkm_curve",
    "djkm_generators",
    "djkm_radicals",
    "recognize_unit",
    "build_unit",
    "quartic",
]

_ = ParamPoly
