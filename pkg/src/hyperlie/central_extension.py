"""The centre R/dR of the universal central extension and its 2-cocycle.

Classes are written over the basis {omega0, t^(l-1), ..., t^(l+n-2)} where
omega0 is the class of t^-1 * u.  Every relation comes from the exact element

    d(t^r u) = sum_i (r + i/2) b_i t^(r+i-1),

which is solved for its top power (r >= 0) or its bottom power (r <= -1).
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact_algebra import LaurentPoly, ParamFrac, double_factorial
from .hyperelliptic_ring import Curve, CurveError, RingElement

KINDS = ("tt", "tu", "uu")


def basis_label(k: int) -> str:
    if k == 0:
        return "1"
    if k == 1:
        return "t"
    return f"t^{k}"


class ClassVector:
    """omega0 * w0 + sum_k c_k * class(t^k) over the basis exponents of a curve."""

    __slots__ = ("omega0", "laurent", "basis")

    def __init__(self, omega0=0, laurent=None, basis: tuple[int, ...] = ()):
        self.omega0 = ParamFrac.coerce(omega0)
        clean = {}
        for k, c in (laurent or {}).items():
            c = ParamFrac.coerce(c)
            if not c.is_zero():
                if k not in basis:
                    raise ValueError(f"t^{k} is not a basis element {basis}")
                clean[k] = c
        self.laurent = clean
        self.basis = tuple(basis)

    @classmethod
    def zero(cls, basis) -> ClassVector:
        return cls(0, None, basis)

    @classmethod
    def unit(cls, k: int, basis) -> ClassVector:
        return cls(0, {k: 1}, basis)

    def coord(self, k) -> ParamFrac:
        if k == "omega0":
            return self.omega0
        return self.laurent.get(k, ParamFrac.zero())

    def labels(self) -> list[str]:
        return ["omega0"] + [basis_label(k) for k in self.basis]

    def coords(self) -> list[ParamFrac]:
        return [self.omega0] + [self.coord(k) for k in self.basis]

    def as_dict(self) -> dict[str, str]:
        return {lab: str(c) for lab, c in zip(self.labels(), self.coords())}

    def is_zero(self) -> bool:
        return self.omega0.is_zero() and not self.laurent

    def _check(self, other: ClassVector):
        if self.basis != other.basis:
            raise ValueError("class vectors over different bases")

    def __add__(self, other: ClassVector) -> ClassVector:
        self._check(other)
        lau = dict(self.laurent)
        for k, c in other.laurent.items():
            lau[k] = lau[k] + c if k in lau else c
        return ClassVector(self.omega0 + other.omega0, lau, self.basis)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> ClassVector:
        c = ParamFrac.coerce(c)
        return ClassVector(self.omega0 * c, {k: v * c for k, v in self.laurent.items()}, self.basis)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, ClassVector):
            return NotImplemented
        return self.basis == other.basis and (self - other).is_zero()

    def __hash__(self):
        return hash(str(self))

    def __str__(self):
        parts = [f"{lab}: {c}" for lab, c in zip(self.labels(), self.coords()) if not c.is_zero()]
        return "{" + ", ".join(parts) + "}" if parts else "0"

    def __repr__(self):
        return f"ClassVector({self})"


class ReductionTable:
    """Memoized class(t^k) for one curve; p holds k above the basis window, q below.

    ``p[k]`` and ``q[m]`` follow the two-sided naming of the forward and
    backward coefficients: class(t^k) = sum_i p[k][i] t^i for k >= l-1 and
    class(t^-m) = sum_i q[m][i] t^i for m >= 1 - (l-1).
    """

    def __init__(self, curve: Curve):
        self.curve = curve
        self.basis = curve.basis_exponents()
        self.lo, self.hi = self.basis[0], self.basis[-1]
        self._cls: dict[int, dict[int, ParamFrac]] = {k: {k: ParamFrac.one()} for k in self.basis}
        self._lock = threading.RLock()
        d, l = curve.degree, curve.l  # noqa: E741
        self._top = [(i, curve.b(i)) for i in range(l, d)]  # below-top terms of relation
        self._bot = [(i, curve.b(i)) for i in range(l + 1, d + 1)]
        self._bl_inv = curve.b(l).inverse()

    def _combine(self, terms) -> dict[int, ParamFrac]:
        out: dict[int, ParamFrac] = {}
        for c, k in terms:
            for i, v in self._cls[k].items():
                w = v * c
                out[i] = out[i] + w if i in out else w
        return {i: v for i, v in out.items() if not v.is_zero()}

    def _ensure(self, k: int):
        if k in self._cls:
            return
        with self._lock:
            d, l = self.curve.degree, self.curve.l  # noqa: E741
            if k > self.hi:
                for kk in range(self.hi + 1, k + 1):
                    if kk in self._cls:
                        continue
                    r = kk - d + 1
                    lead = Fraction(2 * r + d, 2)
                    terms = [(b * (-(Fraction(2 * r + i, 2)) / lead), r + i - 1) for i, b in self._top if not b.is_zero()]
                    self._cls[kk] = self._combine(terms)
            else:
                for kk in range(self.lo - 1, k - 1, -1):
                    if kk in self._cls:
                        continue
                    r = kk - l + 1
                    lead = Fraction(2 * r + l, 2)
                    terms = [
                        (b * self._bl_inv * (-(Fraction(2 * r + i, 2)) / lead), r + i - 1)
                        for i, b in self._bot
                        if not b.is_zero()
                    ]
                    self._cls[kk] = self._combine(terms)

    def reduce(self, k: int) -> ClassVector:
        self._ensure(k)
        return ClassVector(0, self._cls[k], self.basis)

    def p(self, k: int, i: int) -> ParamFrac:
        """Forward coefficient: coordinate of t^i in class(t^k), k >= l-1."""
        if k < self.lo:
            raise ValueError("p is defined for k at or above the basis window")
        return self.reduce(k).coord(i)

    def q(self, m: int, i: int) -> ParamFrac:
        """Backward coefficient: coordinate of t^i in class(t^-m)."""
        if -m > self.hi:
            raise ValueError("q is defined for exponents at or below the basis window")
        return self.reduce(-m).coord(i)


@lru_cache(maxsize=64)
def reduction_table(curve: Curve) -> ReductionTable:
    return ReductionTable(curve)


def reduce_power(k: int, curve: Curve) -> ClassVector:
    return reduction_table(curve).reduce(k)


@dataclass(frozen=True)
class ReductionWitness:
    """class(t^k) = t^k - sum_r mult[r] * d(t^r u), certified in the ring."""

    k: int
    multipliers: dict = field(default_factory=dict)
    result: ClassVector | None = None

    def verify(self, curve: Curve) -> bool:
        acc = LaurentPoly.monomial(self.k)
        for r, c in self.multipliers.items():
            acc = acc - RingElement(0, LaurentPoly.monomial(r), curve).delta().f * c
        rebuilt = LaurentPoly({k: c for k, c in self.result.laurent.items()})
        return acc == rebuilt


def _relation(r: int, curve: Curve) -> dict[int, ParamFrac]:
    out = {}
    for i in range(curve.l, curve.degree + 1):
        b = curve.b(i)
        if not b.is_zero():
            out[r + i - 1] = b * Fraction(2 * r + i, 2)
    return out


def reduce_power_linear(k: int, curve: Curve) -> ReductionWitness:
    """Reduce t^k by solving for the multipliers of the relations d(t^r u).

    The relations needed are r = 0..k-d+1 (above the window) or
    r = k-l+1..-1 (below).  Each non-basis exponent is cleared by the one
    relation whose extreme term sits there, so the triangular system is solved
    exponent by exponent; the returned multipliers are a checkable witness.
    """
    basis = curve.basis_exponents()
    d, l = curve.degree, curve.l  # noqa: E741
    if basis[0] <= k <= basis[-1]:
        return ReductionWitness(k, {}, ClassVector.unit(k, basis))
    if k > basis[-1]:
        rs = list(range(k - d + 1, -1, -1))  # from the relation reaching t^k downwards
        pivot_exp = {r: r + d - 1 for r in rs}
    else:
        rs = list(range(k - l + 1, 0))
        pivot_exp = {r: r + l - 1 for r in rs}
    rels = {r: _relation(r, curve) for r in rs}
    vec: dict[int, ParamFrac] = {k: ParamFrac.one()}
    mult: dict[int, ParamFrac] = {}
    for r in rs:
        e = pivot_exp[r]
        c = vec.get(e)
        if c is None or c.is_zero():
            continue
        m = c / rels[r][e]
        mult[r] = m
        for ee, v in rels[r].items():
            w = vec.get(ee, ParamFrac.zero()) - v * m
            if w.is_zero():
                vec.pop(ee, None)
            else:
                vec[ee] = w
    leftover = [e for e in vec if e not in basis]
    if leftover:
        raise CurveError(f"reduction of t^{k} left non-basis exponents {leftover}")
    return ReductionWitness(k, mult, ClassVector(0, vec, basis))


def class_of(x: RingElement, curve: Curve | None = None) -> ClassVector:
    """Projection R -> R/dR.  t^k u is exact for k != -1, so only g_{-1} survives."""
    curve = curve or x.curve
    table = reduction_table(curve)
    acc = ClassVector(x.g.coeff(-1), None, table.basis)
    for k, c in sorted(x.f.coeffs.items()):
        acc = acc + table.reduce(k) * c
    return acc


def psi(x: RingElement, y: RingElement, curve: Curve | None = None) -> ClassVector:
    """psi(x d, y d) = class(d(x) * d(d(y)))."""
    return class_of(x.delta() * y.delta().delta(), curve or x.curve)


def element(kind_part: str, r: int, curve: Curve) -> RingElement:
    """t^r (kind_part 't') or t^r u (kind_part 'u')."""
    if kind_part == "t":
        return RingElement.t_power(r, curve)
    if kind_part == "u":
        return RingElement(0, LaurentPoly.monomial(r), curve)
    raise ValueError(f"unknown element kind {kind_part!r}")


def psi_direct(kind: str, r: int, s: int, curve: Curve) -> ClassVector:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return psi(element(kind[0], r, curve), element(kind[1], s, curve), curve)


# -- closed forms -------------------------------------------------------------


def _delta(x: int) -> int:
    return 1 if x == 0 else 0


def _theta(x: int) -> int:
    """Heaviside step with Theta(0) = 1."""
    return 1 if x >= 0 else 0


def curve_form(curve: Curve) -> str:
    """'lemma' for t^2 - 2bt, 'legendre' for t^2 - 2bt + 1, else 'general'."""
    if curve.degree == 2 and curve.b(0).is_zero() and not curve.b(1).is_zero():
        return "lemma"
    if curve.degree == 2 and curve.b(0) == 1:
        return "legendre"
    return "general"


def legendre(k: int, b) -> ParamFrac:
    """Legendre p_k(b) from (k+1) p_{k+1} = (2k+1) b p_k - k p_{k-1}."""
    b = ParamFrac.coerce(b)
    if k < 0:
        raise ValueError("Legendre index must be nonnegative")
    prev, cur = ParamFrac.zero(), ParamFrac.one()
    for j in range(k):
        prev, cur = cur, (cur * b * (2 * j + 1) - prev * j) / (j + 1)
    return cur


def _lemma_factor(m: int) -> Fraction:
    """(2m-3)!!/(m+1)! with 1/(negative)! = 0."""
    if m + 1 < 0:
        return Fraction(0)
    return double_factorial(2 * m - 3) / math.factorial(m + 1)


def psi_closed(kind: str, r: int, s: int, curve: Curve, form: str = "auto", reading: str = "derived") -> ClassVector:
    """Closed-form cocycle values.

    ``form`` selects the general l=0 formulas, the two-dimensional case
    t^2 - 2bt ('lemma') or the Legendre case t^2 - 2bt + 1.  ``reading``
    switches between the internally consistent formulas ('derived') and the
    formulas exactly as typeset ('printed'), which differ in two places:
    the sign of the tt closed form and a factor in the tu sum.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if reading not in ("derived", "printed"):
        raise ValueError(f"unknown reading {reading!r}")
    if form == "auto":
        form = curve_form(curve)
    if form == "lemma":
        if curve_form(curve) != "lemma":
            raise CurveError("the two-dimensional formulas need P = t^2 - 2bt")
        return _psi_lemma(kind, r, s, curve, reading)
    if form == "legendre":
        if curve_form(curve) != "legendre":
            raise CurveError("the Legendre formulas need P = t^2 - 2bt + 1")
        return _psi_legendre(kind, r, s, curve)
    if form != "general":
        raise ValueError(f"unknown form {form!r}")
    if kind == "tu" and curve.l != 0:
        raise CurveError("the general cross-term formula needs l = 0")
    return _psi_general(kind, r, s, curve, reading)


def _psi_general(kind, r, s, curve: Curve, reading) -> ClassVector:
    table = reduction_table(curve)
    basis = table.basis
    d = curve.degree
    b = curve.b
    if kind == "tt":
        i = 2 - r - s
        if not 0 <= i <= d:
            return ClassVector.zero(basis)
        sign = (s - r) if reading == "derived" else (r - s)
        return ClassVector(b(i) * Fraction(r * s * sign, 2), None, basis)
    if kind == "uu":
        acc = ParamFrac.zero()
        for i in range(d + 1):
            j = 2 - r - s - i
            if 0 <= j <= d:
                w = Fraction(2 * r + i, 2) * Fraction(2 * r + 2 * i - 4 + j, 2) * (r + i - 1)
                if w:
                    acc = acc + b(i) * b(j) * w
        return ClassVector(acc, None, basis)
    # tu: Theta-split into the forward (p) and backward (q) reduction tables
    acc = ClassVector.zero(basis)
    for i in range(d + 1):
        for j in range(d + 1):
            bij = b(i) * b(j)
            if bij.is_zero():
                continue
            factor = (s + j - 1) if reading == "derived" else (r + s + j - 2)
            w = Fraction(2 * s + j, 2) * factor * r
            if not w:
                continue
            e = r + s + i + j - 3
            if _theta(r + s + i + j - 2):
                vec = ClassVector(0, {k: table.p(e, k) for k in basis}, basis)
            else:  # Theta(-(r+s+i+j-1)) = 1 exactly when e <= -2
                vec = ClassVector(0, {k: table.q(-e, k) for k in basis}, basis)
            acc = acc + vec * (bij * w)
    return acc


def _psi_lemma(kind, r, s, curve: Curve, reading: str = "derived") -> ClassVector:
    basis = curve.basis_exponents()
    b = curve.b(1) * Fraction(-1, 2)
    if kind == "tt":
        w = b * (-r * (r - 1) * (2 * r - 1) * _delta(r + s - 1)) + r**3 * _delta(r + s)
        return ClassVector(w, None, basis)
    if kind == "uu":
        w = (
            ParamFrac.coerce((r + 1) ** 3 * _delta(r + s + 2))
            - b * ((2 * r + 1) * (2 * r * r + 2 * r + 1) * _delta(r + s + 1))
            + b * b * ((4 * r * r - 1) * r * _delta(r + s))
        )
        return ClassVector(w, None, basis)
    m = r + s
    f = _lemma_factor(m)
    if not f:
        return ClassVector.zero(basis)
    if reading == "printed":
        poly = 3 * (r * (4 * s * s + 5 * s + 2) + 4 * s**3 + 10 * s * s + 9 * s + 3)
    else:
        # class(t^k) = b^k (2k-1)!!/k! 1 for k >= 0; collecting the three
        # exponents m-1, m, m+1 over the common factor b^(m+1) (2m-3)!!/(m+1)!
        poly = (
            2 * s * (2 * s + 1) * m * (m + 1)
            - (2 * m - 1) * (m + 1) * (4 * s * s + 5 * s + 2)
            + (s + 1) ** 2 * (4 * m * m - 1)
        )
    w = b ** (m + 1) * (r * poly * f)
    return ClassVector(0, {0: w}, basis)


def _psi_legendre(kind, r, s, curve: Curve) -> ClassVector:
    basis = curve.basis_exponents()  # (-1, 0)
    b = curve.b(1) * Fraction(-1, 2)
    one = ParamFrac.one()
    if kind == "tt":
        w = (
            one * (r**3 * _delta(r + s))
            - b * (r * (r - 1) * (2 * r - 1) * _delta(r + s - 1))
            + one * (r * (r - 1) * (r - 2) * _delta(r + s - 2))
        )
        return ClassVector(w, None, basis)
    if kind == "uu":
        w = (
            one * ((r + 1) ** 3 * _delta(r + s + 2))
            - b * ((2 * r + 1) * (2 * r * r + 2 * r + 1) * _delta(r + s + 1))
            + (b * b * (r * (4 * r * r - 1)) + 2 * r * (r * r + 1)) * _delta(r + s)
            - b * (2 * (r - 1) * r * (2 * r - 1) * _delta(r + s - 1))
            + one * (r * (r - 1) * (r - 2) * _delta(r + s - 2))
        )
        return ClassVector(w, None, basis)
    m = r + s
    # the five coefficients of t^(m-3) .. t^(m+1)
    five = [
        one * (r * (s * s - s)),
        b * (r * (s - 4 * s * s)),
        b * b * (r * (4 * s * s + 2 * s)) + r * (2 * s * s + s + 1),
        b * (-r * (4 * s * s + 5 * s + 2)),
        one * (r * (s + 1) ** 2),
    ]
    if m >= 3:
        w = sum((c * legendre(m - 3 + j, b) for j, c in enumerate(five)), ParamFrac.zero())
        return ClassVector(0, {0: w}, basis)
    if m <= -2:
        w = sum((c * legendre(-m + 2 - j, b) for j, c in enumerate(five)), ParamFrac.zero())
        return ClassVector(0, {-1: w}, basis)
    half = Fraction(1, 2)
    if m == 2:
        lo = one * (r * (r - 1) * (r - 2))
        hi = b * (b * b * (r * r - 3 * r + 1) - (3 * r * r - 9 * r + 5)) * (half * r)
    elif m == 1:
        lo = b * (-3 * (r - 1) ** 2 * r)
        hi = (b * b * (3 * r * r - 6 * r + 2) + (3 * r * r - 6 * r + 4)) * (half * r)
    elif m == 0:
        lo = (b * b * (3 * r * (r - 1)) + (3 * r * r - 3 * r + 2)) * (half * r)
        hi = b * (-r * (3 * r * r - 3 * r + 1))
    else:  # m == -1
        lo = b * (b * b * (r * r - 1) - (3 * r * r - 1)) * (half * r)
        hi = one * r**3
    return ClassVector(0, {-1: lo, 0: hi}, basis)


# -- the extended bracket -------------------------------------------------------


@dataclass(frozen=True)
class ExtElement:
    """f d + (central part) in Der R(P) + R/dR."""

    ring: RingElement
    center: ClassVector

    @classmethod
    def of(cls, x: RingElement) -> ExtElement:
        return cls(x, ClassVector.zero(x.curve.basis_exponents()))


def ring_bracket(x: RingElement, y: RingElement) -> RingElement:
    """[x d, y d] = (x d(y) - y d(x)) d."""
    return x * y.delta() - y * x.delta()


def bracket(x: ExtElement, y: ExtElement, curve: Curve | None = None) -> ExtElement:
    curve = curve or x.ring.curve
    return ExtElement(ring_bracket(x.ring, y.ring), psi(x.ring, y.ring, curve))


def cocycle_check(x: RingElement, y: RingElement, z: RingElement, curve: Curve | None = None) -> ClassVector:
    """psi([x,y], z) + psi([y,z], x) + psi([z,x], y); zero for a 2-cocycle."""
    curve = curve or x.curve
    return (
        psi(ring_bracket(x, y), z, curve)
        + psi(ring_bracket(y, z), x, curve)
        + psi(ring_bracket(z, x), y, curve)
    )


def cocycle_table(curve: Curve, kinds, r_range, s_range, method: str = "direct") -> dict:
    """JSON-ready grid of cocycle values."""
    entries = []
    basis = curve.basis_exponents()
    for kind in kinds:
        for r in r_range:
            for s in s_range:
                v = psi_direct(kind, r, s, curve) if method == "direct" else psi_closed(kind, r, s, curve)
                entries.append({"kind": kind, "r": r, "s": s, "coords": v.as_dict()})
    return {
        "curve": str(curve),
        "basis": ["omega0"] + [basis_label(k) for k in basis],
        "entries": entries,
    }


__all__ = [
    "ClassVector",
    "ReductionTable",
    "ReductionWitness",
    "ExtElement",
    "reduction_table",
    "reduce_power",
    "reduce_power_linear",
    "class_of",
    "psi",
    "psi_direct",
    "psi_closed",
    "legendre",
    "bracket",
    "ring_bracket",
    "cocycle_check",
    "cocycle_table",
    "curve_form",
    "basis_label",
]
