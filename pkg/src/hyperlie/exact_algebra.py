"""Exact arithmetic tower used everywhere else in the package.

``ParamPoly``  multivariate polynomial over Q in named parameters.
``ParamFrac``  ParamPoly over (positive integer) x (product of atom powers).
``LaurentPoly``  finite Laurent polynomial in t with ParamFrac coefficients.
``TruncSeries``  truncated series z^shift * sum c_k z^k, shift in (1/2)Z.

Denominators are restricted to a fixed atom set (parameter names plus
``beta-1`` and ``beta+1``), which is enough for every formula handled here and
avoids a general multivariate gcd.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Monomial = tuple  # tuple of (name, exponent) pairs, sorted by variable key


class AlgebraError(ValueError):
    pass


def _var_key(name: str):
    parts = re.split(r"(\d+)", name)
    return tuple(int(p) if p.isdigit() else p for p in parts if p != "")


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda ve: _var_key(ve[0])))


def _mono_div(m1: Monomial, m2: Monomial):
    """m1 / m2 if it is a monomial, else None."""
    d = dict(m1)
    for v, e in m2:
        if d.get(v, 0) < e:
            return None
        d[v] -= e
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda ve: _var_key(ve[0])))


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_sort_key(m: Monomial, variables: Sequence[str]):
    d = dict(m)
    return (_mono_deg(m), tuple(d.get(v, 0) for v in variables))


def _fmt_mono(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ParamPoly:
    """Polynomial in named parameters with rational coefficients (immutable)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> ParamPoly:
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> ParamPoly:
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, x) -> ParamPoly:
        if isinstance(x, ParamPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ParamPoly")

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self) -> list[str]:
        vs = {v for m in self.terms for v, _ in m}
        return sorted(vs, key=_var_key)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(_mono_deg(m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def sorted_terms(self, variables=None):
        variables = variables or self.variables()
        return sorted(self.terms.items(), key=lambda mc: _mono_sort_key(mc[0], variables), reverse=True)

    def leading(self, variables):
        return max(self.terms.items(), key=lambda mc: _mono_sort_key(mc[0], variables))

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = math.gcd(*nums)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        return Fraction(abs(g), lcm)

    # arithmetic
    def __add__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        res = dict(self.terms)
        for m, c in other.terms.items():
            res[m] = res.get(m, 0) + c
        return ParamPoly(res)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ParamPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParamPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        res: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                res[m] = res.get(m, 0) + c1 * c2
        return ParamPoly(res)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative power of ParamPoly")
        out = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def divexact(self, other: ParamPoly):
        """Exact quotient self/other, or None when other does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return ParamPoly()
        if other.is_constant():
            return self * (1 / other.constant_value())
        variables = sorted(set(self.variables()) | set(other.variables()), key=_var_key)
        lm_d, lc_d = other.leading(variables)
        rem = self
        quot: dict = {}
        while not rem.is_zero():
            lm_r, lc_r = rem.leading(variables)
            mq = _mono_div(lm_r, lm_d)
            if mq is None:
                return None
            cq = lc_r / lc_d
            quot[mq] = quot.get(mq, 0) + cq
            rem = rem - ParamPoly({mq: cq}) * other
        return ParamPoly(quot)

    def derivative(self, var: str) -> ParamPoly:
        res: dict = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if e == 0:
                continue
            d[var] = e - 1
            nm = tuple(sorted(((v, x) for v, x in d.items() if x), key=lambda ve: _var_key(ve[0])))
            res[nm] = res.get(nm, 0) + c * e
        return ParamPoly(res)

    def subs(self, mapping: dict) -> ParamPoly | ParamFrac:
        """Substitute variables by ParamPoly/ParamFrac/rational values."""
        if not any(v in mapping for v in self.variables()):
            return self
        frac = any(isinstance(x, ParamFrac) for x in mapping.values())
        zero = ParamFrac.zero() if frac else ParamPoly()
        total = zero
        cache: dict = {}
        for m, c in self.terms.items():
            term = ParamFrac.coerce(c) if frac else ParamPoly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        val = mapping[v]
                        if not frac:
                            val = ParamPoly.coerce(val)
                        cache[key] = val**e
                    term = term * cache[key]
                else:
                    term = term * (ParamFrac.var(v) ** e if frac else ParamPoly.var(v) ** e)
            total = total + term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if m == ():
                body = _fmt_rational(a)
            elif a == 1:
                body = _fmt_mono(m)
            else:
                body = f"{_fmt_rational(a)}*{_fmt_mono(m)}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"


# Denominator atoms that are not bare parameter names.
_SPECIAL_ATOMS = {
    "beta-1": lambda: ParamPoly.var("beta") - 1,
    "beta+1": lambda: ParamPoly.var("beta") + 1,
}


def atom_poly(key: str) -> ParamPoly:
    if key in _SPECIAL_ATOMS:
        return _SPECIAL_ATOMS[key]()
    return ParamPoly.var(key)


def _atom_key(key: str):
    if key in _SPECIAL_ATOMS:
        return (1, list(_SPECIAL_ATOMS).index(key))
    return (0, _var_key(key))


def _fmt_atom(key: str, e: int) -> str:
    base = f"({key})" if key in _SPECIAL_ATOMS else key
    return base if e == 1 else f"{base}^{e}"


class ParamFrac:
    """num / (den * prod atom^e) with num reduced against every atom.

    Normal form: num has coprime integer coefficients relative to ``den`` (the
    integer part of the denominator), ``den > 0``, and no atom divides num.
    """

    __slots__ = ("num", "den", "atoms", "_str")

    def __init__(self, num=0, den=1, atoms=None, _normalized=False):
        num = ParamPoly.coerce(num)
        atoms = dict(atoms or {})
        if den == 0:
            raise ZeroDivisionError("zero integer denominator")
        if not _normalized:
            num, den, atoms = self._normalize(num, den, atoms)
        self.num = num
        self.den = den
        self.atoms = tuple(sorted(((k, e) for k, e in atoms.items() if e), key=lambda ke: _atom_key(ke[0])))
        self._str = None

    @staticmethod
    def _normalize(num: ParamPoly, den, atoms: dict):
        den = Fraction(den)
        if num.is_zero():
            return ParamPoly(), 1, {}
        for key in list(atoms):
            e = atoms[key]
            if e < 0:
                num = num * atom_poly(key) ** (-e)
                atoms[key] = 0
                continue
            if e == 0:
                continue
            a = atom_poly(key)
            while e > 0:
                q = num.divexact(a)
                if q is None:
                    break
                num = q
                e -= 1
            atoms[key] = e
        # integer bookkeeping
        c = num.content()
        num = num * (1 / c)
        ratio = c / den  # value = ratio * num / atoms
        if ratio < 0:
            num = -num
            ratio = -ratio
        num = num * ratio.numerator
        return num, ratio.denominator, {k: e for k, e in atoms.items() if e}

    # constructors
    @classmethod
    def zero(cls) -> ParamFrac:
        return cls(ParamPoly(), 1, None, _normalized=True)

    @classmethod
    def one(cls) -> ParamFrac:
        return cls(ParamPoly.const(1), 1, None, _normalized=True)

    @classmethod
    def var(cls, name: str) -> ParamFrac:
        return cls(ParamPoly.var(name))

    @classmethod
    def coerce(cls, x) -> ParamFrac:
        if isinstance(x, ParamFrac):
            return x
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return cls(ParamPoly.const(x.numerator), x.denominator)
        if isinstance(x, ParamPoly):
            return cls(x)
        if isinstance(x, str):
            from .parsing import parse_scalar

            return parse_scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ParamFrac")

    # queries
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return not self.atoms and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError(f"{self} is not a rational constant")
        return self.num.constant_value() / self.den

    def is_polynomial(self) -> bool:
        return not self.atoms

    def as_poly(self) -> ParamPoly:
        if self.atoms:
            raise AlgebraError(f"{self} has a non-constant denominator")
        return self.num * Fraction(1, self.den)

    def variables(self) -> list[str]:
        vs = set(self.num.variables())
        for k, _ in self.atoms:
            vs |= set(atom_poly(k).variables())
        return sorted(vs, key=_var_key)

    def _denominator_poly(self) -> ParamPoly:
        d = ParamPoly.const(self.den)
        for k, e in self.atoms:
            d = d * atom_poly(k) ** e
        return d

    # arithmetic
    def __add__(self, other):
        try:
            other = ParamFrac.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a1, a2 = dict(self.atoms), dict(other.atoms)
        common = {k: max(a1.get(k, 0), a2.get(k, 0)) for k in set(a1) | set(a2)}
        n1 = self.num * other.den
        n2 = other.num * self.den
        for k, e in common.items():
            if e - a1.get(k, 0):
                n1 = n1 * atom_poly(k) ** (e - a1.get(k, 0))
            if e - a2.get(k, 0):
                n2 = n2 * atom_poly(k) ** (e - a2.get(k, 0))
        return ParamFrac(n1 + n2, self.den * other.den, common)

    __radd__ = __add__

    def __neg__(self):
        return ParamFrac(-self.num, self.den, dict(self.atoms), _normalized=True)

    def __sub__(self, other):
        try:
            other = ParamFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ParamFrac.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ParamFrac.zero()
            f = Fraction(other)
            return ParamFrac(self.num * f.numerator, self.den * f.denominator, dict(self.atoms))
        if isinstance(other, ParamPoly):
            other = ParamFrac(other)
        if not isinstance(other, ParamFrac):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ParamFrac.zero()
        atoms = dict(self.atoms)
        for k, e in other.atoms:
            atoms[k] = atoms.get(k, 0) + e
        return ParamFrac(self.num * other.num, self.den * other.den, atoms)

    __rmul__ = __mul__

    def inverse(self) -> ParamFrac:
        """1/self; the numerator must factor as a rational times atom powers."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num = self.num
        atoms_new: dict = {}
        for key in sorted(set(num.variables()) | set(_SPECIAL_ATOMS), key=_var_key):
            a = atom_poly(key)
            if key in _SPECIAL_ATOMS and "beta" not in num.variables():
                continue
            while not num.is_constant():
                q = num.divexact(a)
                if q is None:
                    break
                num = q
                atoms_new[key] = atoms_new.get(key, 0) + 1
        if not num.is_constant():
            raise AlgebraError(f"cannot divide by {self}: numerator is not a product of declared atoms")
        c = num.constant_value()
        new_num = ParamPoly.const(self.den)
        for k, e in self.atoms:
            new_num = new_num * atom_poly(k) ** e
        return ParamFrac(new_num, 1, atoms_new) * (1 / c)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        try:
            other = ParamFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ParamFrac.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ParamFrac.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = ParamFrac.coerce(other)
        if not isinstance(other, ParamFrac):
            return NotImplemented
        if self.atoms == other.atoms and self.den == other.den:
            return self.num == other.num
        return self.num * other._denominator_poly() == other.num * self._denominator_poly()

    def __hash__(self):
        return hash(str(self))

    def derivative(self, var: str) -> ParamFrac:
        if not self.atoms:
            return ParamFrac(self.num.derivative(var), self.den)
        # quotient rule against the atom product
        d = self._denominator_poly()
        num = self.num.derivative(var) * d - self.num * d.derivative(var)
        atoms = {k: 2 * e for k, e in self.atoms}
        return ParamFrac(num, self.den * self.den, atoms)

    def subs(self, mapping: dict) -> ParamFrac:
        mapping = {k: ParamFrac.coerce(v) for k, v in mapping.items()}
        num = ParamFrac.coerce(self.num.subs(mapping))
        den = ParamFrac.coerce(self._denominator_poly().subs(mapping))
        return num / den

    def __str__(self):
        if self._str is not None:
            return self._str
        if not self.atoms and len(self.num.terms) <= 1:
            if self.num.is_zero():
                s = "0"
            else:
                ((m, c),) = self.num.terms.items()
                c = c / self.den
                neg = c < 0
                a = -c if neg else c
                if m == ():
                    body = _fmt_rational(a)
                elif a == 1:
                    body = _fmt_mono(m)
                else:
                    body = f"{_fmt_rational(a)}*{_fmt_mono(m)}"
                s = ("-" if neg else "") + body
        else:
            ns = str(self.num)
            if self.den == 1 and not self.atoms:
                s = ns
            else:
                if len(self.num.terms) > 1:
                    ns = f"({ns})"
                dparts = ([str(self.den)] if self.den != 1 else []) + [_fmt_atom(k, e) for k, e in self.atoms]
                ds = dparts[0] if len(dparts) == 1 else "(" + "*".join(dparts) + ")"
                s = f"{ns}/{ds}"
        self._str = s
        return s

    def __repr__(self):
        return f"ParamFrac({str(self)!r})"


def to_frac(x) -> ParamFrac:
    return ParamFrac.coerce(x)


class LaurentPoly:
    """Finite Laurent polynomial in ``t`` with ParamFrac coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                c = ParamFrac.coerce(c)
                if not c.is_zero():
                    clean[int(k)] = c
        self.coeffs = clean

    @classmethod
    def monomial(cls, k: int, c=1) -> LaurentPoly:
        return cls({k: c})

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(ParamFrac.coerce(x))

    @classmethod
    def from_dense(cls, cs: Sequence, low: int = 0) -> LaurentPoly:
        return cls({low + i: c for i, c in enumerate(cs)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> ParamFrac:
        return self.coeffs.get(k, ParamFrac.zero())

    def min_exp(self) -> int:
        if not self.coeffs:
            raise AlgebraError("zero Laurent polynomial has no support")
        return min(self.coeffs)

    def max_exp(self) -> int:
        if not self.coeffs:
            raise AlgebraError("zero Laurent polynomial has no support")
        return max(self.coeffs)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def variables(self) -> list[str]:
        vs = set()
        for c in self.coeffs.values():
            vs |= set(c.variables())
        return sorted(vs, key=_var_key)

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        res = dict(self.coeffs)
        for k, c in other.coeffs.items():
            res[k] = res[k] + c if k in res else c
        return LaurentPoly(res)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamFrac, ParamPoly)):
            other = ParamFrac.coerce(other)
            return LaurentPoly({k: c * other for k, c in self.coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        res: dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                p = c1 * c2
                res[k] = res[k] + p if k in res else p
        return LaurentPoly(res)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ParamFrac.coerce(other)
        inv = other.inverse()
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise AlgebraError("negative power of a non-monomial Laurent polynomial")
            ((e, c),) = self.coeffs.items()
            return LaurentPoly({e * k: c**k})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def derivative(self) -> LaurentPoly:
        return LaurentPoly({k - 1: c * k for k, c in self.coeffs.items() if k != 0})

    def derivative_param(self, var: str) -> LaurentPoly:
        return LaurentPoly({k: c.derivative(var) for k, c in self.coeffs.items()})

    def subs(self, mapping: dict) -> LaurentPoly:
        return LaurentPoly({k: c.subs(mapping) for k, c in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamFrac, ParamPoly)):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)

    def __hash__(self):
        return hash(str(self))

    def __str__(self):
        return self.to_string()

    def to_string(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        out = []
        for i, k in enumerate(sorted(self.coeffs, reverse=True)):
            c = self.coeffs[k]
            cs = str(c)
            tpart = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not tpart:
                body = cs
            elif cs == "1":
                body = tpart
            elif cs == "-1":
                body = "-" + tpart
            elif len(c.num.terms) > 1 and not c.atoms and c.den == 1:
                body = f"({cs})*{tpart}"
            else:
                body = f"{cs}*{tpart}"
            if i == 0:
                out.append(body)
            elif body.startswith("-"):
                out.append(" - " + body[1:])
            else:
                out.append(" + " + body)
        return "".join(out)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


class TruncSeries:
    """z^shift * sum_{k=0}^{order} coeffs[k] z^k, known up to z^(shift+order)."""

    __slots__ = ("coeffs", "order", "shift")

    def __init__(self, coeffs: Sequence, order: int | None = None, shift=0):
        if order is None:
            order = len(coeffs) - 1
        cs = [ParamFrac.coerce(c) for c in list(coeffs)[: order + 1]]
        cs += [ParamFrac.zero()] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order
        self.shift = Fraction(shift)
        if self.shift.denominator not in (1, 2):
            raise AlgebraError("series shift must lie in (1/2)Z")

    @classmethod
    def from_laurent(cls, p: LaurentPoly, order: int) -> TruncSeries:
        if p.is_zero():
            return cls([], order)
        lo = min(p.min_exp(), 0)
        return cls([p.coeff(lo + k) for k in range(order + 1)], order, lo)

    def coefficient(self, e) -> ParamFrac:
        k = Fraction(e) - self.shift
        if k.denominator != 1 or k < 0 or k > self.order:
            if k.denominator == 1 and k > self.order:
                raise AlgebraError(f"z^{e} beyond truncation order")
            return ParamFrac.zero()
        return self.coeffs[int(k)]

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected TruncSeries")

    def __add__(self, other):
        self._check(other)
        d = other.shift - self.shift
        if d.denominator != 1:
            raise AlgebraError("cannot add series with shifts differing by a half-integer")
        lo = min(self.shift, other.shift)
        top = min(self.shift + self.order, other.shift + other.order)
        n = int(top - lo)
        cs = []
        for k in range(n + 1):
            e = lo + k
            c = ParamFrac.zero()
            for s in (self, other):
                j = e - s.shift
                if 0 <= j <= s.order:
                    c = c + s.coeffs[int(j)]
            cs.append(c)
        return TruncSeries(cs, n, lo)

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order, self.shift)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamFrac)):
            return TruncSeries([c * other for c in self.coeffs], self.order, self.shift)
        self._check(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        cs = []
        for k in range(n + 1):
            acc = ParamFrac.zero()
            for j in range(k + 1):
                if not a[j].is_zero() and not b[k - j].is_zero():
                    acc = acc + a[j] * b[k - j]
            cs.append(acc)
        return TruncSeries(cs, n, self.shift + other.shift)

    __rmul__ = __mul__

    def times_power(self, e) -> TruncSeries:
        """Multiply by z^e (e in (1/2)Z)."""
        return TruncSeries(self.coeffs, self.order, self.shift + Fraction(e))

    def derivative(self) -> TruncSeries:
        cs = [c * (self.shift + k) for k, c in enumerate(self.coeffs)]
        return TruncSeries(cs, self.order, self.shift - 1)

    def integrate(self) -> TruncSeries:
        """Term-wise antiderivative without constant; a z^-1 term is an error."""
        cs = []
        for k, c in enumerate(self.coeffs):
            e = self.shift + k + 1
            if e == 0:
                if not c.is_zero():
                    raise AlgebraError("formal integration met a nonzero z^-1 term (logarithm)")
                cs.append(ParamFrac.zero())
            else:
                cs.append(c / e)
        return TruncSeries(cs, self.order, self.shift + 1)

    def normalized(self) -> TruncSeries:
        """Drop leading zero coefficients into the shift (keeps the known range)."""
        k = 0
        while k < self.order and self.coeffs[k].is_zero():
            k += 1
        return TruncSeries(self.coeffs[k:], self.order - k, self.shift + k)

    def as_power_series(self, order: int | None = None) -> list[ParamFrac]:
        """Coefficients of z^0..z^order; requires integral shift and no negative powers."""
        if self.shift.denominator != 1:
            if all(c.is_zero() for c in self.coeffs):
                return [ParamFrac.zero()] * ((order or 0) + 1)
            raise AlgebraError("series has half-integer exponents")
        top = int(self.shift) + self.order
        order = top if order is None else order
        if order > top:
            raise AlgebraError("requested order beyond truncation")
        for k, c in enumerate(self.coeffs):
            if self.shift + k < 0 and not c.is_zero():
                raise AlgebraError("series has negative powers")
        return [self.coefficient(e) for e in range(order + 1)]

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        lo = min(self.shift, other.shift)
        top = min(self.shift + self.order, other.shift + other.order)
        if (other.shift - self.shift).denominator != 1:
            return all(c.is_zero() for c in self.coeffs) and all(c.is_zero() for c in other.coeffs)
        e = lo
        while e <= top:
            if self.coefficient(e) != other.coefficient(e):
                return False
            e += 1
        return True

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            e = self.shift + k
            es = str(e) if e.denominator == 1 else f"({e})"
            parts.append(f"({c})*z^{es}")
        body = " + ".join(parts) if parts else "0"
        top = self.shift + self.order + 1
        return f"{body} + O(z^{top})"

    def __repr__(self):
        return f"TruncSeries({self})"


def poly_arith(x, y=None, op: str = "add"):
    """Uniform entry point over the arithmetic tower (add, mul, derivatives)."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "derivative_t":
        if isinstance(x, LaurentPoly):
            return x.derivative()
        if isinstance(x, ParamPoly):
            return x.derivative(y or "t")
        raise AlgebraError("derivative_t applies to LaurentPoly or ParamPoly")
    if op == "derivative_z":
        if not isinstance(x, TruncSeries):
            raise AlgebraError("derivative_z applies to TruncSeries only")
        return x.derivative()
    raise AlgebraError(f"unknown op {op!r}")


# -- combinatorics ----------------------------------------------------------


def _compositions_with_weight(m: int, k: int, parts: int):
    """All (l_1..l_parts) with sum l_j = k and sum j*l_j = m."""

    def rec(j, remaining_k, remaining_m, acc):
        if j > parts:
            if remaining_k == 0 and remaining_m == 0:
                yield tuple(acc)
            return
        for lj in range(min(remaining_k, remaining_m // j) + 1):
            acc.append(lj)
            yield from rec(j + 1, remaining_k - lj, remaining_m - j * lj, acc)
            acc.pop()

    yield from rec(1, k, m, [])


def bell_polynomial(m: int, k: int, z: Sequence):
    """Partial Bell polynomial B_{m,k}(z_1, ..., z_{m-k+1}).

    Evaluated from the defining sum over (l_1, l_2, ...) with sum l_j = k and
    sum j*l_j = m.  ``z`` may hold ParamPoly, ParamFrac or rationals.
    """
    if k < 0 or m < 0 or k > m:
        raise AlgebraError(f"need 0 <= k <= m, got m={m}, k={k}")
    if m == 0:
        return _one_like(z)
    if k == 0:
        return _zero_like(z)
    parts = m - k + 1
    if len(z) < parts:
        raise AlgebraError(f"B_{{{m},{k}}} needs {parts} arguments, got {len(z)}")
    total = _zero_like(z)
    for ls in _compositions_with_weight(m, k, parts):
        coef = math.factorial(m)
        for j, lj in enumerate(ls, start=1):
            coef //= math.factorial(lj) * math.factorial(j) ** lj
        term = _one_like(z) * coef
        for j, lj in enumerate(ls, start=1):
            if lj:
                term = term * z[j - 1] ** lj
        total = total + term
    return total


def bell_table(m_max: int, z: Sequence) -> list[list]:
    """All B_{m,k}(z), 0 <= k <= m <= m_max, by B_{m,k} = sum_i C(m-1, i-1) z_i B_{m-i,k-1}."""
    one, zero = _one_like(z), _zero_like(z)
    table = [[one]]
    for m in range(1, m_max + 1):
        row = [zero]
        for k in range(1, m + 1):
            acc = zero
            for i in range(1, m - k + 2):
                zi = z[i - 1]
                if zi == 0:
                    continue
                prev = table[m - i][k - 1]
                if prev == 0:
                    continue
                acc = acc + prev * zi * math.comb(m - 1, i - 1)
            row.append(acc)
        table.append(row)
    return table


def _one_like(z):
    if z and isinstance(z[0], ParamFrac):
        return ParamFrac.one()
    if z and isinstance(z[0], (int, Fraction)):
        return Fraction(1)
    return ParamPoly.const(1)


def _zero_like(z):
    return _one_like(z) * 0


def double_factorial(n: int) -> Fraction:
    """n!! with step 2, extended to negative odd n via (n)!! = (n+2)!!/(n+2)."""
    if n >= 0:
        out = 1
        while n > 1:
            out *= n
            n -= 2
        return Fraction(out)
    if n % 2 == 0:
        raise AlgebraError("double factorial undefined at negative even integers")
    out = Fraction(1)
    k = -1
    while k > n:
        out /= k
        k -= 2
    return out


def h_coefficients(curve, order: int) -> list:
    """h_0..h_order with 1/sqrt(Pbar(z)) = sum h_k z^k, Pbar(z) = sum_j b_j z^(n-j).

    Uses the Faa di Bruno / Bell-polynomial expansion; ``curve`` is anything
    exposing ``b(i)`` and ``degree`` with a monic top coefficient.
    """
    n = curve.degree
    if curve.b(n) != 1:
        raise AlgebraError("h_coefficients needs a monic polynomial (b_n = 1)")
    # z_j = d^j Pbar/dz^j at 0 = j! b_{n-j}
    zs = [curve.b(n - j) * math.factorial(j) if n - j >= 0 else ParamFrac.zero() for j in range(1, order + 2)]
    bell = bell_table(order, zs)
    out = []
    for k in range(order + 1):
        acc = ParamFrac.zero()
        for l in range(k + 1):  # noqa: E741
            w = Fraction((-1) ** l) * double_factorial(2 * l - 1) / 2**l
            acc = acc + bell[k][l] * w
        out.append(acc / math.factorial(k))
    return out


def series_inv_sqrt(p: TruncSeries, order: int | None = None) -> TruncSeries:
    """s with s^2 * p = 1 + O(z^(order+1)); p must have shift 0 and a square constant term."""
    order = p.order if order is None else order
    if p.shift != 0:
        raise AlgebraError("series_inv_sqrt needs an unshifted series")
    if order > p.order:
        p = TruncSeries(p.coeffs, order, 0)
    c0 = p.coeffs[0]
    if c0.is_zero():
        raise AlgebraError("series_inv_sqrt: zero constant term (normalize the shift first)")
    if c0 == 1:
        s0 = ParamFrac.one()
        inv_c0 = ParamFrac.one()
    else:
        s0 = _rational_sqrt(c0).inverse()
        inv_c0 = c0.inverse()
    # f = p^alpha, alpha = -1/2:  k c0 f_k = sum_{j=1}^k ((alpha+1) j - k) p_j f_{k-j}
    alpha1 = Fraction(1, 2)
    s = [s0]
    for k in range(1, order + 1):
        acc = ParamFrac.zero()
        for j in range(1, k + 1):
            pj = p.coeffs[j]
            if pj.is_zero():
                continue
            w = alpha1 * j - k
            if w:
                acc = acc + pj * s[k - j] * w
        s.append(acc * inv_c0 / k)
    return TruncSeries(s, order, 0)


def _rational_sqrt(c: ParamFrac) -> ParamFrac:
    v = c.constant_value() if c.is_constant() else None
    if v is None or v < 0:
        raise AlgebraError(f"constant term {c} is not a rational square")
    n, d = math.isqrt(v.numerator), math.isqrt(v.denominator)
    if n * n != v.numerator or d * d != v.denominator:
        raise AlgebraError(f"constant term {c} is not a rational square")
    return ParamFrac.coerce(Fraction(n, d))


def series_quotient(num: Sequence, den: Sequence, order: int) -> list:
    """Coefficients of num/den to z^order for coefficient rings with den[0] == 1."""
    num = list(num) + [num[0] * 0] * (order + 1)
    out = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc)
    return out


__all__ = [
    "AlgebraError",
    "ParamPoly",
    "ParamFrac",
    "LaurentPoly",
    "TruncSeries",
    "poly_arith",
    "bell_polynomial",
    "bell_table",
    "double_factorial",
    "series_inv_sqrt",
    "h_coefficients",
    "series_quotient",
    "to_frac",
    "atom_poly",
]
