"""Hypothesis strategies for the exact arithmetic tower."""
from fractions import Fraction

from hypothesis import strategies as st

from hyperlie.exact_algebra import LaurentPoly, ParamFrac, ParamPoly

small_rational = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

_monomial = st.tuples(st.integers(0, 2), st.integers(0, 2))


@st.composite
def param_polys(draw, max_terms=3):
    terms = draw(st.dictionaries(_monomial, small_rational, max_size=max_terms))
    a, b = ParamPoly.var("a"), ParamPoly.var("b")
    out = ParamPoly.const(0)
    for (i, j), c in terms.items():
        out = out + a**i * b**j * c
    return out


@st.composite
def param_fracs(draw):
    num = draw(param_polys())
    den = ParamFrac.one()
    for atom in draw(st.lists(st.sampled_from(["a", "b", "beta-1", "beta+1"]), max_size=2)):
        den = den * (ParamFrac.var("beta") - 1 if atom == "beta-1" else
                     ParamFrac.var("beta") + 1 if atom == "beta+1" else ParamFrac.var(atom))
    return ParamFrac.coerce(num) / den / draw(st.integers(1, 5))


@st.composite
def laurent_polys(draw, span=3, max_terms=3):
    coeffs = draw(st.dictionaries(st.integers(-span, span), param_fracs(), max_size=max_terms))
    return LaurentPoly(coeffs)
