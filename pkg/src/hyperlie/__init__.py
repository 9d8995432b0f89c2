"""Exact algebra for the universal central extension of R(P) = C[t^{+-1}, u]/(u^2 - P(t)).

Submodules:

* :mod:`hyperlie.exact_algebra` -- rational functions in parameters, Laurent
  polynomials, truncated series, Bell polynomials.
* :mod:`hyperlie.hyperelliptic_ring` -- curves, ring elements, the derivation,
  norms and the units lambda_0, lambda_1, lambda_2.
* :mod:`hyperlie.central_extension` -- classes in R/dR, reduction tables and
  the cocycle psi with its closed forms.
* :mod:`hyperlie.genfun` -- generating functions of reduction coefficients.
* :mod:`hyperlie.unit_families` -- Chebyshev-type families, their ODEs.
* :mod:`hyperlie.verify` and :mod:`hyperlie.cli` -- acceptance suites and CLI.
"""
from .central_extension import (
    ClassVector,
    class_of,
    cocycle_check,
    psi,
    psi_closed,
    psi_direct,
    reduce_power,
)
from .exact_algebra import LaurentPoly, ParamFrac, ParamPoly, TruncSeries
from .genfun import build_ode_data, genfun_solve
from .hyperelliptic_ring import Curve, RingElement, apply_delta, norm
from .parsing import parse_laurent, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "ClassVector",
    "Curve",
    "LaurentPoly",
    "ParamFrac",
    "ParamPoly",
    "RingElement",
    "TruncSeries",
    "apply_delta",
    "build_ode_data",
    "class_of",
    "cocycle_check",
    "genfun_solve",
    "norm",
    "parse_laurent",
    "parse_scalar",
    "psi",
    "psi_closed",
    "psi_direct",
    "reduce_power",
]
