"""Generating functions of the reduction coefficients.

The coefficients p_{k,i} in  t^k = sum_i p_{k,i} t^i  (mod dR) satisfy a
linear recursion in k; their generating function solves a first-order ODE.
Here it is solved two ways (coefficient recursion and integrating factor)
and compared with the coefficients read straight off the reduction table.
"""
from hyperlie import Curve, build_ode_data, genfun_solve, parse_laurent
from hyperlie.genfun import table_coefficients

cubic = Curve.from_laurent(parse_laurent("t^3+a*t+1"))
ORDER = 8

for index in (-1, 0, 1):
    for direction in ("forward", "backward"):
        data = build_ode_data(cubic, index, direction)
        rec = genfun_solve(data, ORDER, "recursion")
        ifac = genfun_solve(data, ORDER, "integrating_factor")
        table = table_coefficients(cubic, index, direction, ORDER)
        ok = list(rec.coeffs) == list(ifac.coeffs) == list(table)
        print(f"index {index:>2} {direction:<8}: {'ok ' if ok else 'BAD'}", ", ".join(map(str, rec.coeffs[:5])), "...")
