"""Reducing powers of t modulo exact derivatives, then computing the cocycle.

On the cubic y^2 = t^3 + a t + 1 the de Rham-type quotient R/dR has the basis
omega0, t^-1, 1, t.  Every power t^k reduces to a combination of those, and
the two-cocycle psi(f, g) = class(df * d^2 g) is read off in that basis.
"""
from hyperlie import Curve, parse_laurent, psi_closed, psi_direct, reduce_power

cubic = Curve.from_laurent(parse_laurent("t^3+a*t+1"))
print("curve:", cubic)

print("\n-- classes of t^k --")
for k in range(-3, 6):
    print(f"t^{k:<3} ->", reduce_power(k, cubic))

print("\n-- psi on the generators t^(r+1) d/dt and t^(s) sqrt(P) d/dt --")
for kind in ("tt", "tu", "uu"):
    for r, s in [(1, 1), (2, -1), (-2, 3)]:
        direct = psi_direct(kind, r, s, cubic)
        closed = psi_closed(kind, r, s, cubic)
        agree = "agree" if direct == closed else "DISAGREE"
        print(f"{kind} ({r:>2},{s:>2}): {direct}   [closed form {agree}]")

legendre = Curve.from_laurent(parse_laurent("t^2-2*b*t+1"))
print("\nLegendre curve", legendre, ": psi_tt(2,-2) =", psi_direct("tt", 2, -2, legendre))
