"""Polynomial units on the quartic P = t^4 - 2 beta t^2 + 1 and their ODEs.

The unit families are Chebyshev polynomials composed with a rational
function of t; each member satisfies a Pell identity and an explicit
second-order linear ODE.  Everything is kept radical-free.
"""
from fractions import Fraction

from hyperlie import unit_families as uf

print("-- first members of the b-family, symbolic beta --")
for row in uf.family_dump("b", 4, None):
    print(f"b_{row['n']} =", row["scaled"])

U, V = uf.family_uv(6)
A, W = uf.family_ab(6)
C, D = uf.family_cd(6)
members = {"u": (U, 0), "v": (V, 0), "b": (W, 0), "d": (D, 1)}  # d_n's equation annihilates the next stored member
print("\n-- second-order ODEs, symbolic beta --")
for n in range(1, 5):
    line = []
    for fam, (poly, shift) in members.items():
        ok = uf.ode_annihilates(uf.ode_for(fam, n), poly[n + shift]).is_zero()
        line.append(f"{fam}_{n}: {'holds' if ok else 'FAILS'}")
    print("   ".join(line))

beta = Fraction(17, 8)
print(f"\n-- Chebyshev identification at beta = {beta}: u_n = T_n(q) --")
for n in range(4):
    print(f"u_{n} =", uf.reconstruct(U, n, beta))

print("\n-- Sturm-Liouville form --")
for n in range(1, 4):
    v = uf.sturm_liouville_check(n)
    print(f"n = {n}: {'ok' if v.ok else 'FAILS'}")
