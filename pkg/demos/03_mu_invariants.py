"""mu-invariant bounds from 2-torsion geometry.

A rational 2-torsion point is classified by two computable flags:
"ramified at 2" (it lies in the kernel of reduction on the 2-minimal
model) and "odd" (it spans the minus part of the real points: the point
of smallest x, automatic when the discriminant is negative).  Both flags
together push mu up; exactly one of them certifies mu = 0.
"""

from iwasawa.curves import WeierstrassCurve
from iwasawa.mu import (
    KernelClass,
    classify_two_torsion,
    kramer_m1,
    mu_lower_bound,
    mu_zero_certificate,
    _rational_two_torsion_points,
)

print("The three 2-torsion points of the conductor-15 curve"
      " y^2 + xy + y = x^3 + x^2 - 5x + 2:")
E15 = WeierstrassCurve(1, 1, 1, -5, 2)
for P in _rational_two_torsion_points(E15):
    ram, odd = classify_two_torsion(E15, P)
    verdict = mu_zero_certificate(E15, 2, KernelClass(2, ram, odd, "computed"))
    print(f"  P = ({P[0]}, {P[1]}): ramified = {ram}, odd = {odd};"
          f" mu = 0 certified: {verdict.zero_certified}")

print("\nThe conductor-195 curve y^2 + xy = x^3 - 115x + 392 instead has a"
      " 2-torsion point")
print("with BOTH flags set, which gives a positive lower bound:")
E195 = WeierstrassCurve(1, 0, 0, -115, 392)
for P in _rational_two_torsion_points(E195):
    print(f"  P = ({P[0]}, {P[1]}): {classify_two_torsion(E195, P)}")
v = mu_lower_bound("195a2", 2, [], curves={"195a2": E195})
print(f"  mu lower bound: {v.lower_bound}")

print("\nAn explicit two-parameter family always produces a ramified+odd point:")
print("y^2 + xy = x^3 - a x^2 - 4b x + (4a-1)b with kernel ((4a-1)/4, (1-4a)/8)")
for a, b in [(-2, 1), (-1, -3), (2, -5)]:
    E, P = kramer_m1(a, b)
    print(f"  (a, b) = ({a}, {b}): model {E.ainvs()}, disc = {E.disc},"
          f" classified {classify_two_torsion(E, P)}")
