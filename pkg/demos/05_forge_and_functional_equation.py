"""Building curves to order, and the involution symmetry of characteristic series.

First: prescribe a_5 = 2, split multiplicative reduction with c_3 = 2,
and irreducible mod-7 torsion; glue local witnesses with the Chinese
Remainder Theorem and verify every clause.  Second: solve
iota(f) = w (1+T)^c f for the involution iota(T) = (1+T)^(-1) - 1,
the algebra form of the p-adic functional equation.
"""

import json

from iwasawa.forge import ForgeSpec, crt_assemble
from iwasawa.lambda_algebra import LambdaElement, associates_check, fe_solve, involution

spec = ForgeSpec.from_dict({"P": [[5, 2]], "L": [[3, 1, 2]], "Q": [7]})
result = crt_assemble(spec, seed=7)
print("spec:", json.dumps(spec.to_dict()))
print("curve:", result.curve.ainvs())
for clause, want, got, ok in result.ledger:
    print(f"  {clause:28s} want {want!r:28} got {got!r:28} {'ok' if ok else 'FAIL'}")

print("\nFunctional-equation solves:")
for p, coeffs in [(5, [0, 1]), (3, [3, 3, 1]), (2, [2, 1]), (3, [-3, 1])]:
    f = LambdaElement(p, coeffs, 30, 40)
    res = fe_solve(f)
    assoc = associates_check(f, involution(f))
    if res is None:
        print(f"  {f.to_text():28s} -> no solution (iota-associate: {assoc})")
    else:
        w, c = res
        cl = c.p ** max(c.v, 0) * c.u % c.p ** c.abs_prec if not c.is_zero else 0
        cl = cl - c.p ** c.abs_prec if cl > c.p ** c.abs_prec // 2 else cl
        print(f"  {f.to_text():28s} -> w = {w:+d}, c = {cl} (iota-associate: {assoc})")
