"""Growth of the p-power torsion in the layer quotients of Lambda/(f).

For a nonzero f in Z_p[[T]], the torsion of (Lambda/(f)) / theta_n with
theta_n = (1+T)^(p^n) - 1 has order p^(e_n), and e_n eventually follows
the exact law e_n = lambda*n + mu*p^n + nu.  This script watches that
stabilization happen for the three standard shapes: a distinguished
linear factor, the same with p-power content, and a layer polynomial.
"""

from iwasawa.lambda_algebra import LambdaElement, growth_fit, mu_lambda, quotient_order

for coeffs, blurb in [
    ([-3, 1], "f = T - 3: a single ramified-looking zero"),
    ([-9, 3], "f = 3(T - 3): the same zero plus p-power content"),
    ([3, 3, 1], "f = T^2 + 3T + 3: the first-layer polynomial itself"),
]:
    f = LambdaElement(3, coeffs, 30, 40)
    mu, lam = mu_lambda(f)
    print(f"\n{blurb}")
    print(f"  invariants: mu = {mu}, lambda = {lam}")
    for n in range(4):
        free, e = quotient_order(f, n)
        print(f"  n = {n}: free Z_3-rank {free}, torsion order 3^{e}")
    g = growth_fit(f, 3)
    print(f"  fitted law: e_n = {g.lam}*n + {g.mu}*3^n + {g.nu}  (valid from n = {g.n0};"
          f" stabilized free rank {g.lambda0})")
    print(f"  cross-check: lambda(f) - lambda0 = {lam - g.lambda0} = fitted lambda")
