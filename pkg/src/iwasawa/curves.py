"""Elliptic curves over Q: invariants, group law, counting, torsion, twists.

Everything is exact: curve coefficients are arbitrary-precision integers
and points have Fraction coordinates.  The chord-tangent group law is
written generically so the same code runs over Q and over number fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .padics import is_prime, valuation


class SingularCurveError(ValueError):
    pass


class WeierstrassCurve:
    """Integral long Weierstrass model [a1, a2, a3, a4, a6]."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "b2", "b4", "b6", "b8",
                 "c4", "c6", "disc")

    def __init__(self, a1, a2, a3, a4, a6):
        for a in (a1, a2, a3, a4, a6):
            if not isinstance(a, int):
                raise TypeError("a-invariants must be integers")
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = (self.b2 * self.b6 - self.b4 ** 2) // 4
        self.c4 = self.b2 ** 2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        self.disc = (-self.b2 ** 2 * self.b8 - 8 * self.b4 ** 3
                     - 27 * self.b6 ** 2 + 9 * self.b2 * self.b4 * self.b6)
        if self.disc == 0:
            raise SingularCurveError(f"singular model {self.ainvs()}")
        assert self.c4 ** 3 - self.c6 ** 2 == 1728 * self.disc
        assert 4 * self.b8 == self.b2 * self.b6 - self.b4 ** 2

    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def j(self) -> Fraction:
        return Fraction(self.c4 ** 3, self.disc)

    def ord_j(self, ell):
        """ell-adic valuation of j; None means j = 0 (infinite valuation)."""
        if self.c4 == 0:
            return None
        return 3 * valuation(self.c4, ell) - valuation(self.disc, ell)

    def transform(self, u=1, r=0, s=0, t=0):
        """Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

        u may be a Fraction as long as the new model is integral.
        """
        a1, a2, a3, a4, a6 = self.ainvs()
        b1 = Fraction(a1 + 2 * s, 1) / u
        b2_ = Fraction(a2 - s * a1 + 3 * r - s * s, 1) / u ** 2
        b3 = Fraction(a3 + r * a1 + 2 * t, 1) / u ** 3
        b4_ = Fraction(a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t, 1) / u ** 4
        b6_ = Fraction(a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1, 1) / u ** 6
        new = []
        for x in (b1, b2_, b3, b4_, b6_):
            if x.denominator != 1:
                raise ValueError("transformation does not preserve integrality")
            new.append(x.numerator)
        return WeierstrassCurve(*new)

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.ainvs() == other.ainvs()

    def __hash__(self):
        return hash(self.ainvs())

    def __repr__(self):
        return f"WeierstrassCurve{self.ainvs()}"

    def short_model(self):
        """(A, B) with y^2 = x^3 + Ax + B isomorphic to this curve over Q."""
        return -27 * self.c4, -54 * self.c6

    def to_short_point(self, P):
        """Map a point to the y^2 = x^3 - 27 c4 x - 54 c6 model."""
        if P is None:
            return None
        x, y = P
        return (36 * x + 3 * self.b2, 108 * (2 * y + self.a1 * x + self.a3))

    def from_short_point(self, P):
        if P is None:
            return None
        X, Y = P
        x = Fraction(X - 3 * self.b2, 36)
        y = (Fraction(Y, 108) - self.a1 * x - self.a3) / 2
        return (x, y)


def curve_invariants(a1, a2, a3, a4, a6) -> WeierstrassCurve:
    """Build a curve and its derived quantities; rejects singular input."""
    return WeierstrassCurve(a1, a2, a3, a4, a6)


# -- generic chord-tangent group law -------------------------------------
# ainvs entries and point coordinates may live in any field (Fractions,
# number-field elements); the identity is None.


def on_curve(ainvs, P) -> bool:
    if P is None:
        return True
    a1, a2, a3, a4, a6 = ainvs
    x, y = P
    return y * y + a1 * x * y + a3 * y == ((x + a2) * x + a4) * x + a6


def ec_neg(ainvs, P):
    if P is None:
        return None
    a1, _, a3, _, _ = ainvs
    x, y = P
    return (x, -y - a1 * x - a3)


def ec_add(ainvs, P, Q):
    a1, a2, a3, a4, a6 = ainvs
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def ec_mul(ainvs, n, P):
    if n < 0:
        return ec_mul(ainvs, -n, ec_neg(ainvs, P))
    acc = None
    base = P
    while n:
        if n & 1:
            acc = ec_add(ainvs, acc, base)
        base = ec_add(ainvs, base, base)
        n >>= 1
    return acc


def point_arith(E: WeierstrassCurve, P, Q=None, n=None):
    """Add two points or compute a scalar multiple, with on-curve checks."""
    a = tuple(Fraction(v) for v in E.ainvs())
    P = _frac_point(P)
    if not on_curve(a, P):
        raise ValueError(f"{P} is not on {E}")
    if n is not None:
        return ec_mul(a, n, P)
    Q = _frac_point(Q)
    if not on_curve(a, Q):
        raise ValueError(f"{Q} is not on {E}")
    return ec_add(a, P, Q)


def _frac_point(P):
    if P is None:
        return None
    return (Fraction(P[0]), Fraction(P[1]))


def point_order(E: WeierstrassCurve, P, bound=16):
    """Exact order of P if <= bound, else None (infinite or large)."""
    a = tuple(Fraction(v) for v in E.ainvs())
    acc = _frac_point(P)
    for k in range(1, bound + 1):
        if acc is None:
            return k
        acc = ec_add(a, acc, _frac_point(P))
    return None


# -- point counting over F_p ---------------------------------------------

AP_COUNT_BOUND = 10 ** 5


def count_points(E: WeierstrassCurve, p: int) -> int:
    """|E~(F_p)| by direct enumeration (quadratic-character table for odd p)."""
    if p == 2:
        total = 1
        for x in range(2):
            for y in range(2):
                if (y * y + E.a1 * x * y + E.a3 * y
                        - (x ** 3 + E.a2 * x * x + E.a4 * x + E.a6)) % 2 == 0:
                    total += 1
        return total
    chi = bytearray(p)
    for t in range(1, (p + 1) // 2):
        chi[t * t % p] = 1
    b2, b4, b6 = E.b2 % p, E.b4 % p, E.b6 % p
    total = p + 1
    for x in range(p):
        # completing the square: z^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        g = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
        if g == 0:
            continue
        total += 1 if chi[g] else -1
    return total


def ap_count(E: WeierstrassCurve, p: int) -> int:
    """Trace of Frobenius a_p = p + 1 - |E~(F_p)| at a good prime."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > AP_COUNT_BOUND:
        raise ValueError(f"p = {p} exceeds the naive counting bound {AP_COUNT_BOUND}")
    from .tate import tate_local  # local import: tate needs curves
    loc = tate_local(E, p)
    if loc.kind != "good":
        raise ValueError(f"bad reduction at {p}")
    ap = loc.a_ell
    assert ap * ap < 4 * p, "Hasse bound violated"
    return ap


def classify_at_p(E: WeierstrassCurve, p: int):
    """(reduction, anomalous) at a good prime: supersingular iff a_p = 0 mod p,
    anomalous iff a_p = 1 mod p (equivalently p divides |E~(F_p)|)."""
    ap = ap_count(E, p)
    kind = "supersingular" if ap % p == 0 else "ordinary"
    return kind, ap % p == 1


# -- torsion --------------------------------------------------------------


@dataclass(frozen=True)
class TorsionGroup:
    invariants: tuple      # () for trivial, (n,), or (2, 2m)
    generators: tuple      # matching points (Fraction pairs)

    @property
    def order(self):
        o = 1
        for n in self.invariants:
            o *= n
        return o

    def describe(self):
        if not self.invariants:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.invariants)


def torsion(E: WeierstrassCurve) -> TorsionGroup:
    """Exact rational torsion via reduction bounds plus Lutz-Nagell search.

    The order divides gcd |E~(F_p)| over three good odd primes > 3 (torsion
    injects there), and every torsion point becomes integral with y = 0 or
    y^2 | disc on the scaled model Y^2 = X^3 - 27 c4 X - 54 c6.
    """
    bound = 0
    p, used = 5, 0
    while used < 3:
        if is_prime(p) and E.disc % p:
            bound = gcd(bound, count_points(E, p))
            used += 1
        p += 2
    if bound == 1:
        return TorsionGroup((), ())
    A, B = E.short_model()
    # disc of the scaled model is 6^12 * disc(E); factor the small part only
    fact = _factorize(abs(E.disc))
    fact[2] = fact.get(2, 0) + 12
    fact[3] = fact.get(3, 0) + 12
    pts = {None}
    for y in _square_divisors(fact):
        for x in _integer_cubic_roots(A, B - y * y):
            if y == 0 or (x * x * x + A * x + B) == y * y:
                for yy in ({0} if y == 0 else {y, -y}):
                    if x * x * x + A * x + B == yy * yy:
                        P = E.from_short_point((x, yy))
                        k = point_order(E, P, bound=12)
                        if k is not None and bound % k == 0:
                            pts.add((Fraction(P[0]), Fraction(P[1])))
    order = len(pts)
    exps = sorted(point_order(E, P, bound=12) for P in pts if P is not None)
    exponent = 1
    for k in exps:
        exponent = exponent * k // gcd(exponent, k)
    if order == 1:
        return TorsionGroup((), ())
    gen = next(P for P in pts if P is not None and point_order(E, P, 12) == exponent)
    if exponent == order:
        return TorsionGroup((order,), (gen,))
    assert order == 2 * exponent, "torsion outside the cyclic/2x2m shapes"
    a = tuple(Fraction(v) for v in E.ainvs())
    half = {ec_mul(a, k, gen) for k in range(exponent)}
    other = next(P for P in pts if P is not None and P not in half
                 and point_order(E, P, 12) == 2)
    return TorsionGroup((2, exponent), (other, gen))


def _factorize(n):
    fact = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fact[d] = fact.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fact[n] = fact.get(n, 0) + 1
    return fact


def _square_divisors(fact):
    """All y >= 0 with y^2 dividing the factored integer, plus y = 0."""
    base = [1]
    for q, e in fact.items():
        base = [b * q ** i for b in base for i in range(e // 2 + 1)]
    return sorted({0, 1, *base})


def _integer_cubic_roots(A, C):
    """Integer roots of x^3 + A x + C = 0 (float isolation, exact polish)."""
    roots = set()
    for approx in _real_cubic_roots(A, C):
        x = approx
        for _ in range(64):  # integer Newton with rounded steps
            f = x * x * x + A * x + C
            fp = 3 * x * x + A
            if f == 0 or fp == 0:
                break
            num, den = (-f, fp) if fp > 0 else (f, -fp)
            step = (2 * num + den) // (2 * den)
            if step == 0:
                break
            x += step
        for cand in (x - 1, x, x + 1):
            if cand * cand * cand + A * cand + C == 0:
                roots.add(cand)
    return roots


def _real_cubic_roots(A, C):
    """Nearest integers to the real roots of x^3 + Ax + C (float precision)."""
    import math
    p, q = float(A), float(C)
    out = []
    disc = -4 * p ** 3 - 27 * q * q
    if disc > 0:
        m = 2 * math.sqrt(-p / 3)
        for k in range(3):
            th = math.acos(max(-1.0, min(1.0, 3 * q / (p * m)))) / 3
            out.append(round(m * math.cos(th - 2 * math.pi * k / 3)))
    else:
        d = math.sqrt(max(q * q / 4 + p ** 3 / 27, 0.0))
        u = -q / 2 + d
        v = -q / 2 - d
        r = math.copysign(abs(u) ** (1 / 3), u) + math.copysign(abs(v) ** (1 / 3), v)
        out.append(round(r))
    return out


# -- twists ----------------------------------------------------------------


def quadratic_twist(E: WeierstrassCurve, d: int) -> WeierstrassCurve:
    """Twist by a squarefree nonzero integer: y^2 = x^3 + A d^2 x + B d^3."""
    if d == 0:
        raise ValueError("d must be nonzero")
    if any(d % (q * q) == 0 for q in range(2, isqrt(abs(d)) + 1)):
        raise ValueError(f"{d} is not squarefree")
    A, B = E.short_model()
    return WeierstrassCurve(0, 0, 0, A * d * d, B * d ** 3)
