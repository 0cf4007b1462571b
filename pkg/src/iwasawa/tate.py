"""Local reduction data at a prime: Tate's algorithm, and Tate periods.

tate_local runs the full algorithm (with ell-minimalization) and reports
the reduction kind, Kodaira symbol, Tamagawa number, conductor exponent
and the transformation to the ell-minimal model.  tate_period inverts
j(q) = 1/q + 744 + 196884 q + ... at a multiplicative prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import WeierstrassCurve
from .padics import PadicNumber, is_prime, valuation


@dataclass(frozen=True)
class LocalData:
    prime: int
    kind: str                 # good | multiplicative_split | multiplicative_nonsplit | additive
    tamagawa: int
    kodaira: str
    ord_disc_min: int
    ord_j: int | None         # None when j = 0
    conductor_exponent: int
    a_ell: int | None = None  # good reduction only
    ordinary: bool | None = None
    supersingular: bool | None = None
    anomalous: bool | None = None
    minimal_ainvs: tuple = ()
    # x = u^2 x' + r, y = u^3 y' + s u^2 x' + t maps minimal coords to input coords
    u: int = 1
    r: int = 0
    s: int = 0
    t: int = 0

    def map_point(self, P):
        """Send a point on the input model to the ell-minimal model."""
        if P is None:
            return None
        x, y = Fraction(P[0]), Fraction(P[1])
        xm = (x - self.r) / self.u ** 2
        ym = (y - self.t - self.s * (x - self.r)) / self.u ** 3
        return (xm, ym)


def _v(x, ell):
    """Valuation with 0 treated as +infinity (for divisibility tests)."""
    return 10 ** 9 if x == 0 else valuation(x, ell)


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_square_in_Qell(x: Fraction, ell: int) -> bool:
    """Whether a nonzero rational is a square in Q_ell."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    vn = valuation(x.numerator, ell)
    vd = valuation(x.denominator, ell)
    if (vn - vd) % 2:
        return False
    num = x.numerator // ell ** vn
    den = x.denominator // ell ** vd
    if ell == 2:
        u = num * pow(den, -1, 8) % 8
        return u == 1
    return _legendre(num * pow(den, -1, ell) % ell, ell) == 1


def _quad_root_count(a, b, c, p):
    """Number of roots of a x^2 + b x + c over F_p (a != 0 mod p)."""
    if p == 2:
        return sum(1 for x in (0, 1) if (a * x * x + b * x + c) % 2 == 0)
    disc = (b * b - 4 * a * c) % p
    if disc == 0:
        return 1
    return 2 if _legendre(disc, p) == 1 else 0


def _cubic_roots_fp(coeffs, p):
    """Roots in F_p of a cubic given ascending coefficients (monic mod p)."""
    return [x for x in range(p) if (coeffs[0] + x * (coeffs[1] + x * (coeffs[2] + x))) % p == 0]


def _singular_point(E: WeierstrassCurve, ell):
    """The unique singular point of the reduction mod ell (ell | disc)."""
    a1, a2, a3, a4, a6 = E.ainvs()
    if ell in (2, 3):
        for x in range(ell):
            for y in range(ell):
                f = y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)
                fx = a1 * y - (3 * x * x + 2 * a2 * x + a4)
                fy = 2 * y + a1 * x + a3
                if f % ell == 0 and fx % ell == 0 and fy % ell == 0:
                    return x, y
        raise AssertionError("no singular point found")
    # odd ell: x0 is the repeated root of 4x^3 + b2 x^2 + 2 b4 x + b6 mod ell
    g = [E.b6 % ell, (2 * E.b4) % ell, E.b2 % ell, 4 % ell]
    gp = [(2 * E.b4) % ell, (2 * E.b2) % ell, 12 % ell]
    h = _fp_poly_gcd(g, gp, ell)
    while len(h) > 2:
        h = _fp_poly_gcd(h, [(i * c) % ell for i, c in enumerate(h)][1:], ell)
    if len(h) != 2:
        raise AssertionError("could not isolate the repeated root")
    x0 = (-h[0] * pow(h[1], -1, ell)) % ell
    y0 = (-(a1 * x0 + a3) * pow(2, -1, ell)) % ell
    return x0, y0


def _fp_poly_gcd(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]
    while any(b):
        a, b = b, _fp_poly_mod(a, b, p)
    while a and a[-1] == 0:
        a.pop()
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _fp_poly_mod(a, b, p):
    a = [c % p for c in a]
    while b and b[-1] % p == 0:
        b = b[:-1]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        if a[-1]:
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for i in range(len(b)):
                a[off + i] = (a[off + i] - f * b[i]) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


_COMPONENTS = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}


def tate_local(E: WeierstrassCurve, ell: int) -> LocalData:
    """Kodaira type, Tamagawa number and friends at ell, minimalizing first."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    cur = E
    u_tot, r_tot, s_tot, t_tot = 1, 0, 0, 0

    def apply(u=1, r=0, s=0, t=0):
        nonlocal cur, u_tot, r_tot, s_tot, t_tot
        cur = cur.transform(u=u, r=r, s=s, t=t)
        r_new = r_tot + u_tot ** 2 * r
        s_new = s_tot + u_tot * s
        t_new = t_tot + u_tot ** 3 * t + u_tot ** 2 * s_tot * r
        u_tot, r_tot, s_tot, t_tot = u_tot * u, r_new, s_new, t_new

    while True:
        vD = valuation(cur.disc, ell)
        if vD == 0:
            return _finish(E, cur, ell, "good", 1, "I0", 0,
                           (u_tot, r_tot, s_tot, t_tot))
        x0, y0 = _singular_point(cur, ell)
        if (x0, y0) != (0, 0):
            apply(r=x0, t=y0)
        a1, a2, a3, a4, a6 = cur.ainvs()
        if cur.b2 % ell:
            # multiplicative: type I_n with n = v(disc)
            split = is_square_in_Qell(Fraction(-E.c4, E.c6), ell)
            if split:
                c = vD
                kind = "multiplicative_split"
            else:
                c = 1 if vD % 2 else 2
                kind = "multiplicative_nonsplit"
            return _finish(E, cur, ell, kind, c, f"I{vD}", vD,
                           (u_tot, r_tot, s_tot, t_tot))
        if _v(a6, ell) < 2:
            return _finish(E, cur, ell, "additive", 1, "II", vD, (u_tot, r_tot, s_tot, t_tot))
        if _v(cur.b8, ell) < 3:
            return _finish(E, cur, ell, "additive", 2, "III", vD, (u_tot, r_tot, s_tot, t_tot))
        if _v(cur.b6, ell) < 3:
            nroots = _quad_root_count(1, a3 // ell, -(a6 // ell ** 2), ell)
            c = 3 if nroots else 1
            return _finish(E, cur, ell, "additive", c, "IV", vD, (u_tot, r_tot, s_tot, t_tot))
        # arrange ell | a1, a2; ell^2 | a3, a4; ell^3 | a6
        if ell == 2:
            apply(s=a2 % 2)
            a1, a2, a3, a4, a6 = cur.ainvs()
            if _v(a6, 2) == 2:
                apply(t=2 * ((a6 // 4) % 2))
        else:
            apply(s=(-a1 * pow(2, -1, ell)) % ell)
            a3_now = cur.a3
            apply(t=(-a3_now * pow(2, -1, ell ** 2)) % ell ** 2)
        a1, a2, a3, a4, a6 = cur.ainvs()
        assert all(_v(v, ell) >= k for v, k in
                   ((a1, 1), (a2, 1), (a3, 2), (a4, 2), (a6, 3)))
        # cubic P(T) = T^3 + (a2/l) T^2 + (a4/l^2) T + a6/l^3 over F_ell
        pc = [(a6 // ell ** 3) % ell, (a4 // ell ** 2) % ell, (a2 // ell) % ell]
        roots = _cubic_roots_fp(pc, ell)
        # a repeated root of a cubic over F_ell is itself rational, so the
        # multiplicity pattern is visible on the rational roots
        mults = {}
        for x in roots:
            _, c1s, c2s = _shift_cubic(pc, x, ell)
            mults[x] = 3 if c1s == 0 and c2s == 0 else (2 if c1s == 0 else 1)
        maxmult = max(mults.values(), default=1)
        if maxmult == 1:
            c = 1 + len(roots)
            return _finish(E, cur, ell, "additive", c, "I0*", vD, (u_tot, r_tot, s_tot, t_tot))
        if maxmult == 3:
            # triple root: shift it to 0 and look at Y^2 + (a3/l^2) Y - a6/l^4
            alpha = next(x for x, m in mults.items() if m == 3)
            apply(r=ell * alpha)
            a1, a2, a3, a4, a6 = cur.ainvs()
            b = (a3 // ell ** 2) % ell
            cc = (-(a6 // ell ** 4)) % ell
            nroots = _quad_root_count(1, b, cc, ell)
            if (b * b + 4 * (a6 // ell ** 4)) % ell:
                c = 3 if nroots else 1
                return _finish(E, cur, ell, "additive", c, "IV*", vD, (u_tot, r_tot, s_tot, t_tot))
            rho = (b * pow(2, -1, ell) * (ell - 1)) % ell if ell != 2 else (a6 // 16) % 2
            apply(t=ell ** 2 * rho)
            a1, a2, a3, a4, a6 = cur.ainvs()
            if _v(a4, ell) < 4:
                return _finish(E, cur, ell, "additive", 2, "III*", vD, (u_tot, r_tot, s_tot, t_tot))
            if _v(a6, ell) < 6:
                return _finish(E, cur, ell, "additive", 1, "II*", vD, (u_tot, r_tot, s_tot, t_tot))
            apply(u=ell)  # non-minimal model: scale down and restart
            continue
        # double root: type I_m* after translating the double root to 0
        alpha = next(x for x, m in mults.items() if m == 2)
        apply(r=ell * alpha)
        m = 1
        mx = my = ell * ell
        while True:
            a1, a2, a3, a4, a6 = cur.ainvs()
            xa2 = a2 // ell
            xa3 = a3 // my
            xa6 = a6 // (mx * my)
            if (xa3 * xa3 + 4 * xa6) % ell:
                nroots = _quad_root_count(1, xa3, -xa6, ell)
                c = 2 + (2 if nroots else 0)
                break
            rho = (xa6 % 2) if ell == 2 else (-xa3 * pow(2, -1, ell)) % ell
            apply(t=my * rho)
            my *= ell
            m += 1
            a1, a2, a3, a4, a6 = cur.ainvs()
            xa2 = a2 // ell
            xa4 = a4 // (ell * mx)
            xa6 = a6 // (mx * my)
            if (xa4 * xa4 - 4 * xa2 * xa6) % ell:
                nroots = _quad_root_count(xa2, xa4, xa6, ell)
                c = 2 + (2 if nroots else 0)
                break
            if ell == 2:
                rho = (xa6 * pow(xa2, -1, 2)) % 2
            else:
                rho = (-xa4 * pow(2 * xa2, -1, ell)) % ell
            apply(r=mx * rho)
            mx *= ell
            m += 1
        return _finish(E, cur, ell, "additive", c, f"I{m}*", vD,
                       (u_tot, r_tot, s_tot, t_tot))


def _shift_cubic(pc, x0, ell):
    """Coefficients of P(T + x0) mod ell for monic cubic with low coeffs pc."""
    c0, c1, c2 = pc
    return ((c0 + c1 * x0 + c2 * x0 * x0 + x0 ** 3) % ell,
            (c1 + 2 * c2 * x0 + 3 * x0 * x0) % ell,
            (c2 + 3 * x0) % ell)


def _finish(E_orig, cur, ell, kind, c, kodaira, vD, transform):
    u, r, s, t = transform
    ordj = E_orig.ord_j(ell)
    if kodaira == "I0":
        m = 1
        ap = ell + 1 - _count_mod(cur, ell)
        data = dict(a_ell=ap, ordinary=ap % ell != 0,
                    supersingular=ap % ell == 0, anomalous=ap % ell == 1)
    else:
        data = {}
        if kodaira in _COMPONENTS:
            m = _COMPONENTS[kodaira]
        elif kodaira.endswith("*"):
            m = int(kodaira[1:-1]) + 5
        else:
            m = int(kodaira[1:])
    if kind == "good":
        f = 0
    elif kind.startswith("multiplicative"):
        f = 1
    else:
        f = vD + 1 - m
    assert f >= 2 or kind != "additive"
    if kind == "additive":
        assert c <= 4, "additive Tamagawa number out of range"
    if kind == "multiplicative_split":
        assert ordj is not None and c == -ordj
    if kind == "multiplicative_nonsplit":
        assert c == (1 if ordj % 2 else 2)
    return LocalData(prime=ell, kind=kind, tamagawa=c, kodaira=kodaira,
                     ord_disc_min=vD, ord_j=ordj, conductor_exponent=f,
                     minimal_ainvs=cur.ainvs(), u=u, r=r, s=s, t=t, **data)


def _count_mod(E, ell):
    from .curves import count_points
    return count_points(E, ell)


def bad_primes(E: WeierstrassCurve, factor_bound=10 ** 6):
    """Primes of bad reduction (where the minimal discriminant vanishes)."""
    n = abs(E.disc)
    out = []
    d = 2
    while d * d <= n and d <= factor_bound:
        if n % d == 0:
            while n % d == 0:
                n //= d
            if tate_local(E, d).kind != "good":
                out.append(d)
        d += 1 if d == 2 else 2
    if n > 1:
        if n > factor_bound ** 2 and not is_prime(n):
            raise ValueError("discriminant has a large unfactored part")
        if tate_local(E, n).kind != "good":
            out.append(n)
    return out


def conductor(E: WeierstrassCurve) -> int:
    """Product of ell^f over the bad primes, exponents from Tate's algorithm."""
    N = 1
    for ell in bad_primes(E):
        N *= ell ** tate_local(E, ell).conductor_exponent
    return N


# -- Tate period ----------------------------------------------------------

_J_COEFFS = [1, 744]  # ascending coefficients of q * j(q)
_J_CAP = 400


def _extend_j_coeffs(count):
    """Integer coefficients of q*j(q) = E4^3 / prod(1-q^n)^24 up to q^count."""
    global _J_COEFFS
    if len(_J_COEFFS) >= count:
        return
    n = count + 1
    e4 = [0] * n
    e4[0] = 1
    for k in range(1, n):
        s3 = sum(d ** 3 for d in range(1, k + 1) if k % d == 0)
        e4[k] = 240 * s3
    e43 = _series_mul(_series_mul(e4, e4, n), e4, n)
    eta24 = [0] * n
    eta24[0] = 1
    for m in range(1, n):
        base = [0] * n
        base[0] = 1
        if m < n:
            base[m] = -1
        piece = base
        acc = [0] * n
        acc[0] = 1
        e = 24
        while e:
            if e & 1:
                acc = _series_mul(acc, piece, n)
            piece = _series_mul(piece, piece, n)
            e >>= 1
        eta24 = _series_mul(eta24, acc, n)
    inv = _series_invert(eta24, n)
    _J_COEFFS = _series_mul(e43, inv, n)


def _series_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _series_invert(a, n):
    assert a[0] in (1, -1)
    out = [0] * n
    out[0] = a[0]
    for k in range(1, n):
        s = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        out[k] = -a[0] * s
    return out


def j_expansion_coeff(n: int) -> int:
    """Coefficient of q^n in j(q) (n >= -1)."""
    _extend_j_coeffs(n + 2)
    return _J_COEFFS[n + 1]


def tate_period(E: WeierstrassCurve, ell: int, digits: int = 20) -> PadicNumber:
    """The parameter q with j(q) = j(E), for ord_ell(j) < 0.

    Found by the ell-adically contracting iteration
    q <- 1 / (j - sum_{n>=0} c_n q^n); the result satisfies
    v(q) = -ord_ell(j) and is certified by re-substitution to the
    requested digit count.
    """
    ordj = E.ord_j(ell)
    if ordj is None or ordj >= 0:
        raise ValueError(f"ord_{ell}(j) must be negative (potentially multiplicative)")
    c = -ordj
    work = digits + 2 * c + 4
    nterms = work // c + 2
    if nterms > _J_CAP:
        raise ValueError("requested precision needs too many q-expansion coefficients")
    _extend_j_coeffs(nterms + 2)
    jE = PadicNumber.from_rational(ell, E.j, work)
    q = jE.inverse()
    for _ in range(work):
        tail = PadicNumber.zero(ell, work + c)
        power = PadicNumber.from_rational(ell, 1, work)
        for n in range(nterms):
            tail = tail + j_expansion_coeff(n) * power
            power = power * q
        q_next = (jE - tail).inverse()
        if (q_next - q).is_zero:
            q = q_next
            break
        q = q_next
    assert q.v == c, "Tate period valuation mismatch"
    jval = q.inverse()
    power = PadicNumber.from_rational(ell, 1, work)
    for n in range(nterms):
        jval = jval + j_expansion_coeff(n) * power
        power = power * q
    resid = jval - jE
    if not resid.is_zero and resid.valuation() < digits:
        raise AssertionError("re-substitution check failed")
    return q
