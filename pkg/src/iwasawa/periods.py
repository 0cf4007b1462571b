"""Real periods by the arithmetic-geometric mean.

This is the one non-exact computation in the package: 64-bit floats,
with the AGM converging quadratically to machine precision.  The period
integrates the invariant differential over E(R): twice the loop value
pi/AGM when the 2-division cubic has three real roots (two components),
and the single-loop complex-pair formula otherwise.
"""

from __future__ import annotations

import math

from .curves import WeierstrassCurve


class AGMError(ArithmeticError):
    pass


def _agm(a, b, cap=120):
    for _ in range(cap):
        if abs(a - b) <= 1e-15 * abs(a):
            return (a + b) / 2
        a, b = (a + b) / 2, math.sqrt(a * b)
    raise AGMError("AGM failed to converge")


def _cubic_roots_real(b, c, d):
    """Roots of the monic real cubic x^3 + b x^2 + c x + d, Newton-polished."""
    p = c - b * b / 3.0
    q = 2 * b ** 3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0

    def polish(x):
        for _ in range(60):
            f = ((x + b) * x + c) * x + d
            fp = (3 * x + 2 * b) * x + c
            if fp == 0:
                return x
            x2 = x - f / fp
            if x2 == x:
                return x
            x = x2
        return x

    disc = -4 * p ** 3 - 27 * q * q
    if disc > 0:
        m = 2 * math.sqrt(-p / 3.0)
        th = math.acos(max(-1.0, min(1.0, 3 * q / (p * m)))) / 3.0
        roots = sorted(polish(m * math.cos(th - 2 * math.pi * k / 3) + shift) for k in range(3))
        return roots, None
    a = math.sqrt(max(q * q / 4.0 + p ** 3 / 27.0, 0.0))
    u, v = -q / 2.0 + a, -q / 2.0 - a
    r = polish(math.copysign(abs(u) ** (1 / 3.0), u)
               + math.copysign(abs(v) ** (1 / 3.0), v) + shift)
    B = b + r
    C = c + r * B
    re = -B / 2.0
    im = math.sqrt(max(C - re * re, 0.0))
    return [r], (re, im)


def real_period(E: WeierstrassCurve, tol: float = 1e-12) -> float:
    """Total real period of E(R) for the given (assumed minimal) model.

    disc > 0: two components, each loop contributing pi/AGM(sqrt(e1-e3),
    sqrt(e1-e2)).  disc < 0: one component, 2*pi/AGM(2*sqrt(m),
    sqrt(2m + 2(e1-Re e2))) with m = |e1 - e2| for the complex pair.
    """
    b = E.b2 / 4.0
    c = E.b4 / 2.0
    d = E.b6 / 4.0
    real_roots, cpx = _cubic_roots_real(b, c, d)
    if E.disc > 0:
        e3, e2, e1 = real_roots
        return 2 * math.pi / _agm(math.sqrt(e1 - e3), math.sqrt(e1 - e2))
    e1 = real_roots[0]
    phi, psi = cpx
    m = math.hypot(e1 - phi, psi)
    return 2 * math.pi / _agm(2 * math.sqrt(m), math.sqrt(2 * m + 2 * (e1 - phi)))
