"""Construct curves over Q with prescribed local behavior.

Given disjoint prime sets P (good reduction with prescribed traces) and
L (multiplicative reduction with prescribed split type and Tamagawa
number), plus a set Q of residue-irreducibility constraints, a witness
curve is built for each prime and the coefficients are glued with the
Chinese Remainder Theorem; the exponents at L are doubled until the
verification ledger passes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

from .curves import WeierstrassCurve, count_points
from .padics import is_prime
from .tate import tate_local

SEARCH_PRIME_BOUND = 10 ** 5
T_CAP = 64


@dataclass(frozen=True)
class ForgeSpec:
    good: tuple = ()          # (p, a_p*) pairs
    mult: tuple = ()          # (ell, a_ell* in {+1,-1}, c_ell*) triples
    irreducible: tuple = ()   # primes q with E[q] to be irreducible

    def __post_init__(self):
        ps = {p for p, _ in self.good}
        ls = {l for l, _, _ in self.mult}
        if ps & ls:
            raise ValueError("P and L must be disjoint")
        for p, a in self.good:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if a * a >= 4 * p:
                raise ValueError(f"|a_p*| = {abs(a)} violates the Hasse bound at {p}")
        for l, a, c in self.mult:
            if not is_prime(l):
                raise ValueError(f"{l} is not prime")
            if a not in (1, -1):
                raise ValueError("multiplicative trace must be +1 or -1")
            if c < 1:
                raise ValueError("Tamagawa target must be positive")
            if a == -1 and c not in (1, 2):
                raise ValueError("nonsplit reduction allows c* = 1 or 2 only")
        for q in self.irreducible:
            if not is_prime(q):
                raise ValueError(f"{q} is not prime")

    @classmethod
    def from_dict(cls, d):
        return cls(good=tuple((int(p), int(a)) for p, a in d.get("P", [])),
                   mult=tuple((int(l), int(a), int(c)) for l, a, c in d.get("L", [])),
                   irreducible=tuple(int(q) for q in d.get("Q", [])))

    def to_dict(self):
        return {"P": [list(x) for x in self.good],
                "L": [list(x) for x in self.mult],
                "Q": list(self.irreducible)}


@dataclass(frozen=True)
class ForgeResult:
    curve: WeierstrassCurve
    ledger: tuple
    witnesses: dict          # q -> witness prime r_q
    exponents: dict          # m -> t_m used in the CRT

    @property
    def ok(self):
        return all(entry[3] for entry in self.ledger)


def deuring_search(p: int, a_target: int, seed: int = 0):
    """A curve over F_p with exactly 1 + p - a_target points.

    Deterministic given the seed: small primes are enumerated, larger
    ones searched in seeded random order.  Returns integer a-invariants
    in [0, p).
    """
    if a_target * a_target >= 4 * p:
        raise ValueError("target trace violates the Hasse bound")
    if p > SEARCH_PRIME_BOUND:
        raise ValueError(f"{p} exceeds the search bound")
    want = 1 + p - a_target
    if p <= 3:
        for a1 in range(p):
            for a2 in range(p):
                for a3 in range(p):
                    for a4 in range(p):
                        for a6 in range(p):
                            E = _curve_mod(p, (a1, a2, a3, a4, a6))
                            if E is not None and count_points(E, p) == want:
                                return (a1, a2, a3, a4, a6)
        raise AssertionError("exhausted F_p models without a match")
    rng = random.Random(f"{seed}:{p}:{a_target}")
    pairs = [(A, B) for A in range(p) for B in range(p)]
    if p > 60:
        rng.shuffle(pairs)
    tried = 0
    for A, B in pairs:
        E = _curve_mod(p, (0, 0, 0, A, B))
        if E is None:
            continue
        if count_points(E, p) == want:
            return (0, 0, 0, A, B)
        tried += 1
        if tried > 40 * p:
            break
    raise AssertionError("curve count search exceeded its iteration cap")


def _curve_mod(p, ainvs):
    try:
        E = WeierstrassCurve(*ainvs)
    except ValueError:
        return None
    return E if E.disc % p else None


def irreducibility_witness(q: int, seed: int = 0, avoid=()):
    """(r, curve mod r) with Frobenius acting irreducibly on the q-torsion.

    q = 2: y^2 = irreducible cubic over F_r (no rational 2-torsion).
    q odd: supersingular a_r = 0 over a prime r with -r a nonresidue
    mod q, so the characteristic polynomial t^2 + r has no root mod q.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    r = 3
    while True:
        r = _next_prime(r)
        if r == q or r in avoid:
            continue
        if q == 2:
            for c in range(r):
                for d in range(r):
                    if _cubic_irreducible_mod(c, d, r):
                        ainvs = (0, 0, 0, c, d)
                        E = _curve_mod(r, ainvs)
                        if E is None:
                            continue
                        ar = r + 1 - count_points(E, r)
                        if ar % 2:  # t^2 - a_r t + r irreducible mod 2
                            return r, ainvs
        else:
            if pow(-r % q, (q - 1) // 2, q) != 1:
                for A in range(r):
                    for B in range(r):
                        E = _curve_mod(r, (0, 0, 0, A, B))
                        if E is None:
                            continue
                        if count_points(E, r) == r + 1:  # a_r = 0
                            return r, (0, 0, 0, A, B)


def _cubic_irreducible_mod(c, d, r):
    """x^3 + c x + d irreducible over F_r (degree 3: no root suffices)."""
    return all((x ** 3 + c * x + d) % r for x in range(r))


def _next_prime(n):
    n += 1
    while not is_prime(n):
        n += 1
    return n


def tate_local_model(ell: int, a_star: int, c_star: int) -> WeierstrassCurve:
    """An integral model with multiplicative reduction at ell,
    ord_ell(j) = -c*, split exactly when a* = +1.

    The split model comes from forcing j = ell^(-c*) in the j-line family
    and clearing denominators; the nonsplit one is its quadratic twist by
    a unit nonsquare at ell.
    """
    if a_star not in (1, -1):
        raise ValueError("a* must be +1 or -1")
    if a_star == -1 and c_star not in (1, 2):
        raise ValueError("nonsplit reduction has c* in {1, 2}")
    if c_star < 1:
        raise ValueError("c* must be positive")
    u = 1 - 1728 * ell ** c_star
    E = WeierstrassCurve(1, 0, 0, -36 * ell ** c_star * u ** 3, -(ell ** c_star) * u ** 5)
    if a_star == -1:
        d = _unit_nonsquare(ell)
        A, B = E.short_model()
        E = WeierstrassCurve(0, 0, 0, A * d * d, B * d ** 3)
    loc = tate_local(E, ell)
    want = "multiplicative_split" if a_star == 1 else "multiplicative_nonsplit"
    assert loc.kind == want and loc.tamagawa == c_star and loc.ord_j == -c_star
    return E


def _unit_nonsquare(ell):
    if ell == 2:
        return 5
    d = 2
    while pow(d, (ell - 1) // 2, ell) == 1 or not _squarefree(d):
        d += 1
    return d


def _squarefree(d):
    return all(d % (q * q) for q in range(2, isqrt(abs(d)) + 1))


def forge_verify(E: WeierstrassCurve, spec: ForgeSpec, witnesses=None, seed=0):
    """Per-clause ledger: traces at P, local data at L, and irreducibility
    certificates at Q (Frobenius characteristic polynomial irreducible
    mod q at a witness prime).  Certificates may fail to certify without
    asserting reducibility."""
    ledger = []
    for p, a_star in spec.good:
        if E.disc % p == 0:
            ledger.append((f"good at {p}", a_star, None, False))
            continue
        ap = p + 1 - count_points(E, p)
        ledger.append((f"a_{p}", a_star, ap, ap == a_star))
    for ell, a_star, c_star in spec.mult:
        loc = tate_local(E, ell)
        want = "multiplicative_split" if a_star == 1 else "multiplicative_nonsplit"
        ledger.append((f"kind at {ell}", want, loc.kind, loc.kind == want))
        ledger.append((f"c_{ell}", c_star, loc.tamagawa, loc.tamagawa == c_star))
    used = dict(witnesses or {})
    for q in spec.irreducible:
        r = used.get(q)
        cert, r_used = _certify_irreducible(E, q, r)
        used[q] = r_used
        ledger.append((f"E[{q}] irreducible (witness {r_used})", "certified",
                       "certified" if cert else "not certified", cert))
    return tuple(ledger), used


def _certify_irreducible(E, q, r=None):
    """Try witness primes of good reduction until t^2 - a_r t + r is
    irreducible mod q; sufficient for irreducibility, never 'reducible'."""
    candidates = [r] if r else []
    rr = 2
    while len(candidates) < 60:
        rr = _next_prime(rr)
        if rr != q and E.disc % rr:
            candidates.append(rr)
    for r_try in candidates:
        if r_try is None or E.disc % r_try == 0:
            continue
        ar = r_try + 1 - count_points(E, r_try)
        if _frob_poly_irreducible(ar, r_try, q):
            return True, r_try
    return False, candidates[-1]


def _frob_poly_irreducible(a, r, q):
    """t^2 - a t + r irreducible over F_q."""
    if q == 2:
        return a % 2 == 1 and r % 2 == 1
    disc = (a * a - 4 * r) % q
    return disc != 0 and pow(disc, (q - 1) // 2, q) != 1


def crt_assemble(spec: ForgeSpec, seed: int = 0) -> ForgeResult:
    """Glue local witnesses by CRT, doubling the exponents at L until the
    verification ledger passes (capped at t = 64)."""
    witnesses = {}
    avoid = set(p for p, _ in spec.good) | set(l for l, _, _ in spec.mult)
    models = {}
    for p, a_star in spec.good:
        models[p] = (deuring_search(p, a_star, seed), 1)
    for q in spec.irreducible:
        r, ainvs = irreducibility_witness(q, seed, avoid=avoid | set(witnesses.values()))
        witnesses[q] = r
        models[r] = (ainvs, 1)
    t_mult = {l: max(4, c + 2) for l, _, c in spec.mult}
    while True:
        full = dict(models)
        for l, a_star, c_star in spec.mult:
            full[l] = (tate_local_model(l, a_star, c_star).ainvs(), t_mult[l])
        E = _combine(full, seed)
        ledger, used = forge_verify(E, spec, witnesses, seed)
        if all(entry[3] for entry in ledger):
            return ForgeResult(E, ledger, used, {m: t for m, (_, t) in full.items()})
        if not spec.mult or all(t_mult[l] >= T_CAP for l in t_mult):
            return ForgeResult(E, ledger, used, {m: t for m, (_, t) in full.items()})
        for l in t_mult:
            t_mult[l] = min(T_CAP, 2 * t_mult[l])


def _combine(models, seed):
    """Coefficientwise CRT with centered lifts; keeps the curve nonsingular."""
    if not models:
        return WeierstrassCurve(0, 0, 0, -1, 1)
    moduli = [m ** t for m, (_, t) in models.items()]
    M = 1
    for x in moduli:
        M *= x
    ainvs = []
    for i in range(5):
        resid = 0
        for (m, (model, t)) in models.items():
            mt = m ** t
            rest = M // mt
            resid += model[i] * rest * pow(rest, -1, mt)
        resid %= M
        ainvs.append(resid - M if resid > M // 2 else resid)
    for bump in range(8):
        try:
            return WeierstrassCurve(*ainvs)
        except ValueError:
            ainvs[4] += M  # keep all residues, move off the singular locus
    raise AssertionError("could not find a nonsingular lift")
