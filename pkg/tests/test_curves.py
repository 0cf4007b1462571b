import random
from fractions import Fraction

import pytest

from iwasawa.curves import (
    SingularCurveError,
    WeierstrassCurve,
    ap_count,
    classify_at_p,
    count_points,
    curve_invariants,
    ec_add,
    on_curve,
    point_arith,
    point_order,
    quadratic_twist,
    torsion,
)
from iwasawa.padics import is_prime, valuation

E11 = WeierstrassCurve(0, -1, 1, -10, -20)
E32 = WeierstrassCurve(0, 0, 0, 4, 0)
E34 = WeierstrassCurve(1, 0, 0, -3, 1)
E195 = WeierstrassCurve(1, 0, 0, -115, 392)
E306 = WeierstrassCurve(1, -1, 0, -927, 11097)


def test_invariants_conductor_11():
    assert E11.disc == -(11 ** 5)
    assert E11.ord_j(11) == -5


def test_invariants_32():
    assert E32.c6 == 0
    assert E32.j == 1728


def test_invariants_34():
    assert valuation(E34.disc, 2) > 0 and valuation(E34.disc, 17) > 0


def test_singular_rejected():
    with pytest.raises(SingularCurveError):
        curve_invariants(0, 0, 0, 0, 0)


def test_b8_identity_random():
    rng = random.Random(1)
    for _ in range(40):
        try:
            E = WeierstrassCurve(*(rng.randrange(-6, 7) for _ in range(5)))
        except SingularCurveError:
            continue
        assert 4 * E.b8 == E.b2 * E.b6 - E.b4 ** 2
        assert E.c4 ** 3 - E.c6 ** 2 == 1728 * E.disc


def test_ap_paper_values():
    assert ap_count(WeierstrassCurve(0, 1, 0, -7, 5), 5) == 2
    assert ap_count(E34, 3) == -2
    assert 31 + 1 - ap_count(E195, 31) == 40
    assert ap_count(WeierstrassCurve(1, 1, 1, -8, 6), 37) == 8


def test_ap_bad_reduction_rejected():
    with pytest.raises(ValueError):
        ap_count(E11, 11)


def test_hasse_bound_random_sweep():
    # spec property: 100 random curves x primes <= 97
    rng = random.Random(9)
    primes = [p for p in range(5, 98) if is_prime(p)]
    done = 0
    while done < 100:
        try:
            E = WeierstrassCurve(*(rng.randrange(-5, 6) for _ in range(5)))
        except SingularCurveError:
            continue
        p = rng.choice(primes)
        if E.disc % p == 0:
            continue
        npts = count_points(E, p)
        ap = p + 1 - npts
        assert ap * ap < 4 * p
        assert npts == p + 1 - ap
        done += 1


def test_count_small_primes_directly():
    # oracle: brute force over all (x, y) including p = 2, 3
    rng = random.Random(4)
    for p in (2, 3, 5, 7):
        for _ in range(10):
            try:
                E = WeierstrassCurve(*(rng.randrange(0, p) for _ in range(5)))
            except SingularCurveError:
                continue
            brute = 1 + sum(1 for x in range(p) for y in range(p)
                            if (y * y + E.a1 * x * y + E.a3 * y
                                - (x ** 3 + E.a2 * x * x + E.a4 * x + E.a6)) % p == 0)
            assert count_points(E, p) == brute


def test_classification():
    assert classify_at_p(E11, 5) == ("ordinary", True)
    assert classify_at_p(E32, 3) == ("supersingular", False)
    assert classify_at_p(WeierstrassCurve(0, 1, 1, -12, -21), 3) == ("ordinary", True)


def test_torsion_paper_values():
    assert torsion(E11).describe() == "Z/5"
    assert torsion(E32).describe() == "Z/4"
    assert torsion(E34).describe() == "Z/6"
    assert torsion(E195).describe() == "Z/2 x Z/4"


def test_torsion_generators_have_exact_orders():
    for E in (E11, E32, E34, E195):
        T = torsion(E)
        for gen, inv in zip(reversed(T.generators), reversed(T.invariants)):
            assert point_order(E, gen, 14) == inv


def test_group_law_identity_and_negation():
    P = (5, 5)
    assert point_arith(E11, P, None) == (Fraction(5), Fraction(5))
    assert point_arith(E11, P, n=1) == (Fraction(5), Fraction(5))
    assert point_arith(E11, P, n=0) is None


def test_group_law_torsion_order_five():
    P = (5, 5)  # a 5-torsion point on the conductor-11 curve
    assert point_arith(E11, P, n=5) is None
    assert point_arith(E11, P, n=4) == point_arith(E11, point_arith(E11, P, n=2),
                                                   point_arith(E11, P, n=2))


def test_point_off_curve_rejected():
    with pytest.raises(ValueError):
        point_arith(E11, (1, 1), n=2)


def test_306_rank_one_bookkeeping():
    # P = (9, 54) generates the free part; 6P is a large honest rational point
    P6 = point_arith(E306, (9, 54), n=6)
    assert P6 is not None
    a = tuple(Fraction(v) for v in E306.ainvs())
    assert on_curve(a, P6)
    assert torsion(E306).describe() == "Z/6"


def test_associativity_random():
    rng = random.Random(12)
    a = tuple(Fraction(v) for v in E11.ainvs())
    pts = [None, (Fraction(5), Fraction(5))]
    pts.append(ec_add(a, pts[1], pts[1]))
    pts.append(ec_add(a, pts[2], pts[1]))
    for _ in range(30):
        P, Q, R = (rng.choice(pts) for _ in range(3))
        assert ec_add(a, ec_add(a, P, Q), R) == ec_add(a, P, ec_add(a, Q, R))


def test_twist_preserves_j():
    for d in (-1, -2, 5, -7):
        assert quadratic_twist(E11, d).j == E11.j


def test_twist_by_one_isomorphic():
    t = quadratic_twist(E11, 1)
    assert t.j == E11.j
    # same square class of -c4/c6 at odd primes
    from iwasawa.tate import is_square_in_Qell
    for ell in (3, 5, 7, 13):
        assert (is_square_in_Qell(Fraction(-t.c4, t.c6), ell)
                == is_square_in_Qell(Fraction(-E11.c4, E11.c6), ell))


def test_double_twist_square_class():
    tt = quadratic_twist(quadratic_twist(E11, -1), -1)
    from iwasawa.tate import is_square_in_Qell
    assert tt.j == E11.j
    for ell in (3, 5, 7, 11, 13):
        assert (is_square_in_Qell(Fraction(-tt.c4, tt.c6), ell)
                == is_square_in_Qell(Fraction(-E11.c4, E11.c6), ell))


def test_twist_rejects_non_squarefree():
    with pytest.raises(ValueError):
        quadratic_twist(E11, 12)
    with pytest.raises(ValueError):
        quadratic_twist(E11, 0)
