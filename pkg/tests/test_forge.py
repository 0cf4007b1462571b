import random

import pytest

from iwasawa.curves import WeierstrassCurve, count_points
from iwasawa.forge import (
    ForgeSpec,
    crt_assemble,
    deuring_search,
    forge_verify,
    irreducibility_witness,
    tate_local_model,
)
from iwasawa.padics import is_prime
from iwasawa.tate import tate_local


def test_deuring_examples():
    a = deuring_search(5, 2, seed=0)
    assert count_points(WeierstrassCurve(*a), 5) == 4
    a7 = deuring_search(7, 1, seed=0)
    assert count_points(WeierstrassCurve(*a7), 7) == 7
    with pytest.raises(ValueError):
        deuring_search(5, 5)


def test_deuring_deterministic_and_correct():
    rng = random.Random(0)
    for _ in range(10):
        p = rng.choice([5, 7, 11, 13, 17, 23])
        amax = 1
        while amax * amax < 4 * p:
            amax += 1
        a = rng.randrange(-(amax - 1), amax)
        first = deuring_search(p, a, seed=3)
        again = deuring_search(p, a, seed=3)
        assert first == again
        assert count_points(WeierstrassCurve(*first), p) == 1 + p - a


def test_irreducibility_witness_q3():
    r, ainvs = irreducibility_witness(3)
    assert (r, ainvs) == (7, (0, 0, 0, 1, 0))   # a_7 = 0, t^2+7 = t^2+1 mod 3
    assert count_points(WeierstrassCurve(*ainvs), 7) == 8


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_irreducibility_witness_certifies(q):
    r, ainvs = irreducibility_witness(q)
    E = WeierstrassCurve(*ainvs)
    assert is_prime(r) and r != q
    ar = r + 1 - count_points(E, r)
    if q == 2:
        assert ar % 2 == 1
    else:
        assert ar == 0
        # t^2 + r irreducible mod q: no root over F_q
        assert all((t * t + r) % q for t in range(q))
        # equivalently the discriminant -4r is a nonsquare
        assert pow(-4 * r % q, (q - 1) // 2, q) == q - 1


def test_tate_local_model_split():
    E = tate_local_model(11, 1, 5)
    loc = tate_local(E, 11)
    assert loc.kind == "multiplicative_split" and loc.tamagawa == 5
    assert loc.ord_j == -5


def test_tate_local_model_nonsplit():
    for ell, c in ((3, 1), (3, 2), (2, 1), (2, 2), (7, 2)):
        E = tate_local_model(ell, -1, c)
        loc = tate_local(E, ell)
        assert loc.kind == "multiplicative_nonsplit" and loc.tamagawa == c
    with pytest.raises(ValueError):
        tate_local_model(3, -1, 3)


def test_forge_verify_on_known_curves():
    E11 = WeierstrassCurve(0, -1, 1, -10, -20)
    ledger, _ = forge_verify(E11, ForgeSpec(mult=((11, 1, 5),)))
    assert all(e[3] for e in ledger)
    # rational 2-torsion means E[2] can never be certified irreducible
    E32 = WeierstrassCurve(0, 0, 0, 4, 0)
    ledger32, _ = forge_verify(E32, ForgeSpec(irreducible=(2,)))
    assert not ledger32[0][3]
    assert "not certified" in ledger32[0][2]
    # empty spec passes trivially
    empty, _ = forge_verify(E11, ForgeSpec())
    assert empty == ()


def test_spec_validation():
    with pytest.raises(ValueError):
        ForgeSpec(good=((5, 2),), mult=((5, 1, 1),))
    with pytest.raises(ValueError):
        ForgeSpec(good=((5, 5),))
    with pytest.raises(ValueError):
        ForgeSpec(mult=((3, -1, 3),))
    with pytest.raises(ValueError):
        ForgeSpec(mult=((3, 2, 1),))


def test_crt_roundtrip_seeded_sweep():
    # spec-level property: 20 seeded random valid specs with primes <= 50
    rng = random.Random(1234)
    primes = [p for p in range(2, 51) if is_prime(p)]
    done = 0
    while done < 20:
        pool = rng.sample(primes, 4)
        good = []
        mult = []
        irred = []
        if rng.random() < 0.8:
            p = pool[0]
            amax = 1
            while amax * amax < 4 * p:
                amax += 1
            good.append((p, rng.randrange(-(amax - 1), amax)))
        if rng.random() < 0.9:
            a_star = rng.choice((1, -1))
            c = rng.randrange(1, 3) if a_star == -1 else rng.randrange(1, 6)
            mult.append((pool[1], a_star, c))
        if rng.random() < 0.5:
            irred.append(rng.choice((2, 3, 5, 7)))
        spec = ForgeSpec(good=tuple(good), mult=tuple(mult), irreducible=tuple(irred))
        res = crt_assemble(spec, seed=done)
        assert res.ok, (spec, res.ledger)
        done += 1


def test_from_dict_roundtrip():
    d = {"P": [[5, 2]], "L": [[3, 1, 2]], "Q": [7]}
    spec = ForgeSpec.from_dict(d)
    assert spec.to_dict() == d
