import random

import pytest

from weakram.mobius import MobiusElem, mobius_identity
from weakram.rings import GaloisRing, ModularRing, RingError
from weakram.series import (TruncatedSeries, identity_series,
                            ramification_break, series_compose,
                            series_from_mobius)


def vals(series):
    return [c.payload for c in series.coeffs]


def test_expansion_of_unipotent():
    F5 = GaloisRing(5, 1, 1)
    s = series_from_mobius(MobiusElem(F5, 1, 0, 1, 1), 4)
    assert [v[0] for v in vals(s)] == [0, 1, 4, 1]


def test_identity_matrix_expands_to_y():
    F5 = GaloisRing(5, 1, 1)
    s = series_from_mobius(mobius_identity(F5), 4)
    assert s == identity_series(F5, 4)


def test_constant_term_mod_27():
    Z27 = ModularRing(27)
    s = series_from_mobius(MobiusElem(Z27, 1, -3, 1, -2), 1)
    assert s.coeffs[0].payload == 15


def test_nonunit_denominator_rejected():
    Z27 = ModularRing(27)
    with pytest.raises(Exception):
        series_from_mobius(MobiusElem(Z27, 1, 1, 1, 3), 3)


def test_composition_closes_under_mobius_product():
    F5 = GaloisRing(5, 1, 1)
    m = MobiusElem(F5, 1, 0, 1, 1)
    s = series_from_mobius(m, 4)
    ss = series_compose(s, s)
    assert [v[0] for v in vals(ss)] == [0, 1, 3, 4]
    assert ss == series_from_mobius(m * m, 4)


def test_compose_with_identity():
    F5 = GaloisRing(5, 1, 1)
    f = TruncatedSeries(F5, (0, 2, 3, 1), 4)
    assert series_compose(f, identity_series(F5, 4)) == f


def test_compose_requires_nilpotent_constant():
    F5 = GaloisRing(5, 1, 1)
    f = identity_series(F5, 3)
    g = TruncatedSeries(F5, (1, 1, 0), 3)
    with pytest.raises(RingError):
        series_compose(f, g)


def test_ring_and_truncation_mismatch():
    F5, F7 = GaloisRing(5, 1, 1), GaloisRing(7, 1, 1)
    with pytest.raises(RingError):
        identity_series(F5, 3) + identity_series(F7, 3)
    with pytest.raises(RingError):
        identity_series(F5, 3) + identity_series(F5, 4)


def test_p_fold_self_composition_is_identity():
    for p, s in ((2, 2), (3, 2), (5, 1), (5, 2)):
        F = GaloisRing(p, 1, s)
        for u in F.elements():
            if u.is_zero():
                continue
            t = series_from_mobius(
                MobiusElem(F, F.one(), F.zero(), u, F.one()), 5)
            acc = t
            for _ in range(p - 1):
                acc = series_compose(t, acc)
            assert acc.is_identity()


def _random_homography(F, rng, nilpotent_b=True):
    while True:
        a, c, d = (F.sample(rng) for _ in range(3))
        b = F.zero() if nilpotent_b else F.sample(rng)
        try:
            return MobiusElem(F, a, b, c, d)
        except RingError:
            continue


def test_expansion_is_a_monoid_morphism():
    # expansion of M N equals composition of expansions, 1000 random pairs
    rng = random.Random(99)
    fields = [GaloisRing(5, 1, 1), GaloisRing(2, 1, 2), GaloisRing(3, 1, 2)]
    for _ in range(1000):
        F = fields[rng.randrange(len(fields))]
        M = _random_homography(F, rng)
        N = _random_homography(F, rng)
        lhs = series_from_mobius(M * N, 5)
        rhs = series_compose(series_from_mobius(M, 5),
                             series_from_mobius(N, 5))
        assert lhs == rhs


def test_composition_associativity_random():
    rng = random.Random(1234)
    F = GaloisRing(5, 1, 2)
    for _ in range(300):
        f = TruncatedSeries(F, tuple(F.sample(rng) for _ in range(5)), 5)
        g = TruncatedSeries(F, (F.zero(),) + tuple(F.sample(rng) for _ in range(4)), 5)
        h = TruncatedSeries(F, (F.zero(),) + tuple(F.sample(rng) for _ in range(4)), 5)
        assert series_compose(series_compose(f, g), h) == \
            series_compose(f, series_compose(g, h))


def test_ramification_breaks():
    F5 = GaloisRing(5, 1, 1)
    s = series_from_mobius(MobiusElem(F5, 1, 0, 1, 1), 5)
    assert ramification_break(s) == 1
    tame = TruncatedSeries(F5, (0, 2, 0, 0, 0), 5)
    assert ramification_break(tame) == 0
    assert ramification_break(identity_series(F5, 5)) is None


def test_break_one_for_every_translation():
    for p, s in ((2, 2), (5, 1), (2, 3), (3, 2), (5, 2)):
        F = GaloisRing(p, 1, s)
        for u in F.elements():
            if u.is_zero():
                continue
            t = series_from_mobius(
                MobiusElem(F, F.one(), F.zero(), u, F.one()), 4)
            assert ramification_break(t) == 1


def test_truncation_is_respected():
    F5 = GaloisRing(5, 1, 1)
    f = series_from_mobius(MobiusElem(F5, 1, 0, 1, 1), 3)
    g = series_from_mobius(MobiusElem(F5, 1, 0, 2, 1), 3)
    assert len((f * g).coeffs) == 3
    assert len(series_compose(f, g).coeffs) == 3
