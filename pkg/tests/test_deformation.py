import itertools

import pytest

from weakram.deformation import (GroupSpec, VersalPresentation, cyclic_versal_ring,
                                 equichar_generator, equichar_ring,
                                 generators_from_spec, group_spec,
                                 lift_generators, reduce_matrix,
                                 verify_relations, versal_table)
from weakram.mobius import MobiusElem, mobius_identity, mobius_pow, pgl_order, projective_equal
from weakram.rings import GaloisRing, RingError
from weakram.series import ramification_break, series_from_mobius


def test_group_spec_validation():
    # n must divide p^t - 1
    with pytest.raises(RingError):
        group_spec(5, 1, 3)
    spec = group_spec(2, 2, 3)
    assert spec.s == 2
    assert spec.group_order() == 12
    F4 = GaloisRing(2, 1, 2)
    with pytest.raises(RingError):
        GroupSpec(2, 2, 1, F4, (F4.one(), F4.one()), None)  # dependent basis


def test_table_rows_match_expected():
    row = versal_table(group_spec(5, 1, 1))
    assert row.characteristic == 0
    assert "psi_5" in row.ring_label

    row = versal_table(group_spec(2, 2, 3))
    assert row.characteristic == 0
    assert "j^2+j+1" in row.ring_label

    row = versal_table(group_spec(5, 2, 1))
    assert row.characteristic == 5
    assert row.ring_label.startswith("k[[alpha,x1]]")

    row = versal_table(group_spec(3, 2, 1))
    assert row.characteristic == 3
    assert row.ring_label == "k[[x1]]"


def test_table_more_rows():
    assert versal_table(group_spec(5, 0, 4)).characteristic == 0
    assert versal_table(group_spec(2, 1, 1)).characteristic == 0
    assert versal_table(group_spec(2, 2, 1)).characteristic == 0
    assert versal_table(group_spec(3, 1, 2)).characteristic == 0
    assert versal_table(group_spec(7, 1, 2)).characteristic == 0
    assert versal_table(group_spec(5, 1, 4)).characteristic == 5
    assert versal_table(group_spec(2, 3, 1)).characteristic == 2
    assert versal_table(group_spec(2, 3, 7)).characteristic == 2
    assert versal_table(group_spec(5, 2, 2)).characteristic == 5
    # the big p = 2, t > 2 presentation is data only
    row = versal_table(group_spec(2, 3, 1))
    assert row.ring is None
    assert any("x1+" in r for r in row.relations)


def test_characteristic_matches_ring_model():
    for args in ((5, 1, 1), (2, 2, 3), (5, 2, 1), (3, 2, 1), (7, 1, 2)):
        row = versal_table(group_spec(*args))
        if row.ring is not None and row.characteristic != 0:
            assert row.ring.characteristic == row.characteristic
        if row.characteristic == 0 and row.ring is not None:
            assert row.ring.characteristic == 0


def test_equichar_generator_identity_at_zero():
    spec = group_spec(5, 2, 1)
    ring = equichar_ring(spec)
    zero_assign = {nm: ring.zero() for nm in ring.vars}
    m = equichar_generator(spec.field.zero(), spec, zero_assign)
    assert m == mobius_identity(ring)


def test_equichar_generator_reduction_is_translation():
    spec = group_spec(5, 2, 1)
    ring = equichar_ring(spec)
    zero_assign = {nm: ring.zero() for nm in ring.vars}
    u = spec.basis[0]
    m = equichar_generator(u, spec, zero_assign)
    assert m.a == ring.one() and m.b.is_zero() and m.d == ring.one()
    assert m.c == ring.const(u)


def test_equichar_family_orders_and_commutation():
    spec = group_spec(5, 2, 1)
    ring = equichar_ring(spec)
    assigns = {nm: ring.var(nm) for nm in ring.vars}
    mats = []
    for coords in itertools.product(range(5), repeat=2):
        u = spec.field.zero()
        for c, b in zip(coords, spec.basis):
            u = u + b * c
        mats.append((coords, equichar_generator(u, spec, assigns)))
    for coords, m in mats:
        if coords != (0, 0):
            assert pgl_order(m, 10) == 5
    for (c1, m1), (c2, m2) in itertools.combinations(mats, 2):
        assert projective_equal(m1 * m2, m2 * m1) is not None


def test_equichar_family_is_additive():
    spec = group_spec(5, 2, 1)
    ring = equichar_ring(spec)
    assigns = {nm: ring.var(nm) for nm in ring.vars}

    def gen(coords):
        u = spec.field.zero()
        for c, b in zip(coords, spec.basis):
            u = u + b * c
        return equichar_generator(u, spec, assigns)

    for c1, c2 in itertools.combinations(itertools.product(range(5), repeat=2), 2):
        m12 = gen(c1) * gen(c2)
        msum = gen(tuple((a + b) % 5 for a, b in zip(c1, c2)))
        assert projective_equal(m12, msum) is not None


def test_literal_convention_breaks_commutativity():
    # recorded experiment: the constant translation term keeps every order
    # at p but destroys commutativity, so it is not used by default
    spec = group_spec(5, 2, 1)
    ring = equichar_ring(spec)
    assigns = {nm: ring.var(nm) for nm in ring.vars}
    m0 = equichar_generator(spec.field.zero(), spec, assigns,
                            convention="literal")
    m1 = equichar_generator(spec.basis[1], spec, assigns,
                            convention="literal")
    assert pgl_order(m1, 10) == 5
    assert projective_equal(m0 * m1, m1 * m0) is None


def test_equichar_rejects_small_p():
    spec = group_spec(3, 2, 1)
    with pytest.raises(RingError):
        equichar_generator(spec.basis[0], spec)


def test_cyclic_lift_small_p():
    pres = lift_generators("CyclicP", 3)
    m = pres.generator("sigma_u1")
    cube = mobius_pow(m, 3)
    assert cube.is_scalar()


def test_dp_relations():
    for p in (5, 7, 11):
        pres = lift_generators("Dp", p)
        m, g = pres.generator("sigma_u1"), pres.generator("g")
        assert mobius_pow(m, p).is_scalar()
        assert mobius_pow(g, 2) == mobius_identity(pres.ring)
        assert mobius_pow(g * m, 2) == mobius_identity(pres.ring)
        assert m.det() == pres.ring.one()


def test_s3_relations_exact():
    pres = lift_generators("S3", 3)
    m, g = pres.generator("sigma_u1"), pres.generator("g")
    Z = pres.ring
    # char poly of m is X^2 + X + 1, so m^3 = 1 exactly
    assert m.a + m.d == -Z.one()
    assert m.det() == Z.one()
    assert mobius_pow(m, 3) == mobius_identity(Z)
    assert mobius_pow(g, 2) == mobius_identity(Z)
    assert mobius_pow(g * m, 2) == mobius_identity(Z)


def test_klein_symbolic():
    pres = lift_generators("Klein", 2)
    R = pres.ring
    s1, su = pres.generator("sigma_u1"), pres.generator("sigma_u2")
    one, alpha, ut = R.one(), R.var("alpha"), R.var("ut")
    sq1, squ = s1 * s1, su * su
    assert sq1.is_scalar() and sq1.a == one + alpha
    assert squ.is_scalar() and squ.a == one - alpha * ut * ut - 2 * ut
    assert R.is_unit_formal(sq1.a.payload)
    assert R.is_unit_formal(squ.a.payload)
    lam = projective_equal(s1 * su, su * s1)
    assert lam == -one


def test_verify_relations_pass_and_fail():
    spec = group_spec(5, 1, 2)
    rep = verify_relations(lift_generators("Dp", 5), spec)
    assert rep["all_ok"]

    spec2 = group_spec(2, 2, 1)
    pres = lift_generators("Klein", 2)
    rep = verify_relations(pres, spec2)
    assert rep["all_ok"]
    lam = [r for r in rep["relations"] if "lambda" in r["relation"]]
    assert lam and lam[0]["scalar"] == [[[0, 0], -1]]

    R = pres.ring
    corrupted = VersalPresentation(
        group=pres.group, ring=R, ring_label=pres.ring_label,
        characteristic=0,
        generators=(pres.generators[0],
                    ("sigma_u2", MobiusElem(R, R.one(), R.var("ut"),
                                            R.var("ut"), -R.one()))))
    rep2 = verify_relations(corrupted, spec2)
    assert not rep2["all_ok"]
    failing = [r["relation"] for r in rep2["relations"] if not r["ok"]]
    assert failing


def test_char_zero_rows_verify_exactly():
    cases = [("CyclicP", 5, (5, 1, 1)), ("CyclicP", 3, (3, 1, 1)),
             ("Cyclic2", 2, (2, 1, 1)), ("Klein", 2, (2, 2, 1)),
             ("Dp", 7, (7, 1, 2)), ("S3", 3, (3, 1, 2))]
    for case, p, spec_args in cases:
        rep = verify_relations(lift_generators(case, p), group_spec(*spec_args))
        assert rep["all_ok"], (case, rep)


def test_residue_reduction_has_break_one():
    # reduction of each characteristic-0 lift is weakly ramified
    F5 = GaloisRing(5, 1, 1)
    pres = lift_generators("Dp", 5)
    m = reduce_matrix(pres.generator("sigma_u1"), F5)
    assert ramification_break(series_from_mobius(m, 5)) == 1
    g = reduce_matrix(pres.generator("g"), F5)
    assert ramification_break(series_from_mobius(g, 5)) == 0

    F2 = GaloisRing(2, 1, 1)
    pres2 = lift_generators("Cyclic2", 2)
    m2 = reduce_matrix(pres2.generator("sigma_u1"), F2)
    assert ramification_break(series_from_mobius(m2, 5)) == 1

    F4 = GaloisRing(2, 1, 2)
    pres4 = lift_generators("Klein", 2)
    om = F4.elem((0, 1))
    m1 = reduce_matrix(pres4.generator("sigma_u1"), F4, {"ut": F4.one()})
    mu = reduce_matrix(pres4.generator("sigma_u2"), F4, {"ut": om})
    assert ramification_break(series_from_mobius(m1, 5)) == 1
    assert ramification_break(series_from_mobius(mu, 5)) == 1


def test_cyclic_power_ties_to_ideal_membership():
    # m^p scalar over Z[alpha]/(psi) mirrors psi dividing S_{p-1}(1 + X/2)
    from weakram.chebyshev import psi_ideal_check
    for p in (5, 7):
        pres = lift_generators("CyclicP", p)
        assert mobius_pow(pres.generator("sigma_u1"), p).is_scalar()
        rep = psi_ideal_check(p)
        assert rep["second_kind_divisible"]


def test_a4_presentation_cached_and_valid():
    pres = lift_generators("A4", 2)
    spec = group_spec(2, 2, 3)
    rep = verify_relations(pres, spec)
    assert rep["all_ok"]
    assert lift_generators("A4", 2) is pres  # cached


def test_case_p_consistency_errors():
    with pytest.raises(RingError):
        lift_generators("Dp", 3)
    with pytest.raises(RingError):
        lift_generators("S3", 5)
    with pytest.raises(RingError):
        lift_generators("Klein", 3)
    with pytest.raises(RingError):
        lift_generators("A4", 3)
