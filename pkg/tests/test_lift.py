import pytest
from hypothesis import given, settings, strategies as st

import oracles
from torsorlift.cech import Cocycle1, Nerve, cohomologous1
from torsorlift.corpus import clutch_cases, homogeneous_specs, instances, quaternionic_k4, rotation_s3
from torsorlift.errors import InputError, PreconditionError
from torsorlift.grp import Hom, cyclic, find_isomorphism, homomorphisms, quaternion, symmetric
from torsorlift.lift import (EquivariantInstance, GSpace, Lift, aut_group, check_c1, check_c2, check_c3,
                             clutch_two_cover, compose, direct_lifting_search, enumerate_liftings,
                             equivariant_automorphisms, gauge_centralizer_order, gauge_iso_check,
                             homogeneous_bundle, lifts_of, obstruction)

INSTANCES = instances()
NAMES = sorted(INSTANCES)


def test_gspace_rejects_non_action():
    n = Nerve.cycle(3)
    with pytest.raises(InputError):
        GSpace.from_generators(n, cyclic(2), {1: (1, 2, 0)})
    with pytest.raises(InputError):
        # swapping charts 0 and 1 on a path 0-1-2 does not preserve pairs
        GSpace.from_generators(Nerve.path(3), cyclic(2), {1: (1, 0, 2)})


def test_instance_rejects_mismatched_nerves():
    with pytest.raises(InputError):
        EquivariantInstance(GSpace.trivial_action(Nerve.path(2), cyclic(2)), Cocycle1.identity(Nerve.cycle(3), cyclic(2)))


@pytest.mark.parametrize("name", NAMES)
def test_lifts_match_oracle(name):
    inst = INSTANCES[name]
    for g in inst.G.elements:
        got = [l.lam for l in lifts_of(inst, g)]
        assert got == sorted(oracles.lifts(inst, g))


def test_trivial_swap_lifts():
    inst = INSTANCES["trivial-swap"]
    assert lifts_of(inst, 1) == [Lift(1, (0, 0)), Lift(1, (1, 1))]


def test_asymmetric_holonomy_fails_c1():
    assert check_c1(INSTANCES["asymmetric-holonomy"]) == (False, [1])
    with pytest.raises(PreconditionError):
        obstruction(INSTANCES["asymmetric-holonomy"])
    with pytest.warns(UserWarning):
        lg = aut_group(INSTANCES["asymmetric-holonomy"])
    assert not lg.c1 and lg.group.order == len(oracles.lifts(INSTANCES["asymmetric-holonomy"], 0))


@pytest.mark.parametrize("name", [n for n in NAMES if n != "asymmetric-holonomy"])
def test_lift_group_is_extension(name):
    inst = INSTANCES[name]
    lg = aut_group(inst)
    assert lg.c1
    gauge, _ = lg.gauge()
    assert lg.group.order == gauge.order * inst.G.order
    assert gauge.order == len(oracles.lifts(inst, inst.G.e)) == gauge_centralizer_order(inst)
    assert lg.group.is_normal(lg.kernel)
    for a in lg.lifts:
        for b in lg.lifts:
            ab = compose(inst, a, b)
            assert ab.lam in oracles.lifts(inst, ab.g)


@pytest.mark.parametrize("name", [n for n in NAMES if n != "asymmetric-holonomy"])
def test_split_iff_lifting_action(name):
    inst = INSTANCES[name]
    ob = obstruction(inst)
    direct = direct_lifting_search(inst)
    assert ob.split == bool(direct) == oracles.lifting_action_exists(inst)
    assert ob.split == (ob.complements > 0)
    if ob.split:
        res = enumerate_liftings(inst)
        assert res.cross_check
        for fam in res.representatives:
            assert check_c2(inst, fam) == [] and check_c3(inst, fam) == []
    else:
        with pytest.raises(PreconditionError):
            enumerate_liftings(inst)


def test_mobius_rotation_is_nonsplit_z8():
    inst = INSTANCES["mobius-Z4"]
    ob = obstruction(inst)
    assert not ob.split
    assert find_isomorphism(ob.lift_group.group, cyclic(8)) is not None


def test_rotation_s3_is_cyclic_of_order_nine():
    ob = obstruction(rotation_s3())
    assert not ob.split and find_isomorphism(ob.lift_group.group, cyclic(9)) is not None


def test_quaternionic_lift_group():
    inst = quaternionic_k4()
    ob = obstruction(inst)
    M = ob.lift_group.group
    assert find_isomorphism(M, quaternion()) is not None
    gauge, _ = ob.lift_group.gauge()
    assert gauge.order == 2 and ob.lift_group.kernel <= M.center
    assert not ob.split and direct_lifting_search(inst) == []
    assert not oracles.lifting_action_exists(inst)


def test_trivial_fixed_lifting_classes():
    res = enumerate_liftings(INSTANCES["trivial-fixed"])
    # Hom(Z2, Z2) has two elements, gauge conjugation is trivial
    assert res.count == 2 == res.h1 == res.splitting_classes


def test_trivial_h_is_g():
    lg = aut_group(INSTANCES["trivial-H"])
    assert find_isomorphism(lg.group, cyclic(3)) is not None


def test_trivial_g_gauge_is_centralizer():
    lg = aut_group(INSTANCES["trivial-G"])
    assert lg.group.order == 3


def test_workers_do_not_change_lift_group():
    inst = quaternionic_k4()
    a, b = aut_group(inst, workers=1), aut_group(inst, workers=3)
    assert a.lifts == b.lifts and (a.group.table == b.group.table).all()


def test_gauge_iso_examples():
    rep = gauge_iso_check(INSTANCES["mobius-Z4"])
    assert rep.ok and len(rep.iso) == 2
    rep = gauge_iso_check(INSTANCES["rotation-S3"])
    assert not rep.ok and "H is not abelian" in rep.unmet
    rep = gauge_iso_check(INSTANCES["mobius-reflection"])
    assert not rep.ok and "G is not transitive on charts" in rep.unmet


@pytest.mark.parametrize("key", sorted(homogeneous_specs()))
def test_homogeneous_model(key):
    G, L, H, phi = homogeneous_specs()[key]
    hb, inst = homogeneous_bundle(G, L, H, phi)
    assert hb.check() == []
    assert len(hb.points) == G.order * H.order // len(L)
    assert len(hb.cosets) == G.order // len(L)
    fam, cert = equivariant_automorphisms(hb)
    cent = oracles.centralizer(H, {phi[l] for l in L})
    assert fam == frozenset(cent)
    if cert.complete:
        assert len(cert.found) == len(fam) and cert.outside_family == 0
    else:
        assert len(hb.points) > 12
    if inst is not None:
        assert check_c1(inst)[0]
        for g in G.elements:
            assert Lift(g, hb.chart_lambda(g)) in lifts_of(inst, g)


def test_homogeneous_examples():
    S3 = symmetric(3)
    G, L, H, phi = homogeneous_specs()["S3-A3-S3"]
    hb, inst = homogeneous_bundle(G, L, H, phi)
    assert len(hb.points) == 12
    fam, cert = equivariant_automorphisms(hb)
    assert {S3.names[a] for a in fam} == {"e", "(123)", "(132)"}
    assert cert.complete and len(cert.found) == 3
    G, L, H, phi = homogeneous_specs()["S3-Z2-Z3-trivial"]
    hb, inst = homogeneous_bundle(G, L, H, phi)
    assert gauge_iso_check(inst).ok


@pytest.mark.parametrize("key", ["S3-1-Z2", "Z4-1-Z3", "V4-1-S3"])
def test_trivial_l_gives_trivial_bundle(key):
    G, L, H, phi = homogeneous_specs()[key]
    _, inst = homogeneous_bundle(G, L, H, phi)
    assert cohomologous1(inst.bundle, Cocycle1.identity(inst.nerve, H)) is not None


def test_homogeneous_rejects_bad_phi():
    S3 = symmetric(3)
    A3 = [S3.e, S3.index("(123)"), S3.index("(132)")]
    with pytest.raises(InputError):
        homogeneous_bundle(S3, A3, cyclic(2), {S3.e: 0, A3[1]: 1, A3[2]: 1})
    with pytest.raises(InputError):
        homogeneous_bundle(S3, [S3.e, S3.index("(12)"), S3.index("(13)")], cyclic(2), {})


def test_clutch_examples():
    Z2 = cyclic(2)
    idz, triv = homomorphisms(Z2, Z2)[1], homomorphisms(Z2, Z2)[0]
    assert idz.images == (0, 1) and triv.images == (0, 0)
    r = clutch_two_cover(Z2, idz, idz, 1)
    assert r.instance is not None and r.failing == ()
    r = clutch_two_cover(Z2, idz, triv, 0)
    assert r.instance is None and r.failing == (1,)


@pytest.mark.parametrize("gamma,H", [(cyclic(2), cyclic(2)), (cyclic(3), symmetric(3)), (cyclic(2), symmetric(3))],
                         ids=["Z2-Z2", "Z3-S3", "Z2-S3"])
def test_clutch_scan(gamma, H):
    for rs, rn, c in clutch_cases(gamma, H):
        r = clutch_two_cover(gamma, rs, rn, c)
        cond = all(H.mul(rn(x), c) == H.mul(c, rs(x)) for x in gamma.elements)
        assert (r.instance is not None) == cond
        if cond:
            # the family is a lift of every element and the composition law holds
            inst = r.instance
            for l in r.lifting:
                assert l.lam in oracles.lifts(inst, l.g)
            assert direct_lifting_search(inst)
            assert check_c3(inst, r.lifting) == []


def test_clutch_rejects_mismatched_homs():
    with pytest.raises(InputError):
        clutch_two_cover(cyclic(2), Hom(cyclic(2), cyclic(2), (0, 1)), Hom(cyclic(2), cyclic(4), (0, 2)), 0)


def test_c2_detects_bad_family():
    inst = INSTANCES["trivial-fixed"]
    # a family that is not a homomorphism on the stabilizer
    fam = (Lift(0, (1, 1)), Lift(1, (1, 1)))
    assert check_c2(inst, fam)


def test_c3_detects_mismatch():
    n = Nerve.path(2)
    Z2 = cyclic(2)
    inst = EquivariantInstance(GSpace.trivial_action(n, Z2), Cocycle1.identity(n, Z2))
    assert check_c3(inst, (Lift(0, (0, 0)), Lift(1, (0, 1))))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([n for n in NAMES if n != "asymmetric-holonomy"]), st.data())
def test_composition_is_associative_on_lifts(name, data):
    inst = INSTANCES[name]
    lg = aut_group(inst)
    a, b, c = (data.draw(st.sampled_from(lg.lifts)) for _ in range(3))
    assert compose(inst, compose(inst, a, b), c) == compose(inst, a, compose(inst, b, c))
    assert compose(inst, a, b).g == inst.G.mul(a.g, b.g)
