import pytest
from hypothesis import given, settings, strategies as st

import oracles
from torsorlift.corpus import extensions, q8_over_v4, s3_over_z2
from torsorlift.errors import InputError, PreconditionError
from torsorlift.ext import (Extension, action_of_splitting, check_exact, complements, default_section,
                            direct_product_extension, factor_set, h1, induced_action, is_coboundary,
                            normalized_sections, section_change, splitting_classes, splitting_from_coboundary)
from torsorlift.grp import GAction, Hom, cyclic, homomorphisms, klein_four, symmetric, trivial

EXTS = extensions()


def test_s3_exact_and_split():
    e = s3_over_z2()
    assert check_exact(e) == []
    comps = complements(e)
    assert len(comps) == 3
    S3 = e.M
    assert sorted(sorted(S3.names[x] for x in k) for k in comps) == [["(12)", "e"], ["(13)", "e"], ["(23)", "e"]]
    assert len(splitting_classes(e)) == 1


def test_q8_exact_and_nonsplit():
    e = q8_over_v4()
    assert check_exact(e) == []
    assert complements(e) == []
    with pytest.raises(PreconditionError):
        splitting_classes(e)
    for s in normalized_sections(e):
        c = factor_set(e, s)
        assert any(e.M.names[e.incl(v)] == "-1" for row in c.values for v in row)
        assert is_coboundary(e, c) is None


def test_exactness_failure_reports_surjectivity():
    e = s3_over_z2()
    Z3 = cyclic(3)
    bad = Extension(e.L, e.M, Z3, e.incl, Hom(e.M, Z3, (0,) * 6))
    fails = check_exact(bad)
    assert any(f.condition == "proj surjective" for f in fails)


def test_splitting_section_has_trivial_factor_set():
    e = s3_over_z2()
    for s in splitting_classes(e):
        c = factor_set(e, s.images)
        assert c.is_trivial()
        assert is_coboundary(e, c) == (e.L.e,) * e.N.order


def test_s3_sections_are_all_homomorphisms():
    # every element over the nontrivial coset of A3 is an involution
    e = s3_over_z2()
    assert all(factor_set(e, s).is_trivial() for s in normalized_sections(e))


def test_non_homomorphic_section_gives_nontrivial_coboundary():
    e = EXTS["Z6/Z3"]
    s = (0, 1)  # 1 + 1 = 2 is not 0 in Z6
    c = factor_set(e, s)
    assert not c.is_trivial()
    b = is_coboundary(e, c)
    assert b is not None
    split = splitting_from_coboundary(e, s, b)
    assert all(e.proj(split(n)) == n for n in e.N.elements)


@pytest.mark.parametrize("name", sorted(EXTS))
def test_factor_sets_satisfy_identity_and_split_iff_coboundary(name):
    e = EXTS[name]
    split = bool(complements(e))
    assert len(complements(e)) == oracles.complement_count(e)
    secs = list(normalized_sections(e))
    assert len(secs) == len(oracles.sections(e))
    for s in secs[:16]:
        c = factor_set(e, s)
        assert c.identity_failures() == []
        assert all(c(a, b) == v for (a, b), v in oracles.factor_values(e, s).items())
        assert (is_coboundary(e, c) is not None) == split == oracles.coboundary_exists(e, s)


@pytest.mark.parametrize("name", sorted(EXTS))
def test_section_change_is_coboundary(name):
    e = EXTS[name]
    secs = list(normalized_sections(e))[:6]
    for s in secs:
        for s2 in secs:
            beta, ok = section_change(e, s, s2)
            assert ok
            # recheck the transport law against the oracle's factor values
            L, N = e.L, e.N
            c, c2 = oracles.factor_values(e, s), oracles.factor_values(e, s2)
            act = induced_action(e, s)
            for x in N.elements:
                for y in N.elements:
                    rhs = L.prod(beta[x], act[x][beta[y]], c[(x, y)], L.inv(beta[N.mul(x, y)]))
                    assert c2[(x, y)] == rhs


@pytest.mark.parametrize("name", sorted(EXTS))
def test_splitting_classes_equal_h1(name):
    e = EXTS[name]
    if not complements(e):
        return
    sc = splitting_classes(e)
    for s in sc:
        act = action_of_splitting(e, s)
        res = h1(e.N, e.L, act)
        assert res.count == len(sc)
        assert res.count == oracles.crossed_hom_classes(e.N, e.L, act.table)


def test_h1_examples():
    Z2, Z3 = cyclic(2), cyclic(3)
    inversion = GAction(Z2, 3, ((0, 1, 2), (0, 2, 1)))
    r = h1(Z2, Z3, inversion)
    assert r.count == 1 and r.crossed_homs == 3
    triv = GAction(Z2, 2, ((0, 1), (0, 1)))
    assert h1(Z2, Z2, triv).count == 2
    V = klein_four()
    assert h1(V, Z3, GAction(V, 3, ((0, 1, 2),) * 4)).count == len(homomorphisms(V, Z3)) == 1
    assert h1(Z3, Z2, GAction(Z3, 2, ((0, 1),) * 3)).count == 1


def test_h1_rejects_non_automorphism_action():
    Z2, Z3 = cyclic(2), cyclic(3)
    with pytest.raises(InputError):
        h1(Z2, Z3, GAction(Z2, 3, ((0, 1, 2), (1, 0, 2))))


def test_direct_product_examples():
    e = direct_product_extension(cyclic(2), cyclic(2))
    assert len(splitting_classes(e)) == 2
    t = direct_product_extension(trivial(), symmetric(3))
    assert len(splitting_classes(t)) == 1
    e3 = direct_product_extension(cyclic(3), cyclic(2))
    # the factor {0} x Z2 is encoded as the pairs (0, n)
    assert frozenset({0, 1}) in complements(e3)


def test_induced_action_is_by_automorphisms():
    for e in EXTS.values():
        a = induced_action(e, default_section(e))
        L = e.L
        for n in e.N.elements:
            assert all(a[n][L.mul(x, y)] == L.mul(a[n][x], a[n][y]) for x in L.elements for y in L.elements)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(EXTS)), st.data())
def test_random_section_pairs(name, data):
    e = EXTS[name]
    secs = list(normalized_sections(e))
    s = data.draw(st.sampled_from(secs))
    s2 = data.draw(st.sampled_from(secs))
    c, c2 = factor_set(e, s), factor_set(e, s2)
    beta, ok = section_change(e, s, s2)
    assert ok
    assert (is_coboundary(e, c) is None) == (is_coboundary(e, c2) is None)
