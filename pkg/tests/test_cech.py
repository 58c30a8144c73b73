import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from torsorlift.cech import (Chain1, Cocycle1, Cocycle2, Nerve, coboundary2, coboundary2_witness, cohomologous1,
                             correct_chain, glue, h1_classes, h2_classes, is_cocycle, two_cocycle_of_chain)
from torsorlift.corpus import band_chains, bipyramid, projective_plane, two_triangles
from torsorlift.errors import InputError, PreconditionError, UnsupportedError
from torsorlift.grp import conjugacy_classes, cyclic, dihedral, klein_four, quaternion, symmetric, trivial

Z2, Z3, S3 = cyclic(2), cyclic(3), symmetric(3)


def test_nerve_validation():
    with pytest.raises(InputError):
        Nerve(3, ((0, 1),), ((0, 1, 2),))
    with pytest.raises(InputError):
        Nerve(2, ((0, 0),))
    n = Nerve(3, ((1, 0), (2, 1), (0, 2)))
    assert n.pairs == ((0, 1), (0, 2), (1, 2))


def test_octahedron_shape():
    o = Nerve.octahedron()
    assert (o.charts, len(o.pairs), len(o.triples)) == (6, 12, 8)
    assert o.four_cliques() == []


def test_identity_chain_is_cocycle():
    n = Nerve.simplex(3)
    assert is_cocycle(Chain1.identity(n, S3)) == (True, [])


def test_triangle_chasles_failure():
    n = Nerve.simplex(3)
    # in Z2 the values 1, 1, 0 do satisfy 1 + 1 = 0; the failing chain needs g(0,2) = 1
    ok, bad = is_cocycle(Chain1.from_mapping(n, Z2, {(0, 1): 1, (1, 2): 1, (0, 2): 0}))
    assert ok
    ok, bad = is_cocycle(Chain1.from_mapping(n, Z2, {(0, 1): 1, (1, 2): 1, (0, 2): 1}))
    assert not ok and bad == [(0, 1, 2)]
    n2 = Nerve(3, n.pairs)
    assert is_cocycle(Chain1.from_mapping(n2, Z2, {(0, 1): 1, (1, 2): 1, (0, 2): 1}))[0]


def test_reverse_orientation_inverts():
    n = Nerve.cycle(3)
    c = Chain1.from_mapping(n, S3, {(2, 0): S3.index("(123)")})
    assert c(0, 2) == S3.index("(132)") and c(2, 0) == S3.index("(123)")


def test_cocycle_class_rejects_bad_chain():
    n = Nerve.simplex(3)
    with pytest.raises(InputError):
        Cocycle1(n, Z2, (1, 1, 1))


def test_two_cocycle_examples():
    n = Nerve.simplex(3)
    assert two_cocycle_of_chain(Chain1.identity(n, Z2)).values == (0,)
    h = Chain1.from_mapping(n, Z2, {(0, 1): 1, (1, 2): 1, (0, 2): 1})
    assert two_cocycle_of_chain(h).values == (1,)


def test_two_cocycle_band_mismatch_names_triple():
    n = Nerve.simplex(3)
    Z4 = cyclic(4)
    h = Chain1.from_mapping(n, Z4, {(0, 1): 1})
    with pytest.raises(InputError, match=r"\(0, 1, 2\)"):
        two_cocycle_of_chain(h, {0, 2})


def test_two_cocycle_requires_central_band():
    n = Nerve.simplex(3)
    with pytest.raises(UnsupportedError):
        two_cocycle_of_chain(Chain1.identity(n, S3), {S3.e, S3.index("(123)"), S3.index("(132)")})


def test_defect_closed_on_four_clique():
    n = Nerve.simplex(4)
    Q8 = quaternion()
    # fail Chasles on two faces, defect stays in the centre
    h = Chain1.from_mapping(n, Q8, {(0, 1): Q8.index("-1"), (2, 3): Q8.index("-1"), (0, 2): Q8.index("i"),
                                    (0, 3): Q8.index("i"), (1, 2): Q8.index("i"), (1, 3): Q8.index("i")})
    c = two_cocycle_of_chain(h, Q8.center)
    assert sum(v != Q8.e for v in c.values) >= 2
    assert c.clique_failures() == []
    # brute evaluation of the alternating sum on the clique
    G = Q8
    a, b, cc, d = (c(*t) for t in [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)])
    assert G.prod(a, G.inv(b), cc, G.inv(d)) == G.e


def test_cocycle2_alternating():
    n = Nerve.simplex(3)
    c = Cocycle2(n, Z3, frozenset(Z3.elements), (1,))
    for p in itertools.permutations((0, 1, 2)):
        odd = sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2
        assert c(*p) == (2 if odd else 1)


def test_cohomologous_examples():
    n = Nerve.cycle(3)
    a = Cocycle1.from_mapping(n, S3, {(0, 2): S3.index("(123)")})
    assert cohomologous1(a, a) == (S3.e,) * 3
    b = Cocycle1.from_mapping(n, S3, {(0, 2): S3.index("(132)")})
    lam = cohomologous1(a, b)
    assert lam is not None
    assert all(b(i, j) == S3.prod(lam[i], a(i, j), S3.inv(lam[j])) for i, j in n.pairs)
    t = Cocycle1.from_mapping(n, S3, {(0, 2): S3.index("(12)")})
    assert cohomologous1(t, a) is None


@pytest.mark.parametrize("H", [Z2, Z3, S3, quaternion()], ids=["Z2", "Z3", "S3", "Q8"])
def test_circle_classes_are_conjugacy_classes(H):
    n = Nerve.cycle(3)
    assert h1_classes(n, H).count == len(conjugacy_classes(H))


@pytest.mark.parametrize("nerve,H", [(Nerve.cycle(3), S3), (Nerve.cycle(4), Z2), (Nerve.path(3), S3),
                                     (two_triangles(), Z3), (Nerve.complete_graph(4), Z2),
                                     (Nerve(4, ((0, 1), (2, 3))), Z2), (projective_plane(), Z2)])
def test_h1_matches_unfixed_scan(nerve, H):
    assert h1_classes(nerve, H).count == oracles.h1_count(nerve, H)


def test_h1_tree_and_disconnected():
    assert h1_classes(Nerve(4, ((0, 1), (1, 2), (1, 3))), S3).count == 1
    two_circles = Nerve(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert h1_classes(two_circles, Z2).count == 4


def test_h1_deterministic_across_workers():
    n = Nerve.complete_graph(4)
    a = h1_classes(n, S3, workers=1)
    b = h1_classes(n, S3, workers=4)
    assert a == b
    reps = [r.values for r in a.representatives]
    assert reps == sorted(reps)


def test_glue_trivial_two_charts():
    n = Nerve.path(2)
    t = glue(Cocycle1.identity(n, S3))
    assert len(t.components()) == S3.order
    assert t.is_free()


def test_glue_mobius_single_sheet():
    n = Nerve.cycle(4)
    m = Cocycle1.from_mapping(n, Z2, {(0, 3): 1})
    t = glue(m)
    assert len(t.components()) == 1
    triv = glue(Cocycle1.identity(n, Z2))
    assert len(triv.components()) == 2


def test_glue_rejects_non_cocycle():
    n = Nerve.simplex(3)
    with pytest.raises(PreconditionError):
        glue(Chain1.from_mapping(n, Z2, {(0, 1): 1}))


def test_glue_trivializations_intertwine():
    n = Nerve.cycle(3)
    c = Cocycle1.from_mapping(n, S3, {(0, 1): S3.index("(12)"), (1, 2): S3.index("(123)")})
    t = glue(c)
    for cell in t.cells:
        for i in cell:
            for j in cell:
                for h in S3.elements:
                    p = t.point(cell, j, h)
                    assert t.coordinate(p, i) == S3.mul(c(i, j), h)
                    for k in S3.elements:
                        assert t.coordinate(t.act(p, k), i) == S3.mul(t.coordinate(p, i), k)


@pytest.mark.parametrize("H", [Z2, S3, quaternion()], ids=["Z2", "S3", "Q8"])
def test_glue_round_trip(H):
    for n in (Nerve.cycle(3), Nerve.simplex(3), two_triangles()):
        for c in h1_classes(n, H).representatives:
            back = glue(c).transitions()
            assert cohomologous1(c, back) is not None


def test_h2_examples():
    assert h2_classes(Nerve.path(3), Z2).count == 1
    single = Nerve.simplex(3)
    assert h2_classes(single, Z2).count == oracles.h2_count(single, Z2) == 1
    for n in (Nerve.octahedron(), bipyramid(), Nerve.simplex(4), projective_plane()):
        for B in (Z2, trivial()):
            assert h2_classes(n, B).count == oracles.h2_count(n, B)
    assert h2_classes(Nerve.octahedron(), Z2).count == 2
    assert h2_classes(bipyramid(), Z3).count == 3
    assert h2_classes(Nerve.simplex(4), klein_four()).count == 1
    assert h2_classes(projective_plane(), Z2).count == 2


def test_h2_rejects_nonabelian_band():
    with pytest.raises(UnsupportedError):
        h2_classes(Nerve.simplex(3), S3)


def test_coboundary2_of_chain_is_cocycle2():
    n = Nerve.simplex(4)
    rng_vals = [(k * 7 + 3) % 3 for k in range(len(n.pairs))]
    b = Chain1(n, Z3, tuple(rng_vals))
    Cocycle2(n, Z3, frozenset(Z3.elements), coboundary2(b))


@pytest.mark.parametrize("label,h,band", band_chains(), ids=[c[0] for c in band_chains()])
def test_defect_coboundary_iff_correctable(label, h, band):
    c = two_cocycle_of_chain(h, band)
    w = coboundary2_witness(c)
    m = correct_chain(h, band)
    assert (w is None) == (m is None)
    if m is not None:
        G = h.group
        fixed = Chain1(h.nerve, G, tuple(G.mul(a, b) for a, b in zip(m.values, h.values)))
        assert is_cocycle(fixed)[0]
    if w is not None:
        assert coboundary2(w) == c.values
    if h.nerve.charts <= 5 and len(h.nerve.pairs) <= 9:
        assert (m is not None) == oracles.correctable(h, band)
        assert (w is not None) == oracles.defect_is_coboundary(h, band)


def test_band_chain_corpus_has_both_outcomes():
    outcomes = {correct_chain(h, band) is None for _, h, band in band_chains()}
    assert outcomes == {True, False}


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_cohomologous_is_equivalence(data):
    n = data.draw(st.sampled_from([Nerve.cycle(3), Nerve.cycle(4), two_triangles()]))
    H = data.draw(st.sampled_from([Z2, S3, dihedral(4)]))
    cocs = h1_classes(n, H).representatives
    a = data.draw(st.sampled_from(cocs))
    lam = data.draw(st.lists(st.integers(0, H.order - 1), min_size=n.charts, max_size=n.charts))
    mu = data.draw(st.lists(st.integers(0, H.order - 1), min_size=n.charts, max_size=n.charts))

    def gauge(c, l):
        return Cocycle1(n, H, tuple(H.prod(l[i], c(i, j), H.inv(l[j])) for i, j in n.pairs))

    b = gauge(a, lam)
    c = gauge(b, mu)
    w = cohomologous1(a, b)
    assert w is not None
    # symmetry with the inverse witness, transitivity with the product witness
    assert gauge(b, [H.inv(x) for x in w]) == a
    assert cohomologous1(b, a) is not None
    assert gauge(a, [H.mul(m, l) for m, l in zip(mu, lam)]) == c
    assert cohomologous1(a, c) is not None


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_gauge_keeps_class_representative(data):
    n = data.draw(st.sampled_from([Nerve.cycle(3), Nerve.complete_graph(4)]))
    H = S3
    cl = h1_classes(n, H)
    a = data.draw(st.sampled_from(cl.representatives))
    lam = data.draw(st.lists(st.integers(0, 5), min_size=n.charts, max_size=n.charts))
    b = Cocycle1(n, H, tuple(H.prod(lam[i], a(i, j), H.inv(lam[j])) for i, j in n.pairs))
    hits = [r for r in cl.representatives if cohomologous1(r, b) is not None]
    assert hits == [a]
