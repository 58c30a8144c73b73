"""A small corpus of extensions, equivariant instances and chains.

The same objects are shipped as JSON under ``fixtures/``; :func:`write_fixtures`
regenerates those files and :func:`fixture_paths` lists them.
"""
from __future__ import annotations

import itertools
from importlib import resources
from pathlib import Path

from .cech import Chain1, Cocycle1, Nerve, h1_classes
from .ext import Extension, direct_product_extension, extension_from_normal_subgroup
from .fincat import (FiniteCategory, Topology, constant_presheaf, maximal_sieve, pseudocircle, representable,
                     sieve_generated)
from .grp import FiniteGroup, cyclic, dihedral, homomorphisms, klein_four, quaternion, symmetric, trivial
from .lift import EquivariantInstance, GSpace
from .schema import ClutchSpec, HomogeneousSpec, Instance, Site, dumps


# ---------------------------------------------------------------------------
# extensions

def s3_over_z2() -> Extension:
    S3 = symmetric(3)
    return extension_from_normal_subgroup(S3, [S3.index(x) for x in ("e", "(123)", "(132)")], "A3", "Z2")


def q8_over_v4() -> Extension:
    Q8 = quaternion()
    return extension_from_normal_subgroup(Q8, [Q8.index("1"), Q8.index("-1")], "Z2", "V4")


def extensions() -> dict[str, Extension]:
    S4 = symmetric(4)
    v4 = [S4.index(x) for x in S4.names if x in ("e", "(12)(34)", "(13)(24)", "(14)(23)")]
    Z6, Z4, D4 = cyclic(6), cyclic(4), dihedral(4)
    return {
        "S3/A3": s3_over_z2(),
        "Q8/Z2": q8_over_v4(),
        "Z6/Z3": extension_from_normal_subgroup(Z6, [0, 2, 4], "Z3", "Z2"),
        "Z4/Z2": extension_from_normal_subgroup(Z4, [0, 2], "Z2", "Z2"),
        "D4/Z2": extension_from_normal_subgroup(D4, sorted(D4.center), "Z2", "V4"),
        "S4/V4": extension_from_normal_subgroup(S4, v4, "V4", "S3"),
        "Z2xZ2": direct_product_extension(cyclic(2), cyclic(2)),
        "S3xZ2/S3": direct_product_extension(symmetric(3), cyclic(2)),
    }


# ---------------------------------------------------------------------------
# nerves

def bipyramid() -> Nerve:
    """Suspension of a triangle: equator 0, 1, 2 and poles 3, 4."""
    eq = [(0, 1), (1, 2), (0, 2)]
    return Nerve(5, tuple(eq + [(i, p) for p in (3, 4) for i in range(3)]),
                 tuple((a, b, p) for p in (3, 4) for a, b in eq))


def projective_plane() -> Nerve:
    """The six-vertex triangulation of the real projective plane."""
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
             (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    pairs = sorted({p for t in faces for p in itertools.combinations(sorted(t), 2)})
    return Nerve(6, tuple(pairs), tuple(faces))


def two_triangles() -> Nerve:
    """Two filled triangles glued along the pair (1, 2)."""
    return Nerve(4, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3)), ((0, 1, 2), (1, 2, 3)))


# ---------------------------------------------------------------------------
# chains with band-valued defect

def _quotient_valued_chains(nerve: Nerve, H: FiniteGroup, band: frozenset[int], limit: int):
    """Chains whose values, read modulo the band, satisfy Chasles: a
    deterministic sample of at most ``limit``."""
    reps = sorted({min(H.mul(x, b) for b in band) for x in H.elements})
    out = []
    for vals in itertools.product(reps, repeat=len(nerve.pairs)):
        h = Chain1(nerve, H, vals)
        if all(H.prod(h(k, i), h(i, j), h(j, k)) in band for i, j, k in nerve.triples):
            out.append(h)
            if len(out) >= limit:
                break
    return out


def band_chains() -> list[tuple[str, Chain1, tuple[int, ...]]]:
    """``(label, chain, band)`` with every defect inside the (central) band."""
    Z2, Z4, Q8, D4 = cyclic(2), cyclic(4), quaternion(), dihedral(4)
    tri = Nerve.simplex(3)
    out = [("triangle-Z2", Chain1.from_mapping(tri, Z2, {(0, 1): 1, (1, 2): 1, (0, 2): 1}), (0, 1))]
    shapes = {"triangle": tri, "tetrahedron": Nerve.simplex(4), "two-triangles": two_triangles(),
              "bipyramid": bipyramid(), "square-cone": Nerve(5, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4),
                                                                   (2, 4), (3, 4)),
                                                            ((0, 1, 4), (1, 2, 4), (2, 3, 4), (0, 3, 4)))}
    groups = {"Z4": (Z4, frozenset({0, 2})), "Q8": (Q8, frozenset(Q8.center)), "D4": (D4, frozenset(D4.center))}
    for (sn, n), (gn, (H, band)) in itertools.product(shapes.items(), groups.items()):
        for k, h in enumerate(_quotient_valued_chains(n, H, band, 6)):
            out.append((f"{sn}-{gn}-{k}", h, tuple(sorted(band))))
    rp2 = projective_plane()
    gen = [c for c in h1_classes(rp2, Z2).representatives if any(c.values)][0]
    out.append(("rp2-Z4-twisted", Chain1(rp2, Z4, gen.values), (0, 2)))
    out.append(("rp2-Z4-flat", Chain1(rp2, Z4, tuple(2 * v for v in gen.values)), (0, 2)))
    return out


# ---------------------------------------------------------------------------
# equivariant instances

def trivial_swap() -> EquivariantInstance:
    """``Z2`` swapping the two charts of a trivial ``Z2``-bundle."""
    n = Nerve.path(2)
    return EquivariantInstance(GSpace.from_generators(n, cyclic(2), {1: (1, 0)}), Cocycle1.identity(n, cyclic(2)))


def trivial_fixed() -> EquivariantInstance:
    """``Z2`` fixing both charts of a trivial ``Z2``-bundle."""
    n = Nerve.path(2)
    return EquivariantInstance(GSpace.trivial_action(n, cyclic(2)), Cocycle1.identity(n, cyclic(2)))


def trivial_h() -> EquivariantInstance:
    """Structure group trivial: the lift group is ``G`` itself."""
    n = Nerve.cycle(3)
    return EquivariantInstance(GSpace.from_generators(n, cyclic(3), {1: (1, 2, 0)}),
                               Cocycle1.identity(n, trivial()))


def trivial_g() -> EquivariantInstance:
    n = Nerve.cycle(3)
    S3 = symmetric(3)
    return EquivariantInstance(GSpace.trivial_action(n, trivial()),
                               Cocycle1.from_mapping(n, S3, {(0, 2): S3.index("(123)")}))


def mobius_z4() -> EquivariantInstance:
    """Four charts on a circle, the Moebius ``Z2``-bundle, rotation by one step."""
    n = Nerve.cycle(4)
    return EquivariantInstance(GSpace.from_generators(n, cyclic(4), {1: (1, 2, 3, 0)}),
                               Cocycle1.from_mapping(n, cyclic(2), {(0, 3): 1}))


def mobius_reflection() -> EquivariantInstance:
    """The Moebius bundle on a four-chart circle with a reflection fixing charts 0 and 2."""
    n = Nerve.cycle(4)
    return EquivariantInstance(GSpace.from_generators(n, cyclic(2), {1: (0, 3, 2, 1)}),
                               Cocycle1.from_mapping(n, cyclic(2), {(0, 3): 1}))


def asymmetric_holonomy() -> EquivariantInstance:
    """Two triangles of charts sharing chart 0, swapped by ``Z2``; holonomy
    ``(12)`` on one loop and trivial on the other, so the swap cannot lift."""
    n = Nerve(5, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)))
    S3 = symmetric(3)
    return EquivariantInstance(GSpace.from_generators(n, cyclic(2), {1: (0, 3, 4, 1, 2)}),
                               Cocycle1.from_mapping(n, S3, {(0, 2): S3.index("(12)")}))


def rotation_s3() -> EquivariantInstance:
    """``Z3`` rotating a triangle of charts, ``S3``-bundle with holonomy ``(123)``."""
    n = Nerve.cycle(3)
    S3 = symmetric(3)
    return EquivariantInstance(GSpace.from_generators(n, cyclic(3), {1: (1, 2, 0)}),
                               Cocycle1.from_mapping(n, S3, {(0, 2): S3.index("(123)")}))


def quaternionic_k4() -> EquivariantInstance:
    """``V4`` on the complete graph of four charts with a ``Q8``-bundle whose
    lift group is ``Q8``: gauge group ``{1, -1}``, no lifting action."""
    n = Nerve.complete_graph(4)
    Q8, V4 = quaternion(), klein_four()
    a, b = V4.generators
    space = GSpace.from_generators(n, V4, {a: (0, 1, 3, 2), b: (1, 0, 2, 3)})
    bundle = Cocycle1.from_mapping(n, Q8, {(1, 2): Q8.index("i"), (1, 3): Q8.index("i"), (2, 3): Q8.index("j")})
    return EquivariantInstance(space, bundle)


def instances() -> dict[str, EquivariantInstance]:
    return {
        "trivial-swap": trivial_swap(),
        "trivial-fixed": trivial_fixed(),
        "trivial-H": trivial_h(),
        "trivial-G": trivial_g(),
        "mobius-Z4": mobius_z4(),
        "mobius-reflection": mobius_reflection(),
        "asymmetric-holonomy": asymmetric_holonomy(),
        "rotation-S3": rotation_s3(),
        "quaternionic-K4": quaternionic_k4(),
    }


# ---------------------------------------------------------------------------
# sites

def v_poset() -> FiniteCategory:
    return FiniteCategory.from_poset(["a", "b", "top"], [("a", "top"), ("b", "top")])


def broken_topology() -> tuple[FiniteCategory, Topology]:
    """``J(top)`` contains the sieve generated by ``a->top``, whose pullback
    along ``b->top`` is empty and not covering."""
    cat = v_poset()
    top = cat.obj("top")
    j = Topology.from_sieves(cat, {
        0: [maximal_sieve(cat, 0)],
        1: [maximal_sieve(cat, 1)],
        top: [maximal_sieve(cat, top), sieve_generated(cat, top, [cat.mor("a->top")])],
    })
    return cat, j


def sites() -> dict[str, Site]:
    v = v_poset()
    pc, pj = pseudocircle()
    bc, bj = broken_topology()

    def reps(c):
        return tuple((f"h_{o}", representable(c, x)) for x, o in enumerate(c.objects))

    return {
        "coarsest-V": Site(v, Topology.coarsest(v), reps(v) + (("constant:2", constant_presheaf(v, 2)),)),
        "pseudocircle-coarsest": Site(pc, Topology.coarsest(pc), reps(pc)),
        "pseudocircle-open-cover": Site(pc, pj, reps(pc)),
        "pseudocircle-constant": Site(pc, pj, (("constant:2", constant_presheaf(pc, 2)),)),
        "broken-V": Site(bc, bj, reps(bc)),
    }


# ---------------------------------------------------------------------------
# homogeneous and clutching data

def homogeneous_specs() -> dict[str, tuple[FiniteGroup, tuple[int, ...], FiniteGroup, dict[int, int]]]:
    S3 = symmetric(3)
    A3 = sorted(S3.closure([S3.index("(123)")]))
    t = S3.index("(12)")
    return {
        "S3-A3-S3": (S3, tuple(A3), symmetric(3), {x: x for x in A3}),
        "S3-Z2-Z3-trivial": (S3, (S3.e, t), cyclic(3), {S3.e: 0, t: 0}),
        "S3-1-Z2": (S3, (S3.e,), cyclic(2), {S3.e: 0}),
        "Z4-1-Z3": (cyclic(4), (0,), cyclic(3), {0: 0}),
        "V4-1-S3": (klein_four(), (0,), symmetric(3), {0: 0}),
        "Z2-Z2-Z2": (cyclic(2), (0, 1), cyclic(2), {0: 0, 1: 1}),
        "S3-S3-Z2-sign": (S3, tuple(S3.elements), cyclic(2),
                          {x: (0 if x in A3 else 1) for x in S3.elements}),
    }


def clutch_cases(gamma: FiniteGroup, H: FiniteGroup):
    """Every ``(rhoS, rhoN, c)`` over ``(gamma, H)``."""
    homs = homomorphisms(gamma, H)
    return [(rs, rn, c) for rs in homs for rn in homs for c in H.elements]


# ---------------------------------------------------------------------------
# JSON fixtures

def _inst_file(e: EquivariantInstance, Gkey="G", Hkey="H") -> Instance:
    return Instance(groups={Gkey: e.G, Hkey: e.H}, nerve=e.nerve, structure_group=Hkey, cocycle=Chain1(e.nerve, e.H, e.bundle.values),
                    space=e.space, space_group=Gkey)


def fixture_instances() -> dict[str, Instance]:
    out: dict[str, Instance] = {}
    for name, e in instances().items():
        out[f"lift-{name}"] = _inst_file(e)
    S3, Z2, Z3 = symmetric(3), cyclic(2), cyclic(3)
    out["classify-circle-S3"] = Instance({"H": S3}, Nerve.cycle(3), "H")
    out["classify-circle-Z2"] = Instance({"H": Z2}, Nerve.cycle(3), "H")
    out["classify-circle-Z3"] = Instance({"H": Z3}, Nerve.cycle(3), "H")
    out["classify-tree-S3"] = Instance({"H": S3}, Nerve(4, ((0, 1), (1, 2), (1, 3))), "H")
    tri = Nerve.simplex(3)
    out["classify-triangle-Z2"] = Instance({"H": Z2}, tri, "H",
                                           Chain1.from_mapping(tri, Z2, {(0, 1): 1, (1, 2): 1, (0, 2): 1}), (0, 1))
    out["classify-octahedron-Z2"] = Instance({"H": Z2}, Nerve.octahedron(), "H")
    out["classify-bipyramid-Z3"] = Instance({"H": Z3}, bipyramid(), "H")
    rp2 = projective_plane()
    twisted = [c for c in band_chains() if c[0] == "rp2-Z4-twisted"][0][1]
    out["classify-rp2-Z4"] = Instance({"H": cyclic(4)}, rp2, "H", twisted, (0, 2))
    out["classify-nonabelian-band"] = Instance({"H": S3}, tri, "H")
    for name, s in sites().items():
        out[f"site-{name}"] = Instance(site=s)
    for name, (G, L, H, phi) in homogeneous_specs().items():
        out[f"homogeneous-{name}"] = Instance({"G": G, "H": H}, homogeneous=HomogeneousSpec(
            "G", tuple(L), "H", tuple(sorted(phi.items()))))
    ext_groups = {"S3": extensions()["S3/A3"].M, "Q8": extensions()["Q8/Z2"].M}
    out["extension-S3-A3"] = Instance(dict(ext_groups), extension=extensions()["S3/A3"], extension_group="S3")
    out["extension-Q8-center"] = Instance(dict(ext_groups), extension=extensions()["Q8/Z2"], extension_group="Q8")
    Z2h = homomorphisms(Z2, Z2)
    out["clutch-Z2-diagonal"] = Instance({"G": Z2, "H": Z2}, clutch=ClutchSpec("G", "H", Z2h[1], Z2h[1], 0))
    out["clutch-Z2-mismatch"] = Instance({"G": Z2, "H": Z2}, clutch=ClutchSpec("G", "H", Z2h[0], Z2h[1], 1))
    hz = homomorphisms(Z3, S3)
    rs = next(h for h in hz if not h.kernel() - {0})
    c = S3.index("(12)")
    rn = next(h for h in hz if all(S3.mul(h(x), c) == S3.mul(c, rs(x)) for x in Z3.elements))
    out["clutch-Z3-S3-conjugate"] = Instance({"G": Z3, "H": S3}, clutch=ClutchSpec("G", "H", rs, rn, c))
    return out


def fixture_dir() -> Path:
    return Path(str(resources.files("torsorlift") / "fixtures"))


def fixture_paths() -> list[Path]:
    return sorted(fixture_dir().glob("*.json"))


def write_fixtures(directory=None) -> list[Path]:
    d = Path(directory) if directory is not None else fixture_dir()
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, inst in fixture_instances().items():
        p = d / f"{name}.json"
        p.write_text(dumps(inst))
        paths.append(p)
    return paths


if __name__ == "__main__":
    for p in write_fixtures():
        print(p.name)
