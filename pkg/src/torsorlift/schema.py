"""JSON instance files.

Layout (every block except ``schema`` is optional; commands check for the
blocks they need)::

    {
      "schema": "torsorlift-instance/1",
      "groups": {"G": "V4", "H": {"names": [...], "table": [[...], ...]}},
      "nerve": {"charts": 4, "pairs": [[0, 1], ...], "triples": [[0, 1, 2], ...]},
      "structure_group": "H",
      "cocycle": [[0, 1, "i"], ...],
      "band": ["1", "-1"],
      "sigma": {"group": "G", "generators": {"a": [1, 0, 2, 3]}},
      "extension": {"group": "M", "kernel": ["e", "(123)", "(132)"]},
      "extension": {"L": "L", "M": "M", "N": "N", "incl": [...], "proj": [...]},
      "site": {...},
      "homogeneous": {"G": "G", "L": [...], "H": "H", "phi": {"l": "h"}},
      "clutch": {"gamma": "G", "H": "H", "rhoS": {...}, "rhoN": {...}, "c": "h"}
    }

Groups are a constructor name (``Z3``, ``S3``, ``Q8``, ``Z2xZ2``, ...), an
explicit Cayley table whose entries are element names or indices, or
``{"order": n, "table": [n*n indices]}``.  An extension is a normal
subgroup ``kernel`` of ``group`` or explicit ``incl``/``proj`` image lists
(the two ``extension`` forms above are alternatives).
Elements are always referred to by name.  ``cocycle`` lists transitions
``g(i, j)``; pairs not listed carry the identity.  ``sigma`` gives chart
permutations on generators, extended through the group law.

A site is either a poset with an explicit or coarsest topology::

    {"poset": {"elements": [...], "relations": [["a", "top"], ...]},
     "topology": "coarsest" | {"top": [["a->top"], ...]},
     "presheaves": ["representable", "constant:2", {"sizes": ..., "restriction": ...}]}

or a finite space given by its opens, with the open-cover topology::

    {"opens": [["a"], ["a", "b"], ...], "topology": "open-cover", ...}

In an explicit topology each covering sieve is listed by generators.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .cech import Chain1, Nerve
from .errors import InputError
from .ext import Extension, extension_from_normal_subgroup
from .fincat import (FiniteCategory, SetPresheaf, Topology, constant_presheaf, open_cover_site,
                     representable, sieve_generated)
from .grp import FiniteGroup, Hom, from_name, _extend
from .lift import GSpace

__all__ = ["SCHEMA", "Instance", "Site", "HomogeneousSpec", "ClutchSpec", "load", "loads", "dump", "dumps",
           "parse"]

SCHEMA = "torsorlift-instance/1"


@dataclass(frozen=True)
class Site:
    category: FiniteCategory
    topology: Topology
    presheaves: tuple[tuple[str, SetPresheaf], ...]


@dataclass(frozen=True)
class HomogeneousSpec:
    G: str
    L: tuple[int, ...]
    H: str
    phi: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ClutchSpec:
    gamma: str
    H: str
    rhoS: Hom
    rhoN: Hom
    c: int


@dataclass(frozen=True)
class Instance:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    nerve: Nerve | None = None
    structure_group: str | None = None
    cocycle: Chain1 | None = None
    band: tuple[int, ...] | None = None
    space: GSpace | None = None
    space_group: str | None = None
    extension: Extension | None = None
    extension_group: str | None = None
    site: Site | None = None
    homogeneous: HomogeneousSpec | None = None
    clutch: ClutchSpec | None = None

    def group(self, key: str) -> FiniteGroup:
        try:
            return self.groups[key]
        except KeyError:
            raise InputError(f"unknown group {key!r}") from None

    @property
    def H(self) -> FiniteGroup:
        if self.structure_group is None:
            raise InputError("no structure_group given")
        return self.group(self.structure_group)


class _Ctx:
    """Prefixes error messages with the JSON path being read."""

    def __init__(self, path: str):
        self.path = path

    def __enter__(self):
        return self

    def __exit__(self, tp, err, tb):
        if tp is not None and issubclass(tp, (InputError, KeyError, TypeError, ValueError, IndexError)):
            msg = err.args[0] if isinstance(err, InputError) and err.args else repr(err)
            if isinstance(err, InputError) and str(msg).startswith("at "):
                return False
            raise InputError(f"at {self.path}: {msg}") from err
        return False


def _group(spec) -> FiniteGroup:
    if isinstance(spec, str):
        return from_name(spec)
    if "order" in spec:
        n = int(spec["order"])
        flat = [int(x) for x in spec["table"]]
        if len(flat) != n * n:
            raise InputError("flattened table must have order^2 entries")
        names = [str(x) for x in spec.get("names", range(n))]
        return FiniteGroup([flat[k * n:(k + 1) * n] for k in range(n)], names, spec.get("name", ""))
    names = [str(x) for x in spec["names"]]
    pos = {n: i for i, n in enumerate(names)}
    table = [[pos[x] if isinstance(x, str) else int(x) for x in row] for row in spec["table"]]
    return FiniteGroup(table, names, spec.get("name", ""))


def _hom_from_generators(src: FiniteGroup, tgt: FiniteGroup, gens: dict) -> Hom:
    gs = [src.index(g) for g in gens]
    imgs = [tgt.index(v) for v in gens.values()]
    if src.closure(gs) != frozenset(src.elements):
        raise InputError("homomorphism images must be given on a generating set")
    m = _extend(src, tgt, gs, imgs)
    if m is None:
        raise InputError("generator images do not define a homomorphism")
    return Hom(src, tgt, m)


def _site(d: dict) -> Site:
    if "poset" in d:
        p = d["poset"]
        cat = FiniteCategory.from_poset([str(x) for x in p["elements"]], [tuple(r) for r in p["relations"]])
        default = None
    elif "category" in d:
        c = d["category"]
        cat = FiniteCategory.build(c["objects"], [tuple(a) for a in c["arrows"]],
                                   [tuple(x) for x in c.get("composites", [])])
        default = None
    elif "opens" in d:
        cat, default = open_cover_site(d["opens"])
    else:
        raise InputError("site needs a poset, category or opens")
    top = d.get("topology", "coarsest")
    if top == "coarsest":
        j = Topology.coarsest(cat)
    elif top == "open-cover":
        if default is None:
            raise InputError("the open-cover topology needs opens")
        j = default
    elif isinstance(top, dict):
        for x in top:
            cat.obj(x)
        j = Topology.from_sieves(cat, {
            x: [sieve_generated(cat, x, [cat.mor(f) for f in gens]) for gens in top.get(cat.objects[x], [])]
            for x in range(len(cat.objects))})
    else:
        raise InputError(f"unknown topology {top!r}")
    sheaves = []
    for k, ps in enumerate(d.get("presheaves", [])):
        with _Ctx(f"site.presheaves[{k}]"):
            if ps == "representable":
                sheaves += [(f"h_{o}", representable(cat, x)) for x, o in enumerate(cat.objects)]
            elif isinstance(ps, str) and ps.startswith("constant:"):
                sheaves.append((ps, constant_presheaf(cat, int(ps.split(":", 1)[1]))))
            elif isinstance(ps, dict):
                sizes = tuple(int(ps["sizes"][o]) for o in cat.objects)
                res = tuple(tuple(int(v) for v in ps["restriction"][f]) for f in cat.morphisms)
                sheaves.append((str(ps.get("label", f"presheaf{k}")), SetPresheaf(cat, sizes, res)))
            else:
                raise InputError(f"unknown presheaf {ps!r}")
    return Site(cat, j, tuple(sheaves))


def parse(d: dict) -> Instance:
    """Validate a decoded instance document."""
    if not isinstance(d, dict):
        raise InputError("instance must be a JSON object")
    if d.get("schema") != SCHEMA:
        raise InputError(f"unsupported schema {d.get('schema')!r}, expected {SCHEMA!r}")
    groups = {}
    for key, spec in d.get("groups", {}).items():
        with _Ctx(f"groups.{key}"):
            groups[key] = _group(spec)
    inst = Instance(groups)
    kw = {}
    if "nerve" in d:
        with _Ctx("nerve"):
            n = d["nerve"]
            kw["nerve"] = Nerve(int(n["charts"]), tuple(tuple(p) for p in n.get("pairs", [])),
                                tuple(tuple(t) for t in n.get("triples", [])))
    if "structure_group" in d:
        with _Ctx("structure_group"):
            kw["structure_group"] = str(d["structure_group"])
            inst.group(kw["structure_group"])
    if "cocycle" in d:
        with _Ctx("cocycle"):
            if "nerve" not in kw or "structure_group" not in kw:
                raise InputError("a cocycle needs a nerve and a structure_group")
            H = groups[kw["structure_group"]]
            mapping = {}
            for i, j, v in d["cocycle"]:
                if (min(i, j), max(i, j)) in {(min(a, b), max(a, b)) for a, b in mapping}:
                    raise InputError(f"pair ({i}, {j}) listed twice")
                mapping[(int(i), int(j))] = H.index(str(v))
            kw["cocycle"] = Chain1.from_mapping(kw["nerve"], H, mapping)
    if "band" in d:
        with _Ctx("band"):
            if "structure_group" not in kw:
                raise InputError("a band needs a structure_group")
            H = groups[kw["structure_group"]]
            band = tuple(sorted({H.index(str(x)) for x in d["band"]}))
            if not H.is_subgroup(band):
                raise InputError("band is not a subgroup")
            kw["band"] = band
    if "sigma" in d:
        with _Ctx("sigma"):
            if "nerve" not in kw:
                raise InputError("sigma needs a nerve")
            s = d["sigma"]
            G = inst.group(s["group"])
            kw["space"] = GSpace.from_generators(kw["nerve"], G, {G.index(str(g)): p for g, p in s["generators"].items()})
            kw["space_group"] = s["group"]
    if "extension" in d:
        with _Ctx("extension"):
            x = d["extension"]
            if "incl" in x:
                L, M, N = inst.group(x["L"]), inst.group(x["M"]), inst.group(x["N"])
                incl = Hom(L, M, tuple(M.index(str(v)) for v in x["incl"]))
                proj = Hom(M, N, tuple(N.index(str(v)) for v in x["proj"]))
                kw["extension"] = Extension(L, M, N, incl, proj)
                kw["extension_group"] = x["M"]
            else:
                M = inst.group(x["group"])
                kern = [M.index(str(k)) for k in x["kernel"]]
                if not M.is_normal(kern):
                    raise InputError("kernel is not a normal subgroup")
                kw["extension"] = extension_from_normal_subgroup(M, kern)
                kw["extension_group"] = x["group"]
    if "site" in d:
        with _Ctx("site"):
            kw["site"] = _site(d["site"])
    if "homogeneous" in d:
        with _Ctx("homogeneous"):
            h = d["homogeneous"]
            G, H = inst.group(h["G"]), inst.group(h["H"])
            L = tuple(sorted({G.index(str(x)) for x in h["L"]}))
            phi = tuple(sorted((G.index(str(a)), H.index(str(b))) for a, b in h["phi"].items()))
            kw["homogeneous"] = HomogeneousSpec(h["G"], L, h["H"], phi)
    if "clutch" in d:
        with _Ctx("clutch"):
            c = d["clutch"]
            gam, H = inst.group(c["gamma"]), inst.group(c["H"])
            kw["clutch"] = ClutchSpec(c["gamma"], c["H"], _hom_from_generators(gam, H, c["rhoS"]),
                                      _hom_from_generators(gam, H, c["rhoN"]), H.index(str(c["c"])))
    return Instance(groups, **kw)


def loads(text: str) -> Instance:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"line {err.lineno}, column {err.colno}: {err.msg}") from None
    return parse(d)


def load(path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None
    return loads(text)


def _group_doc(g: FiniteGroup) -> dict:
    return {"name": g.name, "names": list(g.names),
            "table": [[g.names[v] for v in row] for row in g.table.tolist()]}


def _site_doc(s: Site) -> dict:
    cat = s.category
    ident = set(cat.identities)
    arrows = [[cat.morphisms[f], cat.objects[cat.source[f]], cat.objects[cat.target[f]]]
              for f in range(len(cat.morphisms)) if f not in ident]
    comps = [[cat.morphisms[f], cat.morphisms[g], cat.morphisms[cat.comp[f][g]]]
             for f in range(len(cat.morphisms)) for g in range(len(cat.morphisms))
             if f not in ident and g not in ident and cat.comp[f][g] >= 0]
    top = {cat.objects[x]: [[cat.morphisms[f] for f in sv.key()] for sv in s.topology.sieves(x)]
           for x in range(len(cat.objects))}
    sheaves = [{"label": label, "sizes": {o: p.sizes[x] for x, o in enumerate(cat.objects)},
                "restriction": {cat.morphisms[f]: list(p.restriction[f]) for f in range(len(cat.morphisms))}}
               for label, p in s.presheaves]
    return {"category": {"objects": list(cat.objects), "arrows": arrows, "composites": comps},
            "topology": top, "presheaves": sheaves}


def dump_doc(inst: Instance) -> dict:
    """A canonical document that :func:`parse` maps back to an equal instance."""
    d: dict = {"schema": SCHEMA, "groups": {k: _group_doc(g) for k, g in inst.groups.items()}}
    if inst.nerve is not None:
        n = inst.nerve
        d["nerve"] = {"charts": n.charts, "pairs": [list(p) for p in n.pairs], "triples": [list(t) for t in n.triples]}
    if inst.structure_group is not None:
        d["structure_group"] = inst.structure_group
    if inst.cocycle is not None:
        H = inst.cocycle.group
        d["cocycle"] = [[i, j, H.names[v]] for (i, j), v in inst.cocycle.as_mapping().items()]
    if inst.band is not None:
        d["band"] = [inst.H.names[b] for b in inst.band]
    if inst.space is not None:
        G = inst.space.group
        d["sigma"] = {"group": inst.space_group,
                      "generators": {G.names[g]: list(inst.space.sigma[g]) for g in G.generators}}
    if inst.extension is not None:
        M = inst.extension.M
        d["extension"] = {"group": inst.extension_group, "kernel": [M.names[k] for k in sorted(inst.extension.kernel_image)]}
    if inst.site is not None:
        d["site"] = _site_doc(inst.site)
    if inst.homogeneous is not None:
        h = inst.homogeneous
        G, H = inst.group(h.G), inst.group(h.H)
        d["homogeneous"] = {"G": h.G, "L": [G.names[x] for x in h.L], "H": h.H,
                            "phi": {G.names[a]: H.names[b] for a, b in h.phi}}
    if inst.clutch is not None:
        c = inst.clutch
        gam, H = inst.group(c.gamma), inst.group(c.H)
        d["clutch"] = {"gamma": c.gamma, "H": c.H,
                       "rhoS": {gam.names[g]: H.names[c.rhoS(g)] for g in gam.generators},
                       "rhoN": {gam.names[g]: H.names[c.rhoN(g)] for g in gam.generators},
                       "c": H.names[c.c]}
    return d


def dumps(inst: Instance) -> str:
    return json.dumps(dump_doc(inst), indent=2) + "\n"


def dump(inst: Instance, path) -> None:
    Path(path).write_text(dumps(inst))
