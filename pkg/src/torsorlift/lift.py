"""Lifting a group action on the base of a torsor to the total space.

Setup: ``G`` permutes the charts of a nerve (``sigma``), and a cocycle
``g(i, j)`` with values in ``H`` describes an ``H``-torsor ``P``.  A lift of
``x in G`` is a family ``lam`` of chart elements with

    g(sigma_x(i), sigma_x(j)) = lam_i g(i, j) lam_j^-1      for every pair,

realizing the map ``(j, h) -> (sigma_x(j), lam_j h)`` on the glued space.
Lifts form the group ``Aut_G(P)`` under

    (x, lam) (x', lam') = (x x', i -> lam[sigma_x'(i)] lam'[i]),

the lifts of ``e`` being the gauge group.  ``G`` lifts to an action on ``P``
commuting with ``H`` exactly when ``1 -> gauge -> Aut_G(P) -> G -> 1`` splits.
"""
from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ._parallel import pmap
from .cech import Cocycle1, Nerve
from .errors import InputError, InvariantError, PreconditionError
from .ext import (Extension, FactorSet, complements, default_section, factor_set, h1,
                  action_of_splitting, splitting_classes)
from .grp import FiniteGroup, Hom, centralizer

__all__ = [
    "GSpace", "EquivariantInstance", "Lift", "LiftGroup", "Obstruction", "LiftingClasses",
    "HomogeneousBundle", "AutomorphismCertificate", "GaugeIsoReport", "ClutchResult",
    "lifts_of", "check_c1", "aut_group", "obstruction", "direct_lifting_search",
    "enumerate_liftings", "homogeneous_bundle", "equivariant_automorphisms",
    "gauge_iso_check", "clutch_two_cover", "stabilizer_representations", "check_c2", "check_c3",
    "gauge_centralizer_order", "lift_extension", "compose",
]


@dataclass(frozen=True)
class GSpace:
    """``G`` acting on the charts of ``nerve``: ``sigma[x][i]`` is the image of chart ``i``."""

    nerve: Nerve
    group: FiniteGroup = field(repr=False)
    sigma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G, n = self.group, self.nerve
        sig = tuple(tuple(int(v) for v in row) for row in self.sigma)
        object.__setattr__(self, "sigma", sig)
        if len(sig) != G.order or any(sorted(r) != list(range(n.charts)) for r in sig):
            raise InputError("sigma needs one chart permutation per group element")
        if sig[G.e] != tuple(range(n.charts)):
            raise InputError("identity must fix every chart")
        for a in G.elements:
            for b in G.elements:
                ab = sig[G.mul(a, b)]
                if any(sig[a][sig[b][i]] != ab[i] for i in range(n.charts)):
                    raise InputError("sigma is not a homomorphism")
        pairs, triples = set(n.pairs), set(n.triples)
        for x in G.elements:
            s = sig[x]
            if any(tuple(sorted((s[i], s[j]))) not in pairs for i, j in pairs):
                raise InputError(f"{G.names[x]} does not preserve the pairs")
            if any(tuple(sorted(s[i] for i in t)) not in triples for t in triples):
                raise InputError(f"{G.names[x]} does not preserve the triples")

    @classmethod
    def from_generators(cls, nerve: Nerve, group: FiniteGroup, gens: Mapping) -> "GSpace":
        """Extend chart permutations given on generators; relations are checked."""
        e = group.e
        ident = tuple(range(nerve.charts))
        gens = {group.index(g): tuple(int(v) for v in p) for g, p in gens.items()}
        for p in gens.values():
            if sorted(p) != list(ident):
                raise InputError(f"{p} is not a permutation of the charts")
        sig = {e: ident}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s, p in gens.items():
                y = group.mul(x, s)
                img = tuple(sig[x][p[i]] for i in ident)
                if y in sig:
                    if sig[y] != img:
                        raise InputError("generator permutations violate a relation of the group")
                else:
                    sig[y] = img
                    queue.append(y)
        if len(sig) != group.order:
            raise InputError("the given elements do not generate the group")
        return cls(nerve, group, tuple(sig[x] for x in group.elements))

    @classmethod
    def trivial_action(cls, nerve: Nerve, group: FiniteGroup) -> "GSpace":
        return cls(nerve, group, (tuple(range(nerve.charts)),) * group.order)


@dataclass(frozen=True)
class EquivariantInstance:
    space: GSpace
    bundle: Cocycle1

    def __post_init__(self):
        if self.space.nerve != self.bundle.nerve:
            raise InputError("space and bundle live on different nerves")

    @property
    def G(self) -> FiniteGroup:
        return self.space.group

    @property
    def H(self) -> FiniteGroup:
        return self.bundle.group

    @property
    def nerve(self) -> Nerve:
        return self.bundle.nerve


@dataclass(frozen=True, order=True)
class Lift:
    g: int
    lam: tuple[int, ...]


def _compatible(inst: EquivariantInstance, lift: Lift) -> bool:
    c, H, s = inst.bundle, inst.H, inst.space.sigma[lift.g]
    lam = lift.lam
    return all(c(s[i], s[j]) == H.prod(lam[i], c(i, j), H.inv(lam[j])) for i, j in inst.nerve.pairs)


def compose(inst: EquivariantInstance, a: Lift, b: Lift) -> Lift:
    G, H, s = inst.G, inst.H, inst.space.sigma[b.g]
    return Lift(G.mul(a.g, b.g), tuple(H.mul(a.lam[s[i]], b.lam[i]) for i in range(len(b.lam))))


def lifts_of(inst: EquivariantInstance, g: int) -> list[Lift]:
    """Every lift of ``g``, sorted.

    On each component of the nerve, a root value determines the family
    along a BFS tree; every root value is tried and the result checked on
    all pairs.
    """
    H, c, n = inst.H, inst.bundle, inst.nerve
    s = inst.space.sigma[g]
    per_comp = []
    for comp in n.components():
        options = []
        for root in H.elements:
            lam = {comp[0]: root}
            queue = deque([comp[0]])
            while queue:
                u = queue.popleft()
                for v in n.neighbours(u):
                    if v not in lam:
                        lam[v] = H.prod(H.inv(c(s[u], s[v])), lam[u], c(u, v))
                        queue.append(v)
            if all(c(s[i], s[j]) == H.prod(lam[i], c(i, j), H.inv(lam[j]))
                   for i, j in n.pairs if i in lam):
                options.append(lam)
        if not options:
            return []
        per_comp.append(options)
    out = []
    for combo in itertools.product(*per_comp):
        lam = [H.e] * n.charts
        for part in combo:
            for k, v in part.items():
                lam[k] = v
        out.append(Lift(g, tuple(lam)))
    return sorted(out)


def check_c1(inst: EquivariantInstance) -> tuple[bool, list[int]]:
    """Whether every element of ``G`` lifts; the failing elements otherwise."""
    bad = [g for g in inst.G.elements if not lifts_of(inst, g)]
    return not bad, bad


@dataclass(frozen=True)
class LiftGroup:
    group: FiniteGroup = field(repr=False)
    lifts: tuple[Lift, ...]
    projection: Hom = field(repr=False)
    kernel: frozenset[int]
    c1: bool

    def index(self, lift: Lift) -> int:
        return self.lifts.index(lift)

    def gauge(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The gauge group and its embedding into :attr:`group`."""
        return self.group.subgroup(self.kernel, "gauge")


def _lift_name(inst: EquivariantInstance, lift: Lift) -> str:
    return f"{inst.G.names[lift.g]}|" + ",".join(inst.H.names[v] for v in lift.lam)


def aut_group(inst: EquivariantInstance, workers: int = 1) -> LiftGroup:
    """Assemble all lifts under the composition law.

    If some element of ``G`` does not lift, the group of lifts of the
    liftable ones is returned with a warning.
    """
    G = inst.G
    per_g = pmap(_lifts_job, [(inst, g) for g in G.elements], workers)
    lifts = tuple(l for ls in per_g for l in ls)
    pos = {l: k for k, l in enumerate(lifts)}
    c1 = all(per_g)
    if not c1:
        bad = [G.names[g] for g, ls in zip(G.elements, per_g) if not ls]
        warnings.warn(f"C1 fails: no lift of {', '.join(bad)}; returning the lifts of the liftable part",
                      stacklevel=2)
    table = []
    for a in lifts:
        row = []
        for b in lifts:
            ab = compose(inst, a, b)
            if ab not in pos or not _compatible(inst, ab):
                raise InvariantError("composition of lifts is not a lift")
            row.append(pos[ab])
        table.append(row)
    grp = FiniteGroup(table, [_lift_name(inst, l) for l in lifts], "Aut_G(P)")
    proj = Hom(grp, G, tuple(l.g for l in lifts))
    kernel = frozenset(k for k, l in enumerate(lifts) if l.g == G.e)
    return LiftGroup(grp, lifts, proj, kernel, c1)


def _lifts_job(args):
    inst, g = args
    return lifts_of(inst, g)


@dataclass(frozen=True)
class Obstruction:
    extension: Extension = field(repr=False)
    split: bool
    factor_set: FactorSet = field(repr=False)
    complements: int
    lift_group: LiftGroup = field(repr=False)


def lift_extension(lg: LiftGroup, G: FiniteGroup) -> Extension:
    """``1 -> gauge -> Aut_G(P) -> G -> 1`` as an :class:`Extension`."""
    gauge, emb = lg.gauge()
    return Extension(gauge, lg.group, G, Hom(gauge, lg.group, emb), lg.projection)


def obstruction(inst: EquivariantInstance, workers: int = 1) -> Obstruction:
    ok, bad = check_c1(inst)
    if not ok:
        raise PreconditionError(f"C1 fails: {inst.G.names[bad[0]]} has no lift")
    lg = aut_group(inst, workers)
    e = lift_extension(lg, inst.G)
    comps = complements(e)
    return Obstruction(e, bool(comps), factor_set(e, default_section(e)), len(comps), lg)


def direct_lifting_search(inst: EquivariantInstance) -> list[tuple[Lift, ...]]:
    """Every homomorphic family ``x -> (x, lam(x))``, found without the lift group.

    Lifts are chosen on generators of ``G`` and extended through the
    composition law; a choice survives if every relation closes up.
    """
    G = inst.G
    gens = G.generators
    choices = [lifts_of(inst, g) for g in gens]
    ident = Lift(G.e, (inst.H.e,) * inst.nerve.charts)
    out = []
    for pick in itertools.product(*choices):
        fam = {G.e: ident}
        queue = deque([G.e])
        good = True
        while queue and good:
            x = queue.popleft()
            for s, l in zip(gens, pick):
                y = compose(inst, fam[x], l)
                if y.g in fam:
                    if fam[y.g] != y:
                        good = False
                        break
                else:
                    fam[y.g] = y
                    queue.append(y.g)
        if good:
            out.append(tuple(fam[x] for x in G.elements))
    return sorted(out)


@dataclass(frozen=True)
class LiftingClasses:
    count: int
    representatives: tuple[tuple[Lift, ...], ...]
    splitting_classes: int
    h1: int

    @property
    def cross_check(self) -> bool:
        return self.count == self.splitting_classes == self.h1


def enumerate_liftings(inst: EquivariantInstance, workers: int = 1) -> LiftingClasses:
    """Lifting actions up to conjugation by gauge transformations.

    The count is compared with the splitting classes of the lift extension
    and with ``H^1(G, gauge)`` for the action through a splitting; a
    disagreement raises.
    """
    ob = obstruction(inst, workers)
    if not ob.split:
        raise PreconditionError("the lift extension does not split: no lifting action exists")
    lg = ob.lift_group
    M = lg.group
    pos = {l: k for k, l in enumerate(lg.lifts)}
    sections = [tuple(pos[l] for l in fam) for fam in direct_lifting_search(inst)]
    seen: set[tuple[int, ...]] = set()
    reps = []
    for s in sections:
        if s in seen:
            continue
        orbit = {tuple(M.conj(k, x) for x in s) for k in sorted(lg.kernel)}
        seen |= orbit
        reps.append(min(orbit))
    reps.sort()
    e = ob.extension
    sc = splitting_classes(e)
    h = h1(e.N, e.L, action_of_splitting(e, sc[0]))
    res = LiftingClasses(len(reps), tuple(tuple(lg.lifts[k] for k in r) for r in reps), len(sc), h.count)
    if not res.cross_check:
        raise InvariantError(f"lifting classes {res.count}, splitting classes {res.splitting_classes}, "
                             f"H^1 {res.h1} disagree")
    return res


# ---------------------------------------------------------------------------
# homogeneous bundles

@dataclass(frozen=True)
class HomogeneousBundle:
    """``(G x H) / L`` with ``l.(g, h) = (g l^-1, phi(l) h)``.

    Pairs are encoded as ``g * |H| + h``; ``points[k]`` is an orbit.  ``G``
    acts on the left of the first factor, ``H`` on the right of the second.
    """

    G: FiniteGroup = field(repr=False)
    L: frozenset[int]
    H: FiniteGroup = field(repr=False)
    phi: tuple[tuple[int, int], ...]
    points: tuple[frozenset[int], ...] = field(repr=False)
    cosets: tuple[frozenset[int], ...] = field(repr=False)

    def phi_of(self, l: int) -> int:
        return dict(self.phi)[l]

    def point_of(self, g: int, h: int) -> int:
        code = g * self.H.order + h
        return self._where[code]

    @property
    def _where(self) -> dict[int, int]:
        d = self.__dict__.get("_w")
        if d is None:
            d = {x: k for k, o in enumerate(self.points) for x in o}
            object.__setattr__(self, "_w", d)
        return d

    def rep(self, p: int) -> tuple[int, int]:
        x = min(self.points[p])
        return divmod(x, self.H.order)

    def left(self, g: int, p: int) -> int:
        a, h = self.rep(p)
        return self.point_of(self.G.mul(g, a), h)

    def right(self, p: int, h2: int) -> int:
        a, h = self.rep(p)
        return self.point_of(a, self.H.mul(h, h2))

    def projection(self, p: int) -> int:
        a, _ = self.rep(p)
        return next(k for k, c in enumerate(self.cosets) if a in c)

    def check(self) -> list[str]:
        """Failed invariants: well-defined and commuting actions, equivariant projection."""
        G, H = self.G, self.H
        bad = []
        for k, o in enumerate(self.points):
            for g in G.elements:
                if len({self.point_of(G.mul(g, x // H.order), x % H.order) for x in o}) != 1:
                    bad.append(f"left action not well defined at point {k}")
            for h in H.elements:
                if len({self.point_of(x // H.order, H.mul(x % H.order, h)) for x in o}) != 1:
                    bad.append(f"right action not well defined at point {k}")
            for g in G.elements:
                for h in H.elements:
                    if self.right(self.left(g, k), h) != self.left(g, self.right(k, h)):
                        bad.append(f"actions do not commute at point {k}")
                c = self.cosets[self.projection(k)]
                gc = frozenset(G.mul(g, x) for x in c)
                if self.cosets[self.projection(self.left(g, k))] != gc:
                    bad.append(f"projection not equivariant at point {k}")
        return bad

    def coset_rep(self, c: int) -> int:
        return min(self.cosets[c])

    def chart_lambda(self, g: int) -> tuple[int, ...]:
        """``lam_c = phi(r_{gc}^-1 g r_c)`` for coset representatives ``r``."""
        G = self.G
        out = []
        for c in range(len(self.cosets)):
            r = self.coset_rep(c)
            gr = G.mul(g, r)
            d = next(k for k, cc in enumerate(self.cosets) if gr in cc)
            out.append(self.phi_of(G.mul(G.inv(self.coset_rep(d)), gr)))
        return tuple(out)


def _phi_table(G: FiniteGroup, L: frozenset[int], H: FiniteGroup, phi) -> dict[int, int]:
    if isinstance(phi, Hom):
        if phi.target != H:
            raise InputError("phi must take values in H")
        sub, emb = G.subgroup(L)
        if phi.source != sub:
            raise InputError("phi must be defined on the subgroup L")
        return {emb[k]: phi(k) for k in sub.elements}
    table = {G.index(k): H.index(v) for k, v in dict(phi).items()}
    missing = L - set(table)
    if missing:
        raise InputError(f"phi is not defined on {G.names[min(missing)]}")
    if set(table) - L:
        raise InputError("phi is defined outside L")
    for a in L:
        for b in L:
            if table[G.mul(a, b)] != H.mul(table[a], table[b]):
                raise InputError(f"phi is not a homomorphism at ({G.names[a]}, {G.names[b]})")
    return table


def homogeneous_bundle(G: FiniteGroup, L, H: FiniteGroup, phi) -> tuple[HomogeneousBundle, EquivariantInstance | None]:
    """The orbit model of ``(G x H)/L`` and its realization over the coset nerve.

    ``phi`` is a :class:`Hom` from the subgroup ``L`` or a mapping
    ``{l: phi(l)}`` keyed by elements of ``G``.  The realization has one
    chart per left coset (ordered by smallest element) and a pair for
    every two cosets.  ``G`` lifts with ``lam_c(g) = phi(r_{gc}^-1 g r_c)``,
    and the bundle cocycle is the lexicographically smallest one for which
    these families satisfy the lift condition.  It is ``None`` when no such
    cocycle exists on the complete coset graph.
    """
    L = frozenset(G.index(x) for x in L)
    if not G.is_subgroup(L):
        raise InputError("L is not a subgroup of G")
    table = _phi_table(G, L, H, phi)
    seen: set[int] = set()
    points = []
    for g in G.elements:
        for h in H.elements:
            x = g * H.order + h
            if x in seen:
                continue
            o = frozenset(G.mul(g, G.inv(l)) * H.order + H.mul(table[l], h) for l in L)
            seen |= o
            points.append(o)
    points.sort(key=min)
    cosets = tuple(sorted(G.left_cosets(L), key=min))
    hb = HomogeneousBundle(G, L, H, tuple(sorted(table.items())), tuple(points), cosets)
    bad = hb.check()
    if bad:
        raise InvariantError(bad[0])
    return hb, _realize(hb)


def _realize(hb: HomogeneousBundle) -> EquivariantInstance | None:
    G, H = hb.G, hb.H
    m = len(hb.cosets)
    nerve = Nerve.complete_graph(m)
    sig = []
    for g in G.elements:
        sig.append(tuple(next(k for k, c in enumerate(hb.cosets) if G.mul(g, hb.coset_rep(i)) in c)
                         for i in range(m)))
    space = GSpace(nerve, G, tuple(sig))
    lams = [hb.chart_lambda(g) for g in G.elements]
    vals: dict[tuple[int, int], int] = {}

    for p in nerve.pairs:
        if p in vals:
            continue
        for v in H.elements:
            trial = {p: v}
            good = True
            queue = deque([p])
            while queue and good:
                i, j = queue.popleft()
                cur = trial[(i, j)]
                for g in G.elements:
                    s, lam = sig[g], lams[g]
                    w = H.prod(lam[i], cur, H.inv(lam[j]))
                    a, b = s[i], s[j]
                    key, val = ((a, b), w) if a < b else ((b, a), H.inv(w))
                    if key in trial:
                        if trial[key] != val:
                            good = False
                            break
                    else:
                        trial[key] = val
                        queue.append(key)
            if good:
                vals.update(trial)
                break
        else:
            return None
    coc = Cocycle1(nerve, H, tuple(vals[p] for p in nerve.pairs))
    inst = EquivariantInstance(space, coc)
    for g in G.elements:
        if not _compatible(inst, Lift(g, lams[g])):
            raise InvariantError("realized cocycle is incompatible with the coset action")
    return inst


@dataclass(frozen=True)
class AutomorphismCertificate:
    """Outcome of the exhaustive search over bijections of the points."""

    found: tuple[tuple[int, ...], ...]
    nodes: int
    complete: bool

    @property
    def outside_family(self) -> int:
        return self.__dict__.get("_outside", 0)


def equivariant_automorphisms(hb: HomogeneousBundle, max_points: int = 12) -> tuple[frozenset[int], AutomorphismCertificate]:
    """``{a in H : [(g, h)] -> [(g, a h)] is well defined}`` plus a certificate.

    Each such map commutes with both actions.  The certificate scans every
    bijection of the points that lies over the identity of ``G/L`` and
    commutes with the left ``G`` and right ``H`` actions (a backtracking
    search that prunes partial assignments already violating a relation)
    and records every automorphism found.  ``complete`` says the scan ran,
    which needs at most ``max_points`` points.
    """
    G, H = hb.G, hb.H
    fam = set()
    for a in H.elements:
        if all(len({hb.point_of(x // H.order, H.mul(a, x % H.order)) for x in o}) == 1 for o in hb.points):
            fam.add(a)
    family_maps = {a: tuple(hb.point_of(*_shift(hb.rep(p), a, H)) for p in range(len(hb.points)))
                   for a in fam}
    n = len(hb.points)
    if n > max_points:
        return frozenset(fam), AutomorphismCertificate((), 0, False)
    proj = [hb.projection(p) for p in range(n)]
    left = [[hb.left(g, p) for p in range(n)] for g in G.elements]
    right = [[hb.right(p, h) for p in range(n)] for h in H.elements]
    img = [-1] * n
    used = [False] * n
    found = []
    nodes = 0

    def consistent(p):
        q = img[p]
        for tab in itertools.chain(left, right):
            a, b = tab[p], tab[q]
            if img[a] != -1 and img[a] != b:
                return False
        for tab in itertools.chain(left, right):
            for x in range(n):
                if tab[x] == p and img[x] != -1 and tab[img[x]] != q:
                    return False
        return True

    def rec(p):
        nonlocal nodes
        if p == n:
            found.append(tuple(img))
            return
        for q in range(n):
            if used[q] or proj[q] != proj[p]:
                continue
            nodes += 1
            img[p], used[q] = q, True
            if consistent(p):
                rec(p + 1)
            img[p], used[q] = -1, False

    rec(0)
    cert = AutomorphismCertificate(tuple(sorted(found)), nodes, True)
    outside = sum(1 for f in found if f not in family_maps.values())
    object.__setattr__(cert, "_outside", outside)
    return frozenset(fam), cert


def _shift(gh, a, H):
    g, h = gh
    return g, H.mul(a, h)


# ---------------------------------------------------------------------------
# gauge group versus H

@dataclass(frozen=True)
class GaugeIsoReport:
    iso: tuple[tuple[int, int], ...] | None
    unmet: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.iso is not None


def gauge_iso_check(inst: EquivariantInstance) -> GaugeIsoReport:
    """The isomorphism ``mu -> mu_0`` from the gauge group onto ``H``, when it applies.

    Required: ``H`` abelian, every element of ``G`` lifts, the gauge group
    central in ``Aut_G(P)`` and ``G`` transitive on charts.  The list of
    unmet requirements is reported otherwise.
    """
    H, G, n = inst.H, inst.G, inst.nerve
    unmet = []
    if not H.is_abelian:
        unmet.append("H is not abelian")
    ok, _ = check_c1(inst)
    if not ok:
        unmet.append("C1 fails")
    if n.charts and len({inst.space.sigma[g][0] for g in G.elements}) != n.charts:
        unmet.append("G is not transitive on charts")
    if ok:
        lg = aut_group(inst)
        M = lg.group
        if any(M.mul(k, x) != M.mul(x, k) for k in lg.kernel for x in M.elements):
            unmet.append("gauge group is not central")
    if unmet:
        return GaugeIsoReport(None, tuple(unmet))
    gauge = sorted(lg.kernel)
    image = {k: lg.lifts[k].lam[0] for k in gauge}
    if sorted(image.values()) != list(H.elements):
        return GaugeIsoReport(None, ("evaluation at chart 0 is not bijective",))
    for a in gauge:
        for b in gauge:
            if image[M.mul(a, b)] != H.mul(image[a], image[b]):
                return GaugeIsoReport(None, ("evaluation at chart 0 is not a homomorphism",))
    return GaugeIsoReport(tuple(sorted(image.items())), ())


# ---------------------------------------------------------------------------
# clutching over two charts

@dataclass(frozen=True)
class ClutchResult:
    instance: EquivariantInstance | None
    failing: tuple[int, ...]
    lifting: tuple[Lift, ...] | None = None


def clutch_two_cover(gamma: FiniteGroup, rhoS: Hom, rhoN: Hom, c: int) -> ClutchResult:
    """Two charts ``S = 0`` and ``N = 1`` with ``g(N, S) = c`` and ``gamma`` fixing both.

    ``gamma`` acts by ``rhoS`` over ``S`` and ``rhoN`` over ``N``; this is a
    lift exactly when ``rhoN(x) c = c rhoS(x)``.  The failing elements are
    reported when that does not hold for every ``x``.
    """
    H = rhoS.target
    if rhoS.source != gamma or rhoN.source != gamma or rhoN.target != H:
        raise InputError("rhoS and rhoN must be homomorphisms gamma -> H")
    c = H.index(c)
    bad = tuple(x for x in gamma.elements if H.mul(rhoN(x), c) != H.mul(c, rhoS(x)))
    if bad:
        return ClutchResult(None, bad)
    nerve = Nerve(2, ((0, 1),))
    inst = EquivariantInstance(GSpace.trivial_action(nerve, gamma), Cocycle1(nerve, H, (H.inv(c),)))
    fam = tuple(Lift(x, (rhoS(x), rhoN(x))) for x in gamma.elements)
    if not all(_compatible(inst, l) for l in fam):
        raise InvariantError("intertwining families are not lifts")
    return ClutchResult(inst, (), fam)


# ---------------------------------------------------------------------------
# orbit-wise conditions

def stabilizer_representations(inst: EquivariantInstance, family: Sequence[Lift]) -> dict[int, dict[int, int]]:
    """``chart -> {x: lam_i(x)}`` over the stabilizer of each chart, read off a lifting action."""
    s = inst.space.sigma
    return {i: {l.g: l.lam[i] for l in family if s[l.g][i] == i} for i in range(inst.nerve.charts)}


def check_c2(inst: EquivariantInstance, family: Sequence[Lift]) -> list[str]:
    """For each chart orbit, the stabilizer representation must be a homomorphism
    and the action on the orbit must match the homogeneous model up to a change
    of trivialization.  Returns the failures."""
    G, H = inst.G, inst.H
    sig = inst.space.sigma
    fam = {l.g: l for l in family}
    reps = stabilizer_representations(inst, family)
    bad = []
    done: set[int] = set()
    for i in range(inst.nerve.charts):
        if i in done:
            continue
        orbit = sorted({sig[g][i] for g in G.elements})
        done |= set(orbit)
        phi = reps[i]
        if any(phi[G.mul(a, b)] != H.mul(phi[a], phi[b]) for a in phi for b in phi):
            bad.append(f"stabilizer representation at chart {i} is not a homomorphism")
            continue
        # trivialize the orbit through chosen transporters r_j with sigma_r(i) = j
        r = {j: min(g for g in G.elements if sig[g][i] == j) for j in orbit}
        mu = {j: fam[r[j]].lam[i] for j in orbit}
        for g in G.elements:
            for j in orbit:
                k = sig[g][j]
                stab = G.prod(G.inv(r[k]), g, r[j])
                model = phi[stab]
                actual = H.prod(H.inv(mu[k]), fam[g].lam[j], mu[j])
                if actual != model:
                    bad.append(f"orbit of chart {i} differs from the homogeneous model at {G.names[g]}")
                    break
    return bad


def check_c3(inst: EquivariantInstance, family: Sequence[Lift]) -> list[str]:
    """On each pair ``(i, j)``, elements fixing both charts must satisfy
    ``lam_i = g(i, j) lam_j g(i, j)^-1``.  Returns the failures."""
    H, c = inst.H, inst.bundle
    reps = stabilizer_representations(inst, family)
    bad = []
    for i, j in inst.nerve.pairs:
        for x in sorted(set(reps[i]) & set(reps[j])):
            if reps[i][x] != H.prod(c(i, j), reps[j][x], H.inv(c(i, j))):
                bad.append(f"restriction mismatch on pair {(i, j)} at {inst.G.names[x]}")
    return bad


def gauge_centralizer_order(inst: EquivariantInstance) -> int:
    """``|centralizer of the holonomy group|`` times ``|H|^(components - 1)``, an
    independent count of gauge transformations."""
    H, n, c = inst.H, inst.nerve, inst.bundle
    total = 1
    tree = n.spanning_forest()
    for comp in n.components():
        # holonomy along fundamental cycles in a gauge where tree edges are e
        parent = {}
        for u, v in tree:
            parent[v] = u
        to_root = {}
        for x in comp:
            path, y = H.e, x
            while y in parent:
                path = H.mul(c(parent[y], y), path)
                y = parent[y]
            to_root[x] = path  # transports chart-x coordinates to the root chart
        hol = set()
        tree_pairs = {(min(u, v), max(u, v)) for u, v in tree}
        for i, j in n.pairs:
            if i in comp and (i, j) not in tree_pairs:
                hol.add(H.prod(to_root[i], c(i, j), H.inv(to_root[j])))
        total *= len(centralizer(H, hol))
    return total
