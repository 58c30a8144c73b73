"""Finite categories, sieves, Grothendieck topologies and the sheaf condition.

Objects and morphisms are dense integer ids; composition is a table with
``-1`` on non-composable pairs.  ``comp[f][g]`` is ``f∘g`` (first ``g``,
then ``f``), defined when ``target(g) == source(f)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError

__all__ = [
    "FiniteCategory", "Sieve", "Topology", "SetPresheaf", "Witness", "SheafFailure",
    "sieve_generated", "pullback_sieve", "maximal_sieve", "all_sieves",
    "check_topology", "check_sheaf", "compatible_families",
    "representable", "constant_presheaf", "open_cover_site", "pseudocircle",
]


@dataclass(frozen=True)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    source: tuple[int, ...]
    target: tuple[int, ...]
    identities: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        nm, no = len(self.morphisms), len(self.objects)
        if len(set(self.objects)) != no or len(set(self.morphisms)) != nm:
            raise InputError("object and morphism names must be distinct")
        if not (len(self.source) == len(self.target) == nm and len(self.identities) == no):
            raise InputError("category data has inconsistent lengths")
        if len(self.comp) != nm or any(len(r) != nm for r in self.comp):
            raise InputError("composition table must be square over morphisms")
        for x, i in enumerate(self.identities):
            if self.source[i] != x or self.target[i] != x:
                raise InputError(f"identity of {self.objects[x]} is not an endomorphism of it")
        for f in range(nm):
            for g in range(nm):
                fg = self.comp[f][g]
                if self.target[g] != self.source[f]:
                    if fg != -1:
                        raise InputError(f"composition defined on non-composable pair "
                                         f"({self.morphisms[f]}, {self.morphisms[g]})")
                    continue
                if not 0 <= fg < nm:
                    raise InputError(f"composition missing for ({self.morphisms[f]}, {self.morphisms[g]})")
                if self.source[fg] != self.source[g] or self.target[fg] != self.target[f]:
                    raise InputError("composite has the wrong source or target")
        for f in range(nm):
            if (self.comp[f][self.identities[self.source[f]]] != f
                    or self.comp[self.identities[self.target[f]]][f] != f):
                raise InputError(f"identity law fails for {self.morphisms[f]}")
        for f, g, h in itertools.product(range(nm), repeat=3):
            if self.comp[f][g] >= 0 and self.comp[g][h] >= 0:
                if self.comp[self.comp[f][g]][h] != self.comp[f][self.comp[g][h]]:
                    raise InputError("composition is not associative")

    # -- construction ------------------------------------------------------
    @classmethod
    def build(cls, objects: Sequence[str], arrows: Sequence[tuple[str, str, str]],
              composites: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]] = ()):
        """From non-identity arrows ``(name, source, target)`` and composites.

        Identities ``id_X`` are added automatically; ``composites`` maps a
        composable pair of non-identity arrow names ``(f, g)`` to ``f∘g``.
        """
        objects = tuple(objects)
        opos = {o: i for i, o in enumerate(objects)}
        names = [f"id_{o}" for o in objects]
        src = list(range(len(objects)))
        tgt = list(range(len(objects)))
        try:
            for name, s, t in arrows:
                names.append(name)
                src.append(opos[s])
                tgt.append(opos[t])
        except KeyError as err:
            raise InputError(f"arrow refers to unknown object {err}") from None
        mpos = {m: i for i, m in enumerate(names)}
        if len(mpos) != len(names):
            raise InputError("duplicate morphism names")
        if isinstance(composites, Mapping):
            composites = [(f, g, h) for (f, g), h in composites.items()]
        n = len(names)
        comp = [[-1] * n for _ in range(n)]
        for f in range(n):
            for g in range(n):
                if tgt[g] != src[f]:
                    continue
                if f < len(objects):
                    comp[f][g] = g
                elif g < len(objects):
                    comp[f][g] = f
        try:
            for f, g, h in composites:
                comp[mpos[f]][mpos[g]] = mpos[h]
        except KeyError as err:
            raise InputError(f"composite refers to unknown morphism {err}") from None
        return cls(objects, tuple(names), tuple(src), tuple(tgt),
                   tuple(range(len(objects))), tuple(tuple(r) for r in comp))

    @classmethod
    def from_poset(cls, elements: Sequence[str], relations: Iterable[tuple[str, str]]):
        """The category of a finite poset: one arrow ``x->y`` iff ``x <= y``.

        ``relations`` need only generate the order; reflexive-transitive
        closure is taken.  Antisymmetry is checked.
        """
        elements = tuple(elements)
        pos = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        leq = [[i == j for j in range(n)] for i in range(n)]
        for a, b in relations:
            leq[pos[a]][pos[b]] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    for j in range(n):
                        if leq[k][j]:
                            leq[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise InputError("poset relation is not antisymmetric")
        arrows = [(f"{elements[i]}->{elements[j]}", elements[i], elements[j])
                  for i in range(n) for j in range(n) if i != j and leq[i][j]]
        comps = [(f"{b}->{c}", f"{a}->{b}", f"{a}->{c}")
                 for (_, a, b), (_, b2, c) in itertools.product(arrows, arrows) if b == b2]
        return cls.build(elements, arrows, comps)

    # -- queries -----------------------------------------------------------
    def obj(self, x) -> int:
        if isinstance(x, int):
            return x
        try:
            return self.objects.index(x)
        except ValueError:
            raise InputError(f"unknown object {x!r}") from None

    def mor(self, f) -> int:
        if isinstance(f, int):
            return f
        try:
            return self.morphisms.index(f)
        except ValueError:
            raise InputError(f"unknown morphism {f!r}") from None

    def compose(self, f: int, g: int) -> int:
        h = self.comp[f][g]
        if h < 0:
            raise InputError(f"{self.morphisms[f]} and {self.morphisms[g]} are not composable")
        return h

    def into(self, x: int) -> tuple[int, ...]:
        """All morphisms with target ``x``."""
        return tuple(f for f in range(len(self.morphisms)) if self.target[f] == x)

    def hom(self, y: int, x: int) -> tuple[int, ...]:
        return tuple(f for f in self.into(x) if self.source[f] == y)


@dataclass(frozen=True)
class Sieve:
    """A precomposition-closed set of morphisms into ``base``."""

    cat: FiniteCategory = field(repr=False, compare=False, hash=False)
    base: int
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        c = self.cat
        for f in self.members:
            if c.target[f] != self.base:
                raise InputError(f"{c.morphisms[f]} does not target {c.objects[self.base]}")
            for g in c.into(c.source[f]):
                if c.comp[f][g] not in self.members:
                    raise InputError("member set is not closed under precomposition")

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __contains__(self, f: int) -> bool:
        return f in self.members

    def describe(self) -> list[str]:
        return [self.cat.morphisms[f] for f in self.key()]


def sieve_generated(cat: FiniteCategory, x: int, gens: Iterable[int]) -> Sieve:
    """The smallest sieve on ``x`` containing ``gens``."""
    members = set()
    for g in gens:
        if cat.target[g] != x:
            raise InputError(f"generator {cat.morphisms[g]} does not target {cat.objects[x]}")
        members.update(cat.comp[g][h] for h in cat.into(cat.source[g]))
    return Sieve(cat, x, frozenset(members))


def maximal_sieve(cat: FiniteCategory, x: int) -> Sieve:
    return Sieve(cat, x, frozenset(cat.into(x)))


def pullback_sieve(r: Sieve, f: int) -> Sieve:
    """``R^f = {g : f∘g in R}`` for ``f: Y -> X``."""
    c = r.cat
    if c.target[f] != r.base:
        raise InputError(f"{c.morphisms[f]} does not target the base of the sieve")
    y = c.source[f]
    return Sieve(c, y, frozenset(g for g in c.into(y) if c.comp[f][g] in r.members))


def all_sieves(cat: FiniteCategory, x: int) -> list[Sieve]:
    """Every sieve on ``x``, sorted by member tuple."""
    ms = cat.into(x)
    down = {m: frozenset(cat.comp[m][h] for h in cat.into(cat.source[m])) for m in ms}
    up = {m: frozenset(k for k in ms if m in down[k]) for m in ms}
    out = []

    def rec(i, inc, exc):
        if i == len(ms):
            out.append(inc)
            return
        m = ms[i]
        if m in inc or m in exc:
            rec(i + 1, inc, exc)
            return
        if not down[m] & exc:
            rec(i + 1, inc | down[m], exc)
        if not up[m] & inc:
            rec(i + 1, inc, exc | up[m])

    rec(0, frozenset(), frozenset())
    return [Sieve(cat, x, s) for s in sorted(out, key=sorted)]


@dataclass(frozen=True)
class Topology:
    """Covering sieves: ``covers[x]`` is a set of member sets of sieves on ``x``."""

    cat: FiniteCategory = field(repr=False)
    covers: tuple[frozenset[frozenset[int]], ...]

    @classmethod
    def from_sieves(cls, cat: FiniteCategory, assignment: Mapping[int, Iterable[Sieve]]):
        covers = []
        for x in range(len(cat.objects)):
            fam = set()
            for s in assignment.get(x, ()):
                if s.base != x:
                    raise InputError("sieve assigned to the wrong object")
                fam.add(s.members)
            covers.append(frozenset(fam))
        return cls(cat, tuple(covers))

    @classmethod
    def coarsest(cls, cat: FiniteCategory):
        """``J(X) = {maximal sieve}`` for every object."""
        return cls.from_sieves(cat, {x: [maximal_sieve(cat, x)] for x in range(len(cat.objects))})

    def sieves(self, x: int) -> list[Sieve]:
        return [Sieve(self.cat, x, m) for m in sorted(self.covers[x], key=sorted)]

    def is_covering(self, s: Sieve) -> bool:
        return s.members in self.covers[s.base]


@dataclass(frozen=True)
class Witness:
    """One failed axiom instance of :func:`check_topology`."""

    axiom: str
    obj: str
    sieve: tuple[str, ...]
    morphism: str | None
    detail: str


def check_topology(cat: FiniteCategory, j: Topology) -> list[Witness]:
    """All failures of the topology axioms; empty iff ``j`` is a topology.

    Checks nonemptiness, presence of the maximal sieve, stability under
    pullback (axiom 1) and the local-character equivalence (axiom 2, in its
    "if and only if" form quantified over every covering sieve).
    """
    out: list[Witness] = []
    names = cat.morphisms

    def w(axiom, x, s, f, detail):
        out.append(Witness(axiom, cat.objects[x], tuple(names[m] for m in sorted(s.members)) if s else (),
                           names[f] if f is not None else None, detail))

    for x in range(len(cat.objects)):
        fam = j.sieves(x)
        if not fam:
            w("nonempty", x, None, None, "J(X) is empty")
        mx = maximal_sieve(cat, x)
        if not j.is_covering(mx):
            w("maximal", x, mx, None, "maximal sieve is not covering")
        for r in fam:
            for f in cat.into(x):
                pb = pullback_sieve(r, f)
                if not j.is_covering(pb):
                    w("axiom-1", x, r, f, f"pullback {pb.describe()} is not covering")
        for s in all_sieves(cat, x):
            bad = next(((r, f) for r in fam for f in r.key()
                        if not j.is_covering(pullback_sieve(s, f))), None)
            inside = j.is_covering(s)
            if inside and bad is not None:
                w("axiom-2", x, s, bad[1], "covering sieve has a non-covering local pullback")
            elif not inside and bad is None:
                w("axiom-2", x, s, None, "sieve is locally covering but not in J(X)")
    return out


@dataclass(frozen=True)
class SetPresheaf:
    """A functor ``C^op -> FinSet``: ``sizes[x] = |S(x)|`` and, for ``f: y -> x``,
    ``restriction[f][s]`` is the image in ``S(y)`` of ``s in S(x)``."""

    cat: FiniteCategory = field(repr=False)
    sizes: tuple[int, ...]
    restriction: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        c = self.cat
        if len(self.sizes) != len(c.objects) or len(self.restriction) != len(c.morphisms):
            raise InputError("presheaf data has the wrong shape")
        for f, r in enumerate(self.restriction):
            if len(r) != self.sizes[c.target[f]] or any(not 0 <= v < self.sizes[c.source[f]] for v in r):
                raise InputError(f"restriction along {c.morphisms[f]} has the wrong shape")
        for x, i in enumerate(c.identities):
            if self.restriction[i] != tuple(range(self.sizes[x])):
                raise InputError(f"restriction along id_{c.objects[x]} is not the identity")
        for f in range(len(c.morphisms)):
            for g in range(len(c.morphisms)):
                fg = c.comp[f][g]
                if fg >= 0 and self.restriction[fg] != tuple(self.restriction[g][v] for v in self.restriction[f]):
                    raise InputError("presheaf is not functorial")


def representable(cat: FiniteCategory, z: int) -> SetPresheaf:
    """``h_z = Hom(-, z)``; elements of ``h_z(y)`` are listed in morphism-id order."""
    homs = [cat.hom(y, z) for y in range(len(cat.objects))]
    pos = [{h: i for i, h in enumerate(hs)} for hs in homs]
    res = []
    for g in range(len(cat.morphisms)):
        y, x = cat.source[g], cat.target[g]
        res.append(tuple(pos[y][cat.comp[h][g]] for h in homs[x]))
    return SetPresheaf(cat, tuple(len(h) for h in homs), tuple(res))


def constant_presheaf(cat: FiniteCategory, k: int) -> SetPresheaf:
    return SetPresheaf(cat, (k,) * len(cat.objects), tuple(tuple(range(k)) for _ in cat.morphisms))


def compatible_families(s: SetPresheaf, r: Sieve) -> list[tuple[int, ...]]:
    """Matching families on ``r``: one value per member (sorted by id) with
    ``S(g)(x_f) = x_{f∘g}``."""
    c = s.cat
    ms = r.key()
    pos = {f: i for i, f in enumerate(ms)}
    # constraints (i, g, k): restriction of value i along g must equal value k
    cons: list[list[tuple[int, int, int]]] = [[] for _ in ms]
    for f in ms:
        for g in c.into(c.source[f]):
            i, k = pos[f], pos[c.comp[f][g]]
            cons[max(i, k)].append((i, g, k))
    out: list[tuple[int, ...]] = []
    vals = [0] * len(ms)

    def rec(n):
        if n == len(ms):
            out.append(tuple(vals))
            return
        for v in range(s.sizes[c.source[ms[n]]]):
            vals[n] = v
            if all(s.restriction[g][vals[i]] == vals[k] for i, g, k in cons[n]):
                rec(n + 1)

    rec(0)
    return out


@dataclass(frozen=True)
class SheafFailure:
    obj: str
    sieve: tuple[str, ...]
    sections: int
    families: int
    injective: bool
    surjective: bool


def check_sheaf(s: SetPresheaf, cat: FiniteCategory, j: Topology) -> list[SheafFailure]:
    """For every ``X`` and ``R in J(X)``, test that ``S(X) -> lim_R S`` is bijective."""
    out = []
    for x in range(len(cat.objects)):
        for r in j.sieves(x):
            fams = compatible_families(s, r)
            canon = [tuple(s.restriction[f][v] for f in r.key()) for v in range(s.sizes[x])]
            inj = len(set(canon)) == len(canon)
            sur = set(fams) <= set(canon)
            if not (inj and sur):
                out.append(SheafFailure(cat.objects[x], tuple(r.describe()), s.sizes[x], len(fams), inj, sur))
    return out


def open_cover_site(opens: Iterable[Iterable[str]], names: Mapping[frozenset, str] | None = None):
    """The poset of nonempty opens with covering sieves = families whose union is the open.

    Returns ``(category, topology)``; object ``U`` is named by its sorted points
    unless ``names`` says otherwise.
    """
    opens = sorted({frozenset(u) for u in opens if u}, key=lambda u: (len(u), sorted(u)))

    def nm(u):
        return (names or {}).get(u) or "".join(sorted(u))

    labels = [nm(u) for u in opens]
    rel = [(labels[i], labels[k]) for i, u in enumerate(opens) for k, v in enumerate(opens)
           if i != k and u <= v]
    cat = FiniteCategory.from_poset(labels, rel)
    assignment = {}
    for x, u in enumerate(opens):
        assignment[x] = [sv for sv in all_sieves(cat, x)
                         if frozenset().union(*[opens[cat.source[f]] for f in sv.members]) == u]
    return cat, Topology.from_sieves(cat, assignment)


def pseudocircle():
    """The 4-point pseudocircle: open points ``a, b``, closed points ``c, d``."""
    return open_cover_site(["a", "b", "ab", "abc", "abd", "abcd"])
