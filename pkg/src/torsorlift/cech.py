"""Čech cochains on a combinatorial cover.

A :class:`Nerve` records charts, nonempty double overlaps and nonempty
triple overlaps.  Every overlap is taken to be connected, so a cochain
carries one group element per overlap.

Orientation: ``g(i, j)`` takes chart ``j`` coordinates to chart ``i``
coordinates by *left* multiplication, the structure group acts on the right,
and the cocycle (Chasles) condition reads ``g(i, j) g(j, k) = g(i, k)``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._parallel import chunk, pmap
from .errors import InputError, PreconditionError, UnsupportedError
from .grp import FiniteGroup

__all__ = [
    "Nerve", "Chain1", "Cocycle1", "Cocycle2", "TotalSpace", "ClassList",
    "is_cocycle", "two_cocycle_of_chain", "coboundary2", "coboundary2_witness",
    "correct_chain", "cohomologous1", "h1_classes", "glue", "h2_classes",
]


@dataclass(frozen=True)
class Nerve:
    charts: int
    pairs: tuple[tuple[int, int], ...]
    triples: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        n = self.charts
        if n < 0:
            raise InputError("chart count must be nonnegative")
        pairs = set()
        for p in self.pairs:
            i, j = sorted(int(x) for x in p)
            if i == j or not (0 <= i and j < n) or len(p) != 2:
                raise InputError(f"bad pair {tuple(p)}")
            pairs.add((i, j))
        triples = set()
        for t in self.triples:
            s = tuple(sorted(int(x) for x in t))
            if len(t) != 3 or len(set(s)) != 3 or not (0 <= s[0] and s[2] < n):
                raise InputError(f"bad triple {tuple(t)}")
            for a, b in itertools.combinations(s, 2):
                if (a, b) not in pairs:
                    raise InputError(f"triple {s} has a face {a, b} that is not a pair")
            triples.add(s)
        object.__setattr__(self, "pairs", tuple(sorted(pairs)))
        object.__setattr__(self, "triples", tuple(sorted(triples)))

    # -- standard shapes ---------------------------------------------------
    @classmethod
    def cycle(cls, n: int) -> "Nerve":
        """``n >= 3`` charts in a ring, no triple overlaps."""
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Nerve":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def simplex(cls, n: int) -> "Nerve":
        """Every pair and every triple overlap."""
        return cls(n, tuple(itertools.combinations(range(n), 2)), tuple(itertools.combinations(range(n), 3)))

    @classmethod
    def complete_graph(cls, n: int) -> "Nerve":
        return cls(n, tuple(itertools.combinations(range(n), 2)))

    @classmethod
    def octahedron(cls) -> "Nerve":
        """Six charts covering a 2-sphere like the faces of an octahedron (antipodes ``i, i+3``)."""
        pairs = [p for p in itertools.combinations(range(6), 2) if p[1] - p[0] != 3]
        triples = [t for t in itertools.combinations(range(6), 3)
                   if all(b - a != 3 for a, b in itertools.combinations(t, 2))]
        return cls(6, tuple(pairs), tuple(triples))

    # -- structure ---------------------------------------------------------
    def has_pair(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._pairset

    @property
    def _pairset(self) -> frozenset:
        s = self.__dict__.get("_ps")
        if s is None:
            s = frozenset(self.pairs)
            object.__setattr__(self, "_ps", s)
        return s

    def neighbours(self, i: int) -> list[int]:
        return sorted({b for a, b in self.pairs if a == i} | {a for a, b in self.pairs if b == i})

    def components(self) -> list[list[int]]:
        out, seen = [], set()
        for r in range(self.charts):
            if r in seen:
                continue
            comp, queue = [r], deque([r])
            seen.add(r)
            while queue:
                x = queue.popleft()
                for y in self.neighbours(x):
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            out.append(comp)
        return out

    def spanning_forest(self) -> list[tuple[int, int]]:
        """BFS tree edges ``(parent, child)`` from the smallest chart of each component."""
        edges = []
        for comp in self.components():
            seen = {comp[0]}
            queue = deque([comp[0]])
            while queue:
                x = queue.popleft()
                for y in self.neighbours(x):
                    if y not in seen:
                        seen.add(y)
                        edges.append((x, y))
                        queue.append(y)
        return edges

    def four_cliques(self) -> list[tuple[int, int, int, int]]:
        ts = set(self.triples)
        return [q for q in itertools.combinations(range(self.charts), 4)
                if all(t in ts for t in itertools.combinations(q, 3))]

    def cells(self) -> list[tuple[int, ...]]:
        """Charts, pairs and triples as sorted simplices."""
        return [(i,) for i in range(self.charts)] + list(self.pairs) + list(self.triples)


@dataclass(frozen=True)
class Chain1:
    """An ``H``-valued 1-cochain: ``values[k]`` sits on ``nerve.pairs[k]`` as ``g(i, j)``, ``i < j``."""

    nerve: Nerve
    group: FiniteGroup = field(repr=False)
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(self.nerve.pairs) or any(not 0 <= v < self.group.order for v in vals):
            raise InputError("cochain needs one group element per pair")

    @classmethod
    def from_mapping(cls, nerve: Nerve, group: FiniteGroup, mapping: Mapping[tuple[int, int], int]):
        """Build from ``{(i, j): g}``; either orientation may be given, absent pairs are ``e``."""
        vals = {p: group.e for p in nerve.pairs}
        for (i, j), g in mapping.items():
            g = group.index(g)
            if not nerve.has_pair(i, j):
                raise InputError(f"({i}, {j}) is not a pair of the nerve")
            vals[(i, j) if i < j else (j, i)] = g if i < j else group.inv(g)
        return cls(nerve, group, tuple(vals[p] for p in nerve.pairs))

    @classmethod
    def identity(cls, nerve: Nerve, group: FiniteGroup):
        return cls(nerve, group, (group.e,) * len(nerve.pairs))

    def __call__(self, i: int, j: int) -> int:
        if i == j:
            return self.group.e
        k = self.nerve.pairs.index((i, j) if i < j else (j, i))
        return self.values[k] if i < j else self.group.inv(self.values[k])

    def as_mapping(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.nerve.pairs, self.values))

    def chasles_failures(self) -> list[tuple[int, int, int]]:
        G = self.group
        return [(i, j, k) for i, j, k in self.nerve.triples if G.mul(self(i, j), self(j, k)) != self(i, k)]


class Cocycle1(Chain1):
    """A :class:`Chain1` satisfying the Chasles relation on every triple."""

    def __post_init__(self):
        super().__post_init__()
        bad = self.chasles_failures()
        if bad:
            raise InputError(f"Chasles relation fails on triple {bad[0]}")

    @classmethod
    def of(cls, chain: Chain1) -> "Cocycle1":
        return cls(chain.nerve, chain.group, chain.values)


def is_cocycle(c: Chain1) -> tuple[bool, list[tuple[int, int, int]]]:
    bad = c.chasles_failures()
    return not bad, bad


# ---------------------------------------------------------------------------
# degree two

def _check_band(group: FiniteGroup, band: Iterable[int] | None) -> frozenset[int]:
    band = frozenset(group.elements) if band is None else frozenset(int(b) for b in band)
    if not group.is_subgroup(band):
        raise InputError("band is not a subgroup")
    if any(group.mul(a, b) != group.mul(b, a) for a in band for b in band):
        raise UnsupportedError("band must be abelian")
    return band


@dataclass(frozen=True)
class Cocycle2:
    """A band-valued 2-cocycle: ``values[k]`` sits on ``nerve.triples[k]`` as ``c(i, j, k)``, ``i < j < k``.

    Other orientations follow the alternating rule (odd permutations invert).
    """

    nerve: Nerve
    group: FiniteGroup = field(repr=False)
    band: frozenset[int] = field(repr=False)
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "band", _check_band(self.group, self.band))
        if len(vals) != len(self.nerve.triples):
            raise InputError("2-cochain needs one value per triple")
        if any(v not in self.band for v in vals):
            raise InputError("2-cochain value outside the band")
        bad = self.clique_failures()
        if bad:
            raise InputError(f"coboundary of the 2-cocycle does not vanish on {bad[0]}")

    def __call__(self, i: int, j: int, k: int) -> int:
        s = sorted((i, j, k))
        v = self.values[self.nerve.triples.index(tuple(s))]
        perm = [s.index(x) for x in (i, j, k)]
        odd = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b]) % 2
        return self.group.inv(v) if odd else v

    def clique_failures(self) -> list[tuple[int, int, int, int]]:
        G = self.group
        tv = dict(zip(self.nerve.triples, self.values))
        return [(i, j, k, l) for i, j, k, l in self.nerve.four_cliques()
                if G.prod(tv[(j, k, l)], G.inv(tv[(i, k, l)]), tv[(i, j, l)], G.inv(tv[(i, j, k)])) != G.e]


def two_cocycle_of_chain(h: Chain1, band: Iterable[int] | None = None) -> Cocycle2:
    """``c(i, j, k) = h(k, i) h(i, j) h(j, k)``, the defect of ``h`` from being a cocycle.

    ``band`` must be a central subgroup of ``h.group`` (default: the whole
    group, which then has to be abelian) containing every defect.
    """
    G = h.group
    band = _check_band(G, band)
    if not band <= G.center:
        raise UnsupportedError("band must be central for the defect to be a 2-cocycle")
    vals = []
    for i, j, k in h.nerve.triples:
        v = G.prod(h(k, i), h(i, j), h(j, k))
        if v not in band:
            raise InputError(f"defect on triple {(i, j, k)} is {G.names[v]}, outside the band")
        vals.append(v)
    return Cocycle2(h.nerve, G, band, tuple(vals))


def coboundary2(b: Chain1) -> tuple[int, ...]:
    """``(δb)(i, j, k) = b(k, i) b(i, j) b(j, k)`` for every triple."""
    G = b.group
    return tuple(G.prod(b(k, i), b(i, j), b(j, k)) for i, j, k in b.nerve.triples)


def _band_search(nerve: Nerve, band: list[int], test) -> tuple[int, ...] | None:
    """Backtrack over band-valued pair assignments; ``test(vals, triple)`` is
    called once all three faces of ``triple`` are assigned."""
    pairs = nerve.pairs
    pos = {p: k for k, p in enumerate(pairs)}
    due: list[list[tuple[int, int, int]]] = [[] for _ in pairs]
    for t in nerve.triples:
        i, j, k = t
        due[max(pos[(i, j)], pos[(j, k)], pos[(i, k)])].append(t)
    vals = [0] * len(pairs)

    def rec(k):
        if k == len(pairs):
            return True
        for v in band:
            vals[k] = v
            if all(test(vals, t, pos) for t in due[k]) and rec(k + 1):
                return True
        return False

    return tuple(vals) if rec(0) else None


def coboundary2_witness(c: Cocycle2) -> Chain1 | None:
    """A band-valued ``b`` with ``δb = c``, or ``None`` if ``c`` is not a coboundary."""
    G = c.group
    target = dict(zip(c.nerve.triples, c.values))

    def test(vals, t, pos):
        i, j, k = t
        bij, bjk, bik = vals[pos[(i, j)]], vals[pos[(j, k)]], vals[pos[(i, k)]]
        return G.prod(G.inv(bik), bij, bjk) == target[t]

    vals = _band_search(c.nerve, sorted(c.band), test)
    return None if vals is None else Chain1(c.nerve, G, vals)


def correct_chain(h: Chain1, band: Iterable[int]) -> Chain1 | None:
    """A band-valued ``m`` such that ``(i, j) -> m(i, j) h(i, j)`` is a cocycle, or ``None``."""
    G = h.group
    hv = h.values

    def test(vals, t, pos):
        i, j, k = t
        a = G.mul(vals[pos[(i, j)]], hv[pos[(i, j)]])
        b = G.mul(vals[pos[(j, k)]], hv[pos[(j, k)]])
        return G.mul(a, b) == G.mul(vals[pos[(i, k)]], hv[pos[(i, k)]])

    vals = _band_search(h.nerve, sorted(set(band)), test)
    return None if vals is None else Chain1(h.nerve, G, vals)


# ---------------------------------------------------------------------------
# degree one classification

def cohomologous1(a: Chain1, b: Chain1) -> tuple[int, ...] | None:
    """``lam`` with ``b(i, j) = lam_i a(i, j) lam_j^-1`` on every pair, or ``None``.

    Per component, each root value is propagated along a BFS tree and then
    checked on every pair; the first root value (in index order) that works
    is kept.
    """
    if a.nerve != b.nerve or a.group != b.group:
        raise InputError("cochains live on different nerves or groups")
    n, G = a.nerve, a.group
    lam = [G.e] * n.charts
    for comp in n.components():
        found = False
        for root in G.elements:
            cand = {comp[0]: root}
            queue = deque([comp[0]])
            while queue:
                u = queue.popleft()
                for v in n.neighbours(u):
                    if v not in cand:
                        cand[v] = G.prod(G.inv(b(u, v)), cand[u], a(u, v))
                        queue.append(v)
            if all(b(i, j) == G.prod(cand[i], a(i, j), G.inv(cand[j]))
                   for i, j in n.pairs if i in cand):
                for x, v in cand.items():
                    lam[x] = v
                found = True
                break
        if not found:
            return None
    return tuple(lam)


@dataclass(frozen=True)
class ClassList:
    """Class count plus one canonical representative per class, sorted."""

    count: int
    representatives: tuple


def _gauge_fixed_scan(args) -> set[tuple[int, ...]]:
    nerve, group, free, heads = args
    G = group
    comps = nerve.components()
    where = {x: ci for ci, comp in enumerate(comps) for x in comp}
    pair_comp = [where[i] for i, _ in nerve.pairs]
    pos = {p: k for k, p in enumerate(nerve.pairs)}
    # triples to check once the free pair at each step has a value
    step = {k: t for t, k in enumerate(free)}
    due: list[list[tuple[int, int, int]]] = [[] for _ in free]
    for i, j, k in nerve.triples:
        ks = (pos[(i, j)], pos[(j, k)], pos[(i, k)])
        last = max((step[x] for x in ks if x in step), default=None)
        if last is not None:
            due[last].append(ks)
    vals = [G.e] * len(nerve.pairs)
    out = set()

    def canonical():
        best = None
        for cs in itertools.product(G.elements, repeat=len(comps)):
            t = tuple(G.conj(cs[pair_comp[k]], vals[k]) for k in range(len(vals)))
            if best is None or t < best:
                best = t
        return best

    def rec(t):
        if t == len(free):
            out.add(canonical())
            return
        for v in (heads if t == 0 else G.elements):
            vals[free[t]] = v
            if all(G.mul(vals[a], vals[b]) == vals[c] for a, b, c in due[t]):
                rec(t + 1)
        vals[free[t]] = G.e

    if free:
        rec(0)
    elif not Chain1(nerve, G, tuple(vals)).chasles_failures():
        out.add(canonical())
    return out


def h1_classes(nerve: Nerve, group: FiniteGroup, workers: int = 1) -> ClassList:
    """All ``H``-cocycles on ``nerve`` up to :func:`cohomologous1`.

    Gauge fixing: every class has a member that is ``e`` on a spanning
    forest, unique up to conjugating each component by a constant, so only
    the values on non-tree pairs are searched, depth first, dropping a
    partial assignment as soon as a completed triple fails Chasles.
    The canonical representative of a class is its lexicographically
    smallest gauge-fixed member.
    """
    tree = {(min(a, b), max(a, b)) for a, b in nerve.spanning_forest()}
    free = [k for k, p in enumerate(nerve.pairs) if p not in tree]
    heads = list(group.elements) if free else [group.e]
    jobs = [(nerve, group, free, part) for part in chunk(heads, workers)]
    found: set[tuple[int, ...]] = set()
    for s in pmap(_gauge_fixed_scan, jobs, workers):
        found |= s
    reps = tuple(Cocycle1(nerve, group, v) for v in sorted(found))
    return ClassList(len(reps), reps)


# ---------------------------------------------------------------------------
# gluing

@dataclass(frozen=True)
class TotalSpace:
    """The glued torsor ``⨆_i U_i x H / ~``, with ``(j, x, h) ~ (i, x, g(i, j) h)``.

    Base cells are the simplices of the nerve; point ``p = cell * |H| + h``
    is the class whose coordinate in chart ``min(cell)`` is ``h``.
    """

    cocycle: Cocycle1
    cells: tuple[tuple[int, ...], ...]

    @property
    def group(self) -> FiniteGroup:
        return self.cocycle.group

    @property
    def points(self) -> range:
        return range(len(self.cells) * self.group.order)

    def projection(self, p: int) -> tuple[int, ...]:
        return self.cells[p // self.group.order]

    def point(self, cell: tuple[int, ...], chart: int, h: int) -> int:
        """The point over ``cell`` whose chart-``chart`` coordinate is ``h``."""
        if chart not in cell:
            raise InputError("chart does not contain this cell")
        G, g = self.group, self.cocycle
        return self.cells.index(cell) * G.order + G.mul(g(cell[0], chart), h)

    def coordinate(self, p: int, chart: int) -> int:
        """Chart trivialization: the ``H``-coordinate of ``p`` in ``chart``."""
        cell = self.projection(p)
        if chart not in cell:
            raise InputError("point is not over this chart")
        G = self.group
        return G.mul(self.cocycle(chart, cell[0]), p % G.order)

    def act(self, p: int, h: int) -> int:
        """The right action ``p . h``."""
        G = self.group
        return (p // G.order) * G.order + G.mul(p % G.order, h)

    def is_free(self) -> bool:
        G = self.group
        return all(self.act(p, h) != p for p in self.points for h in G.elements if h != G.e)

    def components(self) -> list[frozenset[int]]:
        """Connected components, a point over a face being adjacent to the points
        over a larger cell that share its coordinate in a common chart."""
        G = self.group
        parent = list(self.points)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        cellset = set(self.cells)
        for cell in self.cells:
            for r in range(1, len(cell)):
                for face in itertools.combinations(cell, r):
                    if face in cellset:
                        for h in G.elements:
                            p = self.point(cell, face[0], h)
                            q = self.point(face, face[0], h)
                            parent[find(p)] = find(q)
        groups: dict[int, set[int]] = {}
        for p in self.points:
            groups.setdefault(find(p), set()).add(p)
        return sorted((frozenset(s) for s in groups.values()), key=min)

    def transitions(self) -> Cocycle1:
        """Re-extract ``g(i, j)`` as the chart-``i`` coordinate of the point whose chart-``j`` coordinate is ``e``."""
        G = self.group
        vals = [self.coordinate(self.point(p, p[1], G.e), p[0]) for p in self.cocycle.nerve.pairs]
        return Cocycle1(self.cocycle.nerve, G, tuple(vals))


def glue(c: Chain1) -> TotalSpace:
    bad = c.chasles_failures()
    if bad:
        raise PreconditionError(f"cannot glue: Chasles relation fails on {bad[0]}")
    coc = c if isinstance(c, Cocycle1) else Cocycle1.of(c)
    return TotalSpace(coc, tuple(c.nerve.cells()))


# ---------------------------------------------------------------------------
# abelian H^2

def h2_classes(nerve: Nerve, band: FiniteGroup) -> ClassList:
    """Band-valued 2-cocycles modulo coboundaries ``δb`` of band-valued 1-cochains."""
    if not band.is_abelian:
        raise UnsupportedError("H^2 is only computed for abelian bands")
    B = band
    ts = nerve.triples
    tpos = {t: k for k, t in enumerate(ts)}
    quads = nerve.four_cliques()

    def closed(v):
        return all(B.prod(v[tpos[(j, k, l)]], B.inv(v[tpos[(i, k, l)]]), v[tpos[(i, j, l)]],
                          B.inv(v[tpos[(i, j, k)]])) == B.e for i, j, k, l in quads)

    cocycles = [v for v in itertools.product(B.elements, repeat=len(ts)) if closed(v)]
    gens = []
    for k in range(len(nerve.pairs)):
        for g in B.generators:
            vals = [B.e] * len(nerve.pairs)
            vals[k] = g
            gens.append(coboundary2(Chain1(nerve, B, tuple(vals))))
    ident = (B.e,) * len(ts)
    bounds = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(B.mul(a, b) for a, b in zip(x, g))
            if y not in bounds:
                bounds.add(y)
                queue.append(y)
    seen: set[tuple[int, ...]] = set()
    reps = []
    for z in cocycles:
        if z in seen:
            continue
        seen |= {tuple(B.mul(a, b) for a, b in zip(z, y)) for y in bounds}
        reps.append(Cocycle2(nerve, B, frozenset(B.elements), z))
    return ClassList(len(reps), tuple(reps))
