"""Finite groups as Cayley tables, with homomorphisms, actions and the
subgroup machinery (centralizers, conjugacy classes, Aut/Inn/Out).

Elements are dense indices ``0..n-1``.  Every group carries a tuple of
element names used for parsing and for human-readable reports.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

__all__ = [
    "FiniteGroup", "Hom", "GAction", "AutomorphismData",
    "cyclic", "symmetric", "alternating", "dihedral", "klein_four", "quaternion",
    "trivial", "direct_product", "from_name", "quotient",
    "homomorphisms", "find_isomorphism", "centralizer", "conjugacy_classes",
    "automorphism_group",
]


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the index of ``a*b``.  The constructor validates the
    group axioms (closure, Latin square, identity, associativity) and raises
    :class:`InputError` on failure.
    """

    def __init__(self, table, names: Sequence[str] | None = None, name: str = ""):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise InputError("group table must be a nonempty square array")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise InputError("group table entries out of range")
        ar = np.arange(n)
        if not (np.sort(t, axis=1) == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
            raise InputError("group table is not a Latin square")
        ids = [a for a in range(n) if (t[a] == ar).all() and (t[:, a] == ar).all()]
        if not ids:
            raise InputError("group table has no identity")
        if not np.array_equal(t[t], t[:, t]):
            raise InputError("group table is not associative")
        e = ids[0]
        inv = np.argmax(t == e, axis=1)
        t.flags.writeable = False
        inv.flags.writeable = False
        self.table = t
        self.e = int(e)
        self.inverse = inv
        if names is None:
            names = [str(i) for i in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n or len(set(names)) != n:
            raise InputError("element names must be distinct, one per element")
        self.names = names
        self.name = name or f"G{n}"
        self._index = {s: i for i, s in enumerate(names)}

    # -- basic arithmetic -------------------------------------------------
    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def prod(self, *xs: int) -> int:
        r = self.e
        for x in xs:
            r = int(self.table[r, x])
        return r

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = self.e
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.e:
            x = self.mul(x, a)
            k += 1
        return k

    # -- names ------------------------------------------------------------
    def index(self, x) -> int:
        """Element index from a name (or a passthrough int)."""
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if not 0 <= int(x) < self.order:
                raise InputError(f"element index {x} out of range for {self.name}")
            return int(x)
        try:
            return self._index[str(x)]
        except KeyError:
            raise InputError(f"unknown element {x!r} of {self.name}") from None

    def name_of(self, a: int) -> str:
        return self.names[a]

    # -- structure --------------------------------------------------------
    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """The subgroup generated by ``gens``."""
        gens = [int(g) for g in gens]
        seen = {self.e}
        queue = deque([self.e])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, s: Iterable[int]) -> bool:
        s = set(s)
        if self.e not in s:
            return False
        return all(int(self.table[a, self.inverse[b]]) in s for a in s for b in s)

    def is_normal(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return self.is_subgroup(s) and all(self.conj(g, x) in s for g in self.elements for x in s)

    @cached_property
    def center(self) -> frozenset[int]:
        return centralizer(self, self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        gens: list[int] = []
        span = frozenset([self.e])
        for a in sorted(self.elements, key=lambda x: (-self.element_order(x), x)):
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def subgroup(self, elements: Iterable[int], name: str = "") -> tuple["FiniteGroup", tuple[int, ...]]:
        """Realize a subgroup as a group of its own.

        Returns the new group and the embedding (new index -> old index),
        which lists the elements in increasing order of their old index.
        """
        elems = sorted(set(int(x) for x in elements))
        if not self.is_subgroup(elems):
            raise InputError("element set is not a subgroup")
        pos = {x: i for i, x in enumerate(elems)}
        tab = [[pos[self.mul(a, b)] for b in elems] for a in elems]
        return FiniteGroup(tab, [self.names[x] for x in elems], name or f"sub({self.name})"), tuple(elems)

    def left_cosets(self, sub: Iterable[int]) -> list[frozenset[int]]:
        sub = frozenset(sub)
        out: list[frozenset[int]] = []
        seen: set[int] = set()
        for g in self.elements:
            if g not in seen:
                c = frozenset(self.mul(g, h) for h in sub)
                seen |= c
                out.append(c)
        return out

    # -- identity ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteGroup) and self.names == other.names
                and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.names, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class Hom:
    """A group homomorphism ``source -> target``; ``images[a]`` is the image of ``a``."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        s, t = self.source, self.target
        if len(imgs) != s.order or any(not 0 <= x < t.order for x in imgs):
            raise InputError("homomorphism map has the wrong shape")
        im = np.array(imgs)
        if not np.array_equal(im[s.table], t.table[im[:, None], im[None, :]]):
            raise InputError(f"map {s.name} -> {t.name} is not a homomorphism")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def kernel(self) -> frozenset[int]:
        return frozenset(a for a in self.source.elements if self.images[a] == self.target.e)

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def compose(self, inner: "Hom") -> "Hom":
        """``self ∘ inner``."""
        return Hom(inner.source, self.target, tuple(self.images[x] for x in inner.images))


@dataclass(frozen=True)
class GAction:
    """A left action of ``group`` on the carrier ``range(size)``."""

    group: FiniteGroup
    size: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tab = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", tab)
        g = self.group
        if len(tab) != g.order or any(len(r) != self.size for r in tab):
            raise InputError("action table has the wrong shape")
        if any(sorted(r) != list(range(self.size)) for r in tab):
            raise InputError("group elements must act by bijections")
        if tab[g.e] != tuple(range(self.size)):
            raise InputError("identity does not act trivially")
        for a in g.elements:
            for b in g.elements:
                ab = tab[g.mul(a, b)]
                if any(tab[a][tab[b][x]] != ab[x] for x in range(self.size)):
                    raise InputError("action is not compatible with the group law")

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    def orbits(self) -> list[frozenset[int]]:
        out, seen = [], set()
        for x in range(self.size):
            if x not in seen:
                o = frozenset(self.table[g][x] for g in self.group.elements)
                seen |= o
                out.append(o)
        return out

    def stabilizer(self, x: int) -> frozenset[int]:
        return frozenset(g for g in self.group.elements if self.table[g][x] == x)


# ---------------------------------------------------------------------------
# constructors

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic group order must be positive")
    tab = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(tab, [str(i) for i in range(n)], f"Z{n}")


def trivial() -> FiniteGroup:
    return FiniteGroup([[0]], ["e"], "1")


def _cycle_name(p: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            seen.add(s)
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    pos = {p: i for i, p in enumerate(perms)}
    tab = [[pos[tuple(p[x] for x in q)] for q in perms] for p in perms]
    return FiniteGroup(tab, [_cycle_name(p) for p in perms], name)


def symmetric(n: int) -> FiniteGroup:
    """``S_n`` on ``{1..n}``; elements in lexicographic order, product ``p*q = p∘q``."""
    if not 1 <= n <= 5:
        raise InputError("symmetric groups are supported for 1 <= n <= 5")
    return _perm_group(list(itertools.permutations(range(n))), f"S{n}")


def _parity(p: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise InputError("alternating groups are supported for 1 <= n <= 5")
    return _perm_group([p for p in itertools.permutations(range(n)) if _parity(p) == 0], f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order ``2n``: elements ``r^a s^b`` indexed ``a + n*b``."""
    if n < 2:
        raise InputError("dihedral group needs n >= 2")

    def mul(x, y):
        (a, b), (c, d) = x, y
        return ((a + (c if b == 0 else -c)) % n, (b + d) % 2)

    elems = [(a, b) for b in range(2) for a in range(n)]
    pos = {x: i for i, x in enumerate(elems)}
    tab = [[pos[mul(x, y)] for y in elems] for x in elems]

    def nm(x):
        a, b = x
        r = "e" if a == 0 else ("r" if a == 1 else f"r{a}")
        return r if b == 0 else ("s" if a == 0 else r + "s")

    return FiniteGroup(tab, [nm(x) for x in elems], f"D{n}")


_QUNIT = {  # unit products i*j = k etc. as (sign, unit)
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion() -> FiniteGroup:
    """``Q8`` with elements ``1, -1, i, -i, j, -j, k, -k`` in that order."""
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]
    pos = {x: i for i, x in enumerate(elems)}

    def mul(x, y):
        s, u = _QUNIT[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    tab = [[pos[mul(x, y)] for y in elems] for x in elems]
    names = [("" if s == 1 else "-") + u for s, u in elems]
    return FiniteGroup(tab, names, "Q8")


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str = "") -> FiniteGroup:
    """``a x b`` with ``(x, y)`` at index ``x*|b| + y``."""
    na, nb = a.order, b.order
    tab = [[a.mul(x1, x2) * nb + b.mul(y1, y2) for x2 in range(na) for y2 in range(nb)]
           for x1 in range(na) for y1 in range(nb)]
    names = [f"({a.names[x]},{b.names[y]})" for x in range(na) for y in range(nb)]
    return FiniteGroup(tab, names, name or f"{a.name}x{b.name}")


def klein_four() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2), "V4")


def from_name(spec: str) -> FiniteGroup:
    """Named constructor: ``Zn``, ``Sn``, ``An``, ``Dn``, ``Q8``, ``V4``, ``1``, and ``x``-products."""
    spec = spec.strip()
    parts = spec.split("x")
    if len(parts) > 1:
        if not all(parts):
            raise InputError(f"unknown group name {spec!r}")
        g = from_name(parts[0])
        for p in parts[1:]:
            g = direct_product(g, from_name(p))
        g.name = spec
        return g
    if spec in ("1", "trivial"):
        return trivial()
    if spec == "Q8":
        return quaternion()
    if spec == "V4":
        return klein_four()
    m = re.fullmatch(r"([ZSAD])(\d+)", spec)
    if not m:
        raise InputError(f"unknown group name {spec!r}")
    kind, n = m.group(1), int(m.group(2))
    return {"Z": cyclic, "S": symmetric, "A": alternating, "D": dihedral}[kind](n)


def quotient(m: FiniteGroup, k: Iterable[int]) -> tuple[FiniteGroup, Hom]:
    """``M/K`` for a normal subgroup ``K``, with the projection.

    Cosets are ordered by their smallest element and named ``[x]`` after it.
    """
    k = frozenset(k)
    if not m.is_normal(k):
        raise InputError("quotient needs a normal subgroup")
    cosets = sorted(m.left_cosets(k), key=min)
    which = {}
    for i, c in enumerate(cosets):
        for x in c:
            which[x] = i
    reps = [min(c) for c in cosets]
    tab = [[which[m.mul(r, s)] for s in reps] for r in reps]
    q = FiniteGroup(tab, [f"[{m.names[r]}]" for r in reps], f"{m.name}/K")
    return q, Hom(m, q, tuple(which[x] for x in m.elements))


# ---------------------------------------------------------------------------
# homomorphisms and automorphisms

def _extend(src: FiniteGroup, tgt: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]):
    """Extend generator images multiplicatively; ``None`` if inconsistent."""
    img = {src.e: tgt.e}
    queue = deque([src.e])
    while queue:
        x = queue.popleft()
        for s, v in zip(gens, imgs):
            y = src.mul(x, s)
            w = tgt.mul(img[x], v)
            if y in img:
                if img[y] != w:
                    return None
            else:
                img[y] = w
                queue.append(y)
    return tuple(img[x] for x in src.elements)


def homomorphisms(src: FiniteGroup, tgt: FiniteGroup) -> list[Hom]:
    """Every homomorphism ``src -> tgt``, sorted by image tuple."""
    gens = src.generators
    choices = [[y for y in tgt.elements if src.element_order(g) % tgt.element_order(y) == 0]
               for g in gens]
    out = set()
    for imgs in itertools.product(*choices):
        m = _extend(src, tgt, gens, imgs)
        if m is not None:
            out.add(m)
    return [Hom(src, tgt, m) for m in sorted(out)]


def find_isomorphism(a: FiniteGroup, b: FiniteGroup) -> Hom | None:
    """Some isomorphism ``a -> b`` (lexicographically first), or ``None``."""
    if a.order != b.order or a.is_abelian != b.is_abelian:
        return None
    if sorted(map(a.element_order, a.elements)) != sorted(map(b.element_order, b.elements)):
        return None
    gens = a.generators
    choices = [[y for y in b.elements if b.element_order(y) == a.element_order(g)] for g in gens]
    for imgs in itertools.product(*choices):
        m = _extend(a, b, gens, imgs)
        if m is not None and len(set(m)) == b.order:
            return Hom(a, b, m)
    return None


def centralizer(g: FiniteGroup, s: Iterable[int]) -> frozenset[int]:
    """``{h : h x = x h for all x in s}``."""
    s = [int(x) for x in s]
    t = g.table
    return frozenset(h for h in g.elements if all(t[h, x] == t[x, h] for x in s))


def conjugacy_classes(g: FiniteGroup) -> list[frozenset[int]]:
    """Conjugacy classes, ordered by their smallest element."""
    out, seen = [], set()
    for x in g.elements:
        if x not in seen:
            c = frozenset(g.conj(h, x) for h in g.elements)
            seen |= c
            out.append(c)
    return out


@dataclass(frozen=True)
class AutomorphismData:
    """``Aut(G)`` as a Cayley-table group whose element ``a`` is the permutation ``perms[a]``."""

    group: FiniteGroup
    perms: tuple[tuple[int, ...], ...]
    inner: frozenset[int]
    out_classes: tuple[frozenset[int], ...]

    def index_of(self, perm: Sequence[int]) -> int:
        return self.perms.index(tuple(perm))


def automorphism_group(g: FiniteGroup) -> AutomorphismData:
    """Brute-force ``Aut(g)``: generator images are fixed first, then extended."""
    gens = g.generators
    choices = [[y for y in g.elements if g.element_order(y) == g.element_order(x)] for x in gens]
    perms = set()
    for imgs in itertools.product(*choices):
        m = _extend(g, g, gens, imgs)
        if m is not None and len(set(m)) == g.order:
            perms.add(m)
    perms = sorted(perms)
    pos = {p: i for i, p in enumerate(perms)}
    tab = [[pos[tuple(p[x] for x in q)] for q in perms] for p in perms]
    aut = FiniteGroup(tab, [f"a{i}" for i in range(len(perms))], f"Aut({g.name})")
    inner = frozenset(pos[tuple(g.conj(h, x) for x in g.elements)] for h in g.elements)
    outs = tuple(sorted(aut.left_cosets(inner), key=min))
    return AutomorphismData(aut, tuple(perms), inner, outs)
