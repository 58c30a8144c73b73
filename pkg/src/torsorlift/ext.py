"""Group extensions ``1 -> L -> M -> N -> 1``.

Exactness checks, normalized set-theoretic sections and their factor sets,
coboundary search, complements, splitting classes and nonabelian ``H^1``
(crossed homomorphisms modulo the principal ones).

Conventions.  For a section ``s`` the induced map ``a_n(l) = s(n) l s(n)^-1``
(computed in ``M``, read back in ``L``) and the factor set
``c(n1, n2) = s(n1) s(n2) s(n1 n2)^-1`` satisfy

    a_{n1}(c(n2, n3)) c(n1, n2 n3) = c(n1, n2) c(n1 n2, n3).

Replacing ``s`` by ``s' = beta * s`` changes ``c`` to
``beta(n1) a_{n1}(beta(n2)) c(n1, n2) beta(n1 n2)^-1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import InputError, InvariantError, PreconditionError
from .grp import FiniteGroup, GAction, Hom, automorphism_group, quotient

__all__ = [
    "Extension", "ExactnessFailure", "FactorSet", "H1Result",
    "check_exact", "require_exact", "default_section", "normalized_sections", "is_section",
    "induced_action", "factor_set", "is_coboundary", "splitting_from_coboundary",
    "section_change", "complements", "splitting_of_complement", "splitting_classes",
    "action_of_splitting", "h1", "outer_action", "direct_product_extension",
    "extension_from_normal_subgroup",
]


@dataclass(frozen=True)
class Extension:
    L: FiniteGroup
    M: FiniteGroup
    N: FiniteGroup
    incl: Hom
    proj: Hom

    def __post_init__(self):
        if self.incl.source != self.L or self.incl.target != self.M:
            raise InputError("incl must be a homomorphism L -> M")
        if self.proj.source != self.M or self.proj.target != self.N:
            raise InputError("proj must be a homomorphism M -> N")

    @property
    def kernel_image(self) -> frozenset[int]:
        return self.incl.image()

    def pull(self, m: int) -> int:
        """The ``L``-element mapping to ``m`` under ``incl``."""
        try:
            return self._pullback[m]
        except KeyError:
            raise InvariantError(f"{self.M.names[m]} is not in the image of L") from None

    @property
    def _pullback(self) -> dict[int, int]:
        d = self.__dict__.get("_pb")
        if d is None:
            d = {m: l for l, m in enumerate(self.incl.images)}
            object.__setattr__(self, "_pb", d)
        return d

    def fibres(self) -> list[list[int]]:
        """``fibres()[n]`` lists the ``M``-elements over ``n`` in increasing order."""
        out = [[] for _ in self.N.elements]
        for m in self.M.elements:
            out[self.proj(m)].append(m)
        return out


@dataclass(frozen=True)
class ExactnessFailure:
    condition: str
    witness: tuple[str, ...]


def check_exact(e: Extension) -> list[ExactnessFailure]:
    """Injectivity of ``incl``, surjectivity of ``proj``, ``im incl = ker proj``,
    and normality of the image; one entry per failed condition."""
    out = []
    L, M, N = e.L, e.M, e.N
    seen = {}
    for l in L.elements:
        m = e.incl(l)
        if m in seen:
            out.append(ExactnessFailure("incl injective", (L.names[seen[m]], L.names[l])))
            break
        seen[m] = l
    missing = [n for n in N.elements if n not in e.proj.image()]
    if missing:
        out.append(ExactnessFailure("proj surjective", (N.names[missing[0]],)))
    diff = sorted(e.incl.image() ^ e.proj.kernel())
    if diff:
        out.append(ExactnessFailure("image = kernel", (M.names[diff[0]],)))
    img = e.incl.image()
    bad = next(((m, x) for m in M.elements for x in sorted(img) if M.conj(m, x) not in img), None)
    if bad:
        out.append(ExactnessFailure("image normal", (M.names[bad[0]], M.names[bad[1]])))
    return out


def require_exact(e: Extension) -> None:
    fails = check_exact(e)
    if fails:
        raise PreconditionError(f"sequence is not exact: {fails[0].condition} fails at {fails[0].witness}")


# ---------------------------------------------------------------------------
# sections and factor sets

def is_section(e: Extension, s: Sequence[int], normalized: bool = True) -> bool:
    return (len(s) == e.N.order and all(e.proj(s[n]) == n for n in e.N.elements)
            and (not normalized or s[e.N.e] == e.M.e))


def default_section(e: Extension) -> tuple[int, ...]:
    """The normalized section picking the smallest index in each fibre."""
    fib = e.fibres()
    return tuple(e.M.e if n == e.N.e else fib[n][0] for n in e.N.elements)


def normalized_sections(e: Extension) -> Iterator[tuple[int, ...]]:
    """Every normalized section, in lexicographic order."""
    fib = e.fibres()
    choices = [[e.M.e] if n == e.N.e else fib[n] for n in e.N.elements]
    for s in itertools.product(*choices):
        yield tuple(s)


def induced_action(e: Extension, s: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """``a[n][l] = s(n) l s(n)^-1`` read back in ``L``."""
    M = e.M
    return tuple(tuple(e.pull(M.conj(s[n], e.incl(l))) for l in e.L.elements) for n in e.N.elements)


@dataclass(frozen=True)
class FactorSet:
    ext: Extension = field(repr=False, compare=False)
    section: tuple[int, ...]
    values: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, ...], ...] = field(repr=False)

    def __call__(self, n1: int, n2: int) -> int:
        return self.values[n1][n2]

    def is_trivial(self) -> bool:
        e = self.ext.L.e
        return all(v == e for row in self.values for v in row)

    def identity_failures(self) -> list[tuple[int, int, int]]:
        """Triples where the cocycle identity fails (always empty for a genuine factor set)."""
        L, N, a, c = self.ext.L, self.ext.N, self.action, self.values
        return [(x, y, z) for x, y, z in itertools.product(N.elements, repeat=3)
                if L.mul(a[x][c[y][z]], c[x][N.mul(y, z)]) != L.mul(c[x][y], c[N.mul(x, y)][z])]


def factor_set(e: Extension, s: Sequence[int]) -> FactorSet:
    """``c(n1, n2) = s(n1) s(n2) s(n1 n2)^-1`` pulled back to ``L``."""
    s = tuple(int(x) for x in s)
    if not is_section(e, s):
        raise PreconditionError("factor_set needs a normalized section")
    M, N = e.M, e.N
    vals = tuple(tuple(e.pull(M.prod(s[x], s[y], M.inv(s[N.mul(x, y)]))) for y in N.elements)
                 for x in N.elements)
    return FactorSet(e, s, vals, induced_action(e, s))


def is_coboundary(e: Extension, c: FactorSet) -> tuple[int, ...] | None:
    """A map ``b: N -> L`` with ``c(n1, n2) = a_{n1}(b(n2)) b(n1) b(n1 n2)^-1``, or ``None``.

    Such ``b`` exists exactly when ``n -> b(n)^-1 s(n)`` is a homomorphism,
    i.e. when the extension splits.  Exhaustive search over ``L^N`` with
    prefix pruning: an equation is tested as soon as its three values are set.
    """
    L, N, a, cv = e.L, e.N, c.action, c.values
    order = [N.e] + [n for n in N.elements if n != N.e]
    pos = {n: i for i, n in enumerate(order)}
    checks: list[list[tuple[int, int]]] = [[] for _ in order]
    for x, y in itertools.product(N.elements, repeat=2):
        checks[max(pos[x], pos[y], pos[N.mul(x, y)])].append((x, y))
    b = [L.e] * N.order

    def ok(k):
        return all(cv[x][y] == L.prod(a[x][b[y]], b[x], L.inv(b[N.mul(x, y)])) for x, y in checks[k])

    def rec(k):
        if k == len(order):
            return True
        for v in ([L.e] if k == 0 else L.elements):
            b[order[k]] = v
            if ok(k) and rec(k + 1):
                return True
        return False

    return tuple(b) if rec(0) else None


def splitting_from_coboundary(e: Extension, s: Sequence[int], b: Sequence[int]) -> Hom:
    """The splitting ``n -> b(n)^-1 s(n)`` determined by a coboundary witness."""
    M = e.M
    return Hom(e.N, M, tuple(M.mul(M.inv(e.incl(b[n])), s[n]) for n in e.N.elements))


def section_change(e: Extension, s: Sequence[int], s2: Sequence[int]) -> tuple[tuple[int, ...], bool]:
    """``beta(n) = s2(n) s(n)^-1`` and whether it transports ``factor_set(s)`` to
    ``factor_set(s2)`` by ``beta(n1) a_{n1}(beta(n2)) c(n1, n2) beta(n1 n2)^-1``."""
    M, L, N = e.M, e.L, e.N
    beta = tuple(e.pull(M.mul(s2[n], M.inv(s[n]))) for n in N.elements)
    c, c2 = factor_set(e, s), factor_set(e, s2)
    ok = all(c2(x, y) == L.prod(beta[x], c.action[x][beta[y]], c(x, y), L.inv(beta[N.mul(x, y)]))
             for x, y in itertools.product(N.elements, repeat=2))
    return beta, ok


# ---------------------------------------------------------------------------
# complements and splittings

def complements(e: Extension) -> list[frozenset[int]]:
    """Every subgroup ``K <= M`` with ``K ∩ L = 1`` and ``K L = M``, sorted.

    Any such ``K`` maps isomorphically onto ``N``, so it is generated by one
    preimage of each generator of ``N``; the scan closes every such tuple.
    """
    M, N = e.M, e.N
    fib = e.fibres()
    gens = N.generators
    found = set()
    for pick in itertools.product(*[fib[g] for g in gens]):
        k = M.closure(pick)
        if len(k) == N.order:
            found.add(k)
    out = sorted(found, key=sorted)
    img = e.incl.image()
    for k in out:
        if k & img != {M.e} or {e.proj(x) for x in k} != set(N.elements):
            raise InvariantError("complement scan produced a non-complement")
    return out


def splitting_of_complement(e: Extension, k: frozenset[int]) -> Hom:
    inv = {e.proj(x): x for x in k}
    return Hom(e.N, e.M, tuple(inv[n] for n in e.N.elements))


def splitting_classes(e: Extension) -> list[Hom]:
    """One splitting per orbit under conjugation by ``incl(L)``, sorted by image tuple."""
    comps = complements(e)
    if not comps:
        raise PreconditionError("extension does not split")
    M = e.M
    img = sorted(e.incl.image())
    seen: set[frozenset[int]] = set()
    reps = []
    for k in comps:
        if k in seen:
            continue
        orbit = {frozenset(M.conj(l, x) for x in k) for l in img}
        seen |= orbit
        reps.append(splitting_of_complement(e, min(orbit, key=sorted)))
    return sorted(reps, key=lambda h: h.images)


def action_of_splitting(e: Extension, s: Hom) -> GAction:
    """The action of ``N`` on ``L`` by conjugation through a splitting."""
    return GAction(e.N, e.L.order, induced_action(e, s.images))


@dataclass(frozen=True)
class H1Result:
    count: int
    representatives: tuple[tuple[int, ...], ...]
    crossed_homs: int


def h1(n: FiniteGroup, l: FiniteGroup, act: GAction) -> H1Result:
    """Crossed homomorphisms ``z(xy) = z(x) x.z(y)`` modulo ``z ~ b^-1 z(.) (.).b``.

    Representatives are the lexicographically smallest member of each class.
    """
    if act.group != n or act.size != l.order:
        raise InputError("action must be of n on the elements of l")
    for g in n.elements:
        row = act.table[g]
        if any(row[l.mul(x, y)] != l.mul(row[x], row[y]) for x in l.elements for y in l.elements):
            raise InputError(f"{n.names[g]} does not act by an automorphism")
    gens = n.generators
    zs = set()
    for vals in itertools.product(l.elements, repeat=len(gens)):
        z = {n.e: l.e}
        frontier = [n.e]
        good = True
        while frontier and good:
            nxt = []
            for x in frontier:
                for g, v in zip(gens, vals):
                    y = n.mul(x, g)
                    w = l.mul(z[x], act.table[x][v])
                    if y in z:
                        if z[y] != w:
                            good = False
                            break
                    else:
                        z[y] = w
                        nxt.append(y)
                if not good:
                    break
            frontier = nxt
        if good:
            zs.add(tuple(z[x] for x in n.elements))
    for z in zs:
        if any(z[n.mul(x, y)] != l.mul(z[x], act.table[x][z[y]]) for x in n.elements for y in n.elements):
            raise InvariantError("crossed homomorphism extension is inconsistent")
    reps = []
    seen: set[tuple[int, ...]] = set()
    for z in sorted(zs):
        if z in seen:
            continue
        orbit = {tuple(l.prod(l.inv(b), z[x], act.table[x][b]) for x in n.elements) for b in l.elements}
        seen |= orbit
        reps.append(min(orbit))
    return H1Result(len(reps), tuple(sorted(reps)), len(zs))


def outer_action(e: Extension) -> Hom:
    """``phi: N -> Out(L)`` induced by conjugation through any section."""
    aut = automorphism_group(e.L)
    out, q = quotient(aut.group, aut.inner)
    a = induced_action(e, default_section(e))
    return Hom(e.N, out, tuple(q(aut.index_of(a[n])) for n in e.N.elements))


# ---------------------------------------------------------------------------
# constructors

def direct_product_extension(l: FiniteGroup, n: FiniteGroup) -> Extension:
    from .grp import direct_product
    m = direct_product(l, n)
    incl = Hom(l, m, tuple(x * n.order + n.e for x in l.elements))
    proj = Hom(m, n, tuple(i % n.order for i in m.elements))
    return Extension(l, m, n, incl, proj)


def extension_from_normal_subgroup(m: FiniteGroup, k, name_l: str = "", name_n: str = "") -> Extension:
    """``1 -> K -> M -> M/K -> 1`` for a normal subgroup ``K`` of ``M``."""
    l, emb = m.subgroup(k, name_l)
    n, proj = quotient(m, k)
    if name_n:
        n.name = name_n
    return Extension(l, m, n, Hom(l, m, emb), proj)
