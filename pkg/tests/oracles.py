"""Brute-force oracles that only read multiplication tables.

Nothing here calls the search routines under test; each function scans the
whole candidate space directly.
"""
import itertools


def mul(G, a, b):
    return int(G.table[a, b])


def inv(G, a):
    return next(x for x in range(G.order) if mul(G, a, x) == G.e)


def automorphisms(G):
    n = G.order
    out = []
    for p in itertools.permutations(range(n)):
        if all(p[mul(G, a, b)] == mul(G, p[a], p[b]) for a in range(n) for b in range(n)):
            out.append(p)
    return out


def conj_class_sizes(G):
    n = G.order
    seen, sizes = set(), []
    for x in range(n):
        if x not in seen:
            c = {mul(G, mul(G, g, x), inv(G, g)) for g in range(n)}
            seen |= c
            sizes.append(len(c))
    return sorted(sizes)


def is_subgroup(G, s):
    return G.e in s and all(mul(G, a, inv(G, b)) in s for a in s for b in s)


def complement_count(e):
    M = e.M
    img = set(e.incl.images)
    k = e.N.order
    count = 0
    for s in itertools.combinations(range(M.order), k):
        s = set(s)
        if is_subgroup(M, s) and s & img == {M.e} and {e.proj(x) for x in s} == set(range(k)):
            count += 1
    return count


def sections(e):
    fib = [[m for m in range(e.M.order) if e.proj(m) == n] for n in range(e.N.order)]
    fib[e.N.e] = [e.M.e]
    return list(itertools.product(*fib))


def factor_values(e, s):
    """``c(n1, n2)`` as an element of ``L``, straight from the definition."""
    M, N = e.M, e.N
    pull = {m: l for l, m in enumerate(e.incl.images)}
    return {(a, b): pull[mul(M, mul(M, s[a], s[b]), inv(M, s[mul(N, a, b)]))]
            for a in range(N.order) for b in range(N.order)}


def coboundary_exists(e, s):
    """Scan every ``b: N -> L`` for ``b(n)^-1 s(n)`` a homomorphism."""
    M, N, L = e.M, e.N, e.L
    for b in itertools.product(range(L.order), repeat=N.order):
        t = [mul(M, inv(M, e.incl(b[n])), s[n]) for n in range(N.order)]
        if all(t[mul(N, x, y)] == mul(M, t[x], t[y]) for x in range(N.order) for y in range(N.order)):
            return True
    return False


def crossed_hom_classes(N, L, act):
    zs = []
    for z in itertools.product(range(L.order), repeat=N.order):
        if all(z[mul(N, x, y)] == mul(L, z[x], act[x][z[y]]) for x in range(N.order) for y in range(N.order)):
            zs.append(z)
    classes = set()
    for z in zs:
        classes.add(min(tuple(mul(L, mul(L, inv(L, b), z[x]), act[x][b]) for x in range(N.order))
                        for b in range(L.order)))
    return len(classes)


def chain_value(nerve, vals, G, i, j):
    k = nerve.pairs.index((min(i, j), max(i, j)))
    return vals[k] if i < j else inv(G, vals[k])


def all_cocycles(nerve, G):
    out = []
    for vals in itertools.product(range(G.order), repeat=len(nerve.pairs)):
        if all(mul(G, chain_value(nerve, vals, G, i, j), chain_value(nerve, vals, G, j, k))
               == chain_value(nerve, vals, G, i, k) for i, j, k in nerve.triples):
            out.append(vals)
    return out


def h1_count(nerve, G):
    """Cocycles modulo every ``lam`` in ``G^charts``, no gauge fixing."""
    cocs = all_cocycles(nerve, G)
    seen, count = set(), 0
    for c in cocs:
        if c in seen:
            continue
        count += 1
        for lam in itertools.product(range(G.order), repeat=nerve.charts):
            seen.add(tuple(mul(G, mul(G, lam[i], c[k]), inv(G, lam[j])) for k, (i, j) in enumerate(nerve.pairs)))
    return count


def h2_count(nerve, B):
    """Abelian band: all cochains closed on 4-cliques, modulo all coboundaries."""
    ts = nerve.triples
    tset = set(ts)
    quads = [q for q in itertools.combinations(range(nerve.charts), 4)
             if all(t in tset for t in itertools.combinations(q, 3))]
    pos = {t: k for k, t in enumerate(ts)}

    def closed(v):
        return all(mul(B, mul(B, v[pos[(j, k, l)]], inv(B, v[pos[(i, k, l)]])),
                       mul(B, v[pos[(i, j, l)]], inv(B, v[pos[(i, j, k)]]))) == B.e
                   for i, j, k, l in quads)

    cocycles = [v for v in itertools.product(range(B.order), repeat=len(ts)) if closed(v)]
    bounds = set()
    for b in itertools.product(range(B.order), repeat=len(nerve.pairs)):
        bounds.add(tuple(mul(B, mul(B, chain_value(nerve, b, B, k, i), chain_value(nerve, b, B, i, j)),
                             chain_value(nerve, b, B, j, k)) for i, j, k in ts))
    return len(cocycles) // len(bounds)


def correctable(h, band):
    """Is some band-valued ``m`` with ``m h`` a cocycle?"""
    n, G = h.nerve, h.group
    for m in itertools.product(sorted(band), repeat=len(n.pairs)):
        vals = tuple(mul(G, m[k], h.values[k]) for k in range(len(n.pairs)))
        if all(mul(G, chain_value(n, vals, G, i, j), chain_value(n, vals, G, j, k))
               == chain_value(n, vals, G, i, k) for i, j, k in n.triples):
            return True
    return False


def defect_is_coboundary(h, band):
    """Scan band-valued ``b`` with ``b(k,i) b(i,j) b(j,k)`` equal to the defect of ``h``."""
    n, G = h.nerve, h.group
    target = [mul(G, mul(G, chain_value(n, h.values, G, k, i), chain_value(n, h.values, G, i, j)),
                  chain_value(n, h.values, G, j, k)) for i, j, k in n.triples]
    for b in itertools.product(sorted(band), repeat=len(n.pairs)):
        if all(mul(G, mul(G, chain_value(n, b, G, k, i), chain_value(n, b, G, i, j)), chain_value(n, b, G, j, k))
               == target[t] for t, (i, j, k) in enumerate(n.triples)):
            return True
    return False


def lifts(inst, g):
    """Every ``lam`` in ``H^charts`` satisfying the lift condition for ``g``."""
    H, c, s = inst.H, inst.bundle, inst.space.sigma[g]
    n = inst.nerve
    out = []
    for lam in itertools.product(range(H.order), repeat=n.charts):
        if all(chain_value(n, c.values, H, s[i], s[j]) == mul(H, mul(H, lam[i], chain_value(n, c.values, H, i, j)),
                                                              inv(H, lam[j])) for i, j in n.pairs):
            out.append(lam)
    return out


def lifting_action_exists(inst):
    """Scan all assignments ``g -> lam(g)`` over the lifts of every element."""
    G, H = inst.G, inst.H
    sig = inst.space.sigma
    per = [lifts(inst, g) for g in range(G.order)]
    if any(not p for p in per):
        return False
    for fam in itertools.product(*per):
        ok = True
        for a in range(G.order):
            for b in range(G.order):
                ab = mul(G, a, b)
                comp = tuple(mul(H, fam[a][sig[b][i]], fam[b][i]) for i in range(inst.nerve.charts))
                if comp != fam[ab]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def centralizer(G, s):
    return {x for x in range(G.order) if all(mul(G, x, y) == mul(G, y, x) for y in s)}
