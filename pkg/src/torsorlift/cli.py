"""Command-line front end.

Exit status: 0 when the computation ran (whatever the verdict), 1 for bad
input, 2 for an unsupported request.  Reports never contain timings, so
the same input gives byte-identical output for any ``--workers``; pass
``--timing`` to get the elapsed time on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import cech, fincat, lift
from .errors import InputError, PreconditionError, UnsupportedError
from .grp import centralizer
from .schema import Instance, load

REPORT_SCHEMA = "torsorlift-report/1"


def _names(g, xs):
    return [g.names[x] for x in xs]


def _cochain(c) -> dict:
    H = c.group
    return {f"{i},{j}": H.names[v] for (i, j), v in c.as_mapping().items()}


def _need(inst: Instance, *fields: str) -> None:
    missing = [f for f in fields if getattr(inst, f) is None]
    if missing:
        raise InputError(f"instance has no {', '.join(missing)} block")


def cmd_check_site(inst: Instance, workers: int = 1) -> dict:
    _need(inst, "site")
    s = inst.site
    wit = fincat.check_topology(s.category, s.topology)
    rep = {"topology": "PASS" if not wit else "FAIL",
           "witnesses": [{"axiom": w.axiom, "object": w.obj, "sieve": list(w.sieve) if w.sieve else None,
                          "morphism": w.morphism, "detail": w.detail} for w in wit]}
    sheaves = []
    for label, p in s.presheaves:
        fails = fincat.check_sheaf(p, s.category, s.topology)
        sheaves.append({"presheaf": label, "verdict": "PASS" if not fails else "FAIL",
                        "failures": [{"object": f.obj, "sieve": list(f.sieve), "sections": f.sections,
                                      "families": f.families, "injective": f.injective,
                                      "surjective": f.surjective} for f in fails]})
    rep["sheaves"] = sheaves
    rep["verdict"] = "PASS" if not wit and all(x["verdict"] == "PASS" for x in sheaves) else "FAIL"
    return rep


def cmd_classify(inst: Instance, degree: int, workers: int = 1) -> dict:
    _need(inst, "nerve", "structure_group")
    H, n = inst.H, inst.nerve
    if degree == 1:
        res = cech.h1_classes(n, H, workers)
        return {"degree": 1, "group": H.name, "count": res.count,
                "representatives": [_cochain(c) for c in res.representatives]}
    if degree != 2:
        raise InputError("degree must be 1 or 2")
    band = frozenset(inst.band) if inst.band is not None else frozenset(H.elements)
    B, emb = H.subgroup(band, "band")
    if not B.is_abelian:
        raise UnsupportedError("degree 2 classes are only computed for abelian bands")
    res = cech.h2_classes(n, B)
    rep = {"degree": 2, "band": _names(H, emb), "count": res.count,
           "representatives": [dict(zip((",".join(map(str, t)) for t in n.triples), (H.names[emb[v]] for v in c.values)))
                               for c in res.representatives]}
    if inst.cocycle is not None:
        ch = inst.cocycle
        c2 = cech.two_cocycle_of_chain(ch, band)
        wit = cech.coboundary2_witness(c2)
        fix = cech.correct_chain(ch, band)
        rep["chain"] = {"is_cocycle": not ch.chasles_failures(),
                        "defect": {",".join(map(str, t)): H.names[v] for t, v in zip(n.triples, c2.values)},
                        "defect_is_coboundary": wit is not None,
                        "correctable": fix is not None,
                        "correction": _cochain(fix) if fix is not None else None}
    return rep


def _lift_family(inst, fam):
    H = inst.H
    return {inst.G.names[l.g]: _names(H, l.lam) for l in fam}


def cmd_lift(inst: Instance, workers: int = 1) -> dict:
    _need(inst, "space", "cocycle")
    if inst.cocycle.chasles_failures():
        raise InputError("the bundle transitions fail the Chasles relation")
    e = lift.EquivariantInstance(inst.space, cech.Cocycle1.of(inst.cocycle))
    ok, bad = lift.check_c1(e)
    rep: dict = {"c1": ok, "c1_failing": _names(e.G, bad)}
    if not ok:
        return rep
    ob = lift.obstruction(e, workers)
    x = ob.extension
    direct = lift.direct_lifting_search(e)
    rep.update({"extension": {"kernel_order": x.L.order, "middle_order": x.M.order, "quotient_order": x.N.order,
                              "kernel_central": x.kernel_image <= x.M.center},
                "split": ob.split, "complements": ob.complements,
                "factor_set_trivial": ob.factor_set.is_trivial(),
                "direct_search_lifts": len(direct), "routes_agree": ob.split == bool(direct)})
    if ob.split:
        cl = lift.enumerate_liftings(e, workers)
        rep.update({"lifting_classes": cl.count, "splitting_classes": cl.splitting_classes, "h1": cl.h1,
                    "cross_check": cl.cross_check,
                    "representatives": [_lift_family(e, f) for f in cl.representatives]})
    return rep


def cmd_homogeneous(inst: Instance, workers: int = 1) -> dict:
    _need(inst, "homogeneous")
    h = inst.homogeneous
    G, H = inst.group(h.G), inst.group(h.H)
    hb, real = lift.homogeneous_bundle(G, h.L, H, dict(h.phi))
    fam, cert = lift.equivariant_automorphisms(hb)
    phiL = {b for _, b in h.phi}
    rep: dict = {"points": len(hb.points), "cosets": len(hb.cosets),
                 "equivariant_automorphisms": _names(H, sorted(fam)),
                 "centralizer": _names(H, sorted(centralizer(H, phiL))),
                 "certificate": {"complete": cert.complete, "found": len(cert.found),
                                 "outside_family": cert.outside_family}}
    if real is None:
        rep["realization"] = None
    else:
        gi = lift.gauge_iso_check(real)
        rep["realization"] = {"charts": real.nerve.charts, "cocycle": _cochain(real.bundle),
                              "gauge_iso": [[f"{k}", H.names[v]] for k, v in gi.iso] if gi.ok else None,
                              "gauge_iso_unmet": list(gi.unmet)}
    return rep


def cmd_clutch(inst: Instance, workers: int = 1) -> dict:
    _need(inst, "clutch")
    c = inst.clutch
    gam, H = inst.group(c.gamma), inst.group(c.H)
    res = lift.clutch_two_cover(gam, c.rhoS, c.rhoN, c.c)
    rep: dict = {"accepted": res.instance is not None, "failing": _names(gam, res.failing)}
    if res.instance is not None:
        e = res.instance
        ok, _ = lift.check_c1(e)
        ob = lift.obstruction(e, workers)
        rep.update({"c1": ok, "split": ob.split, "transition_NS": H.names[c.c],
                    "lifting": _lift_family(e, res.lifting)})
    return rep


COMMANDS = {"check-site": cmd_check_site, "classify": cmd_classify, "lift": cmd_lift,
            "homogeneous": cmd_homogeneous, "clutch": cmd_clutch}


def render_text(rep: dict) -> str:
    lines = []
    for k, v in rep.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, separators=(", ", ": "))
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def run(argv=None) -> tuple[int, str, str]:
    """Run a command; returns ``(exit status, stdout text, stderr text)``."""
    p = argparse.ArgumentParser(prog="torsorlift", description="Finite torsor, gerbe and lifting computations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", required=True, help="instance JSON file")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--degree", type=int, choices=[1, 2], default=1, help="classify only")
    p.add_argument("--timing", action="store_true", help="print elapsed time to stderr")
    try:
        a = p.parse_args(argv)
    except SystemExit as err:
        return (0 if err.code == 0 else 1), "", ""
    t0 = time.perf_counter()
    try:
        inst = load(a.input)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if a.command == "classify":
                body = cmd_classify(inst, a.degree, max(1, a.workers))
            else:
                body = COMMANDS[a.command](inst, max(1, a.workers))
    except UnsupportedError as err:
        return 2, "", f"unsupported: {err}\n"
    except (InputError, PreconditionError) as err:
        return 1, "", f"error: {err}\n"
    rep = {"schema": REPORT_SCHEMA, "command": a.command}
    rep.update(body)
    out = json.dumps(rep, indent=2) + "\n" if a.output == "json" else render_text(rep)
    err = f"elapsed: {time.perf_counter() - t0:.3f}s\n" if a.timing else ""
    return 0, out, err


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
