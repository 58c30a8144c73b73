"""
Checking a site
===============

The four point pseudocircle with two topologies, then a family of sieves
that is not a topology.
"""

from torsorlift.corpus import broken_topology
from torsorlift.fincat import Topology, check_sheaf, check_topology, constant_presheaf, pseudocircle, representable

cat, cover = pseudocircle()
for label, j in (("coarsest", Topology.coarsest(cat)), ("open cover", cover)):
    bad = check_topology(cat, j)
    sheaves = all(not check_sheaf(representable(cat, z), cat, j) for z in range(len(cat.objects)))
    print(f"{label}: axioms ok={not bad}, representables are sheaves={sheaves}")

# ab is covered by two disjoint opens, so a constant presheaf has too few sections there
for f in check_sheaf(constant_presheaf(cat, 2), cat, cover):
    print(f"constant presheaf at {f.obj}: {f.sections} sections, {f.families} compatible families")

bcat, bj = broken_topology()
for w in check_topology(bcat, bj):
    print(w.axiom, w.obj, w.sieve, w.morphism, "-", w.detail)
