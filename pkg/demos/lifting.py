"""
Lifting a group action to a bundle
==================================

A rotation that lifts only as a Z8 action, a reflection that lifts,
and a Q8 example whose lift group is itself Q8.
"""

from torsorlift.corpus import mobius_reflection, mobius_z4, quaternionic_k4
from torsorlift.grp import find_isomorphism, quaternion
from torsorlift.lift import aut_group, enumerate_liftings, gauge_iso_check, obstruction

# rotating the Moebius band by a quarter turn: four lifts per element, none of order four
inst = mobius_z4()
ob = obstruction(inst)
print("Moebius/Z4 lift group order:", ob.lift_group.group.order, " split:", ob.split)
print("gauge group is H:", gauge_iso_check(inst).ok)

# a reflection fixing two charts does lift, in two ways up to gauge
res = enumerate_liftings(mobius_reflection())
print("reflection lifting classes:", res.count, " cross-check:", res.cross_check)
for fam in res.representatives:
    print("   ", [(l.g, l.lam) for l in fam])

# V4 acting on four charts, Q8 bundle
lg = aut_group(quaternionic_k4())
print("K4 lift group is Q8:", find_isomorphism(lg.group, quaternion()) is not None,
      " gauge order:", len(lg.kernel))
print("split:", obstruction(quaternionic_k4()).split)
