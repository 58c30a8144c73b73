"""
Bundles on a cover
==================

Counting cocycles on a few nerves and gluing one of them.
"""

from torsorlift.cech import Cocycle1, Nerve, glue, h1_classes, h2_classes
from torsorlift.corpus import projective_plane
from torsorlift.grp import cyclic, quaternion, symmetric

# on a triangle of charts the class of a bundle is its holonomy up to conjugacy
circle = Nerve.cycle(3)
for H in (cyclic(2), cyclic(3), symmetric(3), quaternion()):
    res = h1_classes(circle, H)
    print(f"circle, {H.name}: {res.count} classes")

# the six chart cover of the projective plane sees Hom(Z2, H)
rp2 = projective_plane()
print("RP2, Z4:", h1_classes(rp2, cyclic(4)).count)

# the Moebius band: four charts and one twist
n = Nerve.cycle(4)
mobius = Cocycle1.from_mapping(n, cyclic(2), {(0, 3): 1})
print("Moebius sheets:", len(glue(mobius).components()),
      " trivial sheets:", len(glue(Cocycle1.identity(n, cyclic(2))).components()))

# degree two: the octahedron is a sphere
print("octahedron, Z2:", h2_classes(Nerve.octahedron(), cyclic(2)).count)
