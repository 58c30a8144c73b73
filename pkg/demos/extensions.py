"""
Split and non-split extensions
==============================

Two small extensions, one that splits and one that does not.
"""

from torsorlift.corpus import q8_over_v4, s3_over_z2
from torsorlift.ext import (action_of_splitting, complements, default_section, factor_set, h1, is_coboundary,
                            splitting_classes)

# S3 over Z2 with kernel A3: three complements, one per transposition
e = s3_over_z2()
comps = complements(e)
print("S3/A3 complements:", [sorted(e.M.names[x] for x in k) for k in comps])

# they are all conjugate, and H^1 of Z2 acting on A3 by inversion agrees
sc = splitting_classes(e)
print("splitting classes:", len(sc), " H^1:", h1(e.N, e.L, action_of_splitting(e, sc[0])).count)

# Q8 over V4: every section has a factor set hitting -1 and none is a coboundary
q = q8_over_v4()
c = factor_set(q, default_section(q))
print("Q8/V4 complements:", len(complements(q)))
print("factor set values:")
for row in c.values:
    print("   ", [q.L.names[v] for v in row])
print("coboundary witness:", is_coboundary(q, c))
