"""
Two members of the family with the same degree and different zeta-functions
============================================================================

g0 and g1 share the curve C (two lines meeting at [1:1:1]) and differ only in
the sign of z3^5.  For g1 the node of C lies on the curve h = 0.
"""

from singzeta.family import assemble_zeta, build_member, check_assumptions, compare_pair, milnor_number
from singzeta.poly import variable
from singzeta.resolution import build_dual_graph, graphs_isomorphic

z1, z2, z3 = (variable(i, 3) for i in (1, 2, 3))
L1 = z1 + z2 - 2 * z3
L2 = z1 + 3 * z2 - 4 * z3

# listing the lines lets the library find the singular points of C itself
g0 = build_member(L1 * L2, z2 ** 5 + z3 ** 5, f_factors=[L1, L2])
g1 = build_member(L1 * L2, z2 ** 5 - z3 ** 5, f_factors=[L1, L2])
print("g0 =", g0.g)
print("singular points of C:", [(c.point, c.type_tag) for c in g0.certificates])

# zeta-functions and Milnor numbers from the base factor plus one local factor
for name, m in (("g0", g0), ("g1", g1)):
    print(f"{name}: zeta = {assemble_zeta(m)}   mu = {milnor_number(m)}")

# only g0 keeps the node away from h = 0
for name, m in (("g0", g0), ("g1", g1)):
    print(name, check_assumptions(m).to_json())

# comparison: the generic plane sections agree but mu does not
cmp = compare_pair(g0, g1, seed=1)
print("mu2:", cmp.mu2, " same zeta-function:", cmp.to_json()["condition1"])

# the resolution graphs tell the two apart as well
a, b = build_dual_graph(g0), build_dual_graph(g1)
for n in a.nodes:
    print(f"  {n.name:8s} genus {n.genus}  self-intersection {n.self_intersection}")
print("graphs isomorphic:", graphs_isomorphic(a, b))
