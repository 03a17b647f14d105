"""
Newton numbers and zeta-functions of non-degenerate germs
=========================================================

For a convenient germ that is non-degenerate on every face of its Newton
boundary, the Milnor number read off the zeta-function agrees with the
Newton number.  This script checks that on a few families.
"""

import random

from singzeta.degeneracy import classify
from singzeta.expr import parse
from singzeta.newton import newton_boundary, newton_number
from singzeta.zeta import milnor_from_zeta, varchenko_zeta

# Brieskorn germs: the Newton number is (a-1)(b-1)(c-1)
for a, b, c in [(2, 3, 5), (3, 3, 3), (2, 4, 5), (5, 5, 5)]:
    g = parse(f"x^{a} + y^{b} + z^{c}")
    z = varchenko_zeta(g)
    print(f"x^{a}+y^{b}+z^{c}:  zeta = {z}   nu = {newton_number(newton_boundary(g))}   mu = {milnor_from_zeta(z, 3)}")

# a non-degenerate germ with a mixed facet
g = parse("x^3 + y^4 + z^5 + x*y*z")
b = newton_boundary(g)
print("\nfacets of", g)
for f in b.facets():
    print("  normal", f.normal.entries, "level", f.normal.level, "vertices", f.vertices)
print("nu =", newton_number(b), " zeta =", varchenko_zeta(b))

# random convenient germs: keep the non-degenerate ones and compare
rng = random.Random(3)
agree = total = 0
while total < 50:
    terms = {(rng.randint(2, 9), 0, 0): 1, (0, rng.randint(2, 9), 0): 1, (0, 0, rng.randint(2, 9)): 1}
    for _ in range(4):
        terms[(rng.randint(0, 6), rng.randint(0, 6), rng.randint(0, 6))] = rng.choice((-2, -1, 1, 3))
    text = " + ".join(f"{c}*x^{i}*y^{j}*z^{k}" for (i, j, k), c in terms.items() if i + j + k >= 2)
    g = parse(text)
    if classify(g).classification != "nondegenerate":
        continue
    bd = newton_boundary(g)
    total += 1
    agree += milnor_from_zeta(varchenko_zeta(bd), 3) == newton_number(bd)
print(f"\n{agree} of {total} random germs: mu from zeta equals nu")
