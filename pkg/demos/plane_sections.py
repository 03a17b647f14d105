"""
Generic plane sections across the family
========================================

For every degree d the Milnor number of a generic plane section of a member
is d^2 + 2d + 2, whatever the curve C.  The total Milnor number of C shows
up in the zeta-function instead.
"""

import random

from singzeta.family import (
    assemble_zeta,
    base_zeta,
    build_member,
    check_assumptions,
    infer_mu_tot,
    milnor_number,
    mu2_section_details,
)
from singzeta.poly import variable

z1, z2, z3 = (variable(i, 3) for i in (1, 2, 3))


def random_lines(d, rng):
    # lines with all coefficients nonzero keep f convenient
    return [z1 * rng.randint(1, 9) + z2 * rng.choice((-1, 1)) * rng.randint(1, 9) + z3 * rng.choice((-1, 1)) * rng.randint(1, 9) for _ in range(d)]


rng = random.Random(0)
for d in range(2, 6):
    while True:
        lines = random_lines(d, rng)
        f = lines[0]
        for L in lines[1:]:
            f = f * L
        try:
            m = build_member(f, z2 ** (d + 3) + z3 ** (d + 3), f_factors=lines)
        except ValueError:
            continue  # two lines coincide or f misses a pure power
        # the boundary side z1^2 f(0,z2,z3) + h must be non-degenerate too
        if check_assumptions(m).ff:
            break
    z = assemble_zeta(m)
    mu2, a, b = mu2_section_details(m, seed=d)
    print(f"d = {d}: mu_tot(C) = {m.mu_tot:2d} (from zeta: {infer_mu_tot(z, d):2d})   mu = {milnor_number(m):4d}   "
          f"mu2 = {mu2} (section a = {a}, b = {b}; expected {d * d + 2 * d + 2})")

# the smooth-curve part of every zeta-function
for d in range(2, 6):
    print(f"base zeta, d = {d}: {base_zeta(d)}")
