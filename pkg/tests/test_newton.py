import random
from itertools import combinations, permutations, product
from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from singzeta.expr import parse
from singzeta.newton import (
    boundary_from_points,
    coned_volume,
    interior_lattice_points,
    newton_boundary,
    newton_number,
    normalized_volume,
)
from singzeta.poly import Polynomial

from conftest import random_convenient_germ


def minors_nvol(vertices):
    """Normalized lattice area of a polygon in Z^3 via 2x2 minors of a fan triangulation."""
    v = [np.array(x) for x in vertices]
    total = 0
    for i in range(1, len(v) - 1):
        c = np.cross(v[i] - v[0], v[i + 1] - v[0])
        total += gcd(*(int(x) for x in c))
    return total


def under_volume_oracle(points, nvars):
    """n! * vol of the region below a convenient Newton polyhedron, by scipy.

    The polyhedron is clipped to a box [0, N]^n; what is left of the box is
    the region under the boundary.
    """
    N = max(max(p) for p in points) + 1
    clipped = set()
    for p in points:
        for mask in product((0, 1), repeat=nvars):
            clipped.add(tuple(N if m else x for x, m in zip(p, mask)))
    hull = ConvexHull(np.array(sorted(clipped), dtype=float))
    fact = 2 if nvars == 2 else 6
    return round(fact * (N ** nvars - hull.volume))


def test_golden_boundary():
    b = newton_boundary(parse("z1^2*(z1+z2-2*z3)*(z1+3*z2-4*z3)+z2^5+z3^5"))
    facets = sorted((f.normal.entries, f.normal.level, normalized_volume(f)) for f in b.facets())
    assert facets == [((1, 1, 1), 4, 4), ((3, 2, 2), 10, 7)]
    assert b.convenient
    assert newton_number(b) == 38


def test_non_convenient_boundary():
    b = newton_boundary(parse("z1^5 + z1^4*z2*z3"))
    assert not b.convenient
    assert len(b.faces_of_dim(0)) == 2 and len(b.faces_of_dim(1)) == 1
    with pytest.raises(ValueError):
        newton_number(b)


def test_dominated_points_are_ignored():
    a = newton_boundary(parse("x^2 + y^2 + z^2"))
    b = newton_boundary(parse("x^2 + y^2 + z^2 + x^3*y + x*y*z^4"))
    assert {f.key for f in a.faces} == {f.key for f in b.faces}


@pytest.mark.parametrize(
    "text, nu",
    [
        ("x^2+y^2+z^2", 1),
        ("x^2+y^3+z^5", 8),
        ("x^3+y^3+z^3", 8),
        ("x^4+x^2*y^2+y^5", 10),
    ],
)
def test_newton_numbers(text, nu):
    nvars = 2 if "z" not in text else 3
    assert newton_number(newton_boundary(parse(text, nvars=nvars))) == nu


def test_interior_points():
    assert interior_lattice_points([(2, 2, 0), (2, 0, 2), (0, 5, 0), (0, 0, 5)]) == 0
    assert interior_lattice_points([(0, 0), (3, 0), (0, 3)]) == 1


@given(st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=3, max_size=8))
def test_pick_theorem(pts):
    pts = sorted(set(pts))
    if len(pts) < 3:
        return
    arr = np.array(pts, dtype=float)
    if np.linalg.matrix_rank(arr[1:] - arr[0]) < 2:
        return
    hull = ConvexHull(arr)
    verts = [tuple(int(x) for x in arr[i]) for i in hull.vertices]
    nvol = normalized_volume([v + (0,) for v in verts])
    boundary = sum(gcd(verts[i][0] - verts[i - 1][0], verts[i][1] - verts[i - 1][1]) for i in range(len(verts)))
    assert nvol == round(2 * hull.volume)
    assert nvol == 2 * interior_lattice_points(verts) + boundary - 2


def test_facet_volumes_against_minors_and_scipy():
    rng = random.Random(7)
    for _ in range(40):
        g = random_convenient_germ(rng)
        b = newton_boundary(g)
        for f in b.facets():
            assert normalized_volume(f) == minors_nvol(f.vertices)
        assert coned_volume(b) == under_volume_oracle(g.support(), 3)


def test_two_variable_volume_against_scipy():
    rng = random.Random(3)
    for _ in range(40):
        pts = {(rng.randint(2, 9), 0), (0, rng.randint(2, 9))}
        pts |= {(rng.randint(0, 9), rng.randint(0, 9)) for _ in range(4)}
        pts = {p for p in pts if sum(p) >= 2}
        b = boundary_from_points(pts, 2)
        assert coned_volume(b) == under_volume_oracle(list(pts), 2)


def test_newton_number_is_permutation_invariant():
    rng = random.Random(11)
    for _ in range(30):
        g = random_convenient_germ(rng)
        nu = newton_number(newton_boundary(g))
        for perm in permutations(range(3)):
            h = Polynomial({tuple(m[i] for i in perm): c for m, c in g.items()}, 3)
            assert newton_number(newton_boundary(h)) == nu


def test_restriction_projects_to_coordinate_plane():
    g = parse("x^3 + y^4 + z^5 + x*y*z")
    sub = newton_boundary(g).restrict((0, 1))
    assert sub.nvars == 2
    expected = newton_boundary(parse("x^3 + y^4", nvars=2))
    assert {f.key for f in sub.faces} == {f.key for f in expected.faces}


@pytest.mark.parametrize("a, b, c", list(combinations(range(2, 6), 3))[:4])
def test_brieskorn_newton_number(a, b, c):
    g = parse(f"x^{a} + y^{b} + z^{c}")
    assert newton_number(newton_boundary(g)) == (a - 1) * (b - 1) * (c - 1)
