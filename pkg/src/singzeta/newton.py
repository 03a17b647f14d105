"""Newton polyhedra of germs in at most three variables.

The compact faces are found by brute force over candidate supporting
covectors: the normal of every pair (two variables) or triple (three
variables) of support points.  To treat non-convenient germs uniformly, far
away artificial points ``N*e_i`` are added first; a face of the enlarged
polyhedron that avoids them is exactly a compact face of the original one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .lattice import cross, primitive, simplex_normalized_volume
from .poly import Polynomial

__all__ = [
    "Covector",
    "Face",
    "NewtonBoundary",
    "boundary_from_points",
    "newton_boundary",
    "is_convenient",
    "polygon_normalized_volume",
    "normalized_volume",
    "coned_volume",
    "newton_number",
    "interior_lattice_points",
]


@dataclass(frozen=True)
class Covector:
    entries: tuple
    level: int

    def pair(self, point) -> int:
        return sum(a * b for a, b in zip(self.entries, point))


@dataclass(frozen=True)
class Face:
    """A compact face of a Newton polyhedron.

    ``vertices`` are listed in cyclic order for polygons.  ``normal`` is the
    primitive supporting covector of a facet (``None`` for lower faces, whose
    supporting covectors form a cone).  ``ambient_subset`` holds the 0-based
    coordinate positions used by the face's points.
    """

    dim: int
    vertices: tuple
    support_points: tuple
    normal: Covector | None = None
    ambient_subset: tuple = ()

    @property
    def key(self) -> frozenset:
        return frozenset(self.vertices)

    def contains(self, other: "Face") -> bool:
        return other.key <= self.key

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={list(self.vertices)})"


@dataclass(frozen=True)
class NewtonBoundary:
    nvars: int
    faces: tuple
    support: tuple
    convenient: bool
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def facets(self) -> list[Face]:
        """Faces of dimension ``nvars - 1``."""
        return self.faces_of_dim(self.nvars - 1)

    def vertices(self) -> list[tuple]:
        return [f.vertices[0] for f in self.faces_of_dim(0)]

    def find(self, vertices: Iterable[Sequence[int]]) -> Face | None:
        key = frozenset(tuple(v) for v in vertices)
        for f in self.faces:
            if f.key == key:
                return f
        return None

    def subfaces(self, face: Face) -> list[Face]:
        return [f for f in self.faces if f.key <= face.key and f is not face]

    def superfaces(self, face: Face) -> list[Face]:
        return [f for f in self.faces if face.key < f.key]

    def restrict(self, subset: Sequence[int]) -> "NewtonBoundary | None":
        """Boundary of the restriction to the coordinate subspace ``subset``.

        The result lives in ``len(subset)`` variables; ``None`` if no support
        point lies in that subspace.
        """
        subset = list(subset)
        pts = [
            tuple(p[i] for i in subset)
            for p in self.support
            if all(p[j] == 0 for j in range(self.nvars) if j not in subset)
        ]
        if not pts:
            return None
        return boundary_from_points(pts, len(subset))


def _dominated(p, q) -> bool:
    return p != q and all(a <= b for a, b in zip(p, q))


def _prune(points):
    pts = sorted(set(points))
    return [q for q in pts if not any(_dominated(p, q) for p in pts)]


def _hull_2d(points):
    """Convex hull (strict, counter-clockwise) of 2D integer points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _on_segment(p, a, b) -> bool:
    d = [y - x for x, y in zip(a, b)]
    w = [y - x for x, y in zip(a, p)]
    # collinear: w parallel to d, then 0 <= t <= 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[i] * w[j] - d[j] * w[i]:
                return False
    dot = sum(x * y for x, y in zip(d, w))
    return 0 <= dot <= sum(x * x for x in d)


def _ambient(points, n):
    return tuple(i for i in range(n) if any(p[i] for p in points))


def _artificial_height(points, n) -> int:
    m = max((max(p) for p in points), default=1)
    return 6 * m ** 3 * (len(points) + 3) ** 2 + 1


def boundary_from_points(points: Iterable[Sequence[int]], nvars: int) -> NewtonBoundary:
    """Compact-face complex of ``conv(points) + R_{>=0}^n``."""
    support = tuple(sorted({tuple(int(x) for x in p) for p in points}))
    if not support:
        raise ValueError("empty support")
    if any(not any(p) for p in support):
        raise ValueError("support contains the origin (non-zero constant term)")
    n = nvars
    convenient = all(
        any(p[i] > 0 and all(p[j] == 0 for j in range(n) if j != i) for p in support)
        for i in range(n)
    )
    if n == 1:
        v = (min(p[0] for p in support),)
        face = Face(0, (v,), (v,), Covector((1,), v[0]), (0,))
        return NewtonBoundary(1, (face,), support, True)
    height = _artificial_height(support, n)
    artificial = {tuple(height if j == i else 0 for j in range(n)) for i in range(n)}
    pts = _prune(list(support) + list(artificial))
    real = [p for p in support if p in set(pts)]
    faces: dict[frozenset, Face] = {}

    def add(face):
        if any(v in artificial for v in face.vertices):
            return
        faces.setdefault(face.key, face)

    facet_normals = set()
    for combo in combinations(pts, n):
        if n == 2:
            a, b = combo
            normal = (b[1] - a[1], a[0] - b[0])
        else:
            a, b, c = combo
            normal = cross([x - y for x, y in zip(b, a)], [x - y for x, y in zip(c, a)])
        if not any(normal):
            continue
        normal = primitive(normal)
        if all(x < 0 for x in normal):
            normal = tuple(-x for x in normal)
        if not all(x > 0 for x in normal):
            continue
        level = sum(x * y for x, y in zip(normal, combo[0]))
        if min(sum(x * y for x, y in zip(normal, p)) for p in pts) != level:
            continue
        facet_normals.add((normal, level))

    for normal, level in sorted(facet_normals):
        cov = Covector(normal, level)
        on = [p for p in pts if cov.pair(p) == level]
        on_real = tuple(sorted(p for p in support if cov.pair(p) == level))
        if n == 2:
            ends = (min(on), max(on))
            add(Face(1, ends, on_real, cov, _ambient(ends, n)))
            for v in ends:
                add(Face(0, (v,), (v,), None, _ambient([v], n)))
            continue
        # project by dropping the first coordinate: injective on the plane
        proj = {(p[1], p[2]): p for p in on}
        hull = [proj[q] for q in _hull_2d(list(proj))]
        add(Face(2, tuple(hull), on_real, cov, _ambient(hull, n)))
        for i in range(len(hull)):
            a, b = hull[i], hull[(i + 1) % len(hull)]
            seg = tuple(sorted(p for p in on_real if _on_segment(p, a, b)))
            add(Face(1, tuple(sorted((a, b))), seg, None, _ambient((a, b), n)))
            add(Face(0, (a,), (a,), None, _ambient([a], n)))

    if not faces and len(real) == 1:
        # a single monomial whose polyhedron has no facet avoiding the artificial points
        v = real[0]
        faces[frozenset([v])] = Face(0, (v,), (v,), None, _ambient([v], n))
    ordered = tuple(sorted(faces.values(), key=lambda f: (f.dim, sorted(f.vertices))))
    return NewtonBoundary(n, ordered, support, convenient)


def newton_boundary(p: Polynomial) -> NewtonBoundary:
    """Newton boundary of a germ given by a polynomial with zero constant term."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no Newton boundary")
    if p.constant_term():
        raise ValueError("polynomial has a non-zero constant term")
    return boundary_from_points(list(p.support()), p.nvars)


def is_convenient(b: NewtonBoundary) -> bool:
    return b.convenient


def polygon_normalized_volume(vertices: Sequence[Sequence[int]]) -> int:
    """Normalized area of a convex lattice polygon given in cyclic order (fan triangulation)."""
    vs = [tuple(v) for v in vertices]
    return sum(simplex_normalized_volume([vs[0], vs[i], vs[i + 1]]) for i in range(1, len(vs) - 1))


def normalized_volume(face_or_vertices) -> int:
    """Normalized lattice volume of a face (or of a vertex list in cyclic order)."""
    if isinstance(face_or_vertices, Face):
        vs = list(face_or_vertices.vertices)
    else:
        vs = [tuple(v) for v in face_or_vertices]
    for v in vs:
        if any(not isinstance(x, int) and Fraction(x).denominator != 1 for x in v):
            raise ValueError("vertices must be lattice points")
    vs = [tuple(int(x) for x in v) for v in vs]
    if len(vs) == 1:
        return 1
    if len(vs) == 2:
        g = 0
        for a, b in zip(*vs):
            g = gcd(g, a - b)
        return g
    return polygon_normalized_volume(vs)


def coned_volume(b: NewtonBoundary) -> int:
    """``n! * vol`` of the region under the boundary, for a convenient boundary."""
    return sum(f.normal.level * normalized_volume(f) for f in b.facets())


def newton_number(b: NewtonBoundary) -> int:
    """Kouchnirenko's Newton number of a convenient boundary."""
    if not b.convenient:
        raise ValueError("the Newton number needs a convenient boundary")
    n = b.nvars
    total = (-1) ** n
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            sub = b.restrict(subset)
            total += (-1) ** (n - k) * coned_volume(sub)
    return total


def _plane_normal(vs):
    v0 = vs[0]
    for i in range(1, len(vs)):
        for j in range(i + 1, len(vs)):
            c = cross([a - b for a, b in zip(vs[i], v0)], [a - b for a, b in zip(vs[j], v0)])
            if any(c):
                return c
    raise ValueError("polygon vertices are collinear")


def interior_lattice_points(face) -> int:
    """Number of lattice points in the relative interior of a 2-dimensional face."""
    if isinstance(face, Face):
        if face.dim != 2:
            raise ValueError("interior points are counted on 2-dimensional faces only")
        vs = [tuple(v) for v in face.vertices]
    else:
        vs = [tuple(v) for v in face]
        if len(vs) < 3:
            raise ValueError("interior points are counted on 2-dimensional faces only")
    if len(vs[0]) == 2:
        vs = [v + (0,) for v in vs]
    normal = _plane_normal(vs)
    drop = next(i for i in range(3) if normal[i])
    keep = [i for i in range(3) if i != drop]
    poly2 = _hull_2d([(v[keep[0]], v[keep[1]]) for v in vs])
    if len(poly2) != len(set(vs)):
        raise ValueError("vertices are not in convex position")
    level = sum(a * b for a, b in zip(normal, vs[0]))
    lo = [min(v[i] for v in vs) for i in range(3)]
    hi = [max(v[i] for v in vs) for i in range(3)]
    count = 0
    for x in range(lo[keep[0]], hi[keep[0]] + 1):
        for y in range(lo[keep[1]], hi[keep[1]] + 1):
            rest = level - normal[keep[0]] * x - normal[keep[1]] * y
            if rest % normal[drop]:
                continue
            if _strictly_inside((x, y), poly2):
                count += 1
    return count


def _strictly_inside(p, poly):
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) <= 0:
            return False
    return True
