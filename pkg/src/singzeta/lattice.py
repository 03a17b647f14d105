"""Small exact integer linear algebra used by the polyhedral code."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    assert det.denominator == 1
    return int(det)


def cross(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """A basis of ``{x in Z^n : r.x = 0 for every row r}``.

    Column operations are applied to the matrix while recording them in an
    identity block; columns that become zero give the kernel basis.
    """
    rows = [list(map(int, r)) for r in rows]
    # work with the transpose: one entry per column, paired with a unit vector
    cols = [([r[j] for r in rows], [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    pivot_row = 0
    active = list(range(n))
    for i in range(len(rows)):
        # Euclid on entry i among the active columns
        while True:
            nz = [j for j in active if cols[j][0][i]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda j: abs(cols[j][0][i]))
            p = nz[0]
            for j in nz[1:]:
                q = cols[j][0][i] // cols[p][0][i]
                cols[j] = (
                    [a - q * b for a, b in zip(cols[j][0], cols[p][0])],
                    [a - q * b for a, b in zip(cols[j][1], cols[p][1])],
                )
        nz = [j for j in active if cols[j][0][i]]
        if nz:
            active.remove(nz[0])
            pivot_row += 1
    return [tuple(cols[j][1]) for j in active]


def saturated_basis(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """A basis of the lattice ``span_R(vectors) ∩ Z^n``."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    orth = integer_kernel(vectors, n)
    if not orth:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    return integer_kernel(orth, n)


def solve_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction]:
    """Coordinates of ``v`` in ``basis`` (which must be linearly independent)."""
    k, n = len(basis), len(v)
    # augmented system: sum_j c_j basis[j] = v
    m = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    where = []
    for col in range(k):
        piv = next((r for r in range(row, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("basis vectors are linearly dependent")
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(n):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        where.append(row)
        row += 1
    if any(m[r][k] for r in range(row, n)):
        raise ValueError("vector is not in the span of the basis")
    return [m[where[j]][k] for j in range(k)]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    vectors = [list(map(Fraction, v)) for v in vectors]
    if not vectors:
        return 0
    n = len(vectors[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(vectors)) if vectors[i][col]), None)
        if piv is None:
            continue
        vectors[r], vectors[piv] = vectors[piv], vectors[r]
        for i in range(len(vectors)):
            if i != r and vectors[i][col]:
                f = vectors[i][col] / vectors[r][col]
                vectors[i] = [a - f * b for a, b in zip(vectors[i], vectors[r])]
        r += 1
    return r


def simplex_normalized_volume(vertices: Sequence[Sequence[int]]) -> int:
    """``k! * vol`` of a lattice ``k``-simplex, measured in the lattice of its span."""
    v0 = vertices[0]
    edges = [tuple(a - b for a, b in zip(v, v0)) for v in vertices[1:]]
    k = len(edges)
    if k == 0:
        return 1
    n = len(v0)
    if rank(edges) < k:
        return 0
    basis = saturated_basis(edges, n)
    coords = [solve_coordinates(basis, e) for e in edges]
    if any(c.denominator != 1 for row in coords for c in row):
        raise AssertionError("saturated basis does not contain the edges")
    return abs(determinant([[int(c) for c in row] for row in coords]))
