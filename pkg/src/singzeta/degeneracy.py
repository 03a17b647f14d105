"""Face functions and Newton non-degeneracy.

A face function is quasi-homogeneous, so after a unimodular monomial change
of coordinates adapted to the face it becomes a monomial times a polynomial
``G`` in ``dim(face)`` variables.  The face is non-degenerate exactly when
``G`` has no singular point with all coordinates non-zero:

* vertices are always non-degenerate;
* for an edge, ``G`` is univariate and the test is square-freeness;
* for a 2-face, the candidate ``s``-coordinates are obtained by resultant
  elimination and each candidate is inspected with a dynamic-evaluation gcd
  over ``Q[s]/(p)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _univariate as U
from .lattice import saturated_basis, solve_coordinates
from .newton import Face, NewtonBoundary, newton_boundary
from .poly import Polynomial

DEFAULT_PRIME = 2 ** 61 - 1


@dataclass(frozen=True)
class FaceFunction:
    face: Face
    poly: Polynomial


@dataclass(frozen=True)
class ToricReduction:
    """``ff(z) = z^factor * poly(z^basis[0], ..., z^basis[k-1])``."""

    poly: Polynomial
    factor: tuple
    basis: tuple


@dataclass(frozen=True)
class Verdict:
    nondegenerate: bool
    probabilistic: bool = False
    prime: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.nondegenerate

    def label(self) -> str:
        if not self.nondegenerate:
            return "degenerate"
        return "probably-nondegenerate" if self.probabilistic else "nondegenerate"


@dataclass
class DegeneracyReport:
    verdicts: list = field(default_factory=list)  # (Face, Verdict)
    classification: str = "nondegenerate"
    distinguished: Face | None = None

    @property
    def degenerate_faces(self) -> list[Face]:
        return [f for f, v in self.verdicts if not v.nondegenerate]

    @property
    def in_w_gamma(self) -> bool | None:
        """Non-degenerate on every face other than the distinguished facet."""
        if self.distinguished is None:
            return None
        return self.classification in ("nondegenerate", "weakly-almost-nondegenerate")


def face_function(g: Polynomial, face: Face, boundary: NewtonBoundary | None = None) -> FaceFunction:
    """The sum of the terms of ``g`` whose exponents lie on ``face``."""
    boundary = boundary or newton_boundary(g)
    if boundary.find(face.vertices) is None:
        raise ValueError(f"{face!r} is not a face of the Newton boundary")
    pts = set(face.support_points)
    poly = Polynomial({m: c for m, c in g.items() if m in pts}, g.nvars)
    return FaceFunction(face, poly)


def toric_reduce(ff: FaceFunction) -> ToricReduction:
    """Rewrite a face function in ``dim(face)`` variables, up to a monomial."""
    terms = ff.poly.terms()
    if not terms:
        raise ValueError("empty face function")
    n = ff.poly.nvars
    v0 = terms[-1][0]
    diffs = [tuple(a - b for a, b in zip(m, v0)) for m, _ in terms]
    basis = saturated_basis(diffs, n)
    k = len(basis)
    coords = []
    for d in diffs:
        c = solve_coordinates(basis, d) if k else []
        coords.append(tuple(int(x) for x in c))
    low = tuple(min(c[j] for c in coords) for j in range(k))
    image = {tuple(c[j] - low[j] for j in range(k)): coef for c, (_, coef) in zip(coords, terms)}
    factor = tuple(v0[i] + sum(low[j] * basis[j][i] for j in range(k)) for i in range(n))
    return ToricReduction(Polynomial(image, k), factor, tuple(basis))


def _field_for(mode: str, seed, prime: int | None, prime_bits: int | None):
    if mode == "exact":
        return U.QQ
    if mode != "randomized":
        raise ValueError(f"unknown mode {mode!r}")
    if prime is None:
        prime = DEFAULT_PRIME if prime_bits is None else U.random_prime(prime_bits, random.Random(seed))
    return U.PrimeField(prime)


def _reduced_nondegenerate(G: Polynomial, F) -> bool:
    if G.nvars == 0:
        return True
    if G.nvars == 1:
        dense = U.trim([F.convert(G.coefficient((i,))) for i in range(G.degree() + 1)])
        return U.is_squarefree(dense, F)
    if G.nvars == 2:
        return not U.has_torus_singularity(U.biv_from_polynomial(G, F), F)
    raise ValueError("faces of dimension above 2 are not supported")


def is_nondegenerate_on_face(
    g: Polynomial,
    face: Face,
    mode: str = "exact",
    seed=0,
    prime: int | None = None,
    prime_bits: int | None = None,
    trials: int = 1,
    boundary: NewtonBoundary | None = None,
) -> Verdict:
    """Decide whether the face function of ``g`` on ``face`` is non-degenerate.

    ``mode="randomized"`` runs the same elimination over a prime field; the
    verdict is then labelled probabilistic.  With ``trials > 1`` independent
    primes are drawn from ``seed`` and the majority verdict is returned.
    """
    if face.dim == 0:
        return Verdict(True)
    ff = face_function(g, face, boundary)
    red = toric_reduce(ff)
    if any(x <= 0 for x in (face.normal.entries if face.normal else (1,))):
        raise AssertionError("compact faces have strictly positive covectors")
    if mode == "exact":
        ok = _reduced_nondegenerate(red.poly, U.QQ)
        return Verdict(ok)
    rng = random.Random(seed)
    votes = []
    used = None
    for trial in range(max(1, trials)):
        if trial == 0:
            F = _field_for(mode, seed, prime, prime_bits)
        else:
            F = U.PrimeField(U.random_prime(prime_bits or 61, rng))
        try:
            votes.append(_reduced_nondegenerate(red.poly, F))
        except ZeroDivisionError:
            # a coefficient denominator vanishes modulo this prime
            continue
        used = used or F.p
    if not votes:
        return Verdict(_reduced_nondegenerate(red.poly, U.QQ))
    ok = 2 * sum(votes) > len(votes)
    return Verdict(ok, probabilistic=True, prime=used)


def classify(
    g: Polynomial,
    distinguished_facet: Face | Sequence | None = None,
    mode: str = "exact",
    seed=0,
    prime_bits: int | None = None,
    trials: int = 1,
) -> DegeneracyReport:
    """Per-face non-degeneracy report and overall classification.

    ``classification`` is ``"nondegenerate"``, ``"weakly-almost-nondegenerate"``
    (only the distinguished facet is degenerate) or ``"degenerate"``.
    """
    b = newton_boundary(g)
    dist = None
    if distinguished_facet is not None:
        verts = distinguished_facet.vertices if isinstance(distinguished_facet, Face) else distinguished_facet
        dist = b.find(verts)
        if dist is None or dist.dim != g.nvars - 1:
            raise ValueError("distinguished facet is not a facet of the Newton boundary")
    report = DegeneracyReport(distinguished=dist)
    for f in b.faces:
        v = is_nondegenerate_on_face(g, f, mode=mode, seed=seed, prime_bits=prime_bits, trials=trials, boundary=b)
        report.verdicts.append((f, v))
    bad = report.degenerate_faces
    if not bad:
        report.classification = "nondegenerate"
    elif dist is not None and bad == [dist]:
        report.classification = "weakly-almost-nondegenerate"
    else:
        report.classification = "degenerate"
    return report


def is_newton_nondegenerate(g: Polynomial, mode: str = "exact", seed=0) -> bool:
    return classify(g, mode=mode, seed=seed).classification == "nondegenerate"


def in_w_gamma(g: Polynomial, gamma: NewtonBoundary, delta0: Face, mode: str = "exact", seed=0) -> bool:
    """Membership in the class of germs with boundary ``gamma`` that are
    non-degenerate on every face except ``delta0``."""
    b = newton_boundary(g)
    if {f.key for f in b.faces} != {f.key for f in gamma.faces}:
        return False
    return bool(classify(g, delta0, mode=mode, seed=seed).in_w_gamma)


def torus_singular_points_match(G: Polynomial, points: Sequence[Sequence[Fraction]]) -> bool:
    """Whether the singular points of ``G(s, t) = 0`` with ``s*t != 0`` are exactly ``points``.

    ``G`` must be square-free and not divisible by ``s`` or ``t``; ``points``
    are distinct rational pairs with non-zero coordinates.
    """
    F = U.QQ
    B = U.biv_from_polynomial(G, F)
    pts = sorted({(Fraction(s), Fraction(t)) for s, t in points})
    verdict, p = U.torus_singular_candidates(B, F)
    if verdict is True:
        return False
    if verdict is False:
        return not pts
    branches = U.common_zero_branches([B, U.biv_ds(B, F), U.biv_dt(B, F)], p, F)
    svals = sorted({s for s, _ in pts})
    found: dict = {}
    for q, D in branches:
        if U.deg(q) < 1 or (D and U.deg(D) == 0):
            continue
        if not D:
            return False
        z = q
        for c in D[:-1]:
            z = U.gcd(z, c, F)
        live = U.exquo(q, z, F)
        if U.deg(live) < 1:
            continue
        roots = [s for s in svals if not U.evaluate(live, s, F)]
        if len(roots) != U.deg(live):
            return False
        for s in roots:
            Ds = U.trim([U.evaluate(c, s, F) for c in D])
            Ds = U.squarefree_part(U.strip_zero_roots(Ds), F)
            found[s] = Ds
    for s in svals:
        expect = [F.one]
        for s2, t in pts:
            if s2 == s:
                expect = U.mul(expect, [-t, F.one], F)
        if found.get(s) != expect:
            return False
    return len(found) == len(svals)
