"""Germs of the form ``g = z1^2 * f(z1, z2, z3) + h(z2, z3)`` and their invariants.

``f`` is a reduced homogeneous form of degree ``d >= 2`` defining a projective
curve ``C``; ``h`` is a binary form of degree ``d + 3``.  The Newton boundary
of every such germ has the two facets

* ``D0`` with vertices ``(d+2,0,0), (2,d,0), (2,0,d)`` and covector ``P = (1,1,1)``;
* ``D1`` with vertices ``(2,d,0), (2,0,d), (0,d+3,0), (0,0,d+3)`` and covector
  ``Q = (3,2,2)``.

The germ is degenerate on ``D0`` exactly when ``C`` is singular.  Its zeta
function is assembled from the smooth-curve closed form, a correction
``(1 - t^(d+2))^mu_tot`` and one local factor per singular point of ``C``,
each computed from a local model in the chart ``z = (u1, u1*u2, u1*u3)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from . import _univariate as U
from .degeneracy import classify, is_nondegenerate_on_face, torus_singular_points_match
from .lattice import cross
from .newton import newton_boundary, newton_number
from .poly import Polynomial, compose, constant, derivative, evaluate, is_squarefree, variable
from .zeta import ZetaFunction, milnor_from_zeta, varchenko_zeta

P_VEC = (1, 1, 1)
Q_VEC = (3, 2, 2)


class FamilyError(ValueError):
    """A member violates a structural precondition."""


class ZetaNotComputable(RuntimeError):
    """A local model is degenerate, so the method does not determine the zeta."""


class GenericityError(RuntimeError):
    """No generic plane section was found within the retry budget."""


@dataclass(frozen=True)
class SingularPointCertificate:
    """A singular point ``[1 : rho2 : rho3]`` of ``C`` with its local data.

    ``local_normal_form`` is a polynomial in two variables ``(v2, v3)``.
    ``chart`` optionally records the linear coordinates in which the normal
    form is realised: ``(u2, u3) - (rho2, rho3) = chart * (v2, v3)``.
    """

    point: tuple
    local_milnor: int
    branches: int
    local_normal_form: Polynomial
    type_tag: str = "A1"
    chart: tuple | None = None

    @property
    def affine(self) -> tuple:
        return (self.point[1], self.point[2])


@dataclass
class FamilyMember:
    f: Polynomial
    h: Polynomial
    d: int
    g: Polynomial
    extra_terms: Polynomial
    certificates: list = field(default_factory=list)
    f_factors: list | None = None

    @property
    def mu_tot(self) -> int:
        return sum(c.local_milnor for c in self.certificates)

    def delta0(self) -> tuple:
        d = self.d
        return ((d + 2, 0, 0), (2, d, 0), (2, 0, d))

    def delta1(self) -> tuple:
        d = self.d
        return ((2, d, 0), (2, 0, d), (0, d + 3, 0), (0, 0, d + 3))


# -- helpers --------------------------------------------------------------


def _normalize_point(point) -> tuple:
    pt = tuple(Fraction(x) for x in point)
    if len(pt) != 3:
        raise FamilyError("singular points are given by three projective coordinates")
    if not pt[0]:
        raise FamilyError("singular points with z1 = 0 are not supported")
    return tuple(x / pt[0] for x in pt)


def _gradient_vanishes(f: Polynomial, pt) -> bool:
    return evaluate(f, pt) == 0 and all(evaluate(derivative(f, i), pt) == 0 for i in (1, 2, 3))


def dehomogenize(f: Polynomial) -> Polynomial:
    """``f(1, s, t)`` as a polynomial in two variables."""
    out: dict = {}
    for m, c in f.items():
        key = (m[1], m[2])
        out[key] = out.get(key, 0) + c
    return Polynomial(out, 2)


def branch_count(fbar: Polynomial) -> int:
    """Number of branches of a Newton non-degenerate plane curve germ.

    Each compact edge contributes its lattice length; each coordinate axis
    contained in the curve contributes one more branch.
    """
    b = newton_boundary(fbar)
    count = sum(_lattice_length(f.vertices) for f in b.faces_of_dim(1))
    for i in range(2):
        if not any(m[i] > 0 and m[1 - i] == 0 for m in fbar.support()):
            count += 1
    return count


def _lattice_length(vs) -> int:
    return gcd(*(a - b for a, b in zip(*vs)))


def local_milnor_number(fbar: Polynomial) -> int:
    """Milnor number of a Newton non-degenerate germ in two variables."""
    b = newton_boundary(fbar)
    if b.convenient:
        return newton_number(b)
    return milnor_from_zeta(varchenko_zeta(b), 2)


def _check_certificate(f: Polynomial, cert: SingularPointCertificate) -> None:
    if not _gradient_vanishes(f, cert.point):
        raise FamilyError(f"f or its gradient does not vanish at {_fmt_point(cert.point)}")
    fbar = cert.local_normal_form
    if fbar.nvars != 2:
        raise FamilyError("local normal forms are polynomials in two variables")
    if fbar.constant_term() or fbar.is_zero():
        raise FamilyError("local normal form must vanish at the origin")
    if classify(fbar).classification != "nondegenerate":
        raise FamilyError(f"local normal form at {_fmt_point(cert.point)} is Newton degenerate")
    mu = local_milnor_number(fbar)
    if mu != cert.local_milnor:
        raise FamilyError(
            f"local Milnor number {cert.local_milnor} at {_fmt_point(cert.point)} "
            f"disagrees with the normal form ({mu})"
        )
    r = branch_count(fbar)
    if r != cert.branches:
        raise FamilyError(
            f"branch count {cert.branches} at {_fmt_point(cert.point)} disagrees with the normal form ({r})"
        )
    if cert.chart is not None:
        fa = _chart_expansion(f, cert)
        if newton_boundary(fa).faces != newton_boundary(fbar).faces:
            raise FamilyError(f"chart at {_fmt_point(cert.point)} does not realise the normal form")


def _fmt_point(pt) -> str:
    return "[" + ":".join(str(Fraction(x)) for x in pt) + "]"


def _chart_images(cert: SingularPointCertificate, nvars: int, offset: int):
    """Images of ``(u2, u3)`` as ``rho + chart * (v2, v3)``."""
    (a, b), (c, dd) = cert.chart
    v2, v3 = variable(offset + 1, nvars), variable(offset + 2, nvars)
    u2 = constant(cert.point[1], nvars) + v2 * Fraction(a) + v3 * Fraction(b)
    u3 = constant(cert.point[2], nvars) + v2 * Fraction(c) + v3 * Fraction(dd)
    return u2, u3


def _chart_expansion(f: Polynomial, cert: SingularPointCertificate) -> Polynomial:
    u2, u3 = _chart_images(cert, 2, 0)
    return compose(f, [constant(1, 2), u2, u3])


def _check_complete(f: Polynomial, certs) -> bool:
    """Whether the certificates list every singular point of ``C``."""
    # points on the line z1 = 0, in the chart z2 = 1, then the point [0:0:1]
    parts = [f] + [derivative(f, i) for i in (1, 2, 3)]
    line = None
    for p in parts:
        dense = _univariate_in_last(p, fixed=(0, 1))
        line = dense if line is None else U.gcd(line, dense, U.QQ)
    if line is None or U.deg(line) >= 1 or not line:
        return False
    if all(evaluate(p, (0, 0, 1)) == 0 for p in parts):
        return False
    pts = [c.affine for c in certs]
    G = dehomogenize(f)
    # the two coordinate lines of the chart z1 = 1 and the origin
    for axis in (0, 1):
        restricted = []
        for q in (G, derivative(G, 1), derivative(G, 2)):
            restricted.append(_restrict_axis(q, axis))
        gg = restricted[0]
        for r in restricted[1:]:
            gg = U.gcd(gg, r, U.QQ)
        if not gg:
            return False
        gg = U.squarefree_part(U.strip_zero_roots(gg), U.QQ)
        expect = [U.QQ.one]
        for s, t in pts:
            other = t if axis == 0 else s
            here = s if axis == 0 else t
            if here == 0 and other != 0:
                expect = U.mul(expect, [-other, U.QQ.one], U.QQ)
        if gg != expect:
            return False
    origin_singular = all(evaluate(q, (0, 0)) == 0 for q in (G, derivative(G, 1), derivative(G, 2)))
    if origin_singular != ((Fraction(0), Fraction(0)) in pts):
        return False
    torus_pts = [(s, t) for s, t in pts if s and t]
    return torus_singular_points_match(G, torus_pts)


def _univariate_in_last(p: Polynomial, fixed) -> list:
    # p(fixed[0], fixed[1], t) as a dense list
    out: dict = {}
    for m, c in p.items():
        val = c * Fraction(fixed[0]) ** m[0] * Fraction(fixed[1]) ** m[1]
        out[m[2]] = out.get(m[2], 0) + val
    top = max(out, default=-1)
    return U.trim([Fraction(out.get(i, 0)) for i in range(top + 1)])


def _restrict_axis(q: Polynomial, axis: int) -> list:
    # set variable `axis` to zero, return dense univariate in the other one
    other = 1 - axis
    out: dict = {}
    for m, c in q.items():
        if m[axis] == 0:
            out[m[other]] = out.get(m[other], 0) + c
    top = max(out, default=-1)
    return U.trim([Fraction(out.get(i, 0)) for i in range(top + 1)])


def discover_certificates(f_factors: Sequence[Polynomial]) -> list[SingularPointCertificate]:
    """Singular points of a union of distinct lines.

    A point where ``k`` lines meet is an ordinary ``k``-fold point; the normal
    form is the product of those lines written in coordinates where the first
    two lines are ``v2`` and ``v3``.
    """
    coeffs = []
    for L in f_factors:
        if L.nvars != 3 or L.degree() != 1 or not L.is_homogeneous():
            raise FamilyError("factors must be linear forms in z1, z2, z3")
        coeffs.append(tuple(L.coefficient(tuple(1 if j == i else 0 for j in range(3))) for i in range(3)))
    for a, b in combinations(coeffs, 2):
        if not any(cross(a, b)):
            raise FamilyError("repeated line among the factors")
    meets: dict = {}
    for i, j in combinations(range(len(coeffs)), 2):
        pt = cross(coeffs[i], coeffs[j])
        pt = _normalize_point(pt)
        meets.setdefault(pt, set()).update((i, j))
    certs = []
    for pt in sorted(meets):
        idx = sorted(meets[pt])
        k = len(idx)
        (_, b1, c1), (_, b2, c2) = (coeffs[idx[0]], coeffs[idx[1]])
        det = b1 * c2 - b2 * c1
        # (w2, w3) = M (v2, v3) with v2 = b1 w2 + c1 w3, v3 = b2 w2 + c2 w3
        chart = ((c2 / det, -c1 / det), (-b2 / det, b1 / det))
        v2, v3 = variable(1, 2), variable(2, 2)
        nf = v2 * v3
        for j in idx[2:]:
            _, b, c = coeffs[j]
            nf = nf * ((v2 * chart[0][0] + v3 * chart[0][1]) * b + (v2 * chart[1][0] + v3 * chart[1][1]) * c)
        nf = nf.monic()
        tag = "A1" if k == 2 else f"O{k}"
        certs.append(SingularPointCertificate(pt, (k - 1) ** 2, k, nf, tag, chart))
    return certs


# -- operations ---------------------------------------------------------------


def build_member(
    f: Polynomial,
    h: Polynomial,
    extra_terms: Polynomial | None = None,
    certificates: Sequence[SingularPointCertificate] | None = None,
    f_factors: Sequence[Polynomial] | None = None,
    check_complete: bool = True,
) -> FamilyMember:
    """Validate the data and assemble ``g = z1^2 f + h + extra_terms``.

    Certificates are verified exactly.  When ``certificates`` is ``None`` and
    ``f_factors`` lists linear forms whose product is ``f``, the singular
    points are found by intersecting the lines.  With ``check_complete`` the
    certificates must account for every singular point of ``C``.
    """
    if f.nvars != 3 or h.nvars != 3:
        raise FamilyError("f and h must be polynomials in z1, z2, z3")
    d = f.degree()
    if d < 2 or not f.is_homogeneous():
        raise FamilyError("f must be a homogeneous form of degree at least 2")
    if h.degree() != d + 3 or not h.is_homogeneous():
        raise FamilyError(f"h must be homogeneous of degree d + 3 = {d + 3}")
    if h.degree_in(0) > 0:
        raise FamilyError("h must not involve z1")
    if not h.coefficient((0, d + 3, 0)) or not h.coefficient((0, 0, d + 3)):
        raise FamilyError("h must contain z2^(d+3) and z3^(d+3) (convenience)")
    for i in range(3):
        mono = tuple(d if j == i else 0 for j in range(3))
        if not f.coefficient(mono):
            raise FamilyError(f"f must contain z{i + 1}^{d} (convenience)")
    if not is_squarefree(f):
        raise FamilyError("f is not square-free")
    extra = extra_terms if extra_terms is not None else Polynomial({}, 3)
    for m, _ in extra.terms():
        if sum(m) <= d + 2 or sum(q * x for q, x in zip(Q_VEC, m)) <= 2 * d + 6:
            raise FamilyError(f"extra term with exponent {m} is not strictly above the Newton boundary")
    z1 = variable(1, 3)
    g = z1 ** 2 * f + h + extra
    factors = list(f_factors) if f_factors else None
    if factors is not None:
        prod = constant(1, 3)
        for L in factors:
            prod = prod * L
        ratio = f.leading_term()[1] / prod.leading_term()[1]
        if prod * ratio != f:
            raise FamilyError("the listed factors do not multiply to f")
    discovered = certificates is None and bool(factors)
    if certificates is None:
        certificates = discover_certificates(factors) if factors else []
    certs = []
    for c in certificates:
        pt = _normalize_point(c.point)
        c = SingularPointCertificate(pt, c.local_milnor, c.branches, c.local_normal_form, c.type_tag, c.chart)
        _check_certificate(f, c)
        certs.append(c)
    if len({c.point for c in certs}) != len(certs):
        raise FamilyError("duplicate singular point certificates")
    # the singular points of a union of distinct lines are exactly the
    # pairwise intersections, so discovered certificates are complete
    if check_complete and not discovered and not _check_complete(f, certs):
        raise FamilyError("certificates do not account for every singular point of C")
    return FamilyMember(f, h, d, g, extra, certs, factors)


@dataclass
class AssumptionReport:
    ff: bool
    sing_disjoint: bool
    in_w_gamma: bool
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "FF": "pass" if self.ff else "FAIL",
            "sing_disjoint": "pass" if self.sing_disjoint else "FAIL",
            "in_W_Gamma": "pass" if self.in_w_gamma else "FAIL",
            "failures": list(self.failures),
        }


def boundary_side_function(m: FamilyMember) -> Polynomial:
    """``z1^2 f(0, z2, z3) + h(z2, z3)``: the part of ``g`` on the facet ``D1``."""
    z1 = variable(1, 3)
    f0 = Polynomial({k: c for k, c in m.f.items() if k[0] == 0}, 3)
    return z1 ** 2 * f0 + m.h


def check_assumptions(m: FamilyMember, mode: str = "exact", seed=0, prime_bits: int | None = None) -> AssumptionReport:
    failures = []
    opts = dict(mode=mode, seed=seed, prime_bits=prime_bits)
    ff = classify(boundary_side_function(m), **opts).classification == "nondegenerate"
    if not ff:
        failures.append("z1^2 f(0,z2,z3) + h is Newton degenerate")
    bad = [c.point for c in m.certificates if evaluate(m.h, c.point) == 0]
    for pt in bad:
        failures.append(f"singular point {_fmt_point(pt)} lies on h = 0")
    report = classify(m.g, m.delta0(), **opts)
    in_w = bool(report.in_w_gamma)
    if not in_w:
        failures.append("g is degenerate on a face other than D0")
    return AssumptionReport(ff, not bad, in_w, failures)


def base_zeta(d: int) -> ZetaFunction:
    """Zeta-function of a member whose curve ``C`` is smooth."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return ZetaFunction({d + 2: -d * d + 2 * d - 1, d + 3: d + 1, 2 * d + 6: -2 * d - 1})


def _effective_h(m: FamilyMember) -> Polynomial:
    # terms of order exactly one in u1 after the chart substitution
    extra1 = Polynomial({k: c for k, c in m.extra_terms.items() if sum(k) == m.d + 3}, 3)
    return m.h + extra1


def local_pullback_model(m: FamilyMember, cert: SingularPointCertificate, jet_order: int = 2) -> Polynomial:
    """Local model of the pull-back of ``g`` at the point of ``E(P)`` over ``cert``.

    Variables are ``(v1, v2, v3)``.  With ``c = h(rho) != 0`` the model is
    ``v1^(d+2) * (fbar(v2, v3) + c*v1)``.  With ``c = 0`` the chart of the
    certificate is used and ``h`` is expanded at ``rho`` up to ``jet_order``.
    """
    heff = _effective_h(m)
    c = evaluate(heff, cert.point)
    v1 = variable(1, 3)
    fbar3 = Polynomial({(0,) + k: x for k, x in cert.local_normal_form.items()}, 3)
    lead = v1 ** (m.d + 2)
    if c:
        return lead * (fbar3 + v1 * c)
    if cert.chart is None:
        raise FamilyError(
            f"h vanishes at {_fmt_point(cert.point)}; a chart for the normal form is needed to expand it"
        )
    u2, u3 = _chart_images(cert, 3, 1)
    fa = compose(m.f, [constant(1, 3), u2, u3])
    ha = compose(heff, [constant(1, 3), u2, u3])
    jet = Polynomial({k: x for k, x in ha.items() if sum(k) <= jet_order}, 3)
    if jet.is_zero():
        raise FamilyError(f"the {jet_order}-jet of h vanishes at {_fmt_point(cert.point)}")
    # keep the principal part of f in the chart: the terms on the normal form's boundary
    nb = newton_boundary(cert.local_normal_form)
    on = {(0,) + p for face in nb.faces for p in face.support_points}
    fa_pp = Polynomial({k: x for k, x in fa.items() if k in on}, 3)
    return lead * (fa_pp + v1 * jet)


def local_zeta(m: FamilyMember, cert: SingularPointCertificate) -> ZetaFunction:
    model = local_pullback_model(m, cert)
    if classify(model).classification != "nondegenerate":
        raise ZetaNotComputable(f"local model at {_fmt_point(cert.point)} is Newton degenerate")
    return varchenko_zeta(model)


def _degenerate_outside_delta0(m: FamilyMember) -> list:
    # every face except the facet D0 itself must be non-degenerate; its edges included
    b = newton_boundary(m.g)
    d0 = b.find(m.delta0())
    return [
        f for f in b.faces
        if f is not d0 and not is_nondegenerate_on_face(m.g, f, boundary=b).nondegenerate
    ]


def assemble_zeta(m: FamilyMember) -> ZetaFunction:
    """Zeta-function of ``g`` from the base factor and one local factor per singular point.

    Raises ``ZetaNotComputable`` when ``g`` is degenerate on a face other than
    ``D0``; such a germ can fail to have an isolated singularity.
    """
    bad = _degenerate_outside_delta0(m)
    if bad:
        raise ZetaNotComputable(f"g is Newton degenerate on the face with vertices {list(bad[0].vertices)}")
    z = base_zeta(m.d) * ZetaFunction({m.d + 2: m.mu_tot})
    for cert in m.certificates:
        z = z * local_zeta(m, cert)
    return z


def milnor_number(m: FamilyMember) -> int:
    return milnor_from_zeta(assemble_zeta(m), 3)


def infer_mu_tot(z: ZetaFunction, d: int) -> int:
    """Total Milnor number of ``C`` read off the zeta-function of a member."""
    rest = z / base_zeta(d)
    low = [lvl for lvl in rest.factors if lvl < d + 2]
    if low:
        raise ValueError(f"factor levels {low} below d + 2 are inconsistent with the family")
    mu = rest.exponent(d + 2)
    if mu < 0:
        raise ValueError("negative total Milnor number: zeta is not from this family")
    return mu


def plane_section(g: Polynomial, a, b) -> Polynomial:
    """``g(z1, z2, a*z1 + b*z2)``."""
    x, y = variable(1, 2), variable(2, 2)
    return compose(g, [x, y, x * Fraction(a) + y * Fraction(b)])


def _section_is_generic(gh: Polynomial, d: int) -> bool:
    b = newton_boundary(gh)
    if not b.convenient:
        return False
    expected = {(d + 2, 0), (2, d), (0, d + 3)}
    if set(b.vertices()) != expected or len(b.facets()) != 2:
        return False
    return classify(gh).classification == "nondegenerate"


def mu2_generic_section(m: FamilyMember, a=None, b=None, seed=0, retries: int = 16, height: int = 50):
    """Milnor number of a generic plane section ``z3 = a*z1 + b*z2``.

    If ``(a, b)`` is not generic (or not given), fresh rationals are drawn from
    ``seed``; :class:`GenericityError` after ``retries`` failed draws.
    """
    return mu2_section_details(m, a, b, seed, retries, height)[0]


def mu2_section_details(m: FamilyMember, a=None, b=None, seed=0, retries: int = 16, height: int = 50):
    rng = random.Random(seed)
    tried = []
    candidates = [] if a is None or b is None else [(Fraction(a), Fraction(b))]
    while len(tried) <= retries:
        if candidates:
            ab = candidates.pop()
        else:
            ab = tuple(Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(2))
        tried.append(ab)
        gh = plane_section(m.g, *ab)
        if _section_is_generic(gh, m.d):
            return newton_number(newton_boundary(gh)), ab[0], ab[1]
    raise GenericityError(f"no generic plane section after {retries} retries")


@dataclass
class PairComparison:
    zeta: tuple
    mu: tuple
    mu2: tuple

    @property
    def zeta_equal(self) -> bool:
        return self.zeta[0] == self.zeta[1]

    @property
    def mu_equal(self) -> bool:
        return self.mu[0] == self.mu[1]

    @property
    def mu2_equal(self) -> bool:
        return self.mu2[0] == self.mu2[1]

    @property
    def condition1(self) -> bool:
        return self.zeta_equal and self.mu_equal

    def to_json(self) -> dict:
        return {
            "zeta": [str(z) for z in self.zeta],
            "zeta_equal": self.zeta_equal,
            "mu": list(self.mu),
            "mu_equal": self.mu_equal,
            "mu2": list(self.mu2),
            "mu2_equal": self.mu2_equal,
            "condition1": "PASS" if self.condition1 else "FAIL",
        }


def compare_pair(m0: FamilyMember, m1: FamilyMember, seed=0, retries: int = 16) -> PairComparison:
    z0, z1 = assemble_zeta(m0), assemble_zeta(m1)
    mu = (milnor_from_zeta(z0, 3), milnor_from_zeta(z1, 3))
    mu2 = tuple(mu2_generic_section(m, seed=seed, retries=retries) for m in (m0, m1))
    return PairComparison((z0, z1), mu, mu2)
