"""Toric resolution data and dual graphs for members of the family.

The fixed regular fan refines the dual fan of the family's Newton boundary
with the rays ``P = (1,1,1)``, ``Q = (3,2,2)`` and ``R = (2,1,1)``.  Each
interior ray ``S`` gives an exceptional divisor ``E(S)`` lying over the face
``F(S)`` of the boundary on which ``<S, .>`` is minimal:

* ``F(P) = D0``: ``E(P)`` is a copy of the curve ``C`` (resolved further at
  the singular points of ``C`` by a catalogued local patch);
* ``F(Q) = D1``: ``E(Q)`` is one curve whose genus is the number of interior
  lattice points of ``D1``;
* ``F(R)`` is the edge ``(0,d+3,0)-(0,0,d+3)`` of lattice length ``d + 3``,
  so ``E(R)`` has ``d + 3`` rational components.

Intersection numbers between the divisors of two rays spanning a cone are
lattice lengths of the common edge of their faces.  Self-intersections come
from the relation ``(phi) . E = 0`` for the coordinate function ``phi = z_i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from itertools import combinations
from math import gcd

from .family import FamilyMember, _effective_h
from .lattice import determinant
from .newton import boundary_from_points, interior_lattice_points, normalized_volume
from .poly import Polynomial, evaluate, substitute_monomial_map

GENERATORS = {
    "e1": (1, 0, 0),
    "e2": (0, 1, 0),
    "e3": (0, 0, 1),
    "P": (1, 1, 1),
    "Q": (3, 2, 2),
    "R": (2, 1, 1),
}

EXCEPTIONAL = ("P", "Q", "R")


@dataclass(frozen=True)
class Fan:
    generators: dict
    maximal_cones: tuple

    def determinants(self) -> list[int]:
        return [determinant([self.generators[s] for s in cone]) for cone in self.maximal_cones]

    def is_regular(self) -> bool:
        return all(abs(x) == 1 for x in self.determinants())

    def find_cone(self, cone) -> tuple:
        names = [self._name(c) for c in cone]
        for mc in self.maximal_cones:
            if set(mc) == set(names) and len(names) == 3:
                return tuple(names)
        raise ValueError(f"cone {cone} is not a maximal cone of the fan")

    def _name(self, c) -> str:
        if isinstance(c, str):
            if c not in self.generators:
                raise ValueError(f"unknown generator {c!r}")
            return c
        for k, v in self.generators.items():
            if tuple(c) == v:
                return k
        raise ValueError(f"vector {c} is not a generator of the fan")

    def two_cones(self) -> set:
        out = set()
        for mc in self.maximal_cones:
            for a, b in combinations(mc, 2):
                out.add(frozenset((a, b)))
        return out


def sigma_star() -> Fan:
    cones = (
        ("e1", "R", "e2"),
        ("e1", "R", "e3"),
        ("R", "Q", "e2"),
        ("R", "Q", "e3"),
        ("Q", "P", "e2"),
        ("Q", "P", "e3"),
        ("P", "e2", "e3"),
    )
    return Fan(dict(GENERATORS), cones)


def chart_pullback(g: Polynomial, cone, fan: Fan | None = None):
    """Pull ``g`` back to the chart of a maximal cone.

    Returns ``(orders, strict)`` where ``orders`` maps each generator name of
    the cone to the vanishing order of ``g`` along its divisor and ``strict``
    is the strict transform in the chart coordinates ``u1, u2, u3``.
    """
    fan = fan or sigma_star()
    names = fan.find_cone(cone)
    rows = [fan.generators[s] for s in names]
    factor, strict = substitute_monomial_map(g, rows)
    return dict(zip(names, factor)), strict


# -- data types -----------------------------------------------------------


@dataclass
class DivisorNode:
    name: str
    genus: int | None = 0
    multiplicity: int = 1
    self_intersection: Fraction | int | None = None
    arrows: int = 0
    components: int = 1
    euler: int | None = None

    def to_json(self) -> dict:
        si = self.self_intersection
        if isinstance(si, Fraction) and si.denominator == 1:
            si = int(si)
        elif isinstance(si, Fraction):
            si = str(si)
        return {
            "name": self.name,
            "genus": self.genus,
            "multiplicity": self.multiplicity,
            "self_intersection": si,
            "arrows": self.arrows,
        }


@dataclass
class DualGraph:
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (name, name, count)

    def node(self, name: str) -> DivisorNode:
        for n in self.nodes:
            if n.name == name:
                return n
        raise KeyError(name)

    def intersection(self, a: str, b: str) -> int:
        return sum(c for x, y, c in self.edges if {x, y} == {a, b})

    def neighbours(self, name: str) -> dict:
        out: dict = {}
        for x, y, c in self.edges:
            if x == name:
                out[y] = out.get(y, 0) + c
            elif y == name:
                out[x] = out.get(x, 0) + c
        return out

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {self.nodes[0].name}
        stack = [self.nodes[0].name]
        while stack:
            for nb in self.neighbours(stack.pop()):
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.nodes)

    def intersection_matrix(self) -> list[list[Fraction]]:
        names = [n.name for n in self.nodes]
        mat = []
        for a in names:
            row = []
            for b in names:
                row.append(Fraction(self.node(a).self_intersection) if a == b else Fraction(self.intersection(a, b)))
            mat.append(row)
        return mat

    def to_json(self) -> dict:
        return {
            "version": 1,
            "nodes": [n.to_json() for n in self.nodes],
            "edges": [[a, b, c] for a, b, c in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DualGraph":
        nodes = []
        for n in data["nodes"]:
            si = n.get("self_intersection")
            nodes.append(
                DivisorNode(
                    n["name"],
                    n.get("genus", 0),
                    n.get("multiplicity", 1),
                    None if si is None else Fraction(si),
                    n.get("arrows", 0),
                )
            )
        return cls(nodes, [tuple(e) for e in data["edges"]])

    def to_dot(self) -> str:
        lines = ["graph dual {"]
        for n in self.nodes:
            si = n.self_intersection
            si_txt = "?" if si is None else str(si)
            lines.append(f'  "{n.name}" [label="{n.name}\\ng={n.genus} e={si_txt}"];')
            for k in range(n.arrows):
                lines.append(f'  "{n.name}/arrow{k + 1}" [shape=point];')
                lines.append(f'  "{n.name}" -- "{n.name}/arrow{k + 1}";')
        for a, b, c in self.edges:
            lines.append(f'  "{a}" -- "{b}" [label="{c}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class LauferError(ValueError):
    """Missing data or a non-integral self-intersection."""


def self_intersections_and_laufer(graph: DualGraph) -> tuple[DualGraph, dict]:
    """Fill self-intersections from ``(phi) . E_k = 0`` and report the sums.

    Each node needs a multiplicity; arrows are strict-transform branches of
    ``phi`` with multiplicity one.  Returns the completed graph and a map from
    node name to ``sum_l m_l (E_l . E_k)`` (all zero when consistent).
    """
    nodes = []
    for n in graph.nodes:
        if not n.multiplicity or n.multiplicity < 1:
            raise LauferError(f"node {n.name} has no positive multiplicity")
        others = sum(graph.node(b).multiplicity * c for b, c in graph.neighbours(n.name).items())
        si = Fraction(-(others + n.arrows), n.multiplicity)
        if si.denominator != 1:
            raise LauferError(f"self-intersection of {n.name} is not an integer ({si})")
        nodes.append(replace(n, self_intersection=int(si)))
    done = DualGraph(nodes, list(graph.edges))
    return done, laufer_report(done)


def laufer_report(graph: DualGraph) -> dict:
    out = {}
    for n in graph.nodes:
        if n.self_intersection is None:
            raise LauferError(f"node {n.name} has no self-intersection")
        total = n.multiplicity * Fraction(n.self_intersection) + n.arrows
        total += sum(graph.node(b).multiplicity * c for b, c in graph.neighbours(n.name).items())
        out[n.name] = total
    return out


def is_negative_definite(graph: DualGraph) -> bool:
    """Sylvester's criterion on the intersection matrix (exact)."""
    m = graph.intersection_matrix()
    n = len(m)
    a = [[-x for x in row] for row in m]
    for k in range(1, n + 1):
        sub = [row[:k] for row in a[:k]]
        if _det_fraction(sub) <= 0:
            return False
    return True


def _det_fraction(m) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


# -- catalog -------------------------------------------------------------


def load_catalog(path=None) -> dict:
    if path is None:
        text = resources.files("singzeta").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    if data.get("version") != 1:
        raise ValueError("unsupported catalog version")
    return data["entries"]


def _local_variant(m: FamilyMember, cert) -> str:
    from .family import local_pullback_model

    c = evaluate(_effective_h(m), cert.point)
    if c:
        return "smooth"
    model = local_pullback_model(m, cert)
    # strict equation: divide out v1^(d+2); a rank-3 quadratic part is an A1 cone
    quad = {}
    for mono, coef in model.items():
        k = (mono[0] - (m.d + 2),) + mono[1:]
        if sum(k) == 2:
            quad[k] = coef
    mat = [[Fraction(0)] * 3 for _ in range(3)]
    for k, coef in quad.items():
        idx = [i for i in range(3) for _ in range(k[i])]
        i, j = idx
        if i == j:
            mat[i][i] += coef
        else:
            mat[i][j] += coef / 2
            mat[j][i] += coef / 2
    if _det_fraction(mat) != 0:
        return "conic"
    return "degenerate-cone"


# -- ledger and graph -------------------------------------------------------


def _lattice_length(a, b) -> int:
    return gcd(*(x - y for x, y in zip(a, b)))


def euler_e_q(d: int) -> tuple[int, int]:
    """``(euler, genus)`` of ``E(Q)`` from the torus part plus boundary points."""
    b = boundary_from_points([(2, d, 0), (2, 0, d), (0, d + 3, 0), (0, 0, d + 3)], 3)
    face = b.facets()[0]
    vs = face.vertices
    boundary_pts = sum(_lattice_length(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
    euler = -normalized_volume(face) + boundary_pts
    genus = interior_lattice_points(face)
    if 2 - 2 * genus != euler:
        raise AssertionError("Euler characteristic and genus of E(Q) disagree")
    return euler, genus


def divisor_ledger(m: FamilyMember, phi: int = 2) -> list[DivisorNode]:
    """First-stage exceptional divisors with Euler data and multiplicities of ``z_phi``."""
    d = m.d
    mult = {s: GENERATORS[s][phi - 1] for s in EXCEPTIONAL}
    chi_p = 3 * d - d * d + m.mu_tot + sum(c.branches - 1 for c in m.certificates)
    if m.f_factors:
        comps = len(m.f_factors)
        genus_p = None if comps > 1 else (2 - chi_p) // 2
    else:
        comps = 1
        if chi_p > 2 or chi_p % 2:
            raise ValueError("E(P) Euler characteristic is inconsistent with an irreducible curve")
        genus_p = (2 - chi_p) // 2
    chi_q, genus_q = euler_e_q(d)
    return [
        DivisorNode("E(P)", genus_p, mult["P"], components=comps, euler=chi_p),
        DivisorNode("E(Q)", genus_q, mult["Q"], components=1, euler=chi_q),
        DivisorNode("E(R)", 0, mult["R"], components=d + 3, euler=2 * (d + 3)),
    ]


def _arrows(d: int, phi: int) -> dict:
    """Arrow counts on ``P``, ``Q`` and each ``R`` component for ``phi = z_i``.

    A 2-cone ``(S, e_i)`` contributes the lattice length of
    ``F(S) ∩ {x_i = 0}`` when that set is an edge.
    """
    faces = {
        "P": [(d + 2, 0, 0), (2, d, 0), (2, 0, d)],
        "Q": [(2, d, 0), (2, 0, d), (0, d + 3, 0), (0, 0, d + 3)],
        "R": [(0, d + 3, 0), (0, 0, d + 3)],
    }
    fan = sigma_star()
    out = {}
    ei = f"e{phi}"
    for s, verts in faces.items():
        if frozenset((s, ei)) not in fan.two_cones():
            out[s] = 0
            continue
        on = [v for v in verts if v[phi - 1] == 0]
        out[s] = _lattice_length(*on) if len(on) == 2 else 0
    return out


def build_dual_graph(m: FamilyMember, phi: int = 2, catalog: dict | None = None) -> DualGraph:
    """Decorated dual graph of the resolution, with self-intersections filled.

    Nodes: the components of ``E(P)``, ``E(Q)``, the ``d + 3`` components of
    ``E(R)`` and the catalogued patch at each singular point of ``C``.
    """
    if phi not in (1, 2, 3):
        raise ValueError("phi selects one of z1, z2, z3")
    catalog = catalog if catalog is not None else load_catalog()
    d = m.d
    ledger = {n.name: n for n in divisor_ledger(m, phi)}
    arrows = _arrows(d, phi)
    nodes, edges = [], []

    lines = m.f_factors if m.f_factors and len(m.f_factors) > 1 else None
    if lines:
        p_names = [f"E(P)#{k + 1}" for k in range(len(lines))]
        for name, L in zip(p_names, lines):
            # one line meets z_phi = 0 (phi > 1) and z1 = 0 once each
            nodes.append(DivisorNode(name, 0, ledger["E(P)"].multiplicity, arrows=arrows["P"] // d))
            edges.append((name, "E(Q)", 1))
    else:
        p_names = ["E(P)"]
        nodes.append(DivisorNode("E(P)", ledger["E(P)"].genus, ledger["E(P)"].multiplicity, arrows=arrows["P"]))
        edges.append(("E(P)", "E(Q)", d))

    nodes.append(DivisorNode("E(Q)", ledger["E(Q)"].genus, ledger["E(Q)"].multiplicity, arrows=arrows["Q"]))
    for k in range(d + 3):
        name = f"E(R)#{k + 1}"
        nodes.append(DivisorNode(name, 0, ledger["E(R)"].multiplicity, arrows=arrows["R"] // (d + 3)))
        edges.append(("E(Q)", name, 1))

    expected_si = {}
    for i, cert in enumerate(m.certificates, start=1):
        entry = catalog.get(cert.type_tag)
        if entry is None:
            raise ValueError(f"no catalog entry for singularity type {cert.type_tag!r}")
        variant = _local_variant(m, cert)
        patch = entry.get(variant)
        if patch is None:
            raise ValueError(f"catalog entry {cert.type_tag!r} has no {variant!r} variant")
        if patch.get("branches") not in (None, cert.branches):
            raise ValueError(f"catalog entry {cert.type_tag!r}/{variant} expects {patch['branches']} branches")
        names = {}
        for node in patch["nodes"]:
            name = f"E_{i},{node['name']}"
            names[node["name"]] = name
            # z_phi = u1 * (unit at rho) for phi > 1, and z1 = u1: order = v1-order
            nodes.append(DivisorNode(name, node["genus"], node["v1_order"] * GENERATORS["P"][phi - 1]))
            if "self_intersection" in node:
                expected_si[name] = node["self_intersection"]
        for a, b, c in patch.get("edges", []):
            edges.append((names[a], names[b], c))
        # each branch of C at the point meets the attachment node once
        attach = names[patch["attach"]]
        branch_lines = _branch_lines(m, cert) if lines else None
        if lines:
            for k in branch_lines:
                edges.append((p_names[k], attach, 1))
        else:
            edges.append(("E(P)", attach, cert.branches))

    graph, report = self_intersections_and_laufer(DualGraph(nodes, _merge_edges(edges)))
    for name, si in expected_si.items():
        if graph.node(name).self_intersection != si:
            raise AssertionError(f"self-intersection of {name} disagrees with the catalog")
    if any(report.values()):
        raise AssertionError("Laufer relation fails")
    return graph


def _branch_lines(m: FamilyMember, cert) -> list[int]:
    return [k for k, L in enumerate(m.f_factors) if evaluate(L, cert.point) == 0]


def _merge_edges(edges):
    acc: dict = {}
    order = []
    for a, b, c in edges:
        key = (a, b) if a <= b else (b, a)
        if key not in acc:
            order.append(key)
            acc[key] = 0
        acc[key] += c
    return [(a, b, acc[(a, b)]) for a, b in order]


# -- isomorphism -----------------------------------------------------------------


def graphs_isomorphic(a: DualGraph, b: DualGraph, use_multiplicity: bool = False, use_arrows: bool = False) -> bool:
    """Decorated graph isomorphism by backtracking with invariant pruning.

    Nodes must agree in genus and self-intersection (and optionally in
    multiplicity and arrow count); edges must agree in intersection count.
    """
    if len(a.nodes) != len(b.nodes):
        return False

    def deco(g, n):
        key = (n.genus, None if n.self_intersection is None else Fraction(n.self_intersection))
        if use_multiplicity:
            key += (n.multiplicity,)
        if use_arrows:
            key += (n.arrows,)
        nb = sorted(g.neighbours(n.name).values())
        return key + (tuple(nb),)

    da = {n.name: deco(a, n) for n in a.nodes}
    db = {n.name: deco(b, n) for n in b.nodes}
    if sorted(da.values(), key=repr) != sorted(db.values(), key=repr):
        return False
    na = [n.name for n in a.nodes]
    # most constrained first: rarest decoration
    freq: dict = {}
    for v in da.values():
        freq[v] = freq.get(v, 0) + 1
    na.sort(key=lambda x: (freq[da[x]], x))
    adj_a = {x: a.neighbours(x) for x in na}
    adj_b = {n.name: b.neighbours(n.name) for n in b.nodes}
    mapping: dict = {}
    used: set = set()

    def extend(i):
        if i == len(na):
            return True
        x = na[i]
        for y in db:
            if y in used or db[y] != da[x]:
                continue
            ok = True
            for x2, y2 in mapping.items():
                if adj_a[x].get(x2, 0) != adj_b[y].get(y2, 0):
                    ok = False
                    break
            if not ok:
                continue
            mapping[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return extend(0)
