"""Derive the local resolution patches stored in ``singzeta/data/catalog.json``.

Each patch describes the extra exceptional curves needed at a singular point
``rho`` of the curve ``C`` after the toric stage, for the local model

* ``v1^(d+2) * (fbar(v2, v3) + c*v1)`` with ``c != 0`` ("smooth" variant):
  the surface ``fbar + c*v1 = 0`` is smooth and ``E(P) = {v1 = 0}`` has ``k``
  branches through the point; one point blow-up separates them;
* ``v1^(d+2) * (v2*v3 + v1*L(v2, v3))`` with a rank-3 quadratic part
  ("conic" variant): the surface has an A1 point resolved by one blow-up of
  the ambient space, whose exceptional curve is a smooth conic.

For every patch the script computes, on a representative model, the order of
``v1`` along the new curve and the number of branches of ``E(P)`` meeting it,
then solves ``(v1) . E = 0`` for the self-intersection.

Run ``python tools/derive_catalog.py`` to rewrite the catalog file.
"""

import json
import pathlib
from fractions import Fraction

from singzeta.poly import Polynomial, substitute_monomial_map, variable
from singzeta import _univariate as U

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "singzeta" / "data" / "catalog.json"


def distinct_roots_on_line(form: Polynomial) -> int:
    """Number of distinct zeros on P^1 of a binary form ``sum c_i a^i b^(k-i)``."""
    k = form.degree()
    dense = U.trim([Fraction(form.coefficient((i, k - i))) for i in range(k + 1)])
    finite = U.deg(U.squarefree_part(dense, U.QQ))
    return finite + (1 if U.deg(dense) < k else 0)


def smooth_patch(k: int) -> dict:
    v2, v3 = variable(1, 2), variable(2, 2)
    fbar = v2 * v3
    for j in range(k - 2):
        fbar = fbar * (v2 + (j + 1) * v3)
    # blow up the origin of the smooth surface in the coordinates (v2, v3)
    factor, _ = substitute_monomial_map(fbar, [(1, 1), (0, 1)])
    order = factor[0]
    meets = distinct_roots_on_line(fbar)
    assert meets == k, meets
    si = Fraction(-meets, order)
    assert si.denominator == 1
    return {
        "branches": k,
        "nodes": [{"name": "1", "genus": 0, "v1_order": order, "self_intersection": int(si)}],
        "edges": [],
        "attach": "1",
    }


def conic_patch() -> dict:
    v1, v2, v3 = (variable(i, 3) for i in (1, 2, 3))
    strict = v2 * v3 + v1 * (v2 + v3)
    # chart v1 = x, v2 = x*y, v3 = x*z of the blow-up of the origin
    factor, q = substitute_monomial_map(strict, [(1, 1, 1), (0, 1, 0), (0, 0, 1)])
    order = 1  # v1 = x vanishes to first order on the exceptional plane
    assert factor[0] == 2
    # exceptional curve: the projective conic v2*v3 + v1*(v2 + v3) = 0, smooth
    quad = [[0, Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), 0, Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2), 0]]
    det = (
        quad[0][0] * (quad[1][1] * quad[2][2] - quad[1][2] * quad[2][1])
        - quad[0][1] * (quad[1][0] * quad[2][2] - quad[1][2] * quad[2][0])
        + quad[0][2] * (quad[1][0] * quad[2][1] - quad[1][1] * quad[2][0])
    )
    assert det != 0
    # E(P) = {v1 = 0} meets the conic where v1 = 0: v2*v3 = 0, two points
    meets = distinct_roots_on_line(Polynomial({(1, 1): 1}, 2))
    si = Fraction(-meets, order)
    assert si.denominator == 1
    return {
        "branches": 2,
        "nodes": [{"name": "1", "genus": 0, "v1_order": order, "self_intersection": int(si)}],
        "edges": [],
        "attach": "1",
    }


def main():
    entries = {"A1": {"smooth": smooth_patch(2), "conic": conic_patch()}}
    for k in (3, 4, 5):
        entries[f"O{k}"] = {"smooth": smooth_patch(k)}
    data = {
        "version": 1,
        "format": "type_tag -> variant -> {branches, nodes[name, genus, v1_order, self_intersection], edges, attach}",
        "entries": entries,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
