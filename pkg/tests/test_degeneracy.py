import random
from fractions import Fraction

import pytest
import sympy

from singzeta.degeneracy import (
    DEFAULT_PRIME,
    classify,
    face_function,
    in_w_gamma,
    is_newton_nondegenerate,
    is_nondegenerate_on_face,
    toric_reduce,
    torus_singular_points_match,
)
from singzeta.expr import parse
from singzeta.newton import newton_boundary
from singzeta.poly import Polynomial, to_string

from conftest import random_convenient_germ

G0 = "z1^2*(z1+z2-2*z3)*(z1+3*z2-4*z3)+z2^5+z3^5"
G1 = "z1^2*(z1+z2-2*z3)*(z1+3*z2-4*z3)+z2^5-z3^5"


def groebner_nondegenerate(ff: Polynomial) -> bool:
    """Oracle: no common zero of ff and its gradient with z1*z2*z3 != 0."""
    xs = sympy.symbols("z1 z2 z3")
    t = sympy.Symbol("t")
    expr = sympy.sympify(to_string(ff).replace("^", "**"))
    eqs = [expr] + [sympy.diff(expr, x) for x in xs] + [1 - t * xs[0] * xs[1] * xs[2]]
    gb = sympy.groebner(eqs, *xs, t, order="grevlex")
    return list(gb.exprs) == [1]


def degenerate_germ(rng):
    """A convenient germ with a face function singular inside the torus."""
    a, b, c = (rng.randint(1, 4) for _ in range(3))
    kind = rng.randint(0, 2)
    if kind == 0:
        # cubic cone with a node at (1/a, 1/b, 1/c)
        return parse(f"({a}x)^3 + ({b}y)^3 + ({c}z)^3 - 3*({a}x)({b}y)({c}z)")
    if kind == 1:
        # edge with a double root
        return parse(f"(x - {a}y)^2 (x + {b}y) + z^{rng.randint(2, 6)}")
    return parse(f"(x^2 - {a}y^3)^2 + z^{rng.randint(2, 5)} + y^7")


def test_vertices_are_nondegenerate():
    g = parse("x^2+y^3+z^5")
    b = newton_boundary(g)
    for v in b.faces_of_dim(0):
        assert is_nondegenerate_on_face(g, v).nondegenerate


def test_edge_reduction():
    g = parse("3x^2 + 4xy + y^2 + z^3")
    b = newton_boundary(g)
    edge = b.find([(2, 0, 0), (0, 2, 0)])
    red = toric_reduce(face_function(g, edge, b))
    assert red.poly.nvars == 1
    coeffs = [red.poly.coefficient((i,)) for i in range(3)]
    assert coeffs in ([1, 4, 3], [3, 4, 1])
    assert is_nondegenerate_on_face(g, edge).nondegenerate  # (3s+1)(s+1)


def test_golden_pair_is_weakly_almost_nondegenerate():
    for text in (G0, G1):
        g = parse(text)
        delta0 = [(4, 0, 0), (2, 2, 0), (2, 0, 2)]
        for mode in ("exact", "randomized"):
            rep = classify(g, delta0, mode=mode)
            assert rep.classification == "weakly-almost-nondegenerate"
            assert [f.vertices for f in rep.degenerate_faces] == [rep.distinguished.vertices]
            assert rep.in_w_gamma
        gamma = newton_boundary(g)
        assert in_w_gamma(g, gamma, gamma.find(delta0))


def test_degenerate_away_from_distinguished_facet():
    g = parse("(z1-z2)^2(z1+z2)^2 + z3^4")
    assert classify(g).classification == "degenerate"
    assert not is_newton_nondegenerate(g)


def test_distinguished_facet_must_be_a_facet():
    g = parse(G0)
    with pytest.raises(ValueError):
        classify(g, [(4, 0, 0), (2, 2, 0)])


def test_randomized_verdicts_are_labelled():
    g = parse("x^2+y^3+z^5")
    f = newton_boundary(g).facets()[0]
    v = is_nondegenerate_on_face(g, f, mode="randomized")
    assert v.probabilistic and v.prime == DEFAULT_PRIME
    assert v.label() == "probably-nondegenerate"
    v2 = is_nondegenerate_on_face(g, f, mode="randomized", seed=5, prime_bits=40)
    assert v2.prime != DEFAULT_PRIME and v2.prime.bit_length() == 40
    v3 = is_nondegenerate_on_face(g, f, mode="randomized", seed=5, prime_bits=40, trials=3)
    assert v3.nondegenerate


def test_randomized_agrees_with_exact_on_many_germs():
    rng = random.Random(2024)
    germs = [random_convenient_germ(rng) for _ in range(80)] + [degenerate_germ(rng) for _ in range(40)]
    seen = {True: 0, False: 0}
    for g in germs:
        b = newton_boundary(g)
        for f in b.faces:
            exact = is_nondegenerate_on_face(g, f, boundary=b).nondegenerate
            rand = is_nondegenerate_on_face(g, f, mode="randomized", seed=1, boundary=b).nondegenerate
            assert exact == rand, (g, f)
            seen[exact] += 1
    assert seen[False] >= 40


def test_exact_verdicts_against_groebner_oracle():
    rng = random.Random(99)
    germs = [random_convenient_germ(rng, max_support=6, max_exp=5) for _ in range(12)]
    germs += [degenerate_germ(rng) for _ in range(12)]
    for g in germs:
        b = newton_boundary(g)
        for f in b.faces_of_dim(2):
            ff = face_function(g, f, b).poly
            assert is_nondegenerate_on_face(g, f, boundary=b).nondegenerate == groebner_nondegenerate(ff), (g, f)


def test_torus_singular_points():
    s, t = (Polynomial({(1, 0): 1}, 2), Polynomial({(0, 1): 1}, 2))
    # two lines crossing at (1, 1)
    G = (s - t) * (s + t - 2)
    assert torus_singular_points_match(G, [(1, 1)])
    assert not torus_singular_points_match(G, [])
    assert not torus_singular_points_match(G, [(1, 1), (2, 2)])
    cusp = (s - 1) ** 2 - (t - 1) ** 3
    assert torus_singular_points_match(cusp, [(Fraction(1), Fraction(1))])
