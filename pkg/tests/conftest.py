import random

import pytest
from hypothesis import settings

from singzeta.family import build_member
from singzeta.poly import Polynomial, variable

# verdicts of the acceptance suite, keyed by criterion number
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        e = ACCEPTANCE[number]
        verdict = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {e['title']} ({e['seconds']:.2f} s)")


settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

Z1, Z2, Z3 = (variable(i, 3) for i in (1, 2, 3))
L1 = Z1 + Z2 - 2 * Z3
L2 = Z1 + 3 * Z2 - 4 * Z3


def golden_member(sign=1):
    """The d = 2 pair: two lines meeting at [1:1:1], h = z2^5 +/- z3^5."""
    return build_member(L1 * L2, Z2 ** 5 + sign * Z3 ** 5, f_factors=[L1, L2])


def line_member(d, seed=0, h=None):
    """A member whose curve C is d lines in general position."""
    rng = random.Random(seed)
    while True:
        lines = []
        for _ in range(d):
            a, b, c = rng.randint(1, 9), rng.randint(1, 9), rng.randint(1, 9)
            lines.append(Z1 * a + Z2 * b * rng.choice((-1, 1)) + Z3 * c * rng.choice((-1, 1)))
        f = lines[0]
        for L in lines[1:]:
            f = f * L
        try:
            m = build_member(f, h if h is not None else Z2 ** (d + 3) + Z3 ** (d + 3), f_factors=lines)
        except ValueError:
            continue
        if all(c.type_tag == "A1" for c in m.certificates):
            return m


def random_convenient_germ(rng, max_support=8, max_exp=9):
    terms = {}
    for i in range(3):
        e = [0, 0, 0]
        e[i] = rng.randint(2, max_exp)
        terms[tuple(e)] = rng.choice((1, 2, 3, -1))
    while len(terms) < rng.randint(3, max_support):
        e = tuple(rng.randint(0, max_exp) for _ in range(3))
        if sum(e) >= 2:
            terms[e] = rng.choice((-5, -3, -2, -1, 1, 2, 3, 4, 7))
    return Polynomial(terms, 3)


@pytest.fixture(scope="session")
def g0_member():
    return golden_member(1)


@pytest.fixture(scope="session")
def g1_member():
    return golden_member(-1)
