"""Monodromy zeta-functions as formal products ``prod (1 - t^d)^nu``.

The convention is ``zeta = prod_q det(1 - t*h_q)^((-1)^(q+1))`` over the
homology of the Milnor fibre, ``H_0`` included, so ``deg(zeta)`` is minus the
Euler characteristic of the fibre.  A germ in three variables then has
``mu = -1 - deg(zeta)``, and the non-degenerate quadric in three variables has
``zeta = (1 - t^2)^-1``.
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Mapping

from .newton import newton_boundary, normalized_volume
from .poly import Polynomial


class ZetaFunction:
    """Normalised factor map ``{d: nu}`` with no zero exponents."""

    __slots__ = ("_factors",)

    def __init__(self, factors: Mapping[int, int] | None = None):
        clean = {}
        for d, nu in (factors or {}).items():
            d, nu = int(d), int(nu)
            if d <= 0:
                raise ValueError("factor levels must be positive")
            if nu:
                clean[d] = clean.get(d, 0) + nu
                if not clean[d]:
                    del clean[d]
        self._factors = clean

    @property
    def factors(self) -> dict[int, int]:
        return dict(sorted(self._factors.items()))

    def exponent(self, d: int) -> int:
        return self._factors.get(d, 0)

    def __mul__(self, other: "ZetaFunction") -> "ZetaFunction":
        out = dict(self._factors)
        for d, nu in other._factors.items():
            out[d] = out.get(d, 0) + nu
        return ZetaFunction(out)

    def __truediv__(self, other: "ZetaFunction") -> "ZetaFunction":
        return self * other ** -1

    def __pow__(self, k: int) -> "ZetaFunction":
        return ZetaFunction({d: nu * k for d, nu in self._factors.items()})

    def __eq__(self, other):
        return isinstance(other, ZetaFunction) and self._factors == other._factors

    def __hash__(self):
        return hash(frozenset(self._factors.items()))

    def degree(self) -> int:
        return sum(d * nu for d, nu in self._factors.items())

    def to_json(self) -> list[list[int]]:
        return [[d, nu] for d, nu in sorted(self._factors.items())]

    @classmethod
    def from_json(cls, pairs) -> "ZetaFunction":
        return cls({d: nu for d, nu in pairs})

    def __str__(self):
        if not self._factors:
            return "1"
        parts = []
        for d, nu in sorted(self._factors.items()):
            base = f"(1-t^{d})" if d != 1 else "(1-t)"
            parts.append(base if nu == 1 else f"{base}^{nu}")
        return " ".join(parts)

    def __repr__(self):
        return f"ZetaFunction({self.factors})"

    @classmethod
    def parse(cls, text: str) -> "ZetaFunction":
        """Inverse of ``str``: ``"(1-t^4)^-1 (1-t^5)^3"``; ``"1"`` is the empty product."""
        text = text.strip()
        if text == "1":
            return cls()
        factors: dict[int, int] = {}
        pos = 0
        pat = re.compile(r"\s*\(1-t(?:\^(\d+))?\)(?:\^(-?\d+))?")
        while pos < len(text):
            m = pat.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse zeta factor at column {pos + 1}: {text[pos:]!r}")
            d = int(m.group(1) or 1)
            factors[d] = factors.get(d, 0) + int(m.group(2) or 1)
            pos = m.end()
        return cls(factors)


def multiply(a: ZetaFunction, b: ZetaFunction) -> ZetaFunction:
    return a * b


def power(a: ZetaFunction, k: int) -> ZetaFunction:
    return a ** k


def degree(a: ZetaFunction) -> int:
    return a.degree()


def varchenko_zeta(b_or_poly, nvars: int | None = None) -> ZetaFunction:
    """Zeta-function of a Newton non-degenerate germ from its Newton boundary.

    For each coordinate subspace ``R^I`` on which the germ does not vanish
    identically, every facet ``s`` of the restricted boundary contributes
    ``(1 - t^level(s))^((-1)^|I| * NVol(s))``.  Convenience is not required.
    """
    b = newton_boundary(b_or_poly) if isinstance(b_or_poly, Polynomial) else b_or_poly
    n = b.nvars if nvars is None else nvars
    if n != b.nvars:
        raise ValueError("nvars does not match the boundary")
    if n not in (2, 3):
        raise ValueError("the Varchenko formula is implemented for 2 or 3 variables")
    factors: dict[int, int] = {}
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            sub = b.restrict(subset) if k < n else b
            if sub is None:
                continue
            sign = -1 if k % 2 else 1
            for facet in sub.facets():
                level = facet.normal.level
                factors[level] = factors.get(level, 0) + sign * normalized_volume(facet)
    return ZetaFunction(factors)


def milnor_from_zeta(z: ZetaFunction, nvars: int) -> int:
    """Milnor number from the zeta-function of an isolated singularity.

    ``deg(zeta)`` is minus the Euler characteristic of the Milnor fibre, which
    is ``1 + (-1)^(n-1) * mu``.
    """
    if nvars % 2:
        return -1 - z.degree()
    return z.degree() + 1
