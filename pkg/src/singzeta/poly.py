"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` maps exponent tuples to non-zero :class:`fractions.Fraction`
coefficients.  Values are immutable; every operation returns a new object.
Variables are named ``z1 .. zn``.  Functions that take a *variable* (such as
:func:`derivative` and :func:`variable`) use the 1-based index of its name;
functions that take positions inside exponent tuples (``degree_in``,
``restrict``, ``project``) use 0-based positions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple
Number = Union[int, Fraction]

__all__ = [
    "Polynomial",
    "variable",
    "constant",
    "derivative",
    "evaluate",
    "substitute_monomial_map",
    "compose",
    "restrict",
    "project",
    "embed",
    "exact_divide",
    "gcd",
    "content",
    "is_squarefree",
]


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Polynomial:
    """Exact sparse polynomial in ``nvars`` variables.

    >>> z1, z2 = variable(1, 2), variable(2, 2)
    >>> str((z1 + z2) ** 2)
    'z1^2 + 2*z1*z2 + z2^2'
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Number] | None = None, nvars: int = 3):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} does not have {nvars} entries")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            coef = Fraction(coef)
            if coef:
                clean[mono] = clean.get(mono, 0) + coef
                if not clean[mono]:
                    del clean[mono]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order: graded lex, highest first."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Monomial]:
        return [m for m, _ in self.terms()]

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=_grlex_key)
        return mono, self._terms[mono]

    def variables(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw({}, self.nvars)
            return Polynomial._raw({m: c * other for m, c in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, *point):
        return evaluate(self, point)

    def monic(self) -> "Polynomial":
        """Scale so that the grlex-leading coefficient is 1."""
        if not self._terms:
            return self
        return self * (1 / self.leading_term()[1])

    def __repr__(self):
        return f"Polynomial({str(self)!r}, nvars={self.nvars})"

    def __str__(self):
        return to_string(self)


def default_names(nvars: int) -> tuple[str, ...]:
    return tuple(f"z{i + 1}" for i in range(nvars))


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_string(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text form, e.g. ``'z1^2*z2 - 3/2*z3 + 1'``."""
    names = tuple(names) if names is not None else default_names(p.nvars)
    if p.is_zero():
        return "0"
    pieces = []
    for mono, coef in p.terms():
        factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(mono) if e]
        mag = abs(coef)
        if not factors:
            body = _format_coef(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coef(mag) + "*" + "*".join(factors)
        pieces.append(("-" if coef < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def variable(i: int, nvars: int = 3) -> Polynomial:
    """The coordinate ``z_i`` (1-based)."""
    if not 1 <= i <= nvars:
        raise IndexError(f"variable index {i} out of range for {nvars} variables")
    mono = tuple(1 if j == i - 1 else 0 for j in range(nvars))
    return Polynomial._raw({mono: Fraction(1)}, nvars)


def constant(c: Number, nvars: int = 3) -> Polynomial:
    c = Fraction(c)
    return Polynomial._raw({(0,) * nvars: c} if c else {}, nvars)


def monomial(exps: Sequence[int], coef: Number = 1) -> Polynomial:
    return Polynomial({tuple(exps): coef}, len(exps))


def derivative(p: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to ``z_i`` (1-based)."""
    if not 1 <= i <= p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    i -= 1
    out = {}
    for m, c in p.items():
        if m[i]:
            nm = m[:i] + (m[i] - 1,) + m[i + 1:]
            out[nm] = c * m[i]
    return Polynomial._raw(out, p.nvars)


def evaluate(p: Polynomial, point: Sequence[Number]) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    point = [Fraction(x) for x in point]
    total = Fraction(0)
    for m, c in p.items():
        term = c
        for x, e in zip(point, m):
            if e:
                term *= x ** e
        total += term
    return total


def substitute_monomial_map(p: Polynomial, M: Sequence[Sequence[int]]):
    """Apply ``z_i -> prod_k u_k^{M[k][i]}`` and factor out the common monomial.

    Returns ``(e, q)`` with the substituted polynomial equal to ``u^e * q`` and
    ``q`` not divisible by any ``u_k``.
    """
    rows = [tuple(int(x) for x in row) for row in M]
    if any(len(row) != p.nvars for row in rows):
        raise ValueError("each row of M must have nvars entries")
    if any(x < 0 for row in rows for x in row):
        raise ValueError("monomial map must have non-negative entries")
    k = len(rows)
    if p.is_zero():
        return (0,) * k, Polynomial({}, k)
    image = {}
    for m, c in p.items():
        e = tuple(sum(r[i] * m[i] for i in range(p.nvars)) for r in rows)
        image[e] = image.get(e, 0) + c
    image = {e: c for e, c in image.items() if c}
    if not image:
        return (0,) * k, Polynomial({}, k)
    factor = tuple(min(e[j] for e in image) for j in range(k))
    q = {tuple(a - b for a, b in zip(e, factor)): c for e, c in image.items()}
    return factor, Polynomial._raw(q, k)


def compose(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``images[i]`` for variable ``i``."""
    if len(images) != p.nvars:
        raise ValueError("need one image per variable")
    if not images:
        return p
    target = images[0].nvars
    cache: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = images[i] ** e
        return cache[key]

    out = Polynomial({}, target)
    for m, c in p.items():
        term = constant(c, target)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def restrict(p: Polynomial, subset: Iterable[int]) -> Polynomial:
    """Keep the terms supported on the coordinate subspace spanned by ``subset``."""
    keep = set(subset)
    return Polynomial._raw(
        {m: c for m, c in p.items() if all(e == 0 or i in keep for i, e in enumerate(m))},
        p.nvars,
    )


def project(p: Polynomial, subset: Sequence[int]) -> Polynomial:
    """Restrict to ``subset`` and drop the other variables."""
    subset = list(subset)
    r = restrict(p, subset)
    return Polynomial._raw({tuple(m[i] for i in subset): c for m, c in r.items()}, len(subset))


def embed(p: Polynomial, positions: Sequence[int], nvars: int) -> Polynomial:
    """Inverse of :func:`project`: variable ``j`` of ``p`` becomes variable ``positions[j]``."""
    out = {}
    for m, c in p.items():
        full = [0] * nvars
        for j, e in zip(positions, m):
            full[j] = e
        out[tuple(full)] = c
    return Polynomial._raw(out, nvars)


# -- division and gcd ------------------------------------------------------


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises ``ArithmeticError`` if ``b`` does not divide ``a``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lb, cb = b.leading_term()
    quotient: dict = {}
    r = a
    while not r.is_zero():
        lr, cr = r.leading_term()
        shift = tuple(x - y for x, y in zip(lr, lb))
        if any(s < 0 for s in shift):
            raise ArithmeticError("polynomial division is not exact")
        coef = cr / cb
        quotient[shift] = quotient.get(shift, 0) + coef
        r = r - Polynomial._raw({tuple(x + s for x, s in zip(m, shift)): c * coef for m, c in b.items()}, b.nvars)
    return Polynomial._raw({m: c for m, c in quotient.items() if c}, a.nvars)


def _main_variable(*polys: Polynomial):
    used = set()
    for p in polys:
        used |= p.variables()
    return max(used) if used else None


def _coefficients_in(p: Polynomial, v: int) -> dict[int, Polynomial]:
    out: dict[int, dict] = {}
    for m, c in p.items():
        out.setdefault(m[v], {})[m[:v] + (0,) + m[v + 1:]] = c
    return {k: Polynomial._raw(t, p.nvars) for k, t in out.items()}


def content(p: Polynomial, v: int) -> Polynomial:
    """Gcd of the coefficients of ``p`` viewed as a polynomial in variable ``v``."""
    coeffs = _coefficients_in(p, v)
    return reduce(gcd, coeffs.values(), Polynomial({}, p.nvars))


def _lead_in(p: Polynomial, v: int) -> tuple[int, Polynomial]:
    coeffs = _coefficients_in(p, v)
    k = max(coeffs)
    return k, coeffs[k]


def _pseudo_remainder(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    n, lb = _lead_in(b, v)
    m = a.degree_in(v)
    r = a
    e = m - n + 1
    xv = variable(v + 1, a.nvars)
    while not r.is_zero() and r.degree_in(v) >= n:
        k, lr = _lead_in(r, v)
        r = lb * r - lr * (xv ** (k - n)) * b
        e -= 1
    return (lb ** max(e, 0)) * r


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor over the rationals, normalised to be monic.

    Recursive in the highest-index variable: contents are handled one variable
    down and the primitive parts go through the subresultant remainder
    sequence, which keeps intermediate coefficients small without a content
    computation at every step.
    """
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    v = _main_variable(a, b)
    if v is None:
        return constant(1, a.nvars)
    ca, cb = content(a, v), content(b, v)
    c = gcd(ca, cb)
    pa, pb = exact_divide(a, ca), exact_divide(b, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    one = constant(1, a.nvars)
    g = h = one
    while True:
        if pb.degree_in(v) == 0:
            return c.monic()
        delta = pa.degree_in(v) - pb.degree_in(v)
        r = _pseudo_remainder(pa, pb, v)
        if r.is_zero():
            break
        pa, pb = pb, exact_divide(r, g * h ** delta)
        g = _lead_in(pa, v)[1]
        h = exact_divide(g ** delta, h ** (delta - 1)) if delta else h
    prim = exact_divide(pb, content(pb, v))
    return (c * prim).monic()


def _squarefree_by_specialization(p: Polynomial, attempts: int = 4) -> bool:
    """Cheap sufficient test for square-freeness.

    A repeated factor ``q^2`` involves some variable ``w``.  Fixing the other
    variables at a point where the leading coefficient in ``w`` survives keeps
    ``q`` of the same degree in ``w``, so the univariate image is not square-free
    either.  Hence square-free images in every variable prove ``p`` square-free.
    ``False`` only means the test was inconclusive.
    """
    from . import _univariate as U

    points = [[(3 * k + 5 * i) % 17 + 2 for i in range(p.nvars)] for k in range(attempts)]
    for w in p.variables():
        n = p.degree_in(w)
        for pt in points:
            dense = [Fraction(0)] * (n + 1)
            for m, c in p.items():
                term = Fraction(c)
                for i, (e, x) in enumerate(zip(m, pt)):
                    if i != w and e:
                        term *= x ** e
                dense[m[w]] += term
            if dense[n] and U.is_squarefree(U.trim(dense), U.QQ):
                break
        else:
            return False
    return True


def is_squarefree(p: Polynomial) -> bool:
    """True iff ``p`` has no repeated non-constant factor.

    Uses ``gcd(p, dp/dz_1, ..., dp/dz_n)`` being constant, valid in
    characteristic zero.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial is not square-free-testable")
    if _squarefree_by_specialization(p):
        return True
    g = p
    for i in range(p.nvars):
        g = gcd(g, derivative(p, i + 1))
        if g.is_constant():
            return True
    return g.is_constant()
