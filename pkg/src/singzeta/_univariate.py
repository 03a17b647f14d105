"""Dense univariate and bivariate polynomial helpers over a field.

Univariate polynomials are lists of coefficients, lowest degree first, with no
trailing zeros (``[]`` is zero).  A bivariate polynomial in ``(s, t)`` is a list
indexed by the ``t``-degree whose entries are univariate polynomials in ``s``.

Two fields are provided: :class:`RationalField` (exact, ``Fraction`` elements)
and :class:`PrimeField` (``int`` residues).  All routines take the field as
their last argument so the same code serves exact and modular computations.

The module also carries the dynamic-evaluation ("D5") gcd used to decide
whether a bivariate system has a common zero with both coordinates non-zero.
"""

from __future__ import annotations

import random
from fractions import Fraction


class RationalField:
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)
    exact = True

    def convert(self, x):
        return Fraction(x)

    def norm(self, x):
        return x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def pow(self, x, k):
        return x ** k

    def __repr__(self):
        return "QQ"


class PrimeField:
    exact = False

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def convert(self, x):
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def pow(self, x, k):
        return pow(x, k, self.p)

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random) -> int:
    if bits < 16:
        raise ValueError("prime size must be at least 16 bits")
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand):
            return cand


# -- univariate ----------------------------------------------------------------


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(a, b, F):
    n = max(len(a), len(b))
    out = [F.norm((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) for i in range(n)]
    return trim(out)


def sub(a, b, F):
    n = max(len(a), len(b))
    out = [F.norm((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) for i in range(n)]
    return trim(out)


def scale(a, c, F):
    if not c:
        return []
    return trim([F.norm(x * c) for x in a])


def mul(a, b, F):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim([F.norm(x) for x in out])


def divmod_(a, b, F):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    if len(r) < len(b):
        return [], r
    inv = F.inv(b[-1])
    q = [F.zero] * (len(r) - len(b) + 1)
    for k in range(len(r) - len(b), -1, -1):
        c = F.norm(r[k + len(b) - 1] * inv)
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] = F.norm(r[k + j] - c * y)
    return trim(q), trim(r[: len(b) - 1])


def rem(a, b, F):
    if len(a) < len(b):
        return list(a)
    return divmod_(a, b, F)[1]


def exquo(a, b, F):
    q, r = divmod_(a, b, F)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def monic(a, F):
    if not a:
        return []
    return scale(a, F.inv(a[-1]), F)


def gcd(a, b, F):
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, F)
    return monic(a, F)


def deriv(a, F):
    return trim([F.norm(a[i] * i) for i in range(1, len(a))])


def evaluate(a, x, F):
    acc = F.zero
    for c in reversed(a):
        acc = F.norm(acc * x + c)
    return acc


def strip_zero_roots(a):
    """Remove the factor ``s^k`` from ``a``."""
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    return a[k:]


def squarefree_part(a, F):
    if len(a) <= 1:
        return monic(a, F)
    return monic(exquo(a, gcd(a, deriv(a, F), F), F), F)


def is_squarefree(a, F) -> bool:
    return len(gcd(a, deriv(a, F), F)) <= 1


def resultant(a, b, F):
    """Resultant of two univariate polynomials by the Euclidean recurrence."""
    if not a or not b:
        return F.zero
    result = F.one
    a, b = list(a), list(b)
    while True:
        m, n = deg(a), deg(b)
        if n == 0:
            return F.norm(result * F.pow(b[0], m))
        r = rem(a, b, F)
        if not r:
            return F.zero
        k = deg(r)
        sign = -1 if (m * n) % 2 else 1
        result = F.norm(result * sign * F.pow(b[-1], m - k))
        a, b = b, r


def interpolate(xs, ys, F):
    """Newton interpolation through the points ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.norm((coef[i] - coef[i - 1]) * F.inv(F.norm(xs[i] - xs[i - j])))
    poly = []
    for i in range(n - 1, -1, -1):
        poly = add(mul(poly, [F.norm(-xs[i]), F.one], F), [coef[i]] if coef[i] else [], F)
    return poly


# -- bivariate -------------------------------------------------------------


def biv_from_polynomial(p, F):
    """Convert a two-variable :class:`Polynomial` (``s`` first, ``t`` second)."""
    if p.nvars != 2:
        raise ValueError("expected a polynomial in two variables")
    degt = p.degree_in(1)
    degs = p.degree_in(0)
    rows = [[F.zero] * (degs + 1) for _ in range(degt + 1)]
    for (i, j), c in p.items():
        rows[j][i] = F.convert(c)
    return trim([trim(r) for r in rows])


def biv_deg_s(B) -> int:
    return max((deg(c) for c in B), default=-1)


def biv_ds(B, F):
    return trim([deriv(c, F) for c in B])


def biv_dt(B, F):
    return trim([scale(B[j], F.convert(j), F) for j in range(1, len(B))])


def biv_eval_s(B, x, F):
    return trim([evaluate(c, x, F) for c in B])


def biv_transpose(B):
    ds = biv_deg_s(B)
    out = [[0] * len(B) for _ in range(ds + 1)]
    for j, c in enumerate(B):
        for i, x in enumerate(c):
            out[i][j] = x
    return trim([trim(r) for r in out])


def biv_content_t(B, F):
    """Gcd of the ``t``-coefficients: the largest factor depending on ``s`` only."""
    g = []
    for c in B:
        g = gcd(g, c, F)
        if len(g) == 1:
            break
    return g


def biv_div_s(B, a, F):
    return trim([exquo(c, a, F) for c in B])


def biv_mul_s(B, a, F):
    return trim([mul(c, a, F) for c in B])


def resultant_t(A, B, F):
    """``Res_t(A, B)`` as a polynomial in ``s`` by evaluation and interpolation."""
    if not A or not B:
        return []
    m, n = deg(A), deg(B)
    bound = biv_deg_s(A) * n + biv_deg_s(B) * m
    xs, ys = [], []
    x = 0
    while len(xs) < bound + 1:
        xv = F.convert(x)
        x += 1
        if not evaluate(A[-1], xv, F) or not evaluate(B[-1], xv, F):
            continue
        xs.append(xv)
        ys.append(resultant(biv_eval_s(A, xv, F), biv_eval_s(B, xv, F), F))
    return interpolate(xs, ys, F)


# -- dynamic evaluation over F[s]/(q) ----------------------------------------


def _reduce(A, q, F):
    return trim([rem(c, q, F) for c in A])


def _split(c, q, F):
    """Split ``q`` into the part where ``c`` vanishes and the part where it is a unit."""
    g = gcd(rem(c, q, F), q, F)
    if deg(g) == 0:
        return [(q, True)]
    if deg(g) == deg(q):
        return [(q, False)]
    return [(g, False), (monic(exquo(q, g, F), F), True)]


def _inverse_mod(c, q, F):
    # extended Euclid on (c, q); c must be a unit mod q
    r0, r1 = q, rem(c, q, F)
    s0, s1 = [], [F.one]
    while r1:
        quo, r = divmod_(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quo, s1, F), F)
    if deg(r0) != 0:
        raise ArithmeticError("not a unit modulo q")
    return scale(s0, F.inv(r0[0]), F)


def _normalize(A, q, F):
    A = _reduce(A, q, F)
    if not A:
        return [(q, [])]
    out = []
    for qi, unit in _split(A[-1], q, F):
        if unit:
            out.append((qi, _reduce(A, qi, F)))
        else:
            out.extend(_normalize(A[:-1], qi, F))
    return out


def _rem_over(A, B, q, F):
    """Remainder of ``A`` by ``B`` in ``(F[s]/q)[t]``; ``lc(B)`` must be a unit."""
    inv = _inverse_mod(B[-1], q, F)
    R = [list(c) for c in A]
    while len(R) >= len(B) and R:
        c = rem(mul(R[-1], inv, F), q, F)
        shift = len(R) - len(B)
        for j, y in enumerate(B):
            R[shift + j] = rem(sub(R[shift + j], mul(c, y, F), F), q, F)
        R = trim(R)
    return R


def _make_monic(A, q, F):
    if not A:
        return []
    inv = _inverse_mod(A[-1], q, F)
    return _reduce([mul(c, inv, F) for c in A], q, F)


def d5_gcd(A, B, q, F):
    """Gcd of ``A`` and ``B`` in ``(F[s]/q)[t]`` with ``q`` square-free.

    Returns a list of ``(q_i, D_i)`` where the ``q_i`` are pairwise coprime
    factors of ``q`` whose product is ``q`` and ``D_i`` is the monic gcd over
    every root of ``q_i`` (``[]`` when both inputs vanish there).
    """
    out = []
    for qi, Bi in _normalize(B, q, F):
        Ai = _reduce(A, qi, F)
        if not Bi:
            for qj, Aj in _normalize(Ai, qi, F):
                out.append((qj, _make_monic(Aj, qj, F)))
        else:
            out.extend(d5_gcd(Bi, _rem_over(Ai, Bi, qi, F), qi, F))
    return out


def common_zero_branches(polys, q, F):
    """Split ``q`` and compute the gcd of all ``polys`` over each piece."""
    branches = [(q, _reduce(polys[0], q, F))]
    for P in polys[1:]:
        nxt = []
        for qi, D in branches:
            nxt.extend(d5_gcd(D, P, qi, F))
        branches = nxt
    return branches


def branch_has_torus_point(qi, D, F) -> bool:
    """Whether some root ``s0`` of ``qi`` gives ``D(s0, t)`` a non-zero root ``t``."""
    if deg(qi) < 1:
        return False
    if not D:
        return True
    if deg(D) == 0:
        return False
    z = qi
    for c in D[:-1]:
        z = gcd(z, c, F)
        if deg(z) == 0:
            return True
    return deg(z) < deg(qi)


def torus_singular_candidates(B, F):
    """Elimination polynomial for the singular points of ``B = 0`` in the torus.

    Returns ``(verdict, p)``.  ``verdict`` is ``True`` when a whole curve of
    torus singularities is certain (a repeated factor),
    ``False`` when none can exist, and ``None`` when the candidates are the
    non-zero roots of the square-free polynomial ``p`` in ``s``.  ``B`` must not
    be divisible by ``s`` or ``t``.
    """
    a = biv_content_t(B, F)
    rest = biv_div_s(B, a, F)
    bt = biv_content_t(biv_transpose(rest), F)
    K = biv_transpose(biv_div_s(biv_transpose(rest), bt, F))
    if not is_squarefree(a, F) or not is_squarefree(bt, F):
        return True, None
    if deg(K) < 1 or biv_deg_s(K) < 1:
        # B = a(s) b(t): singular exactly where the two families of lines cross
        if deg(a) >= 1 and deg(bt) >= 1:
            return None, monic(a, F)
        return False, None
    Kt, Ks = biv_dt(K, F), biv_ds(K, F)
    r1 = resultant_t(K, Kt, F)
    if not r1:
        return True, None
    r2 = resultant_t(K, Ks, F)
    p = gcd(r1, r2, F) if r2 else r1
    if deg(a) >= 1:
        p = mul(p, a, F)
    if deg(bt) >= 1:
        bb = [[x] if x else [] for x in bt]
        p = mul(p, resultant_t(bb, K, F), F)
    p = squarefree_part(strip_zero_roots(p), F)
    if deg(p) < 1:
        return False, None
    return None, p


def has_torus_singularity(B, F) -> bool:
    """Whether ``B``, ``dB/ds`` and ``dB/dt`` vanish together with ``s*t != 0``."""
    verdict, p = torus_singular_candidates(B, F)
    if verdict is not None:
        return verdict
    branches = common_zero_branches([B, biv_ds(B, F), biv_dt(B, F)], p, F)
    return any(branch_has_torus_point(qi, D, F) for qi, D in branches)
