"""Integer-linear structure: deciding when a polynomial or rational function
is a univariate function of one integer linear form, and completing an
integer vector to a matrix of determinant gcd."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import InvalidInput
from .factor import factor_polynomial
from .polys import Polynomial
from .rationals import RationalFunction


@dataclass(frozen=True)
class IntegerLinearType:
    """A primitive nonzero integer direction vector."""

    entries: tuple

    def __init__(self, entries):
        entries = tuple(int(e) for e in entries)
        if not entries or not any(entries):
            raise InvalidInput("type vector must be nonzero")
        if gcd(*entries) != 1:
            raise InvalidInput("type vector entries must be coprime")
        object.__setattr__(self, "entries", entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __neg__(self):
        return IntegerLinearType(tuple(-e for e in self.entries))

    def form(self, vars):
        """The linear polynomial ``v . x`` over the given variables."""
        return Polynomial.linear_form(self.entries, vars)

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.entries) + ")"


_ZVARS = ("Z",)


def _axis_image(p, pivot, scale):
    """p with the pivot variable sent to Z/scale and every other to 0."""
    vars = p.vars
    zero = Polynomial.zero(_ZVARS)
    z = Polynomial.variable("Z", _ZVARS)
    images = {name: zero for name in vars}
    images[vars[pivot]] = z * Fraction(1, scale)
    return p.compose(images, _ZVARS)


def integer_linear_decompose(p):
    """Write ``p == P(v . x)`` with a univariate P and a primitive integer
    vector v, or return None.

    The candidate direction is read off the top homogeneous part (which must
    be a constant multiple of a power of the linear form) and the candidate
    is confirmed by exact recomposition, so a non-None answer is always
    sound.  The sign of v makes P's leading coefficient positive when the
    degree is odd and the first nonzero entry of v positive otherwise.
    """
    if not isinstance(p, Polynomial):
        raise InvalidInput("integer_linear_decompose expects a Polynomial")
    if p.is_constant:
        raise InvalidInput("constant polynomials have every type")
    d = p.total_degree()
    top = {e: c for e, c in p.terms.items() if sum(e) == d}
    n = len(p.vars)
    pivot = min(i for e in top for i in range(n) if e[i])
    lead_exps = tuple(d if i == pivot else 0 for i in range(n))
    A = top.get(lead_exps)
    if A is None:
        return None
    ratios = [Fraction(0)] * n
    ratios[pivot] = Fraction(1)
    for j in range(n):
        if j == pivot:
            continue
        e = tuple((d - 1 if i == pivot else 0) + (1 if i == j else 0)
                  for i in range(n))
        B = top.get(e, Fraction(0))
        ratios[j] = B / (d * A)
    scale = lcm(*(r.denominator for r in ratios))
    ints = [int(r * scale) for r in ratios]
    g = gcd(*ints)
    v = tuple(e // g for e in ints)
    P = _axis_image(p, pivot, v[pivot])
    form = Polynomial.linear_form(v, p.vars)
    if P.compose({"Z": form}, p.vars) != p:
        return None
    lc_sign = P.leading()[1] > 0
    if not lc_sign and P.total_degree() % 2 == 1:
        v = tuple(-e for e in v)
        P = P.compose({"Z": -Polynomial.variable("Z", _ZVARS)}, _ZVARS)
    return P, IntegerLinearType(v)


def integer_linear_type_rf(f):
    """Write a rational function as ``u(v . x)`` with univariate u, or None.

    Requires every irreducible factor of the numerator and denominator to be
    integer-linear of one common type.
    """
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    if f.is_constant:
        raise InvalidInput("constant rational functions have every type")
    vtype = None
    num_parts = []
    den_parts = []
    for poly, sink in ((f.num, num_parts), (f.den, den_parts)):
        if poly.is_constant:
            sink.append((Polynomial.constant(poly.constant_value(), _ZVARS), 1))
            continue
        cont, factors = factor_polynomial(poly)
        sink.append((Polynomial.constant(cont, _ZVARS), 1))
        for base, mult in factors:
            got = integer_linear_decompose(base)
            if got is None:
                return None
            P, v = got
            if vtype is None:
                vtype = v
            elif v.entries != vtype.entries:
                return None
            sink.append((P, mult))
    if vtype is None:
        raise InvalidInput("constant rational functions have every type")
    num_u = Polynomial.one(_ZVARS)
    for P, mult in num_parts:
        num_u = num_u * P ** mult
    den_u = Polynomial.one(_ZVARS)
    for P, mult in den_parts:
        den_u = den_u * P ** mult
    return RationalFunction(num_u, den_u), vtype


# ---------------------------------------------------------------------- #
# unimodular completion


@dataclass(frozen=True)
class UnimodularCompletion:
    """Integer matrix with prescribed first row and determinant equal to the
    gcd of its entries, plus the exact rational inverse."""

    matrix: tuple
    inverse: tuple

    @property
    def first_row(self):
        return self.matrix[0]

    def determinant(self):
        return _det(self.matrix)


def _det(rows):
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _invert(rows):
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(1 if r == c else 0)
                                       for c in range(n)]
         for r, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise InvalidInput("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [a * inv for a in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _complete(v):
    n = len(v)
    if n == 1:
        return [[v[0]]]
    head, last = v[:-1], v[-1]
    if not any(head):
        rows = [[0] * (n - 1) + [last]]
        for k in range(n - 1):
            rows.append([1 if j == k else 0 for j in range(n)])
        return rows
    if n == 2:
        g, s, t = _xgcd(v[0], v[1])
        if g < 0:
            g, s, t = -g, -s, -t
        return [[v[0], v[1]], [-t, s]]
    sub = _complete(head)
    g = _det_int(sub)
    if g < 0:
        sub[-1] = [-x for x in sub[-1]]
        g = -g
    _, s, t = _xgcd(g, last)
    rows = [list(head) + [last]]
    for row in sub[1:]:
        rows.append(list(row) + [0])
    rows.append([-t * x // g for x in head] + [s])
    return rows


def _det_int(rows):
    d = _det(rows)
    assert d.denominator == 1
    return int(d)


def complete_unimodular(v):
    """An integer matrix with first row v and determinant ``gcd(v)``,
    deterministic in v.  (For a single negative entry the determinant is
    forced to that entry itself.)"""
    v = tuple(int(e) for e in v)
    if not v or not any(v):
        raise InvalidInput("cannot complete the zero vector")
    rows = _complete(v)
    n = len(v)
    if n > 1:
        target = gcd(*v)
        if _det_int(rows) != target:
            rows[-1] = [-x for x in rows[-1]]
        assert _det_int(rows) == target
    matrix = tuple(tuple(row) for row in rows)
    return UnimodularCompletion(matrix, _invert(matrix))
