"""Rational functions over the rationals, in canonical reduced form.

Canonical form: numerator and denominator are coprime, the denominator is
integer-primitive with positive graded-lex leading coefficient, and the
rational scale factor lives in the numerator's coefficients.  All arithmetic
returns canonical values, so structural equality is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DivisionByZero, InvalidInput
from .factor import factor_polynomial
from .polys import Polynomial, poly_gcd


class RationalFunction:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, RationalFunction):
            if den is not None:
                raise InvalidInput("cannot re-wrap a RationalFunction with a denominator")
            object.__setattr__(self, "num", num.num)
            object.__setattr__(self, "den", num.den)
            object.__setattr__(self, "_hash", None)
            return
        if not isinstance(num, Polynomial):
            raise InvalidInput("numerator must be a Polynomial")
        if den is None:
            den = Polynomial.one(num.vars)
        if isinstance(den, (int, Fraction)):
            den = Polynomial.constant(den, num.vars)
        reduced = rf_reduce(num, den)
        object.__setattr__(self, "num", reduced.num)
        object.__setattr__(self, "den", reduced.den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _trusted(cls, num, den):
        """Wrap an already-canonical numerator/denominator pair."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, vars):
        return cls._trusted(Polynomial.zero(vars), Polynomial.one(vars))

    @classmethod
    def one(cls, vars):
        return cls._trusted(Polynomial.one(vars), Polynomial.one(vars))

    @classmethod
    def constant(cls, value, vars):
        return cls._trusted(Polynomial.constant(value, vars), Polynomial.one(vars))

    @classmethod
    def variable(cls, name, vars):
        return cls._trusted(Polynomial.variable(name, vars), Polynomial.one(vars))

    # ------------------------------------------------------------------ #

    @property
    def vars(self):
        return self.num.vars

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.is_constant

    @property
    def is_constant(self):
        return self.num.is_constant and self.den.is_constant

    def constant_value(self):
        if not self.is_constant:
            raise InvalidInput("rational function is not constant")
        return self.num.constant_value()

    def as_polynomial(self):
        """The numerator when the denominator is 1; error otherwise."""
        if not self.is_polynomial:
            raise InvalidInput("rational function has a nontrivial denominator")
        return self.num

    def degree_in(self, i):
        return max(self.num.degree_in(i), self.den.degree_in(i))

    # ------------------------------------------------------------------ #
    # arithmetic

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.vars != self.vars:
                raise InvalidInput(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other, self.vars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b = self.num, self.den
        c, d = other.num, other.den
        if b == d:
            g, b1, d1 = b, Polynomial.one(b.vars), Polynomial.one(b.vars)
        else:
            g = poly_gcd(b, d)
            b1 = b.divexact(g)
            d1 = d.divexact(g)
        num0 = a * d1 + c * b1
        if num0.is_zero:
            return RationalFunction.zero(self.vars)
        den0 = b1 * d
        if g.is_constant:
            return RationalFunction._trusted(num0, den0)
        h = poly_gcd(num0, g)
        if h.is_constant:
            return RationalFunction._trusted(num0, den0)
        return RationalFunction._trusted(num0.divexact(h), den0.divexact(h))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFunction.zero(self.vars)
            return RationalFunction._trusted(self.num * other, self.den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalFunction.zero(self.vars)
        a, b = self.num, self.den
        c, d = other.num, other.den
        g1 = poly_gcd(a, d) if not (a.is_constant or d.is_constant) else None
        g2 = poly_gcd(c, b) if not (c.is_constant or b.is_constant) else None
        if g1 is not None and not g1.is_constant:
            a = a.divexact(g1)
            d = d.divexact(g1)
        if g2 is not None and not g2.is_constant:
            c = c.divexact(g2)
            b = b.divexact(g2)
        return RationalFunction._trusted(a * c, b * d)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.is_zero:
            raise DivisionByZero("reciprocal of zero")
        cont = self.num.content()
        num = self.den * (1 / cont)
        den = self.num.divexact(cont)
        return RationalFunction._trusted(num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise InvalidInput("rational function powers take integers")
        if k == 0:
            return RationalFunction.one(self.vars)
        base = self if k > 0 else self.reciprocal()
        k = abs(k)
        return RationalFunction._trusted(base.num ** k, base.den ** k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.constant_value() == other
        if isinstance(other, Polynomial):
            return self.is_polynomial and self.num == other
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.num, self.den)))
        return self._hash

    def __bool__(self):
        return not self.is_zero

    # ------------------------------------------------------------------ #
    # substitution

    def shifted(self, offsets):
        """Exact substitution ``x_i -> x_i + offsets[i]``.

        Integer shifts preserve canonical form, so no re-reduction is needed.
        """
        if not any(offsets):
            return self
        return RationalFunction._trusted(self.num.shifted(offsets),
                                         self.den.shifted(offsets))

    def compose(self, images, new_vars=None):
        return substitute_linear(self, images, new_vars)

    # ------------------------------------------------------------------ #

    def __str__(self):
        if self.den.is_constant:
            return str(self.num)
        num_s = str(self.num)
        if len(self.num.terms) > 1:
            num_s = f"({num_s})"
        den_s = str(self.den)
        if not _is_bare_denominator(self.den):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self):
        return f"RationalFunction({str(self)!r}, vars={self.vars})"


def _is_bare_denominator(p):
    # Safe without parentheses after '/': a single power of one variable.
    if len(p.terms) != 1:
        return False
    (exps, c), = p.terms.items()
    return c == 1 and sum(1 for e in exps if e) == 1


def rf_reduce(num, den):
    """Canonical reduced form of ``num/den``; the only way fractions enter
    the system.  Raises DivisionByZero for an identically zero denominator."""
    if not isinstance(num, Polynomial) or not isinstance(den, Polynomial):
        raise InvalidInput("rf_reduce expects Polynomial arguments")
    num._check_same_vars(den)
    if den.is_zero:
        raise DivisionByZero("zero denominator")
    if num.is_zero:
        return RationalFunction.zero(num.vars)
    if not den.is_constant and not num.is_constant:
        g = poly_gcd(num, den)
        if not g.is_constant:
            num = num.divexact(g)
            den = den.divexact(g)
    cont = den.content()
    den = den.divexact(cont)
    num = num * (1 / cont)
    return RationalFunction._trusted(num, den)


def substitute_linear(f, images, new_vars=None):
    """Exact composition ``f(images)``; images are Polynomials sharing one
    variable tuple.  Raises DivisionByZero when the substituted denominator
    vanishes identically."""
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    num = f.num.compose(images, new_vars)
    den = f.den.compose(images, new_vars)
    if den.is_zero:
        raise DivisionByZero("substitution sends the denominator to zero")
    return rf_reduce(num, den)


# ---------------------------------------------------------------------- #
# univariate view with rational-function coefficients


class _UPoly:
    """Dense polynomial in one distinguished variable whose coefficients are
    RationalFunctions free of it.  Internal helper for division, partial
    fractions and Abramov-style reductions."""

    __slots__ = ("coeffs", "index", "vars")

    def __init__(self, coeffs, index, vars):
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.coeffs = coeffs
        self.index = index
        self.vars = vars

    @classmethod
    def zero(cls, index, vars):
        return cls([], index, vars)

    @classmethod
    def from_polynomial(cls, p, index):
        by_deg = p.coeffs_in(index)
        top = max(by_deg) if by_deg else -1
        coeffs = [RationalFunction(by_deg[k]) if k in by_deg
                  else RationalFunction.zero(p.vars)
                  for k in range(top + 1)]
        return cls(coeffs, index, p.vars)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def _zero_rf(self):
        return RationalFunction.zero(self.vars)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self._zero_rf()
        coeffs = [(self.coeffs[k] if k < len(self.coeffs) else z) +
                  (other.coeffs[k] if k < len(other.coeffs) else z)
                  for k in range(n)]
        return _UPoly(coeffs, self.index, self.vars)

    def __neg__(self):
        return _UPoly([-c for c in self.coeffs], self.index, self.vars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return _UPoly([c * other for c in self.coeffs], self.index, self.vars)
        if self.is_zero or other.is_zero:
            return _UPoly.zero(self.index, self.vars)
        z = self._zero_rf()
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return _UPoly(out, self.index, self.vars)

    def divmod(self, other):
        if other.is_zero:
            raise DivisionByZero("univariate division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc_inv = other.lc().reciprocal()
        z = self._zero_rf()
        quo = [z] * max(0, len(rem) - dq)
        while len(rem) - 1 >= dq and rem:
            dr = len(rem) - 1
            t = rem[-1] * lc_inv
            quo[dr - dq] = t
            for j, b in enumerate(other.coeffs):
                k = dr - dq + j
                rem[k] = rem[k] - t * b
            while rem and rem[-1].is_zero:
                rem.pop()
        return (_UPoly(quo, self.index, self.vars),
                _UPoly(rem, self.index, self.vars))

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero:
            return self
        inv = self.lc().reciprocal()
        return self * inv

    def to_rf(self):
        """Collapse back to a RationalFunction."""
        x = RationalFunction.variable(self.vars[self.index], self.vars)
        total = RationalFunction.zero(self.vars)
        power = RationalFunction.one(self.vars)
        for k, c in enumerate(self.coeffs):
            if k:
                power = power * x
            if not c.is_zero:
                total = total + c * power
        return total


def _up_xgcd(a, b):
    """Extended gcd over the coefficient field; returns (g, s, t) with g
    monic and ``s*a + t*b == g``.  Remainders are normalized monic at every
    step to limit coefficient growth."""
    zero = _UPoly.zero(a.index, a.vars)
    one = _UPoly([RationalFunction.one(a.vars)], a.index, a.vars)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero:
        lc = r1.lc()
        if not (lc.is_constant and lc.constant_value() == 1):
            inv = lc.reciprocal()
            r1 = r1 * inv
            s1 = s1 * inv
            t1 = t1 * inv
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        raise InvalidInput("xgcd of two zero polynomials")
    inv = r0.lc().reciprocal()
    return r0 * inv, s0 * inv, t0 * inv


def _up_inv_mod(a, m):
    g, s, _ = _up_xgcd(a, m)
    if g.degree != 0:
        raise InvalidInput("element is not invertible in the quotient ring")
    return s


# ---------------------------------------------------------------------- #
# partial fractions


def _partial_fraction_full(f, i):
    """Structured partial fraction decomposition of f in the i-th variable.

    Returns ``(poly_part, groups)`` where poly_part is a _UPoly and groups
    is a list of ``(base, multiplicity, {layer: numerator RF})`` with bases
    the irreducible denominator factors of positive degree in the variable,
    in deterministic order, and each layer numerator of smaller degree than
    its base.
    """
    vars = f.vars
    if f.is_zero:
        return _UPoly.zero(i, vars), []
    cont, factors = factor_polynomial(f.den)
    i_factors = [(b, m) for b, m in factors if b.degree_in(i) > 0]
    rest = Polynomial.constant(cont, vars)
    for b, m in factors:
        if b.degree_in(i) <= 0:
            rest = rest * b ** m
    if not i_factors:
        return _UPoly([RationalFunction(c, rest)
                       for c in _dense_coeffs(f.num, i)], i, vars), []
    D = Polynomial.one(vars)
    for b, m in i_factors:
        D = D * b ** m
    N = _UPoly([RationalFunction(c, rest) for c in _dense_coeffs(f.num, i)],
               i, vars)
    Dup = _UPoly.from_polynomial(D, i)
    poly_part, R = N.divmod(Dup)
    groups = []
    for b, m in i_factors:
        U = D.divexact(b ** m)
        if b.degree_in(i) == 1:
            layers = _layers_at_linear_pole(R, U, b, m, i)
        else:
            layers = _layers_by_inversion(R, U, b, m, i)
        groups.append((b, m, layers))
    return poly_part, groups


def _layers_by_inversion(R, U, b, m, i):
    """Layer numerators over b**m via modular inversion of the cofactor."""
    bup = _UPoly.from_polynomial(b, i)
    bm = bup
    for _ in range(m - 1):
        bm = bm * bup
    Uup = _UPoly.from_polynomial(U, i)
    T = (R * _up_inv_mod(Uup % bm, bm)) % bm
    layers = {}
    for t in range(m, 0, -1):
        T, digit = T.divmod(bup)
        if not digit.is_zero:
            layers[t] = digit.to_rf()
    return layers


def _taylor_at(coeffs, rho, m):
    """First m Taylor coefficients at ``x = rho`` by repeated synthetic
    division; coefficients and rho are rational functions."""
    cs = list(coeffs)
    zero = rho - rho
    out = []
    for _ in range(m):
        if not cs:
            out.append(zero)
            continue
        acc = cs[-1]
        quo = [zero] * (len(cs) - 1)
        for j in range(len(cs) - 2, -1, -1):
            quo[j] = acc
            acc = cs[j] + rho * acc
        out.append(acc)
        cs = quo
        while cs and cs[-1].is_zero:
            cs.pop()
    return out


def _series_inverse(u, m):
    inv0 = u[0].reciprocal()
    out = [inv0]
    for k in range(1, m):
        acc = None
        for t in range(1, k + 1):
            if t < len(u) and not u[t].is_zero:
                term = u[t] * out[k - t]
                acc = term if acc is None else acc + term
        out.append(-(inv0 * acc) if acc is not None else inv0 - inv0)
    return out


def _layers_at_linear_pole(R, U, b, m, i):
    """Layer numerators over b**m for a base linear in the variable, via the
    local expansion at its root; avoids extended-gcd inversion."""
    bc = b.coeffs_in(i)
    c1 = RationalFunction(bc[1])
    c0 = RationalFunction(bc[0]) if 0 in bc else RationalFunction.zero(b.vars)
    rho = -(c0 / c1)
    rser = _taylor_at(R.coeffs, rho, m)
    user = _taylor_at(_UPoly.from_polynomial(U, i).coeffs, rho, m)
    inv = _series_inverse(user, m)
    layers = {}
    for t in range(1, m + 1):
        acc = None
        k = m - t
        for s in range(k + 1):
            if not rser[s].is_zero and not inv[k - s].is_zero:
                term = rser[s] * inv[k - s]
                acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero:
            a = acc * c1 ** (t - m) if t != m else acc
            if not a.is_zero:
                layers[t] = a
    return layers


def _dense_coeffs(p, i):
    by_deg = p.coeffs_in(i)
    top = max(by_deg) if by_deg else -1
    zero = Polynomial.zero(p.vars)
    return [by_deg.get(k, zero) for k in range(top + 1)]


def partial_fraction(f, i):
    """Irreducible partial fraction decomposition of f in the i-th variable.

    Returns ``(poly_part, parts)``: poly_part is a RationalFunction that is
    polynomial in the variable, parts is a list of ``(numerator, base,
    multiplicity)`` with irreducible bases and numerators of smaller degree
    than their base; the sum of all pieces reproduces f exactly.
    """
    poly_up, groups = _partial_fraction_full(f, i)
    parts = []
    for b, _, layers in groups:
        for t in sorted(layers):
            parts.append((layers[t], b, t))
    return poly_up.to_rf(), parts


# ---------------------------------------------------------------------- #
# discrete antidifference of polynomials


@lru_cache(maxsize=None)
def _antidiff_basis(k):
    """Coefficients of the unique Q with Q(x+1) - Q(x) = x**k and zero
    constant term, as a tuple indexed by power."""
    if k == 0:
        return (Fraction(0), Fraction(1))
    coeffs = [Fraction(0)] * (k + 2)
    coeffs[k + 1] = Fraction(1)
    for j in range(k):
        qj = _antidiff_basis(j)
        c = Fraction(comb(k + 1, j))
        for idx, val in enumerate(qj):
            coeffs[idx] -= c * val
    inv = Fraction(1, k + 1)
    return tuple(c * inv for c in coeffs)


def poly_antidifference(p, i):
    """The polynomial q with ``q(x_i + 1) - q(x_i) == p`` and zero constant
    term with respect to the i-th variable."""
    if not isinstance(p, Polynomial):
        raise InvalidInput("poly_antidifference expects a Polynomial")
    terms = {}
    for k, cpoly in p.coeffs_in(i).items():
        basis = _antidiff_basis(k)
        for j, frac in enumerate(basis):
            if not frac:
                continue
            for e, c in cpoly.terms.items():
                full = e[:i] + (j,) + e[i + 1:]
                s = terms.get(full, 0) + c * frac
                if s:
                    terms[full] = s
                else:
                    terms.pop(full, None)
    return Polynomial(p.vars, terms)


def _up_antidifference(up):
    """Antidifference of a _UPoly in its own variable; coefficients may be
    arbitrary rational functions free of that variable."""
    z = RationalFunction.zero(up.vars)
    out = []
    for k, c in enumerate(up.coeffs):
        if c.is_zero:
            continue
        basis = _antidiff_basis(k)
        if len(basis) > len(out):
            out.extend([z] * (len(basis) - len(out)))
        for j, frac in enumerate(basis):
            if frac:
                out[j] = out[j] + c * frac
    return _UPoly(out, up.index, up.vars)
