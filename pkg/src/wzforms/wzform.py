"""Additive structure of compatible rational tuples.

A compatible tuple splits into an exact part (differences of one rational
function) plus finitely many uniform parts, each generated by a univariate
rational function evaluated along an integer direction.  This module
decomposes tuples into that shape, rebuilds tuples from it, and rewrites the
uniform data as formal polygamma combinations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd

from .abramov import _reduce_structured, solve_step_difference
from .errors import InvalidInput, NotAWZForm
from .intlinear import IntegerLinearType, integer_linear_decompose
from .polys import Polynomial
from .rationals import (RationalFunction, _partial_fraction_full,
                        _up_antidifference, substitute_linear)
from .shifts import WZForm, delta

_ZVARS = ("Z",)
_AVARS = ("A",)


@dataclass(frozen=True)
class AdditiveRepresentation:
    """Exact part plus one univariate rational function per direction.

    ``parts`` is an ordered tuple of ``(IntegerLinearType, nonzero
    RationalFunction in Z)`` with pairwise distinct types.
    """

    vars: tuple
    exact_part: RationalFunction
    parts: tuple

    def __init__(self, vars, exact_part, parts):
        vars = tuple(vars)
        if not isinstance(exact_part, RationalFunction) or exact_part.vars != vars:
            raise InvalidInput("exact part must be a RationalFunction over the "
                               "declared variables")
        norm = []
        seen = set()
        for vtype, r in parts:
            if not isinstance(vtype, IntegerLinearType):
                vtype = IntegerLinearType(vtype)
            if len(vtype) != len(vars):
                raise InvalidInput("type vector length must match variables")
            if vtype.entries in seen:
                raise InvalidInput(f"duplicate type {vtype}")
            seen.add(vtype.entries)
            if not isinstance(r, RationalFunction) or r.vars != _ZVARS:
                raise InvalidInput("uniform data must be univariate in Z")
            if r.is_zero:
                raise InvalidInput("uniform data must be nonzero")
            norm.append((vtype, r))
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "exact_part", exact_part)
        object.__setattr__(self, "parts", tuple(norm))

    @property
    def types(self):
        return [vtype for vtype, _ in self.parts]

    @property
    def r_map(self):
        return {vtype.entries: r for vtype, r in self.parts}

    def __str__(self):
        body = ", ".join(f"{vtype}: {r}" for vtype, r in self.parts)
        return f"(exact = {self.exact_part}; uniform = {{{body}}})"


def signed_range_sum(r, v, i, vars):
    """``sum of r(v.x + l)`` over the signed range determined by ``v[i]``:
    l from 0 to v[i]-1 when positive, empty when zero, and minus the sum
    from v[i] to -1 when negative."""
    entries = tuple(v)
    step = entries[i]
    if step == 0:
        return RationalFunction.zero(tuple(vars))
    form = Polynomial.linear_form(entries, vars)
    total = RationalFunction.zero(tuple(vars))
    offsets = range(step) if step > 0 else range(step, 0)
    for ell in offsets:
        total = total + substitute_linear(r, {"Z": form + ell}, vars)
    return total if step > 0 else -total


def generate(rep):
    """Build the compatible tuple described by an additive representation:
    component i is ``delta_i(exact)`` plus the signed range sums of every
    uniform part.

    The result satisfies the compatibility conditions by construction
    (differences of one function commute, and range sums along one direction
    telescope), so it is wrapped without the pairwise re-check.
    """
    if not isinstance(rep, AdditiveRepresentation):
        raise InvalidInput("generate expects an AdditiveRepresentation")
    vars = rep.vars
    components = []
    for i in range(len(vars)):
        f = delta(rep.exact_part, i)
        for vtype, r in rep.parts:
            f = f + signed_range_sum(r, vtype, i, vars)
        components.append(f)
    return WZForm._trusted(vars, components)


# ---------------------------------------------------------------------- #
# decomposition


def _to_univariate(poly, vtype, vars):
    """Image of an integer-linear polynomial under ``v.x -> Z``; None when
    the polynomial is not a univariate function of that form."""
    if poly.is_constant:
        return Polynomial.constant(poly.constant_value(), _ZVARS)
    got = integer_linear_decompose(poly)
    if got is None:
        return None
    P, w = got
    if w.entries == vtype.entries:
        return P
    if w.entries == tuple(-e for e in vtype.entries):
        mz = -Polynomial.variable("Z", _ZVARS)
        return P.compose({"Z": mz}, _ZVARS)
    return None


def decompose(form):
    """Additive representation of a compatible tuple.

    Processes the variables in order.  At each level the leading component
    is reduced; every orbit representative of the remainder must be
    integer-linear, its layer numerators must follow the same direction, and
    the collected univariate data must admit a rational solution of the
    matching step-difference equation.  Each failure certifies that the
    input tuple was not compatible and raises NotAWZForm.  The recombination
    identity ``generate(decompose(w)) == w`` holds exactly.
    """
    if not isinstance(form, WZForm):
        form = WZForm(form.vars, tuple(form))
    vars = form.vars
    n = len(vars)
    fs = list(form.components)
    exact = RationalFunction.zero(vars)
    parts = []
    for k in range(n):
        f1 = fs[k]
        if f1.is_zero:
            continue
        if any(f1.degree_in(i) > 0 for i in range(k)):
            # unreachable for validated input: the residual of a compatible
            # tuple is free of every processed variable
            raise NotAWZForm(
                f"residual component still involves {vars[:k]}")
        summed, terms = _reduce_structured(f1, k)
        level = {}
        order = []
        for rep, _, layers in terms:
            got = integer_linear_decompose(rep)
            if got is None:
                raise NotAWZForm(
                    f"denominator factor {rep} is not integer-linear")
            q, vtype = got
            q_rf = RationalFunction(q)
            for t, a in layers.items():
                if not a.is_polynomial:
                    raise NotAWZForm(
                        f"numerator {a} at {rep} is not polynomial")
                alpha = _to_univariate(a.as_polynomial(), vtype, vars)
                if alpha is None:
                    raise NotAWZForm(
                        f"numerator {a} does not follow the direction {vtype}")
                u = level.get(vtype.entries)
                add = RationalFunction(alpha) / q_rf ** t
                level[vtype.entries] = add if u is None else u + add
            if vtype.entries not in order:
                order.append(vtype.entries)
        mu = Fraction(0)
        level_parts = []
        for key in order:
            vtype = IntegerLinearType(key)
            u = level[key]
            step = key[k]
            rhs = u.shifted((1,)) - u
            r = solve_step_difference(rhs, step)
            if r is None:
                raise NotAWZForm(
                    f"no rational solution for the uniform part of type {vtype}")
            resid = u - _signed_range_sum_univariate(r, step)
            if not resid.is_constant:
                raise NotAWZForm(
                    f"uniform part of type {vtype} is inconsistent")
            mu += resid.constant_value()
            level_parts.append((vtype, r))
        g_level = summed
        if mu:
            g_level = g_level + RationalFunction(
                Polynomial.variable(vars[k], vars) * mu)
        exact = exact + g_level
        for j in range(k + 1, n):
            fj = fs[j] - delta(g_level, j)
            for vtype, r in level_parts:
                fj = fj - signed_range_sum(r, vtype, j, vars)
            fs[j] = fj
        parts.extend(level_parts)
    return AdditiveRepresentation(vars, exact, parts)


def _signed_range_sum_univariate(r, step):
    """Signed range sum along Z itself: the univariate shadow of
    :func:`signed_range_sum`."""
    if step == 0:
        return RationalFunction.zero(_ZVARS)
    total = RationalFunction.zero(_ZVARS)
    offsets = range(step) if step > 0 else range(step, 0)
    for ell in offsets:
        total = total + r.shifted((ell,))
    return total if step > 0 else -total


def is_exact(form):
    """The rational g with every component equal to its difference, when the
    tuple is exact; None otherwise."""
    rep = decompose(form)
    return rep.exact_part if not rep.parts else None


# ---------------------------------------------------------------------- #
# polygamma conjugates


@dataclass(frozen=True)
class RootShift:
    """Formal sum over the roots ``a`` of an irreducible polynomial, with a
    polynomial weight evaluated at each root."""

    poly: Polynomial
    weight: Polynomial

    def __str__(self):
        return f"RootSum({self.poly}, A -> {self.weight})"


@dataclass(frozen=True)
class PolygammaTerm:
    """``coefficient * psi^(order)(v.x + shift)``; a RootShift spreads the
    term over the roots of its polynomial, weight included."""

    coefficient: Fraction
    order: int
    vtype: IntegerLinearType
    shift: object  # Fraction or RootShift


@dataclass(frozen=True)
class PolygammaExpression:
    """A rational function plus a finite combination of polygamma values at
    integer linear arguments."""

    rational_part: RationalFunction
    terms: tuple

    def _term_str(self, term):
        vars = self.rational_part.vars
        form = Polynomial.linear_form(term.vtype.entries, vars)
        if isinstance(term.shift, RootShift):
            arg = f"{form} + A" if not form.is_zero else "A"
            w = term.shift.weight
            ws = str(w)
            if len(w.terms) > 1:
                ws = f"({ws})"
            body = f"RootSum({term.shift.poly}, A -> {ws}*psi^({term.order})({arg}))"
        else:
            if term.shift:
                form = form + term.shift
            body = f"psi^({term.order})({form})"
        return body

    def __str__(self):
        pieces = []
        if not self.rational_part.is_zero:
            pieces.append(("+", str(self.rational_part)))
        for term in self.terms:
            c = term.coefficient
            body = self._term_str(term)
            mag = abs(c)
            if mag != 1:
                body = f"{mag}*{body}"
            pieces.append(("-" if c < 0 else "+", body))
        if not pieces:
            return "0"
        sign, body = pieces[0]
        out = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def latex(self):
        from .parser import latex_polynomial, latex_rational

        vars = self.rational_part.vars
        pieces = []
        if not self.rational_part.is_zero:
            pieces.append(("+", latex_rational(self.rational_part)))
        for term in self.terms:
            form = Polynomial.linear_form(term.vtype.entries, vars)
            if isinstance(term.shift, RootShift):
                root = r"\alpha"
                arg = latex_polynomial(form) + " + " + root if not form.is_zero \
                    else root
                qtex = latex_polynomial(term.shift.poly, var_name=root)
                wtex = latex_polynomial(term.shift.weight, var_name=root)
                body = (rf"\sum_{{{qtex} = 0}} {wtex} "
                        rf"\, \psi^{{({term.order})}}\!\left({arg}\right)")
            else:
                if term.shift:
                    form = form + term.shift
                body = rf"\psi^{{({term.order})}}\!\left({latex_polynomial(form)}\right)"
            c = term.coefficient
            mag = abs(c)
            if mag != 1:
                num, den = mag.numerator, mag.denominator
                cs = str(num) if den == 1 else rf"\tfrac{{{num}}}{{{den}}}"
                body = f"{cs} {body}"
            pieces.append(("-" if c < 0 else "+", body))
        if not pieces:
            return "0"
        sign, body = pieces[0]
        out = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def conjugate_polygamma(rep):
    """Formal conjugate of the term described by an additive representation.

    Simple rational poles of each uniform part map to polygamma values via
    the recurrence ``psi^(t)(z+1) - psi^(t)(z) == (-1)^t t! / z^(t+1)``;
    irreducible pole polynomials of higher degree produce root-sum terms;
    polynomial parts of the uniform data are folded into the rational part.
    """
    if not isinstance(rep, AdditiveRepresentation):
        raise InvalidInput("conjugate_polygamma expects an AdditiveRepresentation")
    vars = rep.vars
    rational = rep.exact_part
    terms = []
    for vtype, r in rep.parts:
        poly_up, groups = _partial_fraction_full(r, 0)
        if not poly_up.is_zero:
            folded = _up_antidifference(poly_up).to_rf()
            form = Polynomial.linear_form(vtype.entries, vars)
            rational = rational + substitute_linear(folded, {"Z": form}, vars)
        for base, _, layers in groups:
            if base.degree_in(0) == 1:
                coeffs = base.coeffs_in(0)
                c1 = coeffs[1].constant_value()
                c0 = coeffs.get(0)
                alpha = (c0.constant_value() if c0 is not None else Fraction(0)) / c1
                for t, a in sorted(layers.items()):
                    beta = a.constant_value() / c1 ** t
                    coeff = beta * Fraction((-1) ** (t - 1), factorial(t - 1))
                    terms.append(PolygammaTerm(coeff, t - 1, vtype, alpha))
            else:
                terms.extend(_root_sum_terms(base, layers, vtype))
    return PolygammaExpression(rational, tuple(terms))


# ---------------------------------------------------------------------- #
# expansion of higher-degree poles over their roots


def _qred(a, q):
    # remainder of a Fraction list modulo a monic Fraction list
    a = list(a)
    d = len(q) - 1
    while len(a) > d:
        c = a.pop()
        if c:
            for k in range(d):
                a[len(a) - d + k] -= c * q[k]
    while a and not a[-1]:
        a.pop()
    return a


def _qmul(a, b, q):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _qred(out, q)


def _qadd(a, b):
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else Fraction(0)) +
           (b[k] if k < len(b) else Fraction(0)) for k in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def _qinv(a, q):
    # extended Euclid on Fraction lists; q irreducible so any nonzero a works
    def pdivmod(x, y):
        x = list(x)
        dq = len(y) - 1
        quo = [Fraction(0)] * max(0, len(x) - dq)
        while len(x) - 1 >= dq and x:
            t = x[-1] / y[-1]
            quo[len(x) - 1 - dq] = t
            for j, c in enumerate(y):
                x[len(x) - 1 - dq + j] -= t * c
            while x and not x[-1]:
                x.pop()
        return quo, x

    r0, r1 = list(q), list(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        qq, rr = pdivmod(r0, r1)
        r0, r1 = r1, rr
        prod = [Fraction(0)] * (len(qq) + len(s1) - 1) if qq and s1 else []
        for i, x in enumerate(qq):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        s0, s1 = s1, [u - v for u, v in
                      zip(s0 + [Fraction(0)] * max(0, len(prod) - len(s0)),
                          prod + [Fraction(0)] * max(0, len(s0) - len(prod)))]
        while s1 and not s1[-1]:
            s1.pop()
    if len(r0) != 1:
        raise InvalidInput("pole polynomial is not squarefree-irreducible")
    inv = 1 / r0[0]
    return _qred([c * inv for c in s0], q)


def _taylor_rows(coeffs, q, length):
    """Coefficients of p(R + eps) in eps, as elements of Q[R]/(q)."""
    rows = [[] for _ in range(length)]
    for t, c in enumerate(coeffs):
        if not c:
            continue
        for k in range(min(t, length - 1) + 1):
            rows[k] = _qadd(rows[k], _qred(
                [Fraction(0)] * (t - k) + [c * comb(t, k)], q))
    return rows


def _series_mul(a, b, q, length):
    out = [[] for _ in range(length)]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j >= length:
                break
            out[i + j] = _qadd(out[i + j], _qmul(x, y, q))
    return out


def _series_inv(a, q, length):
    inv0 = _qinv(a[0], q)
    out = [inv0]
    for k in range(1, length):
        acc = []
        for t in range(1, k + 1):
            if t < len(a) and a[t]:
                acc = _qadd(acc, _qmul(a[t], out[k - t], q))
        out.append([-c for c in _qmul(inv0, acc, q)])
    return out


def _root_sum_terms(base, layers, vtype):
    """Expand layer numerators over one irreducible pole polynomial of
    degree > 1 into per-root polygamma terms."""
    d = base.degree_in(0)
    coeffs_by_deg = base.coeffs_in(0)
    lc = coeffs_by_deg[d].constant_value()
    qm = [coeffs_by_deg.get(k, Polynomial.zero(base.vars)).constant_value() / lc
          for k in range(d + 1)]
    per_order = {}
    for t, a in layers.items():
        numer = a.as_polynomial().coeffs_in(0)
        beta = [numer.get(k, Polynomial.zero(base.vars)).constant_value() / lc ** t
                for k in range(d)]
        qrows = _taylor_rows(qm, qm, t + 1)
        H = qrows[1:]  # q_m(R+eps)/eps; constant term q_m'(R) is invertible
        acc = [[Fraction(1)]] + [[] for _ in range(t - 1)]
        for _ in range(t):
            acc = _series_mul(acc, H, qm, t)
        inv = _series_inv(acc, qm, t)
        brows = _taylor_rows(beta, qm, t)
        gamma = _series_mul(brows, inv, qm, t)
        for s in range(1, t + 1):
            per_order[s] = _qadd(per_order.get(s, []), gamma[t - s])
    out = []
    flipped_base = Polynomial(
        _AVARS, {(k,): c * (-1) ** k for (k,), c in
                 _as_avar(base).terms.items()}).primitive()
    for s in sorted(per_order):
        w = per_order[s]
        if not w:
            continue
        scale = Fraction((-1) ** (s - 1), factorial(s - 1))
        # move weights to the "+A" convention: substitute R -> -A
        wpoly = Polynomial(_AVARS, {(k,): c * scale * (-1) ** k
                                    for k, c in enumerate(w) if c})
        if wpoly.is_zero:
            continue
        content = wpoly.content()
        out.append(PolygammaTerm(content, s - 1, vtype,
                                 RootShift(flipped_base, wpoly.divexact(content))))
    return out


def _as_avar(base):
    z = Polynomial.variable("A", _AVARS)
    return base.compose({"Z": z}, _AVARS)


# ---------------------------------------------------------------------- #
# seeded random representations for fuzzing


def random_additive_rep(seed, n=3, max_types=2, max_deg=2, coeff_bound=9):
    """Deterministic pseudo-random additive representation.

    The same seed and parameters always produce the same value, every
    produced value satisfies the representation invariants, and generating
    from it always yields a compatible tuple.
    """
    if n < 1 or max_types < 0 or max_deg < 0 or coeff_bound < 1:
        raise InvalidInput("parameters must be positive")
    rng = random.Random((seed, n, max_types, max_deg, coeff_bound).__repr__())
    names = ("x", "y", "z", "w") if n <= 4 else tuple(f"x{k}" for k in range(1, n + 1))
    vars = names[:n]

    def rand_coeff():
        c = 0
        while not c:
            c = rng.randint(-coeff_bound, coeff_bound)
        return c

    def rand_poly(pvars, max_terms, deg):
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            e = [0] * len(pvars)
            for _ in range(rng.randint(0, deg)):
                e[rng.randrange(len(pvars))] += 1
            terms[tuple(e)] = Fraction(rand_coeff())
        return Polynomial(pvars, terms)

    # exact part: a small polynomial plus at most one simple fraction
    exact = RationalFunction.zero(vars)
    if rng.random() < 0.8:
        exact = exact + RationalFunction(rand_poly(vars, 2, 2))
    if rng.random() < 0.6:
        den = Polynomial.linear_form(
            [rng.randint(-2, 2) for _ in range(n)], vars, shift=rng.randint(-3, 3))
        if den.is_constant:
            den = Polynomial.linear_form([1] * n, vars, shift=1)
        exact = exact + RationalFunction(
            Polynomial.constant(rand_coeff(), vars), den)

    # beyond three variables the fully dense joint extreme is out of reach
    # for exact arithmetic in reasonable time, so shade the shape there
    type_cap = max_types if n <= 3 else min(max_types, 2)
    den_deg = max_deg if n <= 3 else min(max_deg, 2)
    seen = set()
    parts = []
    for _ in range(rng.randint(0, type_cap)):
        for _ in range(40):
            v = [rng.randint(-2, 2) for _ in range(n)]
            if not any(v):
                continue
            g = gcd(*v)
            v = [e // g for e in v]
            first = next(e for e in v if e)
            if first < 0:
                v = [-e for e in v]
            if tuple(v) not in seen:
                seen.add(tuple(v))
                break
        else:
            continue
        num = rand_poly(_ZVARS, 2, max_deg)
        den = rand_poly(_ZVARS, 2, den_deg)
        while den.is_zero:
            den = rand_poly(_ZVARS, 2, den_deg)
        r = RationalFunction(num, den)
        if r.is_zero:
            r = RationalFunction.one(_ZVARS)
        parts.append((IntegerLinearType(v), r))
    return AdditiveRepresentation(vars, exact, parts)
