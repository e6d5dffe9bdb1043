from fractions import Fraction
from math import factorial

import sympy

from wzforms import (AdditiveRepresentation, IntegerLinearType, Polynomial,
                     RationalFunction, RootShift, conjugate_polygamma, delta,
                     generate, random_additive_rep, signed_range_sum)

V = ("x", "y", "z")
Zv = ("Z",)
Z = Polynomial.variable("Z", Zv)
inv_z = RationalFunction(Polynomial.one(Zv), Z)


def rep_of(parts, vars=V, exact=None):
    exact = exact if exact is not None else RationalFunction.zero(vars)
    return AdditiveRepresentation(
        vars, exact, [(IntegerLinearType(v), r) for v, r in parts])


def test_conjugate_of_two_type_rep_prints_exactly():
    rep = rep_of([((4, 6, 5), inv_z), ((0, 3, 2), inv_z)])
    expr = conjugate_polygamma(rep)
    assert str(expr) == "psi^(0)(4*x + 6*y + 5*z) + psi^(0)(3*y + 2*z)"
    assert expr.rational_part.is_zero


def test_conjugate_pure_rational():
    a = RationalFunction(Polynomial.variable("x", V))
    expr = conjugate_polygamma(rep_of([], exact=a))
    assert expr.rational_part == a and expr.terms == ()


def test_conjugate_double_pole_coefficient():
    V2 = ("x", "y")
    rep = rep_of([((1, 1), RationalFunction(Polynomial.one(Zv), Z**2))],
                 vars=V2)
    expr = conjugate_polygamma(rep)
    assert len(expr.terms) == 1
    term = expr.terms[0]
    assert term.coefficient == -1
    assert term.order == 1
    assert term.shift == 0
    assert str(expr) == "-psi^(1)(x + y)"


def test_conjugate_shifted_pole_and_scaling():
    V2 = ("x", "y")
    # 1/(2Z+1) = (1/2)/(Z + 1/2)
    rep = rep_of([((1, 1), RationalFunction(Polynomial.one(Zv), 2 * Z + 1))],
                 vars=V2)
    expr = conjugate_polygamma(rep)
    term = expr.terms[0]
    assert term.coefficient == Fraction(1, 2)
    assert term.order == 0 and term.shift == Fraction(1, 2)


def _certificate_from_conjugate(expr, rep, j):
    """Expand every polygamma term through the defining recurrence into the
    j-th certificate; rational shifts only."""
    vars = rep.vars
    total = delta(expr.rational_part, j)
    for term in expr.terms:
        assert not isinstance(term.shift, RootShift)
        t = term.order
        base = Z + term.shift
        step = RationalFunction(
            Polynomial.constant(Fraction((-1) ** t * factorial(t)), Zv),
            base ** (t + 1))
        total = total + signed_range_sum(step, term.vtype, j, vars) \
            * term.coefficient
    return total


def test_conjugate_certificates_reproduce_generated_tuple():
    # rational-linear pole structure, including higher multiplicities and a
    # polynomial part that must fold into the rational part
    r1 = RationalFunction(Z + 3, Z**2 * (Z + 1))
    r2 = RationalFunction(2 * Z**2 + 1, 2 * Z + 1)
    rep = rep_of([((2, -1, 1), r1), ((0, 1, 1), r2)],
                 exact=RationalFunction(Polynomial.variable("y", V)))
    expr = conjugate_polygamma(rep)
    form = generate(rep)
    for j in range(3):
        assert _certificate_from_conjugate(expr, rep, j) == form.components[j]


def test_conjugate_on_random_reps_with_split_poles():
    checked = 0
    for seed in range(30):
        rep = random_additive_rep(seed, n=2, max_types=2, max_deg=2)
        expr = conjugate_polygamma(rep)
        if any(isinstance(t.shift, RootShift) for t in expr.terms):
            continue
        form = generate(rep)
        for j in range(2):
            assert _certificate_from_conjugate(expr, rep, j) == \
                form.components[j]
        checked += 1
    assert checked >= 10


def test_root_sum_term_for_irreducible_quadratic():
    V2 = ("x", "y")
    rep = rep_of([((1, 1), RationalFunction(Polynomial.one(Zv), Z**2 - 2))],
                 vars=V2)
    expr = conjugate_polygamma(rep)
    assert len(expr.terms) == 1
    term = expr.terms[0]
    assert isinstance(term.shift, RootShift)
    A = Polynomial.variable("A", ("A",))
    assert term.shift.poly == A**2 - 2
    # full weight: -A/4 at each root (coefficient carries the sign)
    weight = term.shift.weight * term.coefficient
    assert weight == -A * Fraction(1, 4)


def test_root_sum_certificates_against_algebraic_expansion():
    # independent oracle over Q(sqrt(2)) for simple and double poles
    V2 = ("x", "y")
    for rnum, rden in ((Polynomial.one(Zv), Z**2 - 2),
                       (Z + 1, (Z**2 - 2) ** 2)):
        r = RationalFunction(rnum, rden)
        rep = rep_of([((1, 1), r)], vars=V2)
        expr = conjugate_polygamma(rep)
        form = generate(rep)
        xs, ys = sympy.symbols("x y")
        for j in range(2):
            total = sympy.Integer(0)
            for term in expr.terms:
                t = term.order
                coeff = sympy.Rational(term.coefficient)
                arg = xs + ys
                vj = term.vtype[j]
                if isinstance(term.shift, RootShift):
                    Asym = sympy.Symbol("A")
                    qexpr = sum(sympy.Rational(cc) * Asym**e[0]
                                for e, cc in term.shift.poly.terms.items())
                    roots = sympy.solve(qexpr, Asym)
                    weight_poly = term.shift.weight
                    for rho in roots:
                        w = sum(sympy.Rational(cc) * rho**e[0]
                                for e, cc in weight_poly.terms.items())
                        for ell in range(vj):
                            total += coeff * w * (-1) ** t * \
                                sympy.factorial(t) / (arg + ell + rho) ** (t + 1)
                else:
                    for ell in range(vj):
                        total += coeff * (-1) ** t * sympy.factorial(t) / \
                            (arg + ell + sympy.Rational(term.shift)) ** (t + 1)
            comp = form.components[j]
            num = sum(sympy.Rational(cc) * xs**e[0] * ys**e[1]
                      for e, cc in comp.num.terms.items())
            den = sum(sympy.Rational(cc) * xs**e[0] * ys**e[1]
                      for e, cc in comp.den.terms.items())
            assert sympy.simplify(total - num / den) == 0
