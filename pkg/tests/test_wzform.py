from fractions import Fraction

import pytest

from wzforms import (AdditiveRepresentation, IntegerLinearType, NotAWZForm,
                     Polynomial, RationalFunction, WZForm,
                     conjugate_polygamma, decompose, delta, generate,
                     integer_linear_type_rf, is_exact, is_wz_form,
                     random_additive_rep, signed_range_sum)

V = ("x", "y", "z")
x = Polynomial.variable("x", V)
y = Polynomial.variable("y", V)
z = Polynomial.variable("z", V)
b = 4 * x + 6 * y + 5 * z
c = 3 * y + 2 * z
Zv = ("Z",)
Z = Polynomial.variable("Z", Zv)
inv_z = RationalFunction(Polynomial.one(Zv), Z)


def inv(p, vars=V):
    return RationalFunction(Polynomial.one(vars), p)


def two_type_rep():
    return AdditiveRepresentation(
        V, RationalFunction.zero(V),
        [(IntegerLinearType((4, 6, 5)), inv_z),
         (IntegerLinearType((0, 3, 2)), inv_z)])


def range_sum_triple():
    f = sum((inv(b + l) for l in range(4)), RationalFunction.zero(V))
    g = sum((inv(b + l) for l in range(6)), RationalFunction.zero(V)) \
        + sum((inv(c + l) for l in range(3)), RationalFunction.zero(V))
    h = sum((inv(b + l) for l in range(5)), RationalFunction.zero(V)) \
        + sum((inv(c + l) for l in range(2)), RationalFunction.zero(V))
    return WZForm(V, (f, g, h))


def corrected_product_triple():
    # the variant with numerator constant -1 in the first component fails
    # the compatibility conditions; +1 is the consistent choice
    f = RationalFunction(x * y * z - y**2 * z - y * z**2 + y * z + 1,
                         x - y - z + 1)
    g = RationalFunction(
        x**2 * z - x * y * z - x * z**2 + x * y - y**2 - y * z - 1,
        x - y - z)
    h = RationalFunction(
        x**2 * y - x * y**2 - x * y * z + x * z - y * z - z**2 - 1,
        x - y - z)
    return WZForm(V, (f, g, h))


# ---------------------------------------------------------------------- #
# signed range sums


def test_range_sum_positive_entry():
    got = signed_range_sum(inv_z, (4, 6, 5), 0, V)
    assert got == sum((inv(b + l) for l in range(4)), RationalFunction.zero(V))


def test_range_sum_zero_entry():
    assert signed_range_sum(inv_z, (0, 3, 2), 0, V).is_zero


def test_range_sum_negative_entry():
    got = signed_range_sum(inv_z, (-1, 1, 1), 0, V)
    assert got == -inv(-x + y + z - 1)


# ---------------------------------------------------------------------- #
# generation


def test_generate_two_type_rep_matches_range_sums():
    assert generate(two_type_rep()).components == range_sum_triple().components


def test_generate_pure_exact_rep():
    g = inv(x + y + 1)
    rep = AdditiveRepresentation(V, g, [])
    assert generate(rep).components == tuple(delta(g, i) for i in range(3))


def test_generate_zero_rep():
    rep = AdditiveRepresentation(V, RationalFunction.zero(V), [])
    assert generate(rep).is_zero


def test_generate_output_is_compatible():
    for seed in range(6):
        rep = random_additive_rep(seed, n=3, max_types=2, max_deg=2)
        assert is_wz_form(generate(rep).components)


# ---------------------------------------------------------------------- #
# decomposition


def test_decompose_two_type_triple():
    rep = decompose(range_sum_triple())
    assert rep.exact_part.is_zero
    assert [t.entries for t in rep.types] == [(4, 6, 5), (0, 3, 2)]
    assert all(r == inv_z for _, r in rep.parts)


def test_decompose_corrected_product_triple():
    form = corrected_product_triple()
    rep = decompose(form)
    assert len(rep.parts) == 1
    vtype, r = rep.parts[0]
    assert vtype.entries in ((1, -1, -1), (-1, 1, 1))
    # r stays in the simple-fraction family with unit numerator
    assert r.num.is_constant and abs(r.num.constant_value()) == 1
    assert r.den.degree_in(0) == 1
    assert generate(rep).components == form.components
    half = Fraction(1, 2)
    assert rep.exact_part == RationalFunction(
        x * y * z + half * y**2 - half * y + half * z**2 - half * z)


def test_decompose_zero_form():
    rep = decompose(WZForm(V, (RationalFunction.zero(V),) * 3))
    assert rep.exact_part.is_zero and rep.parts == ()


def test_decompose_rejects_incompatible_tuple():
    with pytest.raises(NotAWZForm):
        WZForm(("x", "y"),
               (RationalFunction(Polynomial.one(("x", "y")),
                                 Polynomial.variable("x", ("x", "y"))),) * 2)


def test_decompose_detects_violation_behind_trusted_wrapper():
    V2 = ("x", "y")
    x2 = Polynomial.variable("x", V2)
    y2 = Polynomial.variable("y", V2)
    # not integer-linear in the remainder: certifies incompatibility
    bad = WZForm._trusted(
        V2, (RationalFunction(Polynomial.one(V2), x2**2 + y2),
             RationalFunction.zero(V2)))
    with pytest.raises(NotAWZForm):
        decompose(bad)
    # residual depending on a processed variable
    bad2 = WZForm._trusted(
        V2, (RationalFunction(Polynomial.one(V2), x2),
             RationalFunction(Polynomial.one(V2), x2**2)))
    with pytest.raises(NotAWZForm):
        decompose(bad2)


def test_round_trip_on_seeded_representations():
    for seed in range(40):
        rep = random_additive_rep(seed, n=2 + seed % 3, max_types=3,
                                  max_deg=3, coeff_bound=9)
        first = generate(rep)
        again = generate(decompose(first))
        assert again.components == first.components, f"seed {seed}"


def test_round_trip_b_on_fixtures():
    for form in (range_sum_triple(), corrected_product_triple()):
        assert generate(decompose(form)).components == form.components


def test_uniform_components_are_compatible_and_typed():
    rep = decompose(range_sum_triple())
    for vtype, r in rep.parts:
        parts = [signed_range_sum(r, vtype, i, V) for i in range(3)]
        assert is_wz_form(parts)
        for comp in parts:
            if comp.is_zero or comp.is_constant:
                continue
            got = integer_linear_type_rf(comp)
            assert got is not None
            assert got[1].entries in (vtype.entries,
                                      tuple(-e for e in vtype.entries))


def test_bivariate_uniform_parts_are_cyclic_pairs():
    V2 = ("x", "y")
    for seed in (3, 9, 21, 33):
        rep = random_additive_rep(seed, n=2, max_types=2, max_deg=2)
        got = decompose(generate(rep))
        for vtype, r in got.parts:
            fpart = signed_range_sum(r, vtype, 0, V2)
            gpart = signed_range_sum(r, vtype, 1, V2)
            assert delta(fpart, 1) == delta(gpart, 0)
            types = set()
            for comp in (fpart, gpart):
                if not comp.is_zero and not comp.is_constant:
                    t = integer_linear_type_rf(comp)
                    assert t is not None
                    types.add(tuple(sorted((t[1].entries,
                                            tuple(-e for e in t[1].entries)))))
            assert len(types) <= 1


# ---------------------------------------------------------------------- #
# exactness


def test_is_exact_recognizes_difference_tuples():
    g = inv(x + y)
    form = WZForm(V, tuple(delta(g, i) for i in range(3)))
    assert is_exact(form) == g


def test_is_exact_rejects_uniform_content():
    assert is_exact(range_sum_triple()) is None


def test_is_exact_zero_form():
    assert is_exact(WZForm(V, (RationalFunction.zero(V),) * 3)) == \
        RationalFunction.zero(V)


# ---------------------------------------------------------------------- #
# seeded random representations


def test_random_rep_deterministic():
    a = random_additive_rep(1, n=2)
    bb = random_additive_rep(1, n=2)
    assert a.exact_part == bb.exact_part
    assert [(t.entries, r) for t, r in a.parts] == \
        [(t.entries, r) for t, r in bb.parts]


def test_random_rep_no_types_is_pure_exact():
    rep = random_additive_rep(2, n=3, max_types=0)
    assert rep.parts == ()


def test_random_rep_invariants():
    for seed in range(25):
        rep = random_additive_rep(seed, n=2 + seed % 3, max_types=3, max_deg=3)
        seen = set()
        for vtype, r in rep.parts:
            assert vtype.entries not in seen
            seen.add(vtype.entries)
            assert not r.is_zero
