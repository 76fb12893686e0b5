from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from addact.errors import AddactError
from addact.multipoly import (
    GREVLEX,
    GRLEX,
    MultiPoly,
    apply_diffop,
    buchberger_moller,
    canonical_span,
    exp_factorial,
    format_poly,
    groebner,
    minimal_generators,
    monomials_up_to,
    pairing,
    parse_poly,
    standard_monomials,
    translate,
)

N = 3


@st.composite
def polys(draw, nvars=N, max_deg=3, max_terms=4):
    monos = monomials_up_to(nvars, max_deg)
    terms = draw(st.dictionaries(st.sampled_from(monos), st.fractions(-5, 5, max_denominator=3), max_size=max_terms))
    return MultiPoly(nvars, terms)


points = st.lists(st.fractions(-4, 4, max_denominator=4), min_size=N, max_size=N)


@given(polys(), polys(), points)
def test_ring_operations_commute_with_evaluation(f, g, pt):
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)
    assert (f - g).evaluate(pt) == f.evaluate(pt) - g.evaluate(pt)


@given(polys(), polys())
def test_leibniz_rule(f, g):
    for i in range(N):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@given(polys())
def test_parse_roundtrip(f):
    names = ["x1", "x2", "x3"]
    assert parse_poly(format_poly(f, names), N, names) == f


def test_serialization_shape():
    p = parse_poly("z0^2*z5 - z0*z1*z2 - z0*z3*z4 + z3^3/3", 6, [f"z{i}" for i in range(6)])
    assert format_poly(p, [f"z{i}" for i in range(6)]) == "z0^2*z5 - z0*z1*z2 - z0*z3*z4 + 1/3 * z3^3"
    assert parse_poly("2(x1+1)x2", 2) == parse_poly("2*x1*x2 + 2*x2", 2)
    assert parse_poly("S^3", 1) == MultiPoly.monomial((3,))
    with pytest.raises(AddactError):
        parse_poly("x1 +", 1)


@given(polys(), points)
def test_translate_is_shift(f, beta):
    g = translate(f, beta)
    x = [Fraction(1, 3), Fraction(-2), Fraction(5, 7)]
    assert g.evaluate(x) == f.evaluate([a + b for a, b in zip(x, beta)])


def test_pairing_on_monomials():
    for mu in monomials_up_to(2, 3):
        for nu in monomials_up_to(2, 3):
            expect = exp_factorial(mu) if mu == nu else 0
            assert pairing(MultiPoly.monomial(mu), MultiPoly.monomial(nu)) == expect


@given(polys(max_deg=2, max_terms=2), polys())
def test_diffop_derivation(g, f):
    # <g|f> is apply_diffop(g, f) at the origin
    assert pairing(g, f) == apply_diffop(g, f).constant_term()


def _sympy_gb(gens, nvars, order):
    xs = sympy.symbols(f"x1:{nvars + 1}")
    exprs = [sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** k for x, k in zip(xs, e)])
                 for e, c in g.items()) for g in gens]
    gb = sympy.groebner(exprs, *xs, order=order)
    out = set()
    for p in gb.exprs:
        poly = sympy.Poly(p, *xs)
        lc = poly.LC(order=order)
        out.add(MultiPoly(nvars, {m: Fraction(str(c / lc)) for m, c in poly.terms()}))
    return out


@given(st.lists(polys(max_deg=2, max_terms=3), min_size=1, max_size=3))
def test_groebner_matches_sympy(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    for order, name in ((GRLEX, "grlex"), (GREVLEX, "grevlex")):
        ours = groebner(gens, order)
        assert set(ours.generators) == _sympy_gb(gens, N, name)


@given(st.lists(polys(max_deg=2, max_terms=3), min_size=1, max_size=3), polys())
def test_membership_of_combinations(gens, h):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = groebner(gens, GRLEX)
    assert gb.contains(h * gens[0])
    nf = gb.normal_form(h)
    assert gb.contains(h - nf)
    assert all(gb.is_standard(e) for e, _ in nf.items())


def test_row_14_keeps_all_quadrics():
    gens = [parse_poly(s, 3) for s in ("x1^2 - x2^2", "x1^2 - x3^2", "x1*x2", "x1*x3", "x2*x3")]
    gb = groebner(gens, GRLEX)
    assert len(standard_monomials(gb)) == 5


def test_standard_monomials_infinite():
    gb = groebner([parse_poly("x1^2", 2)], GRLEX)
    with pytest.raises(AddactError) as exc:
        standard_monomials(gb, 50)
    assert exc.value.code == "NOT_FINITE_CODIMENSION"


def test_minimal_generators_drop_redundant():
    gb = groebner([parse_poly(s, 2) for s in ("x1^2 - x2", "x1*x2")], GRLEX)
    assert [format_poly(g, ["S1", "S2"]) for g in gb.generators] == ["S1^2 - S2", "S1*S2", "S2^2"]
    assert [format_poly(g, ["S1", "S2"]) for g in minimal_generators(gb)] == ["S1^2 - S2", "S1*S2"]


def test_buchberger_moller_agrees_with_groebner():
    # points (0,0), (1,0), (0,1), (1,1): the ideal of evaluation at those points
    pts = [(0, 0), (1, 0), (0, 1), (1, 1)]

    def image(e):
        return [Fraction(p[0] ** e[0] * p[1] ** e[1]) for p in pts]

    gb, std = buchberger_moller(2, image, GRLEX)
    assert gb == groebner([parse_poly("x1^2 - x1", 2), parse_poly("x2^2 - x2", 2)], GRLEX)
    assert std == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_canonical_span_pivots_on_small_monomials():
    fs = [parse_poly(s, 2) for s in ("x1^2 + 2*x2 + 2", "x1", "1")]
    span = canonical_span(fs, 2)
    assert [format_poly(f, ["x1", "x2"]) for f in span] == ["1", "x1", "1/2 * x1^2 + x2"]
