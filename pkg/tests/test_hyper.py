import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addact.artin import exp_nilpotent, maximal_ideal
from addact.catalog import named_fixture, table1, table1_algebra, truncated_algebra
from addact.errors import AddactError
from addact.hyper import (
    HPair,
    adjoin_square_zero,
    boundary_test,
    chart_equations,
    equation,
    form_kernel,
    gorenstein_certificate,
    invariant_form,
    is_nondegenerate,
    quadratic_rank,
    quadric_pair,
    random_hyperplane_pair,
    reduce,
    surviving_coordinates,
)

FIXTURES = ["hyp-no30", "quadric:2", "quadric:3", "corank1-a", "corank1-b"]


def _rand_vec(rng, n):
    return [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]


def _combo(coeffs, vecs, dim):
    return tuple(sum((c * v[k] for c, v in zip(coeffs, vecs)), Fraction(0)) for k in range(dim))


def test_row30_equation_golden():
    h = named_fixture("hyp-no30")
    assert equation(h).to_str() == "z0^2*z5 - z0*z1*z2 - z0*z3*z4 + 1/3 * z3^3"
    assert h.degree == 3


def test_row30_form_value():
    h = named_fixture("hyp-no30")
    s3 = h.pair.u_basis[2]
    assert invariant_form(h)(s3, s3, s3) == 2


@pytest.mark.parametrize("name", FIXTURES)
def test_orbit_points_lie_on_the_hypersurface(name):
    # oracle: t*exp(u) for u in U, read in coordinates (1, U, S)
    h = named_fixture(name)
    a = h.algebra
    poly = equation(h).poly
    rng = random.Random(7)
    for _ in range(8):
        u = _combo(_rand_vec(rng, h.n), h.pair.u_basis, a.dim)
        t = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        pt = [t * x for x in exp_nilpotent(a, u)]
        assert poly.evaluate(h.coordinates(pt)) == 0
    off = [x + y for x, y in zip(a.unit, h.complement)]
    assert poly.evaluate(h.coordinates(off)) != 0


@pytest.mark.parametrize("name", FIXTURES)
def test_equation_is_homogeneous_of_degree_d(name):
    h = named_fixture(name)
    e = equation(h)
    assert e.poly.is_homogeneous() and e.poly.total_degree() == h.degree
    assert 2 <= h.degree <= h.n + 1


@pytest.mark.parametrize("name", FIXTURES)
def test_polarization_identity(name):
    # F(w, ..., w) = d! (-1)^(d-1) f(w)
    h = named_fixture(name)
    F = invariant_form(h)
    poly = equation(h).poly
    rng = random.Random(3)
    d = h.degree
    for _ in range(5):
        w = _combo(_rand_vec(rng, len(h.coord_basis)), h.coord_basis, h.algebra.dim)
        assert F(*([w] * d)) == math.factorial(d) * (-1) ** (d - 1) * poly.evaluate(h.coordinates(w))


@pytest.mark.parametrize("name", FIXTURES)
def test_form_is_symmetric_and_invariant(name):
    h = named_fixture(name)
    a = h.algebra
    F = invariant_form(h)
    rng = random.Random(11)
    d = h.degree
    for _ in range(4):
        zs = [_combo(_rand_vec(rng, len(h.coord_basis)), h.coord_basis, a.dim) for _ in range(d)]
        assert F(*zs) == F(*reversed(zs))
        u = _combo(_rand_vec(rng, h.n), h.pair.u_basis, a.dim)
        total = sum(F(*[a.multiply(u, z) if j == i else z for j, z in enumerate(zs)]) for i in range(d))
        assert total == 0


def test_quadric_ranks():
    for n in range(1, 5):
        h = quadric_pair(n)
        assert h.degree == 2
        assert quadratic_rank(equation(h)) == n + 2
        assert is_nondegenerate(h) and gorenstein_certificate(h)


def test_quadratic_rank_rejects_higher_degree():
    with pytest.raises(AddactError) as exc:
        quadratic_rank(equation(named_fixture("hyp-no30")))
    assert exc.value.code == "NOT_QUADRATIC"


@pytest.mark.parametrize("name", ["corank1-a", "corank1-b"])
def test_corank_one_pairs(name):
    h = named_fixture(name)
    assert h.degree == 2
    assert quadratic_rank(equation(h)) == 3
    assert form_kernel(h).dim == 1
    assert not gorenstein_certificate(h)
    r = reduce(h)
    assert is_nondegenerate(r) and r.algebra.dim == h.algebra.dim - 1


def test_kernel_contains_every_ideal_inside_u():
    h = named_fixture("corank1-a")
    ker = form_kernel(h)
    a = h.algebra
    for v in ker.basis:
        assert h.pair.U.contains(v)
        for j in range(a.dim):
            assert ker.contains(a.multiply(v, a.basis_vector(j)))


def test_adjoin_then_reduce_recovers_equation():
    h = named_fixture("hyp-no30")
    big = adjoin_square_zero(h)
    assert form_kernel(big).dim == 1
    assert surviving_coordinates(big) == [0, 1, 2, 3, 4, 6]
    assert equation(reduce(big)).to_str() == equation(h).to_str()
    assert reduce(h) is h


def test_boundary_test():
    h = named_fixture("hyp-no30")
    s1, s2, s3, _ = h.pair.u_basis
    assert boundary_test(h, s1)
    assert not boundary_test(h, s3)
    with pytest.raises(AddactError) as exc:
        boundary_test(h, h.algebra.unit)
    assert exc.value.code == "NOT_IN_MAXIMAL_IDEAL"


def test_bad_inputs():
    a = truncated_algebra(4)
    s = a.generators[0]
    with pytest.raises(AddactError) as exc:
        HPair.from_subspace(a, [s])
    assert exc.value.code == "NOT_HYPERPLANE"
    with pytest.raises(AddactError) as exc:
        HPair.from_subspace(a, [s, a.power(s, 2)], complement=a.power(s, 2))
    assert exc.value.code == "BAD_COMPLEMENT"


def test_dehomogenized_equation_and_chart_vanish_on_orbit():
    from addact.hyper import _chart_basis
    from addact.exact_core import solve

    rng = random.Random(5)
    for name in FIXTURES:
        h = named_fixture(name)
        a = h.algebra
        e = equation(h)
        f = e.dehomogenize()
        (g,) = chart_equations(h.pair)
        ub, comp = _chart_basis(h.pair)
        cols = ub + comp
        for _ in range(4):
            x = _rand_vec(rng, h.n + 1)
            assert f.evaluate(x) == e.poly.evaluate([1] + x)
            u = _combo(_rand_vec(rng, h.n), h.pair.u_basis, a.dim)
            pt = exp_nilpotent(a, u)
            assert f.evaluate(h.coordinates(pt)[1:]) == 0
            z = [p - q for p, q in zip(pt, a.unit)]
            mat = [[c[k] for c in cols] for k in range(a.dim)]
            assert g.evaluate(solve(mat, z)) == 0


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_certificate_implies_nondegenerate(seed):
    rng = random.Random(seed)
    rows = [e.id for e in table1() if 3 <= e.dim <= 7]
    h = random_hyperplane_pair(table1_algebra(rng.choice(rows)), rng)
    if h is None:
        return
    if gorenstein_certificate(h):
        assert is_nondegenerate(h)
    # kernel is always an ideal inside U
    ker = form_kernel(h)
    assert all(h.pair.U.contains(v) for v in ker.basis)
    assert maximal_ideal(h.algebra).contains_subspace(ker)
