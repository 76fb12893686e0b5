import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from addact.artin import invariants, socle
from addact.catalog import named_fixture, table1, table1_algebra, truncated_algebra
from addact.errors import AddactError
from addact.exact_core import det
from addact.ht import (
    GaPair,
    GeneratingSubspace,
    algebra_from_ideal,
    duality_check,
    fixed_locus,
    generating_subspace,
    ideal_from_pair,
    ideal_from_v,
    is_cyclic_module,
    mu_basis,
    projective_action,
    representation,
    translation_matrix,
    v_from_ideal,
    validate_pair,
)
from addact.multipoly import GRLEX, MultiPoly, format_poly, groebner, parse_poly, standard_monomials

NAMES = ["S1", "S2"]


def ks3_pair():
    a = truncated_algebra(3)
    s = a.generators[0]
    return GaPair(a, [s, a.power(s, 2)])


def test_golden_ideal_and_subspace():
    p = ks3_pair()
    gb = ideal_from_pair(p)
    assert gb.to_strs(NAMES) == ["S1^2 - S2", "S1*S2", "S2^2"]
    assert generating_subspace(p).to_strs() == ["1", "x1", "1/2 * x1^2 + x2"]


def test_golden_representation_and_action():
    rho = representation(ks3_pair())
    assert rho.to_strs() == [["1", "0", "0"], ["a1", "1", "0"], ["1/2 * a1^2 + a2", "a1", "1"]]
    assert projective_action(truncated_algebra(3)).text() == "[z0 : z1 + a1*z0 : z2 + a1*z1 + (1/2 * a1^2 + a2)*z0]"


def test_action_on_truncated_four():
    text = projective_action(truncated_algebra(4)).text()
    assert text.endswith("z3 + a1*z2 + (1/2 * a1^2 + a2)*z1 + (1/6 * a1^3 + a1*a2 + a3)*z0]")


def test_action_for_square_zero_maximal_ideal():
    assert projective_action(table1_algebra(4)).text() == "[z0 : z1 + a1*z0 : z2 + a2*z0]"


def _image(p, f):
    a = p.algebra
    total = [Fraction(0)] * a.dim
    for e, c in f.items():
        v = a.unit
        for i, k in enumerate(e):
            for _ in range(k):
                v = a.multiply(v, p.u_basis[i])
        total = [t + c * x for t, x in zip(total, v)]
    return total


@pytest.mark.parametrize("row", [e.id for e in table1() if e.dim > 1])
def test_ideal_is_the_kernel(row):
    # every generator dies in A and the quotient has dimension dim A, so I equals the kernel
    p = GaPair.maximal(table1_algebra(row))
    gb = ideal_from_pair(p)
    assert all(not any(_image(p, g)) for g in gb.generators)
    assert len(standard_monomials(gb)) == p.algebra.dim


@pytest.mark.parametrize("row", [e.id for e in table1() if e.dim > 1])
def test_roundtrips_on_table1(row):
    p = GaPair.maximal(table1_algebra(row))
    gb = ideal_from_pair(p)
    v = generating_subspace(p)
    assert v.dim == p.m and v.is_generating()
    assert v_from_ideal(gb) == v
    assert ideal_from_v(v) == gb


def test_validate_pair_rejects_non_generating():
    a = table1_algebra(4)
    assert not validate_pair(GaPair(a, [a.generators[0]]))
    with pytest.raises(AddactError) as exc:
        ideal_from_pair(GaPair(a, [a.generators[0]]))
    assert exc.value.code == "INVALID_PAIR"
    assert not validate_pair(GaPair(a, [a.unit]))


def test_twisted_cubic_pair():
    p = named_fixture("twisted-cubic-pair")
    assert ideal_from_pair(p).to_strs(["S1"]) == ["S1^4"]
    assert generating_subspace(p).to_strs() == ["1", "x1", "x1^2", "x1^3"]


def test_non_homogeneous_ideal_is_accepted():
    # x1 - x2^2 has no linear part in the variables' span modulo I: a valid curvilinear pair
    gb = groebner([parse_poly(g, 2) for g in ("x1 - x2^2", "x2^3")], GRLEX)
    v = v_from_ideal(gb)
    assert v.dim == 3 and v.is_generating()
    assert ideal_from_v(v) == gb


def test_degenerate_ideals():
    for gens in (["x1 - x2", "x2^3"], ["x1^2 - x1", "x2^2"], ["x1^2"]):
        gb = groebner([parse_poly(g, 2) for g in gens], GRLEX)
        with pytest.raises(AddactError) as exc:
            v_from_ideal(gb)
        assert exc.value.code == "DEGENERATE_INPUT"
    with pytest.raises(AddactError):
        ideal_from_v(GeneratingSubspace.span(2, [MultiPoly.constant(2, 1), MultiPoly.var(2, 0)]))


@given(st.integers(0, 10 ** 6))
def test_representation_is_homomorphism(seed):
    rng = random.Random(seed)
    row = rng.choice([e.id for e in table1() if 2 <= e.dim <= 5])
    rho = representation(GaPair.maximal(table1_algebra(row)))
    a = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rho.nvars)]
    b = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rho.nvars)]
    ab = [x + y for x, y in zip(a, b)]
    assert rho.evaluate(a) @ rho.evaluate(b) == rho.evaluate(ab)
    assert det(rho.evaluate(a).tolist()) == 1


@given(st.integers(0, 10 ** 6))
def test_duality_identity(seed):
    rng = random.Random(seed)
    row = rng.choice([e.id for e in table1() if 2 <= e.dim <= 6])
    p = GaPair.maximal(table1_algebra(row))
    v = generating_subspace(p)
    beta = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(p.n)]
    g = tuple(Fraction(rng.randint(-3, 3)) for _ in range(p.m))
    f = sum((c * rng.randint(-3, 3) for c in v.basis), MultiPoly.zero(p.n))
    assert duality_check(p, beta, g, f)


def test_translation_matrix_is_transpose_of_representation():
    # <rho(b) g | f> = <g | f(x+b)>: in dual bases tau(b) = rho(b)^T
    p = GaPair.maximal(table1_algebra(7))
    v = generating_subspace(p)
    std, imgs = mu_basis(p)
    from addact.ht import element_as_polynomial
    from addact.multipoly import pairing

    beta = [Fraction(2), Fraction(-1, 3), Fraction(1, 2)][: p.n]
    gram = [[pairing(element_as_polynomial(p, g), f) for f in v.basis] for g in imgs]
    tau = translation_matrix(v, beta)
    lhs = [[sum(gram[i][k] * tau[k, j] for k in range(v.dim)) for j in range(v.dim)]
           for i in range(v.dim)]
    rho = representation(p).evaluate(beta)
    rhs = [[sum(rho[k, i] * gram[k][j] for k in range(v.dim)) for j in range(v.dim)] for i in range(v.dim)]
    assert lhs == rhs


def test_cyclic_iff_gorenstein_iff_single_fixed_point(table1_algebras):
    for row, a in table1_algebras.items():
        if a.dim == 1:
            continue
        v = generating_subspace(GaPair.maximal(a))
        g = invariants(a).is_gorenstein
        assert is_cyclic_module(v) == g
        assert (fixed_locus(a).dim == 1) == g


def test_fixed_locus_is_socle():
    a = table1_algebra(8)
    assert fixed_locus(a) == socle(a) and fixed_locus(a).dim == 3


def test_algebra_from_ideal_recovers_invariants():
    p = GaPair.maximal(table1_algebra(30))
    b = algebra_from_ideal(ideal_from_pair(p))
    assert invariants(b).hilbert_samuel == (1, 3, 1, 1)


def test_basis_change_gives_same_canonical_outputs():
    a = table1_algebra(6)
    s1, s2 = a.generators
    p = GaPair(a, [s1, s2])
    q = GaPair(a, [tuple(x + y for x, y in zip(s1, s2)), tuple(x - y for x, y in zip(s1, s2))])
    v, w = generating_subspace(p), generating_subspace(q)
    assert v.dim == w.dim == 4
    # equivalent up to a linear change of variables, so the Gorenstein status agrees
    assert is_cyclic_module(v) == is_cyclic_module(w) is True
    assert format_poly(ideal_from_pair(p).generators[-1], NAMES) != ""
