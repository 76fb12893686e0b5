import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from addact.artin import (
    INFINITE,
    Algebra,
    cyclic_vector,
    exp_nilpotent,
    from_presentation,
    hilbert_samuel,
    invariants,
    is_local,
    kravchuk_number,
    local_decomposition,
    log_one_plus,
    maximal_ideal,
    orbit_count_projective,
    regular_representation,
    socle,
    validate,
)
from addact.catalog import product_of_fields, table1, truncated_algebra
from addact.errors import AddactError
from addact.exact_core import QMatrix
from addact.multipoly import parse_poly

ROWS = table1()


@pytest.mark.parametrize("entry", ROWS, ids=lambda e: f"row{e.id}")
def test_table1_row(entry, table1_algebras):
    a = table1_algebras[entry.id]
    inv = invariants(a)
    assert (inv.dim, inv.hilbert_samuel, inv.is_gorenstein) == (entry.dim, entry.hilbert_samuel, entry.gorenstein)
    assert validate(a)


def _sympy_standard_count(entry):
    xs = sympy.symbols(f"x1:{entry.nvars + 1}")
    exprs = [sympy.sympify(p.replace("^", "**"), locals={f"x{i + 1}": x for i, x in enumerate(xs)})
             for p in entry.presentation]
    gb = sympy.groebner(exprs, *xs, order="grevlex")
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in gb.exprs]
    by_degree = {}
    frontier = [tuple([0] * entry.nvars)]
    seen = set(frontier)
    while frontier:
        e = frontier.pop()
        if any(all(a >= b for a, b in zip(e, lt)) for lt in leads):
            continue
        by_degree[sum(e)] = by_degree.get(sum(e), 0) + 1
        for i in range(entry.nvars):
            f = tuple(x + (i == k) for k, x in enumerate(e))
            if f not in seen:
                seen.add(f)
                frontier.append(f)
    return by_degree


@pytest.mark.parametrize("entry", ROWS, ids=lambda e: f"row{e.id}")
def test_dimension_against_independent_groebner(entry, table1_algebras):
    counts = _sympy_standard_count(entry)
    assert sum(counts.values()) == table1_algebras[entry.id].dim
    homogeneous = all(parse_poly(p, entry.nvars).is_homogeneous() for p in entry.presentation)
    if homogeneous:
        # for graded algebras the Hilbert-Samuel sequence is the Hilbert function
        assert tuple(counts[d] for d in sorted(counts)) == hilbert_samuel(table1_algebras[entry.id])


@given(st.integers(1, 6), st.data())
def test_exp_log_inverse(k, data):
    a = truncated_algebra(k + 1)
    m = maximal_ideal(a)
    coeffs = data.draw(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=m.dim, max_size=m.dim))
    z = tuple(sum((c * v[i] for c, v in zip(coeffs, m.basis)), Fraction(0)) for i in range(a.dim))
    e = exp_nilpotent(a, z)
    back = log_one_plus(a, tuple(x - u for x, u in zip(e, a.unit)))
    assert back == z


def test_exp_requires_nilpotent():
    a = truncated_algebra(3)
    with pytest.raises(AddactError) as exc:
        exp_nilpotent(a, a.unit)
    assert exc.value.code == "NOT_NILPOTENT"


def test_orbit_counts():
    for n in range(1, 7):
        assert orbit_count_projective(truncated_algebra(n + 1)) == n + 1
        assert orbit_count_projective(product_of_fields(n + 1)) == 2 ** (n + 1) - 1
    assert orbit_count_projective(from_presentation(2, [parse_poly(s, 2) for s in ("x1^2", "x1*x2", "x2^2")])) == INFINITE
    assert INFINITE == math.inf


def test_local_decomposition_of_product():
    a = product_of_fields(3)
    parts = local_decomposition(a)
    assert len(parts) == 3 and all(p.dim == 1 for p in parts)
    assert not is_local(a)
    assert socle(a).dim == 3
    with pytest.raises(AddactError) as exc:
        maximal_ideal(a)
    assert exc.value.code == "NOT_LOCAL"


def test_irrational_splitting_reported():
    # Q[x]/(x^2 - 2) is a field over the reals but its eigenvalues are irrational
    a = from_presentation(1, [parse_poly("x1^2 - 2", 1)], at_origin=False)
    with pytest.raises(AddactError) as exc:
        local_decomposition(a)
    assert exc.value.code == "IRRATIONAL_SPLITTING"


def test_not_supported_at_origin():
    with pytest.raises(AddactError) as exc:
        from_presentation(1, [parse_poly("x1^2 - x1", 1)])
    assert exc.value.code == "NOT_SUPPORTED_AT_ORIGIN"


def test_mixed_product_invariants():
    # K[S]/(S^2) x K
    table = [[[1, 0, 0], [0, 1, 0], [0, 0, 0]], [[0, 1, 0], [0, 0, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 0], [0, 0, 1]]]
    a = Algebra(table, unit=[1, 0, 1])
    inv = invariants(a)
    assert inv.num_maximal_ideals == 2 and inv.is_gorenstein and not inv.is_local
    assert orbit_count_projective(a) == 5


def test_socle_dimension_matches_gorenstein(table1_algebras):
    for a in table1_algebras.values():
        assert (socle(a).dim == 1) == invariants(a).is_gorenstein


def test_regular_representation_cyclic_vector(table1_algebras):
    # the regular representation always has the unit as a cyclic vector
    for a in table1_algebras.values():
        if a.dim == 1:
            continue
        mats = regular_representation(a)
        assert cyclic_vector(mats) is not None
        assert kravchuk_number(mats) == 1


def test_kravchuk_numbers_of_matrix_subalgebras():
    # commutative nilpotent 4x4 algebra spanned by E_12, E_13, E_14 (first row)
    def unit(i, j):
        return QMatrix([[int((r, c) == (i, j)) for c in range(4)] for r in range(4)])

    row = [unit(0, 1), unit(0, 2), unit(0, 3)]
    assert kravchuk_number(row) == 3
    assert cyclic_vector(row) is None
    col = [unit(1, 0), unit(2, 0), unit(3, 0)]
    assert kravchuk_number(col) == 1
    with pytest.raises(AddactError):
        kravchuk_number([unit(0, 1), unit(1, 0)])
