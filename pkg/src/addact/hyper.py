"""Induced additive actions on hypersurfaces from H-pairs (A, U), U a hyperplane in m.

Coordinates on A are taken in the basis (1, u_1, ..., u_n, S) where u_i is the
given U-basis and S spans m / U.  By default S is the first rref basis vector
of m^d outside U, and pi(S) = 1, pi(U) = 0.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .artin import Algebra, ideal_chain, invariants, log_series, maximal_ideal, socle
from .errors import AddactError
from .exact_core import Subspace, inverse, kernel_rows, rank_of, to_rational
from .ht import GaPair, _require_valid
from .multipoly import MultiPoly, default_names, format_poly

Vector = Tuple[Fraction, ...]


def _columns_inverse(cols: Sequence[Sequence]) -> List[List[Fraction]]:
    m = len(cols)
    return inverse([[cols[j][i] for j in range(m)] for i in range(m)])


def _apply(rows: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in rows:
        acc = 0
        for c, x in zip(row, v):
            if c and x:
                acc = acc + c * x
        out.append(acc)
    return out


def _pair_degree(a: Algebra, U: Subspace) -> int:
    chain = ideal_chain(a)
    d = 0
    for k, mk in enumerate(chain.subspaces, start=1):
        if not U.contains_subspace(mk):
            d = k
    return d


class HPair:
    """A GaPair whose U has codimension one in the maximal ideal."""

    def __init__(self, pair: GaPair, complement: Optional[Sequence] = None) -> None:
        a = pair.algebra
        _require_valid(pair)
        m = maximal_ideal(a)
        if pair.n != m.dim - 1:
            raise AddactError("NOT_HYPERPLANE", "U must have codimension one in the maximal ideal")
        self.pair = pair
        self.degree = _pair_degree(a, pair.U)
        md = ideal_chain(a).power(self.degree)
        if complement is None:
            complement = next(v for v in md.basis if not pair.U.contains(v))
        s = tuple(to_rational(c) for c in complement)
        if not m.contains(s) or pair.U.contains(s):
            raise AddactError("BAD_COMPLEMENT", "complement vector must lie in m outside U")
        self.complement: Vector = s
        self.coord_basis: List[Vector] = [tuple(a.unit)] + list(pair.u_basis) + [s]
        self._to_coords = _columns_inverse(self.coord_basis)
        self.pi_row: Tuple[Fraction, ...] = tuple(self._to_coords[-1])
        self._prod: Dict[tuple, Vector] = {}

    @classmethod
    def from_subspace(cls, algebra: Algebra, u_basis: Sequence[Sequence], complement: Optional[Sequence] = None) -> "HPair":
        return cls(GaPair(algebra, u_basis), complement)

    @property
    def algebra(self) -> Algebra:
        return self.pair.algebra

    @property
    def n(self) -> int:
        return self.pair.n

    def coordinates(self, v: Sequence) -> list:
        """Coordinates (z_0, ..., z_{n+1}) of v in the basis (1, U-basis, S)."""
        return _apply(self._to_coords, v)

    def pi(self, v: Sequence):
        acc = 0
        for c, x in zip(self.pi_row, v):
            if c and x:
                acc = acc + c * x
        return acc

    def _basis_product(self, idx: Tuple[int, ...]) -> Vector:
        key = tuple(sorted(idx))
        if key not in self._prod:
            if len(key) == 1:
                out = self.coord_basis[key[0]]
            else:
                out = self.algebra.multiply(self._basis_product(key[:-1]), self.coord_basis[key[-1]])
            self._prod[key] = out
        return self._prod[key]

    def __repr__(self) -> str:
        return f"HPair(m={self.algebra.dim}, n={self.n}, d={self.degree})"


def degree(h: HPair) -> int:
    return h.degree


# ---------------------------------------------------------------------------
# equations


def _chart_basis(p: GaPair) -> Tuple[List[Vector], List[Vector]]:
    """(U-basis, complement) with the complement picked from the deepest powers of m first."""
    a = p.algebra
    chain = ideal_chain(a)
    picked: List[Tuple[int, Vector]] = []
    span = p.U
    for k in range(chain.length, 0, -1):
        for v in chain.power(k).basis:
            if not span.contains(v):
                picked.append((k, v))
                span = Subspace(a.dim, list(span.basis) + [v])
    picked.sort(key=lambda kv: kv[0])
    return list(p.u_basis), [v for _, v in picked]


def chart_equations(p: GaPair) -> List[MultiPoly]:
    """Equations pi(ln(1+z)) = 0 of exp(U) in the chart 1 + m, variables z_1..z_{m-1}."""
    _require_valid(p)
    a = p.algebra
    ub, comp = _chart_basis(p)
    basis = [tuple(a.unit)] + ub + comp
    to_coords = _columns_inverse(basis)
    nv = a.dim - 1
    z = [MultiPoly.zero(nv) for _ in range(a.dim)]
    for i, b in enumerate(basis[1:]):
        zi = MultiPoly.var(nv, i)
        z = [zk + zi * c if c else zk for zk, c in zip(z, b)]
    coords = _apply(to_coords, log_series(a, z))
    out = []
    for c in coords[1 + len(ub):]:
        out.append(c if isinstance(c, MultiPoly) else MultiPoly.constant(nv, c))
    return out


@dataclass(frozen=True)
class HomogEquation:
    """Homogeneous equation in z_0..z_{n+1} aligned with the basis (1, U-basis, S)."""

    poly: MultiPoly
    d: int

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def names(self) -> List[str]:
        return default_names(self.nvars, "z", 0)

    def to_str(self) -> str:
        return format_poly(self.poly, self.names)

    def dehomogenize(self) -> MultiPoly:
        """Set z_0 = 1; the result lives in z_1..z_{n+1}."""
        k = self.nvars - 1
        images = [MultiPoly.constant(k, 1)] + [MultiPoly.var(k, i) for i in range(k)]
        return self.poly.substitute(images)

    def __str__(self) -> str:
        return self.to_str()


def equation(h: HPair) -> HomogEquation:
    """z_0^d pi(ln(1 + z/z_0)) with z = z_1 u_1 + ... + z_{n+1} S."""
    a = h.algebra
    nv = h.n + 2
    z = [MultiPoly.zero(nv) for _ in range(a.dim)]
    for i, b in enumerate(h.coord_basis[1:], start=1):
        zi = MultiPoly.var(nv, i)
        z = [zk + zi * c if c else zk for zk, c in zip(z, b)]
    z0 = MultiPoly.var(nv, 0)
    total = MultiPoly.zero(nv)
    power = z
    for k in range(1, h.degree + 1):
        val = h.pi(power)
        if val:
            total = total + (z0 ** (h.degree - k)) * val * Fraction((-1) ** (k + 1), k)
        power = a.multiply(power, z)
    return HomogEquation(total, h.degree)


def quadratic_rank(e: HomogEquation) -> int:
    if e.d != 2:
        raise AddactError("NOT_QUADRATIC", f"equation has degree {e.d}")
    n = e.nvars
    mat = [[Fraction(0)] * n for _ in range(n)]
    for exp, c in e.poly.items():
        idx = [i for i, x in enumerate(exp) for _ in range(x)]
        i, j = idx
        if i == j:
            mat[i][i] += c
        else:
            mat[i][j] += c / 2
            mat[j][i] += c / 2
    return rank_of(mat, n)


# ---------------------------------------------------------------------------
# invariant form


class InvariantForm:
    """Symmetric d-linear form F(z^(1), ..., z^(d)) = (-1)^k k! (d-k-1)! pi(product of nilpotent parts)."""

    def __init__(self, h: HPair) -> None:
        self.h = h
        self.d = h.degree

    def on_basis(self, idx: Sequence[int]) -> Fraction:
        """Value on basis vectors of (1, U-basis, S) given by index; index 0 is the unit."""
        d = self.d
        k = sum(1 for i in idx if i == 0)
        if k == d:
            return Fraction(0)
        nil = tuple(i for i in idx if i != 0)
        val = self.h.pi(self.h._basis_product(nil))
        if not val:
            return Fraction(0)
        return (-1) ** k * math.factorial(k) * math.factorial(d - k - 1) * val

    def __call__(self, *args: Sequence) -> Fraction:
        if len(args) != self.d:
            raise ValueError(f"form takes {self.d} arguments")
        coords = [self.h.coordinates(v) for v in args]
        support = [[(i, c) for i, c in enumerate(cs) if c] for cs in coords]
        total = Fraction(0)
        for choice in itertools.product(*support):
            coeff = Fraction(1)
            for _, c in choice:
                coeff *= c
            total += coeff * self.on_basis([i for i, _ in choice])
        return total


def invariant_form(h: HPair) -> InvariantForm:
    return InvariantForm(h)


def _ideal_inside(h: HPair) -> Subspace:
    """Largest ideal contained in U: {z : z*A is inside U}."""
    a = h.algebra
    ann = kernel_rows([list(u) for u in h.pair.u_basis], a.dim) if h.pair.u_basis else [
        [Fraction(int(i == j)) for j in range(a.dim)] for i in range(a.dim)
    ]
    rows = []
    for j in range(a.dim):
        op = a.mult_operator(a.basis_vector(j)).tolist()
        for phi in ann:
            rows.append([sum((phi[r] * op[r][c] for r in range(a.dim)), Fraction(0)) for c in range(a.dim)])
    return Subspace(a.dim, kernel_rows(rows, a.dim))


def form_kernel(h: HPair) -> Subspace:
    """{z : F(z, y_2, ..., y_d) = 0 for all y}, cross-checked against the largest ideal inside U."""
    F = invariant_form(h)
    m = len(h.coord_basis)
    rows = []
    for rest in itertools.combinations_with_replacement(range(m), h.degree - 1):
        rows.append([F.on_basis((i,) + rest) for i in range(m)])
    ker = kernel_rows(rows, m)
    vecs = [[sum((c * b[k] for c, b in zip(v, h.coord_basis)), Fraction(0)) for k in range(m)] for v in ker]
    out = Subspace(m, vecs)
    if out != _ideal_inside(h):
        raise AddactError("INTERNAL_CONSISTENCY", "form kernel differs from the largest ideal inside U")
    return out


def is_nondegenerate(h: HPair) -> bool:
    return form_kernel(h).dim == 0


def quotient_algebra(a: Algebra, ideal: Subspace) -> Tuple[Algebra, List[List[Fraction]]]:
    """A / J with basis the first standard basis vectors independent mod J; returns (algebra, projection rows)."""
    cands = [tuple(a.unit)] + [a.basis_vector(i) for i in range(a.dim)]
    chosen = ideal.extend_to(cands)
    inv = _columns_inverse(chosen + list(ideal.basis))
    proj = inv[: len(chosen)]
    table = [[_apply(proj, a.multiply(u, v)) for v in chosen] for u in chosen]
    labels = [a.format_element(u) for u in chosen]
    return Algebra(table, unit=_apply(proj, a.unit), labels=labels), proj


def reduce(h: HPair) -> HPair:
    """Quotient pair (A / Ker F, U / Ker F); identity when already non-degenerate."""
    ker = form_kernel(h)
    if ker.dim == 0:
        return h
    q, proj = quotient_algebra(h.algebra, ker)
    images = [_apply(proj, u) for u in h.pair.u_basis]
    ub: List[list] = []
    span = Subspace(q.dim)
    for v in images:
        if not span.contains(v):
            ub.append(v)
            span = Subspace(q.dim, list(span.basis) + [v])
    return HPair.from_subspace(q, ub, _apply(proj, h.complement))


def surviving_coordinates(h: HPair) -> List[int]:
    """Indices of z_0..z_{n+1} kept by reduce (the cone coordinates are the rest)."""
    ker = form_kernel(h)
    keep = [0]
    span = ker
    for i, u in enumerate(h.pair.u_basis, start=1):
        if not span.contains(u):
            keep.append(i)
            span = Subspace(span.ambient, list(span.basis) + [u])
    keep.append(h.n + 1)
    return keep


def gorenstein_certificate(h: HPair) -> bool:
    """A Gorenstein, Soc A = m^d and m = U (+) m^d."""
    a = h.algebra
    if not invariants(a).is_gorenstein:
        return False
    md = ideal_chain(a).power(h.degree)
    if socle(a) != md:
        return False
    return h.pair.U.intersect(md).dim == 0 and h.pair.U.dim + md.dim == maximal_ideal(a).dim


def boundary_test(h: HPair, z: Sequence) -> bool:
    """True iff z^d lies in U."""
    a = h.algebra
    if not maximal_ideal(a).contains(z):
        raise AddactError("NOT_IN_MAXIMAL_IDEAL", "z must lie in the maximal ideal")
    return h.pair.U.contains(a.power(z, h.degree))


# ---------------------------------------------------------------------------
# constructions


def quadric_pair(n: int) -> HPair:
    """(A_n, U_n): K[S_1..S_n]/(S_i^2 - S_j^2, S_i S_j), and K[S]/(S^3) for n = 1."""
    from .artin import from_presentation
    from .multipoly import parse_poly

    if n < 1:
        raise AddactError("MALFORMED_INPUT", "n must be positive")
    if n == 1:
        gens = [parse_poly("S1^3", 1)]
    else:
        gens = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                gens.append(parse_poly(f"S{i}^2 - S{j}^2", n))
                gens.append(parse_poly(f"S{i}*S{j}", n))
    a = from_presentation(n, gens)
    return HPair.from_subspace(a, list(a.generators))


def adjoin_square_zero(h: HPair) -> HPair:
    """Pair (A + K e, U + K e) with e*m = e^2 = 0; e becomes the last U-basis vector."""
    a = h.algebra
    m = a.dim
    mi = maximal_ideal(a)
    unit_c = tuple(a.unit)
    # e * x = (unit coefficient of x) * e
    to_c = _columns_inverse([unit_c] + list(mi.basis))[0]
    table = []
    for i in range(m + 1):
        row = []
        for j in range(m + 1):
            if i < m and j < m:
                row.append(tuple(a.structure[i][j]) + (Fraction(0),))
            elif i == m and j == m:
                row.append(tuple(Fraction(0) for _ in range(m + 1)))
            else:
                other = j if i == m else i
                c = to_c[other]
                row.append(tuple(Fraction(0) for _ in range(m)) + (c,))
        table.append(row)
    big = Algebra(table, unit=unit_c + (Fraction(0),), labels=list(a.labels) + ["e"])
    ub = [tuple(u) + (Fraction(0),) for u in h.pair.u_basis] + [tuple(Fraction(int(k == m)) for k in range(m + 1))]
    return HPair.from_subspace(big, ub, h.complement + (Fraction(0),))


def random_hyperplane_pair(a: Algebra, rng: random.Random, sparsity: float = 0.5) -> Optional[HPair]:
    """U = kernel of a random sparse functional on m; None if U does not generate A."""
    m = maximal_ideal(a)
    if m.dim < 2:
        return None
    phi = [Fraction(rng.randint(-3, 3)) if rng.random() < sparsity else Fraction(0) for _ in range(m.dim)]
    if not any(phi):
        return None
    # U = {sum c_i b_i : sum phi_i c_i = 0}
    coeffs = kernel_rows([phi], m.dim)
    u = [[sum((c * b[k] for c, b in zip(v, m.basis)), Fraction(0)) for k in range(a.dim)] for v in coeffs]
    p = GaPair(a, u)
    from .ht import validate_pair

    if not validate_pair(p):
        return None
    return HPair(p)
