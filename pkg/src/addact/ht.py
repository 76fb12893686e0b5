"""Pairs (A, U), ideals, generating subspaces and cyclic representations.

Conventions
-----------
* ``GaPair.u_basis`` is an ordered basis s_1..s_n of U; the polynomial ring
  K[S_1..S_n] maps onto A by S_i -> s_i.
* The mu-basis of A is the image of the standard monomials of the kernel
  ideal (graded lexicographic order), so mu_1 = 1.
* ``representation`` returns rho(a) = multiplication by exp(a_1 s_1 + ... + a_n s_n).
  With this sign the pairing satisfies <rho(b) g | f> = <g | f(x + b)>.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .artin import Algebra, _algebra_on_standard_basis, exp_series, invariants, maximal_ideal, socle
from .errors import AddactError
from .exact_core import QMatrix, Subspace, inverse, kernel_rows, rank_of, to_rational
from .multipoly import (
    GRLEX,
    Exp,
    GroebnerBasis,
    MultiPoly,
    buchberger_moller,
    canonical_span,
    default_names,
    exp_factorial,
    format_poly,
    monomials_of_degree,
    pairing,
    standard_monomials,
    translate,
)


class GaPair:
    """A local algebra together with an ordered basis of a subspace U of its maximal ideal."""

    def __init__(self, algebra: Algebra, u_basis: Sequence[Sequence]) -> None:
        self.algebra = algebra
        self.u_basis: List[Tuple[Fraction, ...]] = [tuple(to_rational(c) for c in u) for u in u_basis]
        self.U = Subspace(algebra.dim, self.u_basis)
        if self.U.dim != len(self.u_basis):
            raise AddactError("DEPENDENT_BASIS", "the U-basis vectors are linearly dependent")
        self._cache: Dict[str, object] = {}

    @classmethod
    def maximal(cls, algebra: Algebra) -> "GaPair":
        """U = m, using the variables' images when the algebra came from a presentation."""
        m = maximal_ideal(algebra)
        gens = algebra.generators
        if gens is not None and Subspace(algebra.dim, gens) == m and len(gens) == m.dim:
            return cls(algebra, gens)
        return cls(algebra, m.basis)

    @property
    def n(self) -> int:
        return len(self.u_basis)

    @property
    def m(self) -> int:
        return self.algebra.dim

    def __repr__(self) -> str:
        return f"GaPair(m={self.m}, n={self.n})"


def subalgebra_closure(a: Algebra, vectors: Sequence[Sequence]) -> Subspace:
    """Span of all products of the given vectors together with 1."""
    space = Subspace(a.dim, [a.unit])
    frontier = [a.unit]
    while frontier:
        nxt = []
        for v in frontier:
            for u in vectors:
                w = a.multiply(v, u)
                if not space.contains(w):
                    space = Subspace(a.dim, list(space.basis) + [w])
                    nxt.append(w)
        frontier = nxt
    return space


def validate_pair(p: GaPair) -> bool:
    a = p.algebra
    try:
        m = maximal_ideal(a)
    except AddactError:
        return False
    if not m.contains_subspace(p.U):
        return False
    return subalgebra_closure(a, p.u_basis).dim == a.dim


def _require_valid(p: GaPair) -> None:
    if "valid" not in p._cache:
        p._cache["valid"] = validate_pair(p)
    if not p._cache["valid"]:
        raise AddactError("INVALID_PAIR", "U must lie in the maximal ideal and generate the algebra")


def _monomial_images(p: GaPair):
    a = p.algebra
    cache: Dict[Exp, tuple] = {(0,) * p.n: a.unit}

    def image(e: Exp) -> tuple:
        if e in cache:
            return cache[e]
        i = next(k for k, x in enumerate(e) if x)
        prev = list(e)
        prev[i] -= 1
        v = a.multiply(image(tuple(prev)), p.u_basis[i])
        cache[e] = v
        return v

    return image


def _mu(p: GaPair) -> Tuple[GroebnerBasis, List[Exp], List[tuple]]:
    if "mu" not in p._cache:
        _require_valid(p)
        image = _monomial_images(p)
        gb, std = buchberger_moller(p.n, image, GRLEX)
        p._cache["mu"] = (gb, std, [image(e) for e in std])
    return p._cache["mu"]  # type: ignore[return-value]


def ideal_from_pair(p: GaPair) -> GroebnerBasis:
    """Reduced Groebner basis of ker(K[S_1..S_n] -> A, S_i -> s_i)."""
    return _mu(p)[0]


def mu_basis(p: GaPair) -> Tuple[List[Exp], List[tuple]]:
    _, std, images = _mu(p)
    return std, images


def _mu_inverse(p: GaPair) -> List[List[Fraction]]:
    if "mu_inv" not in p._cache:
        _, imgs = mu_basis(p)
        cols = [[v[k] for v in imgs] for k in range(p.m)]
        p._cache["mu_inv"] = inverse(cols)
    return p._cache["mu_inv"]  # type: ignore[return-value]


def to_mu_coordinates(p: GaPair, v: Sequence) -> tuple:
    inv = _mu_inverse(p)
    out = []
    for row in inv:
        acc = 0
        for c, x in zip(row, v):
            if c and x:
                acc = acc + c * x
        out.append(acc)
    return tuple(out)


def element_as_polynomial(p: GaPair, g: Sequence) -> MultiPoly:
    """The element g of A written as a combination of standard monomials in S."""
    std, _ = mu_basis(p)
    c = to_mu_coordinates(p, g)
    return MultiPoly(p.n, {e: x for e, x in zip(std, c) if x})


# ---------------------------------------------------------------------------
# generating subspaces


@dataclass(frozen=True)
class GeneratingSubspace:
    """Subspace of K[x_1..x_n] stored by a canonical (rref) basis."""

    nvars: int
    basis: Tuple[MultiPoly, ...]

    @classmethod
    def span(cls, nvars: int, polys) -> "GeneratingSubspace":
        return cls(nvars, canonical_span(polys, nvars))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: MultiPoly) -> bool:
        return canonical_span(list(self.basis) + [f], self.nvars) == self.basis

    def is_translation_invariant(self) -> bool:
        return all(self.contains(f.diff(i)) for f in self.basis for i in range(self.nvars))

    def contains_constants(self) -> bool:
        return self.contains(MultiPoly.constant(self.nvars, 1))

    def is_nondegenerate(self) -> bool:
        rows = [[f.coeff(tuple(int(k == i) for k in range(self.nvars))) for f in self.basis] for i in range(self.nvars)]
        return rank_of(rows, len(self.basis)) == self.nvars if self.basis else self.nvars == 0

    def is_generating(self) -> bool:
        return self.contains_constants() and self.is_translation_invariant() and self.is_nondegenerate()

    def is_basic(self) -> bool:
        return self.dim == self.nvars + 1

    def to_strs(self, names: Optional[Sequence[str]] = None) -> List[str]:
        names = names or default_names(self.nvars, "x")
        return [format_poly(f, names) for f in self.basis]


def _symbolic_exp(p: GaPair, offset: int = 0, total: Optional[int] = None) -> tuple:
    """exp(sum a_i s_i) with coefficients in a ring whose variables offset..offset+n-1 are a_i."""
    total = p.n if total is None else total
    z = [MultiPoly.zero(total) for _ in range(p.m)]
    for i, u in enumerate(p.u_basis):
        ai = MultiPoly.var(total, offset + i)
        z = [zk + ai * c if c else zk for zk, c in zip(z, u)]
    return exp_series(p.algebra, z)


def generating_subspace(p: GaPair) -> GeneratingSubspace:
    """Span of the coefficient functions of exp(x_1 s_1 + ... + x_n s_n)."""
    _require_valid(p)
    E = _symbolic_exp(p)
    fs = to_mu_coordinates(p, E)
    return GeneratingSubspace.span(p.n, [f for f in fs if isinstance(f, MultiPoly)] + [
        MultiPoly.constant(p.n, f) for f in fs if not isinstance(f, MultiPoly) and f
    ])


def _check_ideal_at_origin(gb: GroebnerBasis) -> Tuple[List[Exp], int]:
    if gb.is_unit_ideal():
        raise AddactError("DEGENERATE_INPUT", "unit ideal")
    # the variables must stay linearly independent modulo I
    nfs = [gb.normal_form(MultiPoly.var(gb.nvars, i)) for i in range(gb.nvars)]
    support = sorted({e for f in nfs for e, _ in f.items()})
    if rank_of([[f.coeff(e) for e in support] for f in nfs], len(support)) < gb.nvars:
        raise AddactError("DEGENERATE_INPUT", "the ideal contains a linear form")
    try:
        std = standard_monomials(gb, 5000)
    except AddactError as exc:
        raise AddactError("DEGENERATE_INPUT", "ideal of infinite codimension") from exc
    m = len(std)
    for i in range(gb.nvars):
        e = tuple(m if k == i else 0 for k in range(gb.nvars))
        if not gb.contains(MultiPoly.monomial(e)):
            raise AddactError("DEGENERATE_INPUT", "ideal is not supported at the origin")
    top = next(d for d in range(m + 1) if all(gb.contains(MultiPoly.monomial(e)) for e in monomials_of_degree(gb.nvars, d)))
    return std, top


def v_from_ideal(gb: GroebnerBasis) -> GeneratingSubspace:
    """V_I = {f : <g|f> = 0 for all g in I}, computed inside polynomials of degree < l."""
    std, top = _check_ideal_at_origin(gb)
    n = gb.nvars
    monos = [e for d in range(top) for e in monomials_of_degree(n, d)]
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    stdset = set(std)
    for mu in monos:
        if mu in stdset:
            continue
        nf = gb.normal_form(MultiPoly.monomial(mu))
        row = [Fraction(0)] * len(monos)
        row[index[mu]] += exp_factorial(mu)
        for nu, c in nf.items():
            row[index[nu]] -= c * exp_factorial(nu)
        rows.append(row)
    ker = kernel_rows(rows, len(monos)) if rows else [
        [Fraction(int(i == j)) for j in range(len(monos))] for i in range(len(monos))
    ]
    polys = [MultiPoly(n, {monos[i]: c for i, c in enumerate(v) if c}) for v in ker]
    return GeneratingSubspace.span(n, polys)


def ideal_from_v(v: GeneratingSubspace) -> GroebnerBasis:
    """I_V = {g : <g|f> = 0 for all f in V} as a reduced Groebner basis."""
    if not v.is_generating():
        raise AddactError("DEGENERATE_INPUT", "V must contain constants, be translation invariant and non-degenerate")

    def image(e: Exp):
        w = exp_factorial(e)
        return [f.coeff(e) * w for f in v.basis]

    gb, _ = buchberger_moller(v.nvars, image, GRLEX)
    return gb


def algebra_from_ideal(gb: GroebnerBasis) -> Algebra:
    std = standard_monomials(gb)
    return _algebra_on_standard_basis(gb.nvars, gb, std)


# ---------------------------------------------------------------------------
# representations and actions


class SymbolicMatrix:
    """Square matrix with polynomial entries in parameters a_1..a_n."""

    def __init__(self, entries: Sequence[Sequence], nvars: int, names: Optional[Sequence[str]] = None) -> None:
        self.nvars = nvars
        self.entries: Tuple[Tuple[MultiPoly, ...], ...] = tuple(
            tuple(e if isinstance(e, MultiPoly) else MultiPoly.constant(nvars, e) for e in row) for row in entries
        )
        self.names = list(names) if names else default_names(nvars, "a")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx) -> MultiPoly:
        i, j = idx
        return self.entries[i][j]

    def evaluate(self, point: Sequence) -> QMatrix:
        return QMatrix([[e.evaluate([to_rational(x) for x in point]) for e in row] for row in self.entries])

    def __matmul__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        n = self.size
        out = [[sum((self.entries[i][k] * other.entries[k][j] for k in range(n)), MultiPoly.zero(self.nvars))
                for j in range(n)] for i in range(n)]
        return SymbolicMatrix(out, self.nvars, self.names)

    def substitute(self, images: Sequence[MultiPoly]) -> "SymbolicMatrix":
        target = images[0].nvars
        return SymbolicMatrix([[e.substitute(images) for e in row] for row in self.entries], target)

    def determinant_is_one(self) -> bool:
        from .exact_core import det

        # polynomial identity checked at enough random rational points for the degree
        rng = random.Random(7)
        deg = max(e.total_degree() for row in self.entries for e in row) * self.size + 1
        for _ in range(max(deg, 3)):
            pt = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(self.nvars)]
            if det(self.evaluate(pt).tolist()) != 1:
                return False
        return True

    def to_strs(self) -> List[List[str]]:
        return [[format_poly(e, self.names) for e in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SymbolicMatrix({self.to_strs()})"


def representation(p: GaPair) -> SymbolicMatrix:
    """rho(a) = multiplication by exp(a_1 s_1 + ... + a_n s_n) in the mu-basis."""
    _require_valid(p)
    E = _symbolic_exp(p)
    _, imgs = mu_basis(p)
    cols = [to_mu_coordinates(p, p.algebra.multiply(E, b)) for b in imgs]
    return SymbolicMatrix([[cols[j][i] for j in range(p.m)] for i in range(p.m)], p.n)


@dataclass(frozen=True)
class ProjectiveAction:
    """Coordinates of (a_1..a_n).[z_0 : ... : z_n]; ring variables are a_1..a_n, z_0..z_n."""

    n: int
    formulas: Tuple[MultiPoly, ...]

    @property
    def names(self) -> List[str]:
        return default_names(self.n, "a") + default_names(self.n + 1, "z", 0)

    def to_strs(self) -> List[str]:
        return [format_poly(f, self.names) for f in self.formulas]

    def grouped(self) -> List[str]:
        """Each coordinate as sum of (polynomial in a) * z_k, highest z first."""
        out = []
        for f in self.formulas:
            parts: Dict[int, Dict[Exp, Fraction]] = {}
            for e, c in f.items():
                k = next(i for i in range(self.n + 1) if e[self.n + i])
                parts.setdefault(k, {})[e[: self.n]] = c
            terms = []
            for k in sorted(parts, reverse=True):
                coeff = MultiPoly(self.n, parts[k])
                z = f"z{k}"
                text = format_poly(coeff, default_names(self.n, "a"))
                if text == "1":
                    body, sign = z, "+"
                elif text == "-1":
                    body, sign = z, "-"
                elif len(coeff) == 1:
                    sign = "-" if text.startswith("-") else "+"
                    body = f"{text.lstrip('-')}*{z}"
                else:
                    sign, body = "+", f"({text})*{z}"
                terms.append((sign, body))
            text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, body in terms[1:]:
                text += f" {sign} {body}"
            out.append(text)
        return out

    def text(self) -> str:
        return "[" + " : ".join(self.grouped()) + "]"


def projective_action(a: Algebra) -> ProjectiveAction:
    """Action of exp(m) on P(A) in coordinates z_0 + sum z_i mu_i (U = m)."""
    p = GaPair.maximal(a)
    n = p.n
    total = 2 * n + 1
    rho = representation(p)
    lift = [MultiPoly.var(total, i) for i in range(n)]
    zs = [MultiPoly.var(total, n + k) for k in range(p.m)]
    formulas = []
    for i in range(p.m):
        acc = MultiPoly.zero(total)
        for k in range(p.m):
            entry = rho[i, k]
            if entry:
                acc = acc + entry.substitute(lift) * zs[k]
        formulas.append(acc)
    return ProjectiveAction(n, tuple(formulas))


def fixed_locus(a: Algebra) -> Subspace:
    """Fixed points of the action on P(A) form P(Soc A)."""
    maximal_ideal(a)
    return socle(a)


def _closure_under_derivatives(f: MultiPoly) -> Tuple[MultiPoly, ...]:
    seen = [f]
    frontier = [f]
    while frontier:
        nxt = []
        for g in frontier:
            for i in range(f.nvars):
                h = g.diff(i)
                if not h.is_zero():
                    nxt.append(h)
                    seen.append(h)
        frontier = nxt
    return canonical_span(seen, f.nvars)


def is_cyclic_module(v: GeneratingSubspace, seed: int = 0) -> bool:
    """True iff some element of V generates V under the partial derivatives.

    A positive answer comes from an explicit generator; a negative one is
    confirmed against the Gorenstein property of the associated algebra.
    """
    rng = random.Random(seed)
    cands = list(v.basis)
    for _ in range(16):
        cands.append(sum((f * rng.randint(-7, 7) for f in v.basis), MultiPoly.zero(v.nvars)))
    found = any(not f.is_zero() and len(_closure_under_derivatives(f)) == v.dim for f in cands)
    gorenstein = invariants(algebra_from_ideal(ideal_from_v(v))).is_gorenstein
    if found != gorenstein:
        raise AddactError("INTERNAL_CONSISTENCY", "cyclic-vector search disagrees with the Gorenstein test")
    return found


def duality_check(p: GaPair, beta: Sequence, g: Sequence, f: MultiPoly) -> bool:
    """Check <rho(beta) g | f> == <g | f(x + beta)> for g in A, f in V."""
    a = p.algebra
    beta = [to_rational(b) for b in beta]
    e = tuple(sum((b * u[k] for b, u in zip(beta, p.u_basis)), Fraction(0)) for k in range(a.dim))
    moved = a.multiply(exp_series(a, e), g)
    lhs = pairing(element_as_polynomial(p, moved), f)
    rhs = pairing(element_as_polynomial(p, g), translate(f, beta))
    return lhs == rhs


def translation_matrix(v: GeneratingSubspace, beta: Sequence) -> QMatrix:
    """Matrix of f -> f(x + beta) on V in its canonical basis (columns are images)."""
    cols = []
    for f in v.basis:
        g = translate(f, beta)
        # coordinates via the pivot structure of the canonical basis
        c = _coords_in_span(v, g)
        cols.append(c)
    return QMatrix([[cols[j][i] for j in range(v.dim)] for i in range(v.dim)])


def _coords_in_span(v: GeneratingSubspace, g: MultiPoly) -> List[Fraction]:
    from .exact_core import solve

    monos = sorted({e for f in list(v.basis) + [g] for e, _ in f.items()})
    rows = [[f.coeff(e) for f in v.basis] for e in monos]
    x = solve(rows, [g.coeff(e) for e in monos])
    if x is None:
        raise AddactError("NOT_IN_SUBSPACE", "polynomial is outside V")
    return x
