"""Finite-dimensional commutative unital algebras over Q given by structure constants.

Elements are plain tuples of coordinates in the stored basis.  Most routines
accept any coefficient ring that supports ``+`` and ``*`` with ``Fraction``
(``MultiPoly`` coefficients are used for symbolic exponentials).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AddactError
from .exact_core import QMatrix, Subspace, kernel_rows, matmul, rank_of, to_rational
from .multipoly import (
    GRLEX,
    Exp,
    GroebnerBasis,
    MonomialOrder,
    MultiPoly,
    default_names,
    format_monomial,
    groebner,
    standard_monomials,
)

INFINITE = math.inf

Vector = Tuple[Fraction, ...]


class Algebra:
    """Commutative associative unital algebra with basis e_0..e_{m-1}.

    ``structure[i][j]`` is the coordinate vector of e_i*e_j.  Algebras built
    from a presentation remember the images of the variables (``generators``)
    and the standard-monomial basis they were built on.
    """

    def __init__(
        self,
        structure: Sequence[Sequence[Sequence]],
        unit: Optional[Sequence] = None,
        labels: Optional[Sequence[str]] = None,
        generators: Optional[Sequence[Sequence]] = None,
        presentation: Optional[Tuple[int, GroebnerBasis, List[Exp]]] = None,
        embedding: Optional[Sequence[Sequence]] = None,
    ) -> None:
        m = len(structure)
        self.dim = m
        self.structure: Tuple[Tuple[Vector, ...], ...] = tuple(
            tuple(tuple(to_rational(c) for c in structure[i][j]) for j in range(m)) for i in range(m)
        )
        for i in range(m):
            if len(structure[i]) != m or any(len(v) != m for v in structure[i]):
                raise AddactError("MALFORMED_ALGEBRA", "structure constants must be an m x m x m tensor")
        self.unit: Vector = tuple(to_rational(c) for c in unit) if unit is not None else tuple(
            Fraction(int(k == 0)) for k in range(m)
        )
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(m)]
        self.generators = [tuple(to_rational(c) for c in g) for g in generators] if generators is not None else None
        self.presentation = presentation
        self.embedding = [tuple(v) for v in embedding] if embedding is not None else None
        self._sparse = [
            [[(k, c) for k, c in enumerate(self.structure[i][j]) if c != 0] for j in range(m)] for i in range(m)
        ]
        self._cache: Dict[str, object] = {}

    # elements -------------------------------------------------------------
    def zero(self) -> Vector:
        return tuple(Fraction(0) for _ in range(self.dim))

    def one(self) -> Vector:
        return self.unit

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def element(self, coeffs: Sequence) -> Vector:
        if len(coeffs) != self.dim:
            raise AddactError("DIMENSION_MISMATCH", f"element of length {len(coeffs)} in algebra of dim {self.dim}")
        return tuple(to_rational(c) for c in coeffs)

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self._sparse[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                t = xi * yj
                for k, c in row[j]:
                    out[k] = out[k] + t * c
        return tuple(Fraction(v) if isinstance(v, int) else v for v in out)

    def power(self, x: Sequence, k: int) -> tuple:
        out = self.unit
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def add(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, c, x: Sequence) -> tuple:
        return tuple(c * a for a in x)

    def mult_operator(self, x: Sequence) -> QMatrix:
        """Matrix of y -> x*y acting on column vectors."""
        cols = [self.multiply(x, self.basis_vector(j)) for j in range(self.dim)]
        return QMatrix([[cols[j][k] for j in range(self.dim)] for k in range(self.dim)], self.dim)

    def is_nilpotent(self, x: Sequence) -> bool:
        p = tuple(x)
        for _ in range(self.dim):
            if all(c == 0 for c in p):
                return True
            p = self.multiply(p, x)
        return all(c == 0 for c in p)

    def format_element(self, x: Sequence) -> str:
        from .multipoly import format_scalar

        parts = []
        for c, lab in zip(x, self.labels):
            if c == 0:
                continue
            mag = abs(c)
            body = lab if mag == 1 and lab != "1" else (format_scalar(mag) if lab == "1" else f"{format_scalar(mag)} * {lab}")
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, basis={self.labels})"


# ---------------------------------------------------------------------------
# construction


def from_presentation(
    nvars: int,
    gens: Sequence[MultiPoly],
    order: MonomialOrder = GRLEX,
    at_origin: bool = True,
    names: Optional[Sequence[str]] = None,
    cap: int = 10_000,
) -> Algebra:
    """K[S_1..S_n]/(gens) on its standard-monomial basis (first vector is 1)."""
    gb = groebner(list(gens), order)
    if gb.is_unit_ideal():
        raise AddactError("NOT_FINITE_CODIMENSION", "the ideal is the whole ring")
    lts = gb.leading_monomials()
    for i in range(nvars):
        if not any(lt[i] > 0 and sum(lt) == lt[i] for lt in lts):
            raise AddactError("NOT_FINITE_CODIMENSION", f"no power of variable {i + 1} leads a basis element")
    std = standard_monomials(gb, cap)
    return _algebra_on_standard_basis(nvars, gb, std, names, at_origin)


def _algebra_on_standard_basis(nvars, gb, std, names=None, at_origin=True) -> Algebra:
    m = len(std)
    index = {e: i for i, e in enumerate(std)}
    cache: Dict[Exp, Vector] = {}

    def coords(e: Exp) -> Vector:
        if e in cache:
            return cache[e]
        if e in index:
            v = tuple(Fraction(int(k == index[e])) for k in range(m))
        else:
            nf = gb.normal_form(MultiPoly.monomial(e))
            v = [Fraction(0)] * m
            for f, c in nf.items():
                v[index[f]] = c
            v = tuple(v)
        cache[e] = v
        return v

    table = [[coords(tuple(a + b for a, b in zip(std[i], std[j]))) for j in range(m)] for i in range(m)]
    names = list(names) if names else default_names(nvars, "S")
    labels = [format_monomial(e, names) or "1" for e in std]
    gens = [coords(tuple(int(k == i) for k in range(nvars))) for i in range(nvars)]
    alg = Algebra(table, labels=labels, generators=gens, presentation=(nvars, gb, list(std)))
    if at_origin:
        for i, g in enumerate(gens):
            if not alg.is_nilpotent(g):
                raise AddactError("NOT_SUPPORTED_AT_ORIGIN", f"variable {i + 1} is not nilpotent modulo the ideal")
    return alg


def from_structure_constants(c, unit=None, labels=None) -> Algebra:
    return Algebra(c, unit=unit, labels=labels)


def validate(a: Algebra) -> bool:
    """Exact check of commutativity, associativity and the unit axiom."""
    m = a.dim
    if len(a.unit) != m:
        return False
    e = [a.basis_vector(i) for i in range(m)]
    for i in range(m):
        if a.multiply(a.unit, e[i]) != e[i]:
            return False
        for j in range(i + 1, m):
            if a.structure[i][j] != a.structure[j][i]:
                return False
    for i in range(m):
        for j in range(m):
            ij = a.structure[i][j]
            for k in range(m):
                if a.multiply(ij, e[k]) != a.multiply(e[i], a.structure[j][k]):
                    return False
    return True


def multiply(a: Algebra, x, y) -> tuple:
    return a.multiply(x, y)


def mult_operator(a: Algebra, x) -> QMatrix:
    return a.mult_operator(x)


# ---------------------------------------------------------------------------
# spectra and local decomposition


def _matpow_is_zero(rows: List[List[Fraction]], k: int) -> bool:
    p = rows
    for _ in range(k - 1):
        if all(v == 0 for r in p for v in r):
            return True
        p = matmul(p, rows)
    return all(v == 0 for r in p for v in r)


def charpoly(rows: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Coefficients c_0..c_n of det(tI - M) (Faddeev-LeVerrier), c_n = 1."""
    n = len(rows)
    A = [[to_rational(x) for x in r] for r in rows]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        M = matmul(A, M)
        for i in range(n):
            M[i][i] += coeffs[n - k + 1]
        AM = matmul(A, M)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return coeffs


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Fraction]) -> Tuple[Dict[Fraction, int], int]:
    """Rational roots with multiplicity, and the degree of the leftover factor."""
    poly = [to_rational(c) for c in coeffs]
    while poly and poly[-1] == 0:
        poly.pop()
    roots: Dict[Fraction, int] = {}

    def deflate(p, r):
        # synthetic division by (t - r); p is low-to-high
        n = len(p) - 1
        q = [Fraction(0)] * n
        acc = Fraction(0)
        for k in range(n, 0, -1):
            acc = acc * r + p[k]
            q[k - 1] = acc
        rem = acc * r + p[0]
        return q, rem

    while len(poly) > 1 and poly[0] == 0:
        poly = poly[1:]
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
    if len(poly) <= 1:
        return roots, 0
    lcm = 1
    for c in poly:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in poly]
    cands = sorted({Fraction(s * p, q) for p in _divisors(ints[0]) for q in _divisors(ints[-1]) for s in (1, -1)})
    for r in cands:
        while len(poly) > 1:
            q, rem = deflate(poly, r)
            if rem != 0:
                break
            poly = q
            roots[r] = roots.get(r, 0) + 1
    return roots, len(poly) - 1


def _eigen_split(a: Algebra, x: Vector) -> Optional[List[Tuple[Fraction, Subspace]]]:
    """Generalized eigenspaces of L_x when it has several eigenvalues."""
    m = a.dim
    L = a.mult_operator(x).tolist()
    lam = sum(L[i][i] for i in range(m)) / m
    shifted = [[L[i][j] - (lam if i == j else 0) for j in range(m)] for i in range(m)]
    if _matpow_is_zero(shifted, m):
        return None
    roots, rest = rational_roots(charpoly(L))
    if rest:
        raise AddactError("IRRATIONAL_SPLITTING", "a multiplication operator has eigenvalues outside Q")
    out = []
    for r in sorted(roots):
        sh = [[L[i][j] - (r if i == j else 0) for j in range(m)] for i in range(m)]
        p = sh
        for _ in range(m - 1):
            p = matmul(p, sh)
        out.append((r, Subspace(m, kernel_rows(p, m))))
    return out


def _subalgebra(a: Algebra, space: Subspace, unit: Sequence) -> Algebra:
    basis = list(space.basis)
    table = [[space.coordinates(a.multiply(u, v)) for v in basis] for u in basis]
    emb = basis if a.embedding is None else [
        tuple(sum((c * w[k] for c, w in zip(u, a.embedding)), Fraction(0)) for k in range(len(a.embedding[0])))
        for u in basis
    ]
    return Algebra(table, unit=space.coordinates(unit), labels=[a.format_element(u) for u in basis], embedding=emb)


def local_decomposition(a: Algebra) -> List[Algebra]:
    """Split into local summands by iterated generalized-eigenspace splitting."""
    if "local" in a._cache:
        return a._cache["local"]  # type: ignore[return-value]
    result = None
    for i in range(a.dim):
        split = _eigen_split(a, a.basis_vector(i))
        if split is None:
            continue
        spaces = [s for _, s in split]
        # the unit decomposes uniquely along the direct sum of ideals
        allvecs = [v for s in spaces for v in s.basis]
        cols = [[v[k] for v in allvecs] for k in range(a.dim)]
        from .exact_core import solve

        coeff = solve(cols, a.unit)
        pieces = []
        pos = 0
        for s in spaces:
            part = [Fraction(0)] * a.dim
            for c, v in zip(coeff[pos:pos + s.dim], s.basis):
                part = [p + c * x for p, x in zip(part, v)]
            pos += s.dim
            pieces.append(_subalgebra(a, s, part))
        result = [piece for sub in pieces for piece in local_decomposition(sub)]
        break
    if result is None:
        result = [a]
    a._cache["local"] = result
    return result


def is_local(a: Algebra) -> bool:
    return len(local_decomposition(a)) == 1


def _eigenvalue(a: Algebra, x: Vector) -> Fraction:
    L = a.mult_operator(x)
    return sum(L[i, i] for i in range(a.dim)) / a.dim


def maximal_ideal(a: Algebra) -> Subspace:
    if "m" in a._cache:
        return a._cache["m"]  # type: ignore[return-value]
    if not is_local(a):
        raise AddactError("NOT_LOCAL", "algebra has more than one maximal ideal")
    vecs = []
    for i in range(a.dim):
        e = a.basis_vector(i)
        lam = _eigenvalue(a, e)
        vecs.append(tuple(x - lam * u for x, u in zip(e, a.unit)))
    m = Subspace(a.dim, vecs)
    a._cache["m"] = m
    return m


def product_space(a: Algebra, V: Subspace, W: Subspace) -> Subspace:
    return Subspace(a.dim, [a.multiply(v, w) for v in V.basis for w in W.basis])


@dataclass(frozen=True)
class IdealChain:
    """Powers m, m^2, ..., m^l = 0 of the maximal ideal."""

    subspaces: Tuple[Subspace, ...]

    @property
    def length(self) -> int:
        return len(self.subspaces)

    def power(self, k: int) -> Subspace:
        """m^k for k >= 1 (zero beyond the chain)."""
        if k <= 0:
            raise ValueError("k must be positive")
        if k > len(self.subspaces):
            return self.subspaces[-1]
        return self.subspaces[k - 1]


def ideal_chain(a: Algebra) -> IdealChain:
    if "chain" in a._cache:
        return a._cache["chain"]  # type: ignore[return-value]
    m = maximal_ideal(a)
    chain = [m]
    while chain[-1].dim > 0:
        nxt = product_space(a, chain[-1], m)
        if nxt.dim == chain[-1].dim:
            raise AddactError("NOT_LOCAL", "maximal ideal is not nilpotent")
        chain.append(nxt)
    out = IdealChain(tuple(chain))
    a._cache["chain"] = out
    return out


def hilbert_samuel(a: Algebra) -> Tuple[int, ...]:
    chain = ideal_chain(a)
    dims = [a.dim] + [s.dim for s in chain.subspaces]
    return tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))


def socle(a: Algebra) -> Subspace:
    """Annihilator of the radical; for local algebras the joint kernel of L_u, u in m."""
    summands = local_decomposition(a)
    if len(summands) == 1:
        m = maximal_ideal(a)
        rows = [r for u in m.basis for r in a.mult_operator(u).tolist()]
        if not rows:
            return Subspace.full(a.dim)
        return Subspace(a.dim, kernel_rows(rows, a.dim))
    vecs = []
    for s in summands:
        soc = socle(s)
        for v in soc.basis:
            vecs.append([sum((c * w[k] for c, w in zip(v, s.embedding)), Fraction(0)) for k in range(a.dim)])
    return Subspace(a.dim, vecs)


@dataclass(frozen=True)
class AlgebraInvariants:
    dim: int
    is_local: bool
    hilbert_samuel: Optional[Tuple[int, ...]]
    socle_dim: int
    is_gorenstein: bool
    nilpotency_index: Optional[int]
    num_maximal_ideals: int

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "is_local": self.is_local,
            "hilbert_samuel": list(self.hilbert_samuel) if self.hilbert_samuel is not None else None,
            "socle_dim": self.socle_dim,
            "is_gorenstein": self.is_gorenstein,
            "nilpotency_index": self.nilpotency_index,
            "num_maximal_ideals": self.num_maximal_ideals,
        }


def invariants(a: Algebra) -> AlgebraInvariants:
    summands = local_decomposition(a)
    if len(summands) == 1:
        hs = hilbert_samuel(a)
        soc = socle(a).dim
        return AlgebraInvariants(a.dim, True, hs, soc, soc == 1, len(hs), 1)
    parts = [invariants(s) for s in summands]
    return AlgebraInvariants(
        a.dim,
        False,
        None,
        sum(p.socle_dim for p in parts),
        all(p.is_gorenstein for p in parts),
        None,
        len(summands),
    )


# ---------------------------------------------------------------------------
# exponential and logarithm


def _series(a: Algebra, z: Sequence, coeff) -> tuple:
    out = list(a.zero())
    term = tuple(a.unit)
    for k in range(a.dim + 1):
        c = coeff(k)
        if c:
            out = [o + c * t for o, t in zip(out, term)]
        term = a.multiply(term, z)
        if all(not t for t in term):
            break
    return tuple(out)


def exp_series(a: Algebra, z: Sequence) -> tuple:
    """sum z^k/k! without a nilpotency check (used with symbolic coefficients)."""
    return _series(a, z, lambda k: Fraction(1, math.factorial(k)))


def log_series(a: Algebra, z: Sequence) -> tuple:
    """sum (-1)^(k+1) z^k / k, i.e. ln(1+z), without a nilpotency check."""
    return _series(a, z, lambda k: Fraction((-1) ** (k + 1), k) if k else 0)


def _require_nilpotent(a: Algebra, z: Sequence) -> None:
    if not a.is_nilpotent(z):
        raise AddactError("NOT_NILPOTENT", "element is not nilpotent")


def exp_nilpotent(a: Algebra, z: Sequence) -> tuple:
    _require_nilpotent(a, z)
    return exp_series(a, z)


def log_one_plus(a: Algebra, z: Sequence) -> tuple:
    _require_nilpotent(a, z)
    return log_series(a, z)


# ---------------------------------------------------------------------------
# orbits and regular representations


def orbit_count_projective(a: Algebra):
    """Number of orbits of exp(m)-type action on P(A): finite iff every summand is K[S]/(S^k)."""
    count = 1
    for s in local_decomposition(a):
        if s.dim > 1:
            chain = ideal_chain(s)
            if s.dim - 1 - chain.power(2).dim > 1:
                return INFINITE
        count *= s.dim + 1
    return count - 1


def _check_commuting(mats: Sequence[QMatrix]) -> None:
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mats[i] @ mats[j] != mats[j] @ mats[i]:
                raise AddactError("NOT_COMMUTING", f"matrices {i} and {j} do not commute")


def _algebra_span(mats: Sequence[QMatrix], unital: bool) -> List[List[List[Fraction]]]:
    """Basis of the (unital) associative algebra generated by commuting matrices."""
    n = mats[0].rows if mats else 0
    flat = lambda M: [x for r in M for x in r]  # noqa: E731
    basis: List[List[List[Fraction]]] = []
    space = Subspace(n * n)
    frontier = [QMatrix.identity(n).tolist()] if unital else []
    frontier += [M.tolist() for M in mats]
    while frontier:
        M = frontier.pop()
        if space.contains(flat(M)):
            continue
        space = Subspace(n * n, list(space.basis) + [flat(M)])
        basis.append(M)
        frontier.extend(matmul(G.tolist(), M) for G in mats)
    return basis


def cyclic_vector(matrices: Sequence[QMatrix], seed: int = 0) -> Optional[Vector]:
    """A vector v with span(algebra * v) = K^m, or None if the search finds none."""
    if not matrices:
        return None
    _check_commuting(matrices)
    n = matrices[0].rows
    alg = _algebra_span(matrices, unital=True)

    def generates(v) -> bool:
        return rank_of([[sum((r[j] * v[j] for j in range(n)), Fraction(0)) for r in M] for M in alg], n) == n

    candidates = [tuple(Fraction(int(i == k)) for k in range(n)) for i in range(n)]
    rng = random.Random(seed)
    candidates += [tuple(Fraction(rng.randint(-9, 9)) for _ in range(n)) for _ in range(16)]
    for v in candidates:
        if generates(v):
            return v
    return None


def kravchuk_number(matrices: Sequence[QMatrix]) -> int:
    """m - dim(n K^m), n the non-unital algebra generated by the (nilpotent) matrices."""
    if not matrices:
        return 0
    _check_commuting(matrices)
    n = matrices[0].rows
    nil = _algebra_span(matrices, unital=False)
    image = [[M[i][j] for i in range(n)] for M in nil for j in range(n)]
    return n - rank_of(image, n)


def regular_representation(a: Algebra, space: Optional[Subspace] = None) -> List[QMatrix]:
    """Multiplication operators L_u for u in the basis of ``space`` (default m)."""
    space = maximal_ideal(a) if space is None else space
    return [a.mult_operator(u) for u in space.basis]
