"""Fans, Demazure roots, complete collections and Cox-ring derivations.

A root e with distinguished ray rho satisfies <p_rho, e> = -1 and
<p_rho', e> >= 0 for the other rays.  Its derivation on the Cox ring is
x^a d/dx_rho with a_rho' = <p_rho', e> and a_rho = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import AddactError
from .exact_core import (
    ZMatrix,
    dot,
    dual_basis,
    integer_vector,
    is_lattice_basis,
    kernel_rows,
    primitive,
    rank_of,
    smith_normal_form,
    solve,
)
from .multipoly import MultiPoly, default_names, format_monomial, monomials_up_to

IVec = Tuple[int, ...]


# ---------------------------------------------------------------------------
# cones and fans


def _extreme_rays_of_kernel(cols: Sequence[Sequence]) -> List[List[Fraction]]:
    """Minimal-support nonnegative solutions of sum l_k c_k = 0 (the extreme rays of that cone)."""
    k = len(cols)
    dim = len(cols[0]) if cols else 0
    out = []
    for size in range(1, min(k, dim + 1) + 1):
        for sub in itertools.combinations(range(k), size):
            mat = [[cols[j][r] for j in sub] for r in range(dim)]
            ker = kernel_rows(mat, size)
            if len(ker) != 1:
                continue
            v = ker[0]
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                sol = [Fraction(0)] * k
                for j, x in zip(sub, v):
                    sol[j] = abs(x)
                out.append(sol)
    return out


def _in_cone(v: Sequence, gens: Sequence[Sequence]) -> bool:
    """Exact membership of v in the cone spanned by gens."""
    if not any(v):
        return True
    cols = [list(g) for g in gens] + [[-x for x in v]]
    return any(sol[-1] > 0 for sol in _extreme_rays_of_kernel(cols))


@dataclass(frozen=True)
class FanReport:
    is_valid: bool
    is_complete: bool
    is_smooth: bool

    def as_dict(self) -> dict:
        return {"is_valid": self.is_valid, "is_complete": self.is_complete, "is_smooth": self.is_smooth}


class Fan:
    """Rays p_rho (primitive integer vectors) and maximal cones as sets of ray indices."""

    def __init__(self, rank: int, rays: Sequence[Sequence[int]], cones: Sequence[Sequence[int]],
                 var_names: Optional[Sequence[str]] = None) -> None:
        self.rank = rank
        self.rays: Tuple[IVec, ...] = tuple(tuple(int(x) for x in r) for r in rays)
        self.cones: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(int(i) for i in c)) for c in cones)
        self.var_names = list(var_names) if var_names else default_names(len(self.rays), "x")
        self._cache: Dict[str, object] = {}
        self._check_shape()

    def _check_shape(self) -> None:
        if any(len(r) != self.rank for r in self.rays):
            raise AddactError("MALFORMED_FAN", "ray of wrong length")
        if len(set(self.rays)) != len(self.rays):
            raise AddactError("MALFORMED_FAN", "rays must be distinct")
        for r in self.rays:
            if not any(r) or primitive(r) != r:
                raise AddactError("MALFORMED_FAN", f"ray {list(r)} is not primitive")
        for c in self.cones:
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise AddactError("MALFORMED_FAN", "cone refers to an unknown ray")
        if len(self.var_names) != len(self.rays):
            raise AddactError("MALFORMED_FAN", "one variable name per ray")

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def pairing(self, ray: int, e: Sequence) -> int:
        return dot(self.rays[ray], e)

    def is_simplicial(self) -> bool:
        return all(rank_of([self.rays[i] for i in c], self.rank) == len(c) for c in self.cones)

    def faces(self, cone: Sequence[int]) -> List[FrozenSet[int]]:
        """All faces of a maximal cone as ray-index sets (including the empty face and the cone)."""
        cone = tuple(cone)
        key = ("faces", cone)
        if key in self._cache:
            return self._cache[key]  # type: ignore[return-value]
        rays = [self.rays[i] for i in cone]
        if rank_of(rays, self.rank) == len(cone):
            out = [frozenset(s) for k in range(len(cone) + 1) for s in itertools.combinations(cone, k)]
        else:
            facets = _cone_facets(self.rays, cone, self.rank)
            found = {frozenset(cone)}
            frontier = {frozenset(cone)}
            while frontier:
                nxt = set()
                for f in frontier:
                    for g in facets:
                        h = f & g
                        if h not in found:
                            found.add(h)
                            nxt.add(h)
                frontier = nxt
            out = sorted(found, key=lambda s: (len(s), sorted(s)))
        self._cache[key] = out
        return out

    def all_cones(self) -> List[FrozenSet[int]]:
        seen = set()
        for c in self.cones:
            seen.update(self.faces(c))
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def is_cone(self, rays: Sequence[int]) -> bool:
        s = frozenset(rays)
        return any(s in self.faces(c) for c in self.cones if s <= set(c))

    def as_dict(self) -> dict:
        return {"rank": self.rank, "rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.cones]}

    def __eq__(self, other) -> bool:
        return isinstance(other, Fan) and (self.rank, self.rays, sorted(self.cones)) == (
            other.rank, other.rays, sorted(other.cones))

    def __repr__(self) -> str:
        return f"Fan(rank={self.rank}, rays={[list(r) for r in self.rays]}, cones={[list(c) for c in self.cones]})"


def _cone_facets(rays, cone: Sequence[int], n: int) -> List[FrozenSet[int]]:
    """Facets of a full-dimensional cone (as ray sets) via supporting hyperplanes through n-1 rays."""
    out = set()
    for sub in itertools.combinations(cone, n - 1):
        vecs = [rays[i] for i in sub]
        if rank_of(vecs, n) != n - 1:
            continue
        normal = kernel_rows(vecs, n)[0] if vecs else [Fraction(1)]
        vals = [dot(normal, rays[i]) for i in cone]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            out.add(frozenset(i for i, v in zip(cone, vals) if v == 0))
    return sorted(out, key=sorted)


def _validate(f: Fan) -> Tuple[bool, bool, bool, str]:
    n = f.rank
    for c in f.cones:
        rays = [f.rays[i] for i in c]
        # strongly convex: no nonnegative nontrivial relation
        if _extreme_rays_of_kernel([list(r) for r in rays]):
            return False, False, False, f"cone {list(c)} is not strongly convex"
        if rank_of(rays, n) != len(c):
            for i in c:
                others = [f.rays[j] for j in c if j != i]
                if _in_cone(f.rays[i], others):
                    return False, False, False, f"ray {i} is not extremal in cone {list(c)}"
    for a, b in itertools.combinations(range(len(f.cones)), 2):
        ca, cb = f.cones[a], f.cones[b]
        common = set(ca) & set(cb)
        if not (frozenset(common) in f.faces(ca) and frozenset(common) in f.faces(cb)):
            return False, False, False, f"cones {list(ca)} and {list(cb)} meet in a non-face"
        cols = [list(f.rays[i]) for i in ca] + [[-x for x in f.rays[j]] for j in cb]
        outside = [i not in common for i in ca] + [j not in common for j in cb]
        for sol in _extreme_rays_of_kernel(cols):
            if any(x > 0 and o for x, o in zip(sol, outside)):
                return False, False, False, f"cones {list(ca)} and {list(cb)} overlap improperly"
    used = {i for c in f.cones for i in c}
    if used != set(range(f.nrays)):
        return False, False, False, "every ray must lie in some cone"
    complete = bool(f.cones) and all(rank_of([f.rays[i] for i in c], n) == n for c in f.cones)
    if complete:
        owners: Dict[FrozenSet[int], List[int]] = {}
        for k, c in enumerate(f.cones):
            for fc in (_cone_facets(f.rays, c, n) if n > 1 else [frozenset()]):
                owners.setdefault(fc, []).append(k)
        complete = all(len(v) == 2 for v in owners.values())
        if complete:
            reach = {0}
            frontier = [0]
            while frontier:
                k = frontier.pop()
                for v in owners.values():
                    if k in v:
                        for j in v:
                            if j not in reach:
                                reach.add(j)
                                frontier.append(j)
            complete = len(reach) == len(f.cones)
    smooth = all(len(c) == n and is_lattice_basis([f.rays[i] for i in c]) or
                 (len(c) < n and _extends_to_basis([f.rays[i] for i in c], n)) for c in f.cones)
    return True, complete, smooth, ""


def _extends_to_basis(vecs, n: int) -> bool:
    if rank_of(vecs, n) != len(vecs):
        return False
    _, d, _ = smith_normal_form(ZMatrix([list(v) for v in vecs]))
    return all(abs(d[i, i]) == 1 for i in range(len(vecs)))


def validate_fan(f: Fan) -> FanReport:
    if "report" not in f._cache:
        ok, complete, smooth, msg = _validate(f)
        if not ok:
            raise AddactError("MALFORMED_FAN", msg)
        f._cache["report"] = FanReport(True, complete, smooth)
    return f._cache["report"]  # type: ignore[return-value]


def _require_complete(f: Fan) -> None:
    if not validate_fan(f).is_complete:
        raise AddactError("NOT_COMPLETE", "the fan is not complete")


# ---------------------------------------------------------------------------
# named fans


def projective_space_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple(-1 for _ in range(n))]
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, rays, cones, default_names(n, "x") + ["x0"])


def product_p1_fan(n: int) -> Fan:
    rays = []
    for i in range(n):
        rays.append(tuple(int(i == j) for j in range(n)))
        rays.append(tuple(-int(i == j) for j in range(n)))
    cones = [tuple(2 * i + s for i, s in enumerate(signs)) for signs in itertools.product((0, 1), repeat=n)]
    return Fan(n, rays, cones)


def hirzebruch_fan(d: int) -> Fan:
    """Rays (1,0), (0,1), (-1,d), (0,-1) with variables x1..x4."""
    return Fan(2, [(1, 0), (0, 1), (-1, d), (0, -1)], [(0, 1), (1, 2), (2, 3), (3, 0)])


def weighted_projective_fan(weights: Sequence[int]) -> Fan:
    """Fan of P(a_0, ..., a_n): images of the standard basis in Z^{n+1} / Z(a_0, ..., a_n)."""
    w = [int(x) for x in weights]
    if len(w) < 2 or any(x <= 0 for x in w) or w != sorted(w):
        raise AddactError("INVALID_WEIGHTS", "weights must be positive and sorted ascending")
    g = 0
    for x in w:
        g = gcd(g, x)
    if g != 1:
        raise AddactError("INVALID_WEIGHTS", "weights must have gcd 1")
    n = len(w) - 1
    u, _, _ = smith_normal_form(ZMatrix([[x] for x in w]))
    rays = [primitive([u[r, i] for r in range(1, n + 1)]) for i in range(n + 1)]
    if is_lattice_basis(rays[1:]):
        # express in the basis p_1..p_n so that p_0 = -(a_1, ..., a_n)/a_0 when a_0 = 1
        dual = dual_basis(rays[1:])
        rays = [integer_vector([dot(r, d) for d in dual]) for r in rays]
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, rays, cones, default_names(n + 1, "x", 0))


# ---------------------------------------------------------------------------
# roots


@dataclass(frozen=True, order=True)
class DemazureRoot:
    ray: int
    e: IVec

    def as_dict(self) -> dict:
        return {"ray": self.ray, "e": list(self.e)}


def _polytope_vertices(eqs: Sequence[Tuple[Sequence[int], int]], ineqs: Sequence[Sequence[int]], n: int):
    """Vertices of {<a,x> = b for eqs, <c,x> >= 0 for ineqs}; None when unbounded or empty of vertices."""
    verts = set()
    need = n - len(eqs)
    for sub in itertools.combinations(range(len(ineqs)), need):
        rows = [list(a) for a, _ in eqs] + [list(ineqs[i]) for i in sub]
        if rank_of(rows, n) != n:
            continue
        x = solve(rows, [b for _, b in eqs] + [0] * need)
        if x is not None and all(dot(c, x) >= 0 for c in ineqs):
            verts.add(tuple(x))
    return sorted(verts)


def _root_candidates(f: Fan, ray: int, bound: Optional[int] = None) -> List[IVec]:
    n = f.rank
    eqs = [(f.rays[ray], -1)]
    ineqs = [f.rays[j] for j in range(f.nrays) if j != ray]
    if bound is None:
        verts = _polytope_vertices(eqs, ineqs, n)
        if not verts:
            return []
        lo = [min(v[k] for v in verts) for k in range(n)]
        hi = [max(v[k] for v in verts) for k in range(n)]
        ranges = [range(_ceil(a), _floor(b) + 1) for a, b in zip(lo, hi)]
    else:
        ranges = [range(-bound, bound + 1)] * n
    out = []
    for e in itertools.product(*ranges):
        if dot(f.rays[ray], e) == -1 and all(dot(c, e) >= 0 for c in ineqs):
            out.append(tuple(e))
    return out


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _condition_two(f: Fan, ray: int, e: Sequence[int]) -> bool:
    for cone in f.all_cones():
        if all(dot(f.rays[i], e) == 0 for i in cone) and not f.is_cone(set(cone) | {ray}):
            return False
    return True


def demazure_roots(f: Fan) -> List[DemazureRoot]:
    """All roots, ordered by ray index then lexicographically in e."""
    if "roots" in f._cache:
        return list(f._cache["roots"])  # type: ignore[arg-type]
    _require_complete(f)
    out = []
    for ray in range(f.nrays):
        for e in _root_candidates(f, ray):
            if not _condition_two(f, ray, e):
                raise AddactError("INTERNAL_CONSISTENCY", "condition (2) failed on a complete fan")
            out.append(DemazureRoot(ray, e))
    f._cache["roots"] = tuple(out)
    return out


@dataclass(frozen=True)
class AffineRoots:
    roots: Tuple[DemazureRoot, ...]
    truncated: bool


def affine_cone_roots(rays: Sequence[Sequence[int]], degree_bound: int) -> AffineRoots:
    """Roots of the affine toric variety of one full-dimensional cone, with max-norm <= degree_bound."""
    n = len(rays[0])
    if rank_of(rays, n) != n:
        raise AddactError("NOT_FULL_DIMENSIONAL", "cone must be full-dimensional")
    f = Fan(n, rays, [tuple(range(len(rays)))])
    validate_fan(f)
    out = []
    for ray in range(len(rays)):
        for e in _root_candidates(f, ray, degree_bound):
            if _condition_two(f, ray, e):
                out.append(DemazureRoot(ray, e))
    return AffineRoots(tuple(out), n >= 2)


def root_split(f: Fan) -> Tuple[List[DemazureRoot], List[DemazureRoot]]:
    roots = demazure_roots(f)
    es = {r.e for r in roots}
    semi = [r for r in roots if tuple(-x for x in r.e) in es]
    return semi, [r for r in roots if tuple(-x for x in r.e) not in es]


def he_connected_pairs(f: Fan, r: DemazureRoot) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Pairs (s1, s2) of cones with e <= 0 on s2 and s1 = s2 cut by e = 0 a facet of s2."""
    out = []
    for s2 in f.all_cones():
        vals = {i: dot(f.rays[i], r.e) for i in s2}
        if not s2 or any(v > 0 for v in vals.values()):
            continue
        s1 = frozenset(i for i, v in vals.items() if v == 0)
        if s1 in f.all_cones() and _is_facet(f, s1, s2):
            out.append((tuple(sorted(s1)), tuple(sorted(s2))))
    return out


def _is_facet(f: Fan, s1: FrozenSet[int], s2: FrozenSet[int]) -> bool:
    n = f.rank
    r1 = rank_of([f.rays[i] for i in s1], n) if s1 else 0
    return s1 < s2 and r1 == rank_of([f.rays[i] for i in s2], n) - 1


# ---------------------------------------------------------------------------
# Cox ring derivations


@dataclass(frozen=True)
class CoxLND:
    """Derivation coeff * x^exponents * d/dx_target of the Cox ring."""

    target: int
    exponents: IVec
    coeff: Fraction = Fraction(1)

    def apply(self, p: MultiPoly) -> MultiPoly:
        return p.diff(self.target).mul_term(self.exponents, self.coeff)

    def to_str(self, names: Sequence[str]) -> str:
        mono = format_monomial(self.exponents, names)
        lead = "" if mono == "1" else mono + "*"
        c = "" if self.coeff == 1 else f"{self.coeff} * "
        return f"{c}{lead}d/d{names[self.target]}"


def root_lnd(f: Fan, r: DemazureRoot) -> CoxLND:
    exps = tuple(0 if j == r.ray else dot(f.rays[j], r.e) for j in range(f.nrays))
    if dot(f.rays[r.ray], r.e) != -1 or any(x < 0 for x in exps):
        raise AddactError("NOT_A_ROOT", f"{list(r.e)} is not a root at ray {r.ray}")
    return CoxLND(r.ray, exps)


def lnds_commute(f: Fan, r1: DemazureRoot, r2: DemazureRoot) -> bool:
    if r1.ray == r2.ray:
        return True
    return dot(f.rays[r1.ray], r2.e) == 0 and dot(f.rays[r2.ray], r1.e) == 0


def _apply_sum(ds: Sequence[CoxLND], p: MultiPoly) -> MultiPoly:
    out = MultiPoly.zero(p.nvars)
    for d in ds:
        out = out + d.apply(p)
    return out


def bracket_vanishes(d1: Sequence[CoxLND], d2: Sequence[CoxLND], nvars: int, max_degree: int = 4) -> bool:
    """[D1, D2] = 0 on every monomial of degree <= max_degree (D = sum of the listed terms)."""
    for e in monomials_up_to(nvars, max_degree):
        x = MultiPoly.monomial(e)
        if _apply_sum(d1, _apply_sum(d2, x)) != _apply_sum(d2, _apply_sum(d1, x)):
            return False
    return True


def lnds_commute_by_bracket(f: Fan, r1: DemazureRoot, r2: DemazureRoot, max_degree: int = 4) -> bool:
    return bracket_vanishes([root_lnd(f, r1)], [root_lnd(f, r2)], f.nrays, max_degree)


# ---------------------------------------------------------------------------
# complete collections and additive actions


@dataclass(frozen=True)
class CompleteCollection:
    basis_rays: Tuple[int, ...]
    roots: Tuple[IVec, ...]

    def as_dict(self) -> dict:
        return {"basis_rays": list(self.basis_rays), "roots": [list(e) for e in self.roots]}


def _coords_in_basis(f: Fan, basis: Sequence[int]) -> Dict[int, List[int]]:
    dual = dual_basis([f.rays[i] for i in basis])
    return {j: [int(dot(f.rays[j], d)) for d in dual] for j in range(f.nrays) if j not in basis}


def complete_collections(f: Fan) -> List[CompleteCollection]:
    _require_complete(f)
    out = []
    for basis in itertools.combinations(range(f.nrays), f.rank):
        vecs = [f.rays[i] for i in basis]
        if not is_lattice_basis(vecs):
            continue
        coords = _coords_in_basis(f, basis)
        if all(c <= 0 for v in coords.values() for c in v):
            dual = dual_basis(vecs)
            out.append(CompleteCollection(basis, tuple(integer_vector([-x for x in d]) for d in dual)))
    return out


def has_additive_action(f: Fan) -> bool:
    return bool(complete_collections(f))


def collection_lnds(f: Fan, c: CompleteCollection) -> List[CoxLND]:
    return [root_lnd(f, DemazureRoot(i, e)) for i, e in zip(c.basis_rays, c.roots)]


def _first_collection(f: Fan) -> CompleteCollection:
    cs = complete_collections(f)
    if not cs:
        raise AddactError("NO_ADDITIVE_ACTION", "the fan admits no complete collection of roots")
    return cs[0]


def alpha_rows(f: Fan, c: CompleteCollection) -> List[Tuple[int, ...]]:
    """Coefficients alpha_j with p_j = -sum alpha_ji p_i for the rays outside the basis."""
    coords = _coords_in_basis(f, c.basis_rays)
    return [tuple(-x for x in coords[j]) for j in sorted(coords)]


def is_wide(f: Fan) -> bool:
    rows = alpha_rows(f, _first_collection(f))
    return any(r[0] > r[1] for r in rows) and any(r[0] < r[1] for r in rows)


def surface_action_count(f: Fan) -> int:
    if f.rank != 2:
        raise AddactError("NOT_SURFACE", "surface_action_count needs a rank-2 fan")
    _require_complete(f)
    return 1 if is_wide(f) else 2


def uniqueness_check(f: Fan) -> bool:
    """Some complete-collection basis has R_i = {-p_i*} for every basis ray."""
    roots = demazure_roots(f)
    by_ray: Dict[int, set] = {}
    for r in roots:
        by_ray.setdefault(r.ray, set()).add(r.e)
    cs = complete_collections(f)
    if not cs:
        raise AddactError("NO_ADDITIVE_ACTION", "the fan admits no complete collection of roots")
    return any(all(by_ray.get(i, set()) == {e} for i, e in zip(c.basis_rays, c.roots)) for c in cs)


@dataclass(frozen=True)
class ActionTuple:
    """Normalized derivations and a perturbed tuple (one entry replaced by a two-term sum)."""

    collection: CompleteCollection
    normalized: Tuple[CoxLND, ...]
    perturbed: Tuple[Tuple[CoxLND, ...], ...]
    root: DemazureRoot
    d: int
    pair: Tuple[int, int]

    def to_strs(self, names: Sequence[str]) -> dict:
        return {
            "normalized": [x.to_str(names) for x in self.normalized],
            "perturbed": [" + ".join(t.to_str(names) for t in term) for term in self.perturbed],
            "root": list(self.root.e),
            "d": self.d,
        }


def second_action_tuple(f: Fan) -> ActionTuple:
    """Replace d_{-p_j*} by d_{-p_j*} + d_{-p_i* + d p_j*} for the least d >= 1 (then least (i, j))."""
    if uniqueness_check(f):
        raise AddactError("NOT_APPLICABLE", "the normalized additive action is the unique one")
    roots = set(demazure_roots(f))
    for c in complete_collections(f):
        duals = [tuple(-x for x in e) for e in c.roots]
        found = None
        for i, j in itertools.permutations(range(f.rank), 2):
            for r in roots:
                if r.ray != c.basis_rays[i]:
                    continue
                diff = [a - b for a, b in zip(r.e, c.roots[i])]
                d = _multiple_of(diff, duals[j])
                if d is not None and d >= 1 and (found is None or (d, (i, j)) < (found[0], found[1])):
                    found = (d, (i, j), r)
        if found is None:
            continue
        d, (i, j), r = found
        normalized = tuple(collection_lnds(f, c))
        extra = root_lnd(f, r)
        perturbed = tuple((normalized[k], extra) if k == j else (normalized[k],) for k in range(f.rank))
        for a, b in itertools.combinations(perturbed, 2):
            if not bracket_vanishes(a, b, f.nrays):
                raise AddactError("INTERNAL_CONSISTENCY", "perturbed derivations do not commute")
        return ActionTuple(c, normalized, perturbed, r, d, (i, j))
    raise AddactError("NOT_APPLICABLE", "no root of the shape -p_i* + d p_j* with d >= 1 exists")


def _multiple_of(v: Sequence[int], w: Sequence[int]) -> Optional[int]:
    k = next((i for i, x in enumerate(w) if x), None)
    if k is None or v[k] % w[k]:
        return None
    d = v[k] // w[k]
    return d if all(a == d * b for a, b in zip(v, w)) else None


# ---------------------------------------------------------------------------
# Cox data


@dataclass(frozen=True)
class CoxData:
    variables: Tuple[str, ...]
    free_rank: int
    torsion: Tuple[int, ...]
    degrees: Tuple[Tuple[int, ...], ...]

    def as_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "class_group": {"free_rank": self.free_rank, "torsion": list(self.torsion)},
            "degrees": {v: list(d) for v, d in zip(self.variables, self.degrees)},
        }

    def degree_of(self, exponents: Sequence[int]) -> Tuple[int, ...]:
        tot = [0] * len(self.degrees[0]) if self.degrees else []
        for e, d in zip(exponents, self.degrees):
            tot = [t + e * x for t, x in zip(tot, d)]
        return tuple(self._reduce(tot))

    def _reduce(self, v: Sequence[int]) -> List[int]:
        k = len(self.torsion)
        return [x % t for x, t in zip(v[:k], self.torsion)] + list(v[k:])


def cox_data(f: Fan) -> CoxData:
    """Class group from the Smith form of the ray matrix; degrees [D_rho]."""
    m, n = f.nrays, f.rank
    u, d, _ = smith_normal_form(ZMatrix([list(r) for r in f.rays]))
    diag = [abs(d[i, i]) for i in range(min(m, n))]
    r = sum(1 for x in diag if x)
    torsion_idx = [i for i in range(r) if diag[i] > 1]
    torsion = tuple(diag[i] for i in torsion_idx)
    free_rank = m - r
    degrees = None
    if not torsion and r == n:
        for comp in itertools.combinations(range(m), m - n):
            basis = [i for i in range(m) if i not in comp]
            if is_lattice_basis([f.rays[i] for i in basis]):
                dual = dual_basis([f.rays[i] for i in basis])
                deg: Dict[int, Tuple[int, ...]] = {}
                for k, j in enumerate(comp):
                    deg[j] = tuple(int(k == t) for t in range(len(comp)))
                for b, pd in zip(basis, dual):
                    acc = [0] * len(comp)
                    for k, j in enumerate(comp):
                        c = int(dot(f.rays[j], pd))
                        acc[k] -= c
                    deg[b] = tuple(acc)
                degrees = tuple(deg[i] for i in range(m))
                break
    if degrees is None:
        cols = [[u[i, j] % diag[i] for i in torsion_idx] + [u[i, j] for i in range(r, m)] for j in range(m)]
        # fix the sign of each free coordinate: first nonzero entry positive
        for k in range(len(torsion_idx), len(torsion_idx) + free_rank):
            first = next((c[k] for c in cols if c[k]), 0)
            if first < 0:
                for c in cols:
                    c[k] = -c[k]
        degrees = tuple(tuple(c) for c in cols)
    return CoxData(tuple(f.var_names), free_rank, torsion, degrees)


def lnd_degree(f: Fan, cd: CoxData, d: CoxLND) -> Tuple[int, ...]:
    """Class-group degree of x^a d/dx_rho, i.e. deg(x^a) - deg(x_rho)."""
    up = list(cd.degree_of(d.exponents))
    tgt = cd.degrees[d.target]
    return tuple(cd._reduce([a - b for a, b in zip(up, tgt)]))
