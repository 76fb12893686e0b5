"""Lattice polytopes: facets, lattice points, normal fans and the rectangle criterion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .errors import AddactError
from .exact_core import dot, inverse, is_lattice_basis, kernel_rows, primitive, integer_vector, rank_of
from .toric import Fan

IVec = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Facet:
    """Inequality <normal, x> <= offset with a primitive outward normal."""

    normal: IVec
    offset: int

    def value(self, x: Sequence) -> int:
        return dot(self.normal, x)

    def contains(self, x: Sequence) -> bool:
        return self.value(x) <= self.offset

    def on(self, x: Sequence) -> bool:
        return self.value(x) == self.offset


class LatticePolytope:
    def __init__(self, rank: int, vertices: Sequence[Sequence[int]]) -> None:
        self.rank = rank
        self.vertices: Tuple[IVec, ...] = tuple(tuple(int(c) for c in v) for v in vertices)
        if not self.vertices or any(len(v) != rank for v in self.vertices):
            raise AddactError("MALFORMED_POLYTOPE", "vertices must be integer vectors of length rank")
        if len(set(self.vertices)) != len(self.vertices):
            raise AddactError("MALFORMED_POLYTOPE", "repeated vertex")
        base = self.vertices[0]
        diffs = [[a - b for a, b in zip(v, base)] for v in self.vertices[1:]]
        if rank_of(diffs, rank) != rank:
            raise AddactError("NOT_FULL_DIMENSIONAL", "vertices do not span a full-dimensional polytope")
        self.facets: Tuple[Facet, ...] = _facets(self.rank, self.vertices)
        for v in self.vertices:
            normals = [f.normal for f in self.facets if f.on(v)]
            if rank_of(normals, rank) != rank:
                raise AddactError("MALFORMED_POLYTOPE", f"{list(v)} is not a vertex of the hull")

    def facets_through(self, v: Sequence[int]) -> List[int]:
        return [i for i, f in enumerate(self.facets) if f.on(v)]

    def contains(self, x: Sequence) -> bool:
        return all(f.contains(x) for f in self.facets)

    def as_dict(self) -> dict:
        return {"rank": self.rank, "vertices": [list(v) for v in self.vertices]}

    def __repr__(self) -> str:
        return f"LatticePolytope({self.rank}, {[list(v) for v in self.vertices]})"


def _facets(n: int, verts: Sequence[IVec]) -> Tuple[Facet, ...]:
    out = set()
    for sub in itertools.combinations(range(len(verts)), n):
        base = verts[sub[0]]
        diffs = [[a - b for a, b in zip(verts[i], base)] for i in sub[1:]]
        if n > 1 and rank_of(diffs, n) != n - 1:
            continue
        normal = primitive(integer_vector(kernel_rows(diffs, n)[0])) if n > 1 else (1,)
        vals = [dot(normal, v) for v in verts]
        a = dot(normal, base)
        for sign in (1, -1):
            if all(sign * x <= sign * a for x in vals):
                out.add(Facet(tuple(sign * c for c in normal), sign * a))
    return tuple(sorted(out))


def facets(p: LatticePolytope) -> Tuple[Facet, ...]:
    return p.facets


def lattice_points(p: LatticePolytope) -> List[IVec]:
    lo = [min(v[k] for v in p.vertices) for k in range(p.rank)]
    hi = [max(v[k] for v in p.vertices) for k in range(p.rank)]
    return [x for x in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]) if p.contains(x)]


def edges_at(p: LatticePolytope, v: Sequence[int]) -> List[IVec]:
    """Primitive directions of the edges leaving vertex v."""
    fv = set(p.facets_through(v))
    out = []
    for w in p.vertices:
        if tuple(w) == tuple(v):
            continue
        common = [p.facets[i].normal for i in fv if p.facets[i].on(w)]
        if common and rank_of(common, p.rank) == p.rank - 1 or (p.rank == 1):
            out.append(primitive([a - b for a, b in zip(w, v)]))
    return sorted(set(out))


def normal_fan(p: LatticePolytope) -> Fan:
    """Rays are inner facet normals; one maximal cone per vertex."""
    rays = [tuple(-c for c in f.normal) for f in p.facets]
    cones = [p.facets_through(v) for v in p.vertices]
    return Fan(p.rank, rays, cones)


def inscribed_in_rectangle(p: LatticePolytope) -> Optional[IVec]:
    """A vertex whose edge directions form a lattice basis and pair nonnegatively with every facet away from it."""
    for v in sorted(p.vertices):
        dirs = edges_at(p, v)
        if len(dirs) != p.rank or not is_lattice_basis(dirs):
            continue
        away = [f for f in p.facets if not f.on(v)]
        if all(f.value(e) >= 0 for f in away for e in dirs):
            return v
    return None


@dataclass(frozen=True)
class VeryAmpleResult:
    status: str  # verified | dilate_hint | inconclusive
    k: Optional[int] = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {"status": self.status, "k": self.k, "reason": self.reason}


def _parallelepiped_points(dirs: Sequence[IVec]) -> List[IVec]:
    n = len(dirs)
    cols = inverse([[dirs[j][i] for j in range(n)] for i in range(n)])
    corners = [tuple(sum(c * d[k] for c, d in zip(t, dirs)) for k in range(n)) for t in itertools.product((0, 1), repeat=n)]
    lo = [min(c[k] for c in corners) for k in range(n)]
    hi = [max(c[k] for c in corners) for k in range(n)]
    out = []
    for x in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        t = [sum((r * xi for r, xi in zip(row, x)), Fraction(0)) for row in cols]
        if all(0 <= ti < 1 for ti in t):
            out.append(tuple(x))
    return out


def very_ample_bounded(p: LatticePolytope, search_bound: int = 4, dilation: int = 1) -> VeryAmpleResult:
    """Bounded saturation check of the vertex semigroups Z_{>=0}(P cap M - v).

    ``dilation`` records that P is known to be kP' for a lattice polytope P';
    k >= n - 1 is very ample by a classical theorem.
    """
    n = p.rank
    if dilation >= max(n - 1, 1):
        return VeryAmpleResult("verified", None, "dilation")
    pts = lattice_points(p)
    certified = True
    for v in p.vertices:
        through = [p.facets[i] for i in p.facets_through(v)]
        gens = sorted({tuple(a - b for a, b in zip(x, v)) for x in pts} - {tuple([0] * n)})
        weight = [sum(-f.normal[k] for f in through) for k in range(n)]

        def in_cone(x) -> bool:
            return all(dot(f.normal, x) <= 0 for f in through)

        @lru_cache(maxsize=None)
        def member(x: IVec) -> bool:
            if not any(x):
                return True
            for g in gens:
                y = tuple(a - b for a, b in zip(x, g))
                if in_cone(y) and dot(weight, y) < dot(weight, x) and member(y):
                    return True
            return False

        for x in itertools.product(range(-search_bound, search_bound + 1), repeat=n):
            if in_cone(x) and not member(x):
                return VeryAmpleResult("dilate_hint", n - 1, f"gap {list(x)} at vertex {list(v)}")
        dirs = edges_at(p, v)
        for sub in itertools.combinations(dirs, n):
            if rank_of(sub, n) != n:
                continue
            for x in _parallelepiped_points(list(sub)):
                if max((abs(c) for c in x), default=0) > search_bound:
                    certified = False
    if certified:
        return VeryAmpleResult("verified", None, "saturation certificate")
    return VeryAmpleResult("inconclusive", None, "bound too small for the certificate")
