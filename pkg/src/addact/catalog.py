"""Embedded fixtures: local algebras of dimension at most 6 and named objects.

Table rows keep the printed presentations (variables x1..x5).  Shorthand rows
are expanded: ``(x_i^2, x_ix_j)`` means all squares and all products of two
distinct variables, ``(x_i^2 - x_j^2, x_ix_j, i != j)`` means all differences
of squares and all mixed products.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Tuple

from .errors import AddactError


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    nvars: int
    presentation: Tuple[str, ...]
    printed: str
    dim: int
    hilbert_samuel: Tuple[int, ...]
    gorenstein: bool

    @property
    def expected(self) -> dict:
        return {"dim": self.dim, "hilbert_samuel": list(self.hilbert_samuel), "gorenstein": self.gorenstein}

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "nvars": self.nvars,
            "presentation": list(self.presentation),
            "printed": self.printed,
            "expected": self.expected,
        }


def _squares(n: int) -> List[str]:
    return [f"x{i}^2" for i in range(1, n + 1)]


def _mixed(n: int) -> List[str]:
    return [f"x{i}*x{j}" for i, j in combinations(range(1, n + 1), 2)]


def _square_differences(n: int) -> List[str]:
    return [f"x{i}^2 - x{j}^2" for i, j in combinations(range(1, n + 1), 2)]


# id, nvars, generators, printed ideal, Hilbert-Samuel sequence, Gorenstein
_ROWS = [
    (1, 1, ["x1"], "K", (1,), True),
    (2, 1, ["x1^2"], "K[x1]/(x1^2)", (1, 1), True),
    (3, 1, ["x1^3"], "K[x1]/(x1^3)", (1, 1, 1), True),
    (4, 2, ["x1^2", "x1*x2", "x2^2"], "K[x1,x2]/(x1^2,x1x2,x2^2)", (1, 2), False),
    (5, 1, ["x1^4"], "K[x1]/(x1^4)", (1, 1, 1, 1), True),
    (6, 2, ["x1*x2", "x1^2 - x2^2"], "K[x1,x2]/(x1x2, x1^2-x2^2)", (1, 2, 1), True),
    (7, 2, ["x1^3", "x1*x2", "x2^2"], "K[x1,x2]/(x1^3,x1x2,x2^2)", (1, 2, 1), False),
    (8, 3, _squares(3) + _mixed(3), "K[x1,x2,x3]/(x_i^2,x_ix_j)", (1, 3), False),
    (9, 1, ["x1^5"], "K[x1]/(x1^5)", (1, 1, 1, 1, 1), True),
    (10, 2, ["x1*x2", "x1^3 - x2^2"], "K[x1,x2]/(x1x2,x1^3-x2^2)", (1, 2, 1, 1), True),
    (11, 2, ["x1^3", "x2^3", "x1*x2"], "K[x1,x2]/(x1^3,x2^3,x1x2)", (1, 2, 2), False),
    (12, 2, ["x1^4", "x2^2", "x1*x2"], "K[x1,x2]/(x1^4,x2^2,x1x2)", (1, 2, 1, 1), False),
    (13, 2, ["x1^3", "x2^2", "x1^2*x2"], "K[x1,x2]/(x1^3,x2^2,x1^2x2)", (1, 2, 2), False),
    (14, 3, ["x1*x2", "x1*x3", "x2*x3", "x1^2 - x2^2", "x1^2 - x3^2"],
     "K[x1,x2,x3]/(x1x2,x1x3,x2x3,x1^2-x2^2,x1^2-x3^2)", (1, 3, 1), True),
    (15, 3, ["x1^2", "x1*x2", "x1*x3", "x2*x3", "x2^2 - x3^2"],
     "K[x1,x2,x3]/(x1^2,x1x2,x1x3,x2x3,x2^2-x3^2)", (1, 3, 1), False),
    (16, 3, ["x1^3", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"],
     "K[x1,x2,x3]/(x1^3,x2^2,x3^2,x1x2,x1x3,x2x3)", (1, 3, 1), False),
    (17, 4, _squares(4) + _mixed(4), "K[x1,x2,x3,x4]/(x_i^2,x_ix_j)", (1, 4), False),
    (18, 1, ["x1^6"], "K[x1]/(x1^6)", (1, 1, 1, 1, 1, 1), True),
    (19, 2, ["x1*x2", "x1^4 - x2^2"], "K[x1,x2]/(x1x2,x1^4-x2^2)", (1, 2, 1, 1, 1), True),
    (20, 2, ["x1*x2", "x1^3 - x2^3"], "K[x1,x2]/(x1x2,x1^3-x2^3)", (1, 2, 2, 1), True),
    (21, 2, ["x1^3", "x2^2"], "K[x1,x2]/(x1^3,x2^2)", (1, 2, 2, 1), True),
    (22, 2, ["x1^5", "x1*x2", "x2^2"], "K[x1,x2]/(x1^5,x1x2,x2^2)", (1, 2, 1, 1, 1), False),
    (23, 2, ["x1^4", "x1*x2", "x2^3"], "K[x1,x2]/(x1^4,x1x2,x2^3)", (1, 2, 2, 1), False),
    (24, 2, ["x1^3", "x1^2*x2", "x1*x2^2", "x2^3"], "K[x1,x2]/(x1^3,x1^2x2,x1x2^2,x2^3)", (1, 2, 3), False),
    (25, 2, ["x1^4", "x1^2*x2", "x1^3 - x2^2"], "K[x1,x2]/(x1^4,x1^2x2,x1^3-x2^2)", (1, 2, 2, 1), False),
    (26, 2, ["x1^4", "x1^2*x2", "x2^2"], "K[x1,x2]/(x1^4,x1^2x2,x2^2)", (1, 2, 2, 1), False),
    (27, 3, ["x1^2", "x2^2", "x3^2", "x1*x2 - x1*x3"], "K[x1,x2,x3]/(x1^2,x2^2,x3^2,x1x2-x1x3)", (1, 3, 2), False),
    (28, 3, ["x2^2", "x3^2", "x1*x2", "x1^2 - x2*x3"], "K[x1,x2,x3]/(x2^2,x3^2,x1x2,x1^2-x2x3)", (1, 3, 2), False),
    (29, 3, ["x1^2", "x2^2", "x3^2", "x2*x3"], "K[x1,x2,x3]/(x1^2,x2^2,x3^2,x2x3)", (1, 3, 2), False),
    (30, 3, ["x1^2", "x2^2", "x1*x3", "x2*x3", "x1*x2 - x3^3"],
     "K[x1,x2,x3]/(x1^2,x2^2,x1x3,x2x3,x1x2-x3^3)", (1, 3, 1, 1), True),
    (31, 3, ["x1^2 - x3^3", "x2^2", "x1*x2", "x1*x3", "x2*x3"],
     "K[x1,x2,x3]/(x1^2-x3^3,x2^2,x1x2,x1x3,x2x3)", (1, 3, 1, 1), False),
    (32, 3, ["x1^3", "x2^2", "x3^2", "x1*x2", "x1*x3"], "K[x1,x2,x3]/(x1^3,x2^2,x3^2,x1x2,x1x3)", (1, 3, 2), False),
    (33, 3, ["x1^2", "x2^2", "x3^2", "x1*x2 - x1*x3 - x2*x3"],
     "K[x1,x2,x3]/(x1^2,x2^2,x3^2,x1x2-x1x3-x2x3)", (1, 3, 2), False),
    (34, 3, ["x1^3", "x2^2", "x1*x3", "x2*x3", "x1*x2 - x3^2"],
     "K[x1,x2,x3]/(x1^3,x2^2,x1x3,x2x3,x1x2-x3^2)", (1, 3, 2), False),
    (35, 3, ["x1^4", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"],
     "K[x1,x2,x3]/(x1^4,x2^2,x3^2,x1x2,x1x3,x2x3)", (1, 3, 1, 1), False),
    (36, 3, ["x1^3", "x2^3", "x3^2", "x1*x2", "x1*x3", "x2*x3"],
     "K[x1,x2,x3]/(x1^3,x2^3,x3^2,x1x2,x1x3,x2x3)", (1, 3, 2), False),
    (37, 3, ["x1^3", "x2^2", "x3^2", "x1^2*x2", "x1*x3", "x2*x3"],
     "K[x1,x2,x3]/(x1^3,x2^2,x3^2,x1^2x2,x1x3,x2x3)", (1, 3, 2), False),
    (38, 4, _square_differences(4) + _mixed(4), "K[x1,x2,x3,x4]/(x_i^2-x_j^2, x_ix_j, i!=j)", (1, 4, 1), True),
    (39, 4, ["x1^2", "x2^2", "x4^2", "x1*x3", "x1*x4", "x2*x3", "x2*x4", "x3*x4", "x1*x2 - x3^2"],
     "K[x1,x2,x3,x4]/(x1^2,x2^2,x4^2,x1x3,x1x4,x2x3,x2x4,x3x4,x1x2-x3^2)", (1, 4, 1), False),
    (40, 4, _squares(4) + ["x1*x3", "x1*x4", "x2*x3", "x2*x4", "x3*x4"],
     "K[x1,x2,x3,x4]/(x_i^2,x1x3,x1x4,x2x3,x2x4,x3x4)", (1, 4, 1), False),
    (41, 4, ["x1^3", "x2^2", "x3^2", "x4^2"] + _mixed(4), "K[x1,x2,x3,x4]/(x1^3,x2^2,x3^2,x4^2,x_ix_j,i!=j)",
     (1, 4, 1), False),
    (42, 5, _squares(5) + _mixed(5), "K[x1,x2,x3,x4,x5]/(x_i^2,x_ix_j)", (1, 5), False),
]


def table1() -> List[CatalogEntry]:
    """All 42 local algebras of dimension at most 6 with their printed invariants."""
    return [
        CatalogEntry(i, n, tuple(gens), printed, sum(hs), hs, g)
        for i, n, gens, printed, hs, g in _ROWS
    ]


def table1_entry(i: int) -> CatalogEntry:
    for e in table1():
        if e.id == i:
            return e
    raise AddactError("UNKNOWN_FIXTURE", f"no table row {i}")


def table1_algebra(i: int):
    from .artin import from_presentation
    from .multipoly import parse_poly

    e = table1_entry(i)
    return from_presentation(e.nvars, [parse_poly(g, e.nvars) for g in e.presentation])


def truncated_algebra(k: int):
    """K[S]/(S^k)."""
    from .artin import from_presentation
    from .multipoly import MultiPoly

    if k < 1:
        raise AddactError("UNKNOWN_FIXTURE", "truncation order must be positive")
    return from_presentation(1, [MultiPoly.monomial((k,))])


def product_of_fields(k: int):
    """K^k with coordinatewise multiplication."""
    from .artin import Algebra

    table = [[[int(i == j == l) for l in range(k)] for j in range(k)] for i in range(k)]
    return Algebra(table, unit=[1] * k, labels=[f"f{i}" for i in range(k)])


# ---------------------------------------------------------------------------
# named fixtures

FIXTURE_NAMES = (
    "P2", "P1xP1", "Fd:<d>", "dP6", "wps:<a0,...,an>", "Pn:<n>", "P1^n:<n>", "wide",
    "hyp-no30", "quadric:<n>", "twisted-cubic-pair", "corank1-a", "corank1-b",
    "KS:<k>", "table1:<id>",
    "segment:<d>", "square", "box:<a,b>", "simplex:<n>", "triangle-21", "trapezoid:<d>", "hexagon",
)


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise AddactError("UNKNOWN_FIXTURE", f"bad integer list {text!r}") from exc


class _Lazy:
    def __init__(self, name: str) -> None:
        self._name = name

    def __getattr__(self, attr):
        import importlib

        return getattr(importlib.import_module(f"addact.{self._name}"), attr)


def named_fixture(name: str):
    """Resolve a fixture name to a Fan, LatticePolytope, HPair, GaPair or Algebra."""
    from .multipoly import parse_poly

    hyper = _Lazy("hyper")
    polytope = _Lazy("polytope")
    toric = _Lazy("toric")

    key, _, arg = name.partition(":")
    try:
        if key == "P2":
            return toric.projective_space_fan(2)
        if key == "Pn":
            return toric.projective_space_fan(int(arg))
        if key == "P1xP1":
            return toric.product_p1_fan(2)
        if key == "P1^n":
            return toric.product_p1_fan(int(arg))
        if key == "Fd":
            return toric.hirzebruch_fan(int(arg))
        if key == "dP6":
            return toric.Fan(2, [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
                             [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
        if key == "wide":
            return toric.Fan(2, [(1, 0), (0, 1), (-1, -2), (-2, -1)], [(0, 1), (1, 3), (3, 2), (2, 0)])
        if key == "wps":
            return toric.weighted_projective_fan(_int_list(arg))
        if key == "KS":
            return truncated_algebra(int(arg))
        if key == "table1":
            return table1_algebra(int(arg))
        if key == "hyp-no30":
            a = table1_algebra(30)
            u = [a.generators[0], a.generators[1], a.generators[2], a.multiply(a.generators[2], a.generators[2])]
            return hyper.HPair.from_subspace(a, u)
        if key == "quadric":
            return hyper.quadric_pair(int(arg))
        if key == "twisted-cubic-pair":
            from .ht import GaPair

            a = truncated_algebra(4)
            return GaPair(a, [a.generators[0]])
        if key == "corank1-a":
            from .artin import from_presentation

            a = from_presentation(2, [parse_poly(g, 2) for g in ("S1^3", "S1*S2", "S2^2")])
            return hyper.HPair.from_subspace(a, list(a.generators))
        if key == "corank1-b":
            a = truncated_algebra(4)
            s = a.generators[0]
            return hyper.HPair.from_subspace(a, [s, a.power(s, 3)])
        if key == "segment":
            d = int(arg)
            return polytope.LatticePolytope(1, [(0,), (d,)])
        if key == "square":
            return polytope.LatticePolytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        if key == "box":
            a, b = _int_list(arg)
            return polytope.LatticePolytope(2, [(0, 0), (a, 0), (0, b), (a, b)])
        if key == "simplex":
            n = int(arg)
            return polytope.LatticePolytope(n, [tuple(0 for _ in range(n))] + [
                tuple(int(i == j) for j in range(n)) for i in range(n)])
        if key == "triangle-21":
            return polytope.LatticePolytope(2, [(0, 0), (2, 0), (0, 1)])
        if key == "trapezoid":
            d = int(arg)
            return polytope.LatticePolytope(2, [(0, 0), (1 + d, 0), (1, 1), (0, 1)])
        if key == "hexagon":
            return polytope.LatticePolytope(2, [(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)])
    except ValueError as exc:
        raise AddactError("UNKNOWN_FIXTURE", f"bad fixture argument in {name!r}") from exc
    raise AddactError("UNKNOWN_FIXTURE", f"unknown fixture {name!r}")


def counts_by_dimension() -> Dict[int, int]:
    out: Dict[int, int] = {}
    for e in table1():
        out[e.dim] = out.get(e.dim, 0) + 1
    return out
