"""Command-line front end: ``addact <group> <command> [options]``.

Inputs are fixture names (see ``addact catalog list``) or JSON documents:

* algebra: {"nvars": n, "relations": ["S1^2", ...]} or
  {"structure": [[[...]]], "unit": [...], "labels": [...]}
* pair: {"algebra": <algebra>, "u": [<poly in S or coordinate vector>, ...], "complement": optional}
* fan: {"rank": n, "rays": [[...]], "max_cones": [[...]]}
* polytope: {"rank": n, "vertices": [[...]]}

Exit codes: 0 success, 1 domain error, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from . import artin, catalog, ht, hyper, polytope, toric
from .errors import AddactError, MalformedInput
from .exact_core import to_rational
from .multipoly import default_names, format_poly, format_scalar, minimal_generators, parse_poly


# ---------------------------------------------------------------------------
# documents


def _load(ref: str) -> Any:
    if os.path.isfile(ref):
        try:
            with open(ref, encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedInput(f"cannot read {ref}: {exc}") from exc
    return catalog.named_fixture(ref)


def _rational(x) -> Fraction:
    try:
        return to_rational(Fraction(x) if isinstance(x, str) else x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad number {x!r}") from exc


def algebra_from_doc(doc: Any) -> artin.Algebra:
    if isinstance(doc, artin.Algebra):
        return doc
    if isinstance(doc, ht.GaPair):
        return doc.algebra
    if not isinstance(doc, dict):
        raise MalformedInput("algebra document must be a JSON object")
    try:
        if "relations" in doc:
            n = int(doc["nvars"])
            return artin.from_presentation(n, [parse_poly(r, n) for r in doc["relations"]])
        if "structure" in doc:
            st = [[[_rational(c) for c in v] for v in row] for row in doc["structure"]]
            unit = [_rational(c) for c in doc["unit"]] if "unit" in doc else None
            return artin.Algebra(st, unit=unit, labels=doc.get("labels"))
        if "table1" in doc:
            return catalog.table1_algebra(int(doc["table1"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad algebra document: {exc}") from exc
    raise MalformedInput("algebra document needs 'relations', 'structure' or 'table1'")


def algebra_to_doc(a: artin.Algebra) -> dict:
    return {
        "structure": [[[format_scalar(c) for c in v] for v in row] for row in a.structure],
        "unit": [format_scalar(c) for c in a.unit],
        "labels": list(a.labels),
    }


def element_from_text(a: artin.Algebra, item) -> tuple:
    """A polynomial in the presentation variables, or a coordinate vector."""
    if isinstance(item, (list, tuple)):
        if len(item) != a.dim:
            raise MalformedInput("coordinate vector has the wrong length")
        return tuple(_rational(c) for c in item)
    if a.generators is None:
        raise MalformedInput("polynomial elements need an algebra given by a presentation")
    n = len(a.generators)
    try:
        p = parse_poly(str(item), n)
    except AddactError as exc:
        raise MalformedInput(exc.message) from exc
    out = a.zero()
    for e, c in p.items():
        term = a.unit
        for i, k in enumerate(e):
            for _ in range(k):
                term = a.multiply(term, a.generators[i])
        out = tuple(x + c * t for x, t in zip(out, term))
    return out


def pair_from_args(ref: str, u: Optional[Sequence[str]]) -> ht.GaPair:
    doc = _load(ref)
    if isinstance(doc, hyper.HPair):
        doc = doc.pair
    if isinstance(doc, ht.GaPair) and not u:
        return doc
    if isinstance(doc, dict) and "algebra" in doc:
        a = algebra_from_doc(doc["algebra"])
        u = u or doc.get("u")
    else:
        a = algebra_from_doc(doc)
    if not u:
        return ht.GaPair.maximal(a)
    return ht.GaPair(a, [element_from_text(a, x) for x in u])


def hpair_from_ref(ref: str) -> hyper.HPair:
    doc = _load(ref)
    if isinstance(doc, hyper.HPair):
        return doc
    if isinstance(doc, ht.GaPair):
        return hyper.HPair(doc)
    if not isinstance(doc, dict) or "algebra" not in doc or "u" not in doc:
        raise MalformedInput("pair document needs 'algebra' and 'u'")
    a = algebra_from_doc(doc["algebra"])
    u = [element_from_text(a, x) for x in doc["u"]]
    comp = element_from_text(a, doc["complement"]) if doc.get("complement") is not None else None
    return hyper.HPair.from_subspace(a, u, comp)


def hpair_to_doc(h: hyper.HPair) -> dict:
    return {
        "algebra": algebra_to_doc(h.algebra),
        "u": [[format_scalar(c) for c in v] for v in h.pair.u_basis],
        "complement": [format_scalar(c) for c in h.complement],
    }


def fan_from_ref(ref: str) -> toric.Fan:
    doc = _load(ref)
    if isinstance(doc, toric.Fan):
        return doc
    if isinstance(doc, polytope.LatticePolytope):
        return polytope.normal_fan(doc)
    try:
        return toric.Fan(int(doc["rank"]), doc["rays"], doc["max_cones"], doc.get("var_names"))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad fan document: {exc}") from exc


def polytope_from_ref(ref: str) -> polytope.LatticePolytope:
    doc = _load(ref)
    if isinstance(doc, polytope.LatticePolytope):
        return doc
    try:
        return polytope.LatticePolytope(int(doc["rank"]), doc["vertices"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad polytope document: {exc}") from exc


# ---------------------------------------------------------------------------
# commands; each returns (json document, optional text)


def _snames(n: int) -> List[str]:
    return default_names(n, "S")


def cmd_algebra(args) -> Any:
    a = algebra_from_doc(_load(args.algebra))
    if args.command == "invariants":
        doc = artin.invariants(a).as_dict()
        doc["basis"] = list(a.labels)
        return doc
    count = artin.orbit_count_projective(a)
    return {"orbits": "INFINITE" if count == math.inf else count}


def cmd_ht(args) -> Any:
    if args.command == "action":
        a = algebra_from_doc(_load(args.algebra))
        act = ht.projective_action(a)
        return {"action": act.text(), "variables": act.names}, act.text()
    if args.command == "fixed-locus":
        a = algebra_from_doc(_load(args.algebra))
        soc = ht.fixed_locus(a)
        return {"socle": [a.format_element(v) for v in soc.basis], "dim": soc.dim}
    p = pair_from_args(args.algebra, args.u)
    names = _snames(p.n)
    if args.command == "ideal":
        gb = ht.ideal_from_pair(p)
        return {"groebner_basis": gb.to_strs(names),
                "generators": [format_poly(g, names) for g in minimal_generators(gb)]}
    if args.command == "subspace":
        v = ht.generating_subspace(p)
        return {"basis": v.to_strs(), "dim": v.dim}
    rho = ht.representation(p)
    return {"matrix": rho.to_strs(), "parameters": rho.names}


def cmd_hyp(args) -> Any:
    h = hpair_from_ref(args.pair)
    if args.command == "equation":
        e = hyper.equation(h)
        doc = {"degree": e.d, "equation": e.to_str(), "variables": e.names}
        if e.d == 2:
            doc["quadratic_rank"] = hyper.quadratic_rank(e)
        return doc, e.to_str()
    if args.command == "form":
        ker = hyper.form_kernel(h)
        return {"degree": h.degree, "kernel": [h.algebra.format_element(v) for v in ker.basis],
                "nondegenerate": ker.dim == 0}
    if args.command == "reduce":
        r = hyper.reduce(h)
        return {"pair": hpair_to_doc(r), "equation": hyper.equation(r).to_str(), "dim": r.algebra.dim}
    return {"gorenstein_certificate": hyper.gorenstein_certificate(h), "nondegenerate": hyper.is_nondegenerate(h)}


def cmd_toric(args) -> Any:
    f = fan_from_ref(args.fan)
    c = args.command
    if c == "roots":
        return {"roots": [r.as_dict() for r in toric.demazure_roots(f)]}
    if c == "collections":
        return {"collections": [x.as_dict() for x in toric.complete_collections(f)]}
    if c == "exists":
        v = toric.has_additive_action(f)
        return {"additive_action": v}, "true" if v else "false"
    if c == "count":
        return {"actions": toric.surface_action_count(f)}
    if c == "unique":
        return {"unique": toric.uniqueness_check(f)}
    if c == "cox":
        return toric.cox_data(f).as_dict()
    if c == "validate":
        return toric.validate_fan(f).as_dict()
    if args.second:
        return toric.second_action_tuple(f).to_strs(f.var_names)
    return {"lnds": [{"root": r.as_dict(), "lnd": toric.root_lnd(f, r).to_str(f.var_names)}
                     for r in toric.demazure_roots(f)]}


def cmd_polytope(args) -> Any:
    p = polytope_from_ref(args.polytope)
    c = args.command
    if c == "inscribed":
        w = polytope.inscribed_in_rectangle(p)
        return {"inscribed": w is not None, "witness": list(w) if w is not None else None}
    if c == "normal-fan":
        return polytope.normal_fan(p).as_dict()
    if c == "facets":
        return {"facets": [{"normal": list(x.normal), "offset": x.offset} for x in p.facets]}
    if c == "very-ample":
        return polytope.very_ample_bounded(p, args.bound).as_dict()
    return {"points": [list(x) for x in polytope.lattice_points(p)]}


def cmd_catalog(args) -> Any:
    if args.command == "list":
        return {"table1": [e.id for e in catalog.table1()], "fixtures": list(catalog.FIXTURE_NAMES)}
    try:
        i = int(args.id)
    except ValueError as exc:
        raise MalformedInput(f"bad row id {args.id!r}") from exc
    doc = catalog.table1_entry(i).as_dict()
    doc["computed"] = artin.invariants(catalog.table1_algebra(i)).as_dict()
    return doc


# ---------------------------------------------------------------------------
# output


def _text(obj: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _inline(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{_scalar(v)}")
        return lines
    return [pad + _scalar(obj)]


def _inline(v: Any) -> bool:
    return isinstance(v, list) and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="addact", description="Exact computations with additive actions.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    # --format is also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("algebra", parents=[common], help="local algebra invariants and orbit counts")
    g.add_argument("command", choices=("invariants", "orbits"))
    g.add_argument("--algebra", required=True)
    g.set_defaults(func=cmd_algebra)

    g = groups.add_parser("ht", parents=[common], help="pairs, ideals, generating subspaces and actions")
    g.add_argument("command", choices=("ideal", "subspace", "representation", "action", "fixed-locus"))
    g.add_argument("--algebra", required=True)
    g.add_argument("--u", nargs="+", help="basis of U as polynomials in the generators (default: the maximal ideal)")
    g.set_defaults(func=cmd_ht)

    g = groups.add_parser("hyp", parents=[common], help="hypersurfaces from H-pairs")
    g.add_argument("command", choices=("equation", "form", "reduce", "certify"))
    g.add_argument("--pair", required=True)
    g.set_defaults(func=cmd_hyp)

    g = groups.add_parser("toric", parents=[common], help="Demazure roots and additive actions on toric varieties")
    g.add_argument("command", choices=("roots", "collections", "exists", "count", "unique", "cox", "lnd", "validate"))
    g.add_argument("--fan", required=True)
    g.add_argument("--second", action="store_true", help="with lnd: print the perturbed derivation tuple")
    g.set_defaults(func=cmd_toric)

    g = groups.add_parser("polytope", parents=[common], help="lattice polytopes")
    g.add_argument("command", choices=("inscribed", "normal-fan", "points", "facets", "very-ample"))
    g.add_argument("--polytope", required=True)
    g.add_argument("--bound", type=int, default=4)
    g.set_defaults(func=cmd_polytope)

    g = groups.add_parser("catalog", parents=[common], help="Table 1 rows and named fixtures")
    g.add_argument("command", choices=("list", "show"))
    g.add_argument("id", nargs="?")
    g.set_defaults(func=cmd_catalog)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.group == "catalog" and args.command == "show" and args.id is None:
        err.write("addact: error: catalog show needs a row id\n")
        return 2
    try:
        result = args.func(args)
    except MalformedInput as exc:
        err.write(f"addact: {exc.code}: {exc.message}\n")
        return 2
    except AddactError as exc:
        err.write(f"addact: {exc.code}: {exc.message}\n")
        return 2 if exc.code == "UNKNOWN_FIXTURE" else 1
    doc, text = result if isinstance(result, tuple) else (result, None)
    if args.format == "json":
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write((text if text is not None else "\n".join(_text(doc))) + "\n")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
