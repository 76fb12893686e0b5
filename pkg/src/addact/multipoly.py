"""Sparse multivariate polynomials over Q.

A ``MultiPoly`` maps exponent tuples to nonzero ``Fraction`` coefficients.  The
same object doubles as a constant-coefficient differential operator: the
variable S_i acts as d/dx_i (see ``apply_diffop`` and ``pairing``).

Groebner bases use Buchberger's algorithm with the normal selection strategy
and the two classical pair criteria.  The degree cap guarding pathological
inputs defaults to 64 and can be overridden with ``ADDACT_DEGREE_CAP``.
"""

from __future__ import annotations

import enum
import os
import re
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import AddactError, MalformedInput
from .exact_core import rref_rows, to_rational

Exp = Tuple[int, ...]

DEFAULT_DEGREE_CAP = 64


def degree_cap() -> int:
    raw = os.environ.get("ADDACT_DEGREE_CAP")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_DEGREE_CAP


class MonomialOrder(enum.Enum):
    GRLEX = "grlex"
    GREVLEX = "grevlex"

    def key(self, e: Exp):
        """Sort key; larger key means larger monomial."""
        if self is MonomialOrder.GRLEX:
            return (sum(e), e)
        return (sum(e), tuple(-x for x in reversed(e)))

    def basis_key(self, e: Exp):
        """Ascending degree, larger monomials first inside a degree (1, x1, x2, x1^2, ...)."""
        k = self.key(e)
        return (k[0], tuple(-x for x in k[1]))


GRLEX = MonomialOrder.GRLEX
GREVLEX = MonomialOrder.GREVLEX


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int) -> Iterator[Exp]:
    """All exponent tuples of total degree d, lexicographically descending."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def monomials_up_to(nvars: int, d: int) -> List[Exp]:
    out: List[Exp] = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exp, object]] = None) -> None:
        clean: Dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent {e} for {nvars} variables")
                c = to_rational(c)
                if c != 0:
                    clean[e] = clean.get(e, Fraction(0)) + c
                    if clean[e] == 0:
                        del clean[e]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exp, Fraction]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        c = to_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "MultiPoly":
        c = to_rational(c)
        return cls._raw(len(e), {tuple(e): c} if c else {})

    # basic access -------------------------------------------------------
    @property
    def terms(self) -> Dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def sorted_terms(self, order: MonomialOrder = GRLEX) -> List[Tuple[Exp, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading(self, order: MonomialOrder = GRLEX) -> Tuple[Exp, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=order.key)
        return e, self._terms[e]

    def monic(self, order: MonomialOrder = GRLEX) -> "MultiPoly":
        if not self._terms:
            return self
        _, c = self.leading(order)
        return self * (1 / c)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch {self.nvars} vs {other.nvars}")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                c = to_rational(other)
            except (TypeError, ValueError):
                return NotImplemented
            if c == 0:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        return self * (1 / to_rational(other))

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, e: Exp, c: Fraction) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {_add(e, f): c * v for f, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == MultiPoly.constant(self.nvars, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # calculus and substitution -----------------------------------------
    def diff(self, i: int, k: int = 1) -> "MultiPoly":
        out: Dict[Exp, Fraction] = {}
        for e, c in self._terms.items():
            if e[i] >= k:
                f = list(e)
                f[i] -= k
                out[tuple(f)] = c * (factorial(e[i]) // factorial(e[i] - k))
        return MultiPoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace x_i by images[i] (all images share one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        powers: List[List[MultiPoly]] = [[MultiPoly.constant(target, 1)] for _ in images]
        result = MultiPoly.zero(target)
        for e, c in self._terms.items():
            t = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    while len(powers[i]) <= k:
                        powers[i].append(powers[i][-1] * images[i])
                    t = t * powers[i][k]
            result = result + t
        return result

    def embed(self, nvars: int, positions: Sequence[int]) -> "MultiPoly":
        """Move variable i to slot positions[i] of a ring with ``nvars`` variables."""
        out = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for i, k in enumerate(e):
                f[positions[i]] += k
            out[tuple(f)] = c
        return MultiPoly._raw(nvars, out)

    # text ---------------------------------------------------------------
    def to_str(self, names: Optional[Sequence[str]] = None, order: MonomialOrder = GRLEX) -> str:
        return format_poly(self, names, order)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {format_poly(self)!r})"


def default_names(nvars: int, prefix: str = "x", start: int = 1) -> List[str]:
    return [f"{prefix}{i + start}" for i in range(nvars)]


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(e: Exp, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: MultiPoly, names: Optional[Sequence[str]] = None, order: MonomialOrder = GRLEX) -> str:
    """Canonical text: terms descending in ``order``, coefficients written p/q."""
    if names is None:
        names = default_names(p.nvars)
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms(order)):
        mono = format_monomial(e, names)
        mag = abs(c)
        if not mono:
            body = format_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_scalar(mag)} * {mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_]*)(\d*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, object]]:
    pos = 0
    toks: List[Tuple[str, object]] = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedInput(f"cannot parse polynomial near {text[pos:]!r}")
        num, name, idx, op = m.groups()
        if num is not None:
            toks.append(("num", Fraction(num)))
        elif name is not None:
            toks.append(("var", (name, idx)))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return toks


def parse_poly(text: str, nvars: int, names: Optional[Sequence[str]] = None) -> MultiPoly:
    """Parse text such as ``"S1^2 - 1/2*S2"``.

    Without ``names``, a variable token ``<letters><k>`` is variable k (1-based)
    whatever the letters; a bare letter means variable 1 when ``nvars == 1``.
    """
    toks = _tokenize(text)
    lookup = {n: i for i, n in enumerate(names)} if names else None
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def variable(name, idx) -> MultiPoly:
        full = f"{name}{idx}"
        if lookup is not None:
            if full not in lookup:
                raise MalformedInput(f"unknown variable {full!r}")
            return MultiPoly.var(nvars, lookup[full])
        if idx == "":
            if nvars == 1:
                return MultiPoly.var(nvars, 0)
            raise MalformedInput(f"variable {name!r} needs an index")
        k = int(idx)
        if not 1 <= k <= nvars:
            raise MalformedInput(f"variable {full!r} out of range for {nvars} variables")
        return MultiPoly.var(nvars, k - 1)

    def expr() -> MultiPoly:
        kind, val = peek()
        sign = 1
        if (kind, val) in (("op", "-"), ("op", "+")):
            take()
            sign = -1 if val == "-" else 1
        acc = term() * sign
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term() -> MultiPoly:
        acc = power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * power()
            elif kind == "op" and val == "/":
                take()
                d = power()
                if d.total_degree() > 0 or d.is_zero():
                    raise MalformedInput("division only by nonzero constants")
                acc = acc * (1 / d.constant_term())
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * power()  # implicit product
            else:
                return acc

    def power() -> MultiPoly:
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k, e = take()
            if k != "num" or e.denominator != 1:
                raise MalformedInput("exponent must be a non-negative integer")
            return base ** int(e)
        return base

    def atom() -> MultiPoly:
        kind, val = take()
        if kind == "num":
            return MultiPoly.constant(nvars, val)
        if kind == "var":
            return variable(*val)
        if kind == "op" and val == "(":
            inner = expr()
            if take() != ("op", ")"):
                raise MalformedInput("unbalanced parentheses")
            return inner
        if kind == "op" and val == "-":
            return -atom()
        raise MalformedInput(f"unexpected token {val!r}")

    if not toks:
        raise MalformedInput("empty polynomial")
    result = expr()
    if pos != len(toks):
        raise MalformedInput(f"trailing input in {text!r}")
    return result


# ---------------------------------------------------------------------------
# apolarity


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def apply_diffop(g: MultiPoly, f: MultiPoly) -> MultiPoly:
    """g(d/dx_1, ..., d/dx_n) applied to f."""
    if g.nvars != f.nvars:
        raise ValueError("variable count mismatch")
    out: Dict[Exp, Fraction] = {}
    for a, cg in g.items():
        for b, cf in f.items():
            if _divides(a, b):
                mult = 1
                for x, y in zip(a, b):
                    mult *= _falling(y, x)
                e = _sub(b, a)
                v = out.get(e, 0) + cg * cf * mult
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
    return MultiPoly._raw(f.nvars, out)


def exp_factorial(e: Exp) -> int:
    out = 1
    for k in e:
        out *= factorial(k)
    return out


def pairing(g: MultiPoly, f: MultiPoly) -> Fraction:
    """<g | f>: g applied to f as a differential operator, evaluated at 0."""
    if g.nvars != f.nvars:
        raise ValueError("variable count mismatch")
    total = Fraction(0)
    small, large = (g, f) if len(g) <= len(f) else (f, g)
    for e, c in small.items():
        d = large.coeff(e)
        if d:
            total += c * d * exp_factorial(e)
    return total


def translate(f: MultiPoly, beta: Sequence) -> MultiPoly:
    """f(x + beta) for a rational vector beta."""
    if len(beta) != f.nvars:
        raise ValueError("beta length must equal the number of variables")
    n = f.nvars
    images = [MultiPoly.var(n, i) + to_rational(b) for i, b in enumerate(beta)]
    return f.substitute(images)


# ---------------------------------------------------------------------------
# Groebner bases


def _reduce(f: MultiPoly, basis: Sequence[Tuple[Exp, MultiPoly]], order: MonomialOrder) -> MultiPoly:
    """Full multivariate division remainder; basis entries are (lead exp, monic poly)."""
    n = f.nvars
    work = dict(f._terms)
    rem: Dict[Exp, Fraction] = {}
    key = order.key
    while work:
        e = max(work, key=key)
        c = work[e]
        for lt, g in basis:
            if _divides(lt, e):
                shift = _sub(e, lt)
                for ge, gc in g._terms.items():
                    t = _add(ge, shift)
                    v = work.get(t, 0) - c * gc
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[e] = c
            del work[e]
    return MultiPoly._raw(n, rem)


class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced, sorted by leading monomial (descending)."""

    __slots__ = ("order", "generators", "nvars", "_lead")

    def __init__(self, generators: Sequence[MultiPoly], order: MonomialOrder = GRLEX, nvars: Optional[int] = None) -> None:
        gens = [g.monic(order) for g in generators if not g.is_zero()]
        gens.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
        self.order = order
        self.generators: Tuple[MultiPoly, ...] = tuple(gens)
        self.nvars = nvars if nvars is not None else (gens[0].nvars if gens else 0)
        self._lead = [(g.leading(order)[0], g) for g in gens]

    def leading_monomials(self) -> List[Exp]:
        return [lt for lt, _ in self._lead]

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return _reduce(f, self._lead, self.order)

    def contains(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()

    def is_standard(self, e: Exp) -> bool:
        return not any(_divides(lt, e) for lt, _ in self._lead)

    def is_unit_ideal(self) -> bool:
        return any(sum(lt) == 0 for lt, _ in self._lead)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroebnerBasis) and self.order == other.order and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.order, self.generators))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def to_strs(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [g.to_str(names, self.order) for g in self.generators]

    def __repr__(self) -> str:
        return f"GroebnerBasis({self.to_strs()}, order={self.order.value})"


def _interreduce(polys: List[MultiPoly], order: MonomialOrder) -> List[MultiPoly]:
    polys = [p.monic(order) for p in polys if not p.is_zero()]
    # drop generators whose leading monomial is divisible by another one
    leads = [p.leading(order)[0] for p in polys]
    keep = []
    for i, p in enumerate(polys):
        redundant = any(
            j != i and _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
            for j in range(len(polys))
        )
        if not redundant:
            keep.append(p)
    out = []
    for i, p in enumerate(keep):
        others = [(q.leading(order)[0], q) for j, q in enumerate(keep) if j != i]
        lt, lc = p.leading(order)
        tail = p - MultiPoly.monomial(lt, lc)
        out.append(MultiPoly.monomial(lt, 1) + _reduce(tail, others, order))
    return out


def groebner(gens: Sequence[MultiPoly], order: MonomialOrder = GRLEX, cap: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("groebner needs at least one nonzero generator")
    cap = degree_cap() if cap is None else cap
    nvars = gens[0].nvars
    for g in gens:
        if g.total_degree() > cap:
            raise AddactError("DEGREE_BLOWUP", f"input degree {g.total_degree()} exceeds cap {cap}")
    G: List[MultiPoly] = []
    leads: List[Exp] = []
    pairs: List[Tuple[int, int]] = []

    def add(p: MultiPoly) -> None:
        p = p.monic(order)
        idx = len(G)
        G.append(p)
        leads.append(p.leading(order)[0])
        pairs.extend((i, idx) for i in range(idx))

    for g in gens:
        add(g)
    done = set()
    while pairs:
        pairs.sort(key=lambda ij: order.key(_lcm(leads[ij[0]], leads[ij[1]])))
        i, j = pairs.pop(0)
        done.add((i, j))
        li, lj = leads[i], leads[j]
        l = _lcm(li, lj)
        if sum(l) > cap:
            raise AddactError("DEGREE_BLOWUP", f"S-polynomial degree {sum(l)} exceeds cap {cap}")
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        if any(
            k not in (i, j)
            and _divides(leads[k], l)
            and (min(i, k), max(i, k)) in done
            and (min(j, k), max(j, k)) in done
            for k in range(len(G))
        ):
            continue
        s = G[i].mul_term(_sub(l, li), Fraction(1)) - G[j].mul_term(_sub(l, lj), Fraction(1))
        r = _reduce(s, list(zip(leads, G)), order)
        if not r.is_zero():
            if r.total_degree() > cap:
                raise AddactError("DEGREE_BLOWUP", f"intermediate degree {r.total_degree()} exceeds cap {cap}")
            add(r)
    return GroebnerBasis(_interreduce(G, order), order, nvars)


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.normal_form(f)


def standard_monomials(gb: GroebnerBasis, cap: int = 10_000) -> List[Exp]:
    """Monomials outside the leading-term ideal, in basis order (1, x1, x2, x1^2, ...)."""
    n = gb.nvars
    if gb.is_unit_ideal():
        return []
    out: List[Exp] = []
    d = 0
    while True:
        found = [e for e in monomials_of_degree(n, d) if gb.is_standard(e)]
        if not found:
            break
        out.extend(sorted(found, key=gb.order.basis_key))
        if len(out) > cap:
            raise AddactError("NOT_FINITE_CODIMENSION", f"more than {cap} standard monomials")
        d += 1
    return out


def minimal_generators(gb: GroebnerBasis) -> List[MultiPoly]:
    """Greedy subset of the reduced basis that still generates the ideal."""
    gens = list(gb.generators)
    i = len(gens) - 1
    while i >= 0 and len(gens) > 1:
        others = gens[:i] + gens[i + 1:]
        if groebner(others, gb.order) == gb:
            gens = others
        i -= 1
    return gens


def buchberger_moller(
    nvars: int,
    image: Callable[[Exp], Sequence[Fraction]],
    order: MonomialOrder = GRLEX,
    cap: Optional[int] = None,
) -> Tuple[GroebnerBasis, List[Exp]]:
    """Reduced Groebner basis of the kernel of a linear map K[x] -> K^r whose kernel is an ideal.

    Monomials are walked upward in ``order``; a monomial whose image is a
    combination of the images of earlier standard monomials yields a basis
    element, everything else becomes a new standard monomial.
    """
    cap = degree_cap() if cap is None else cap
    leads: List[Exp] = []
    relations: List[MultiPoly] = []
    standard: List[Exp] = []
    echelon: List[Tuple[int, List[Fraction], Dict[int, Fraction]]] = []
    d = 0
    while True:
        if d > cap:
            raise AddactError("DEGREE_BLOWUP", f"kernel ideal needs degree above {cap}")
        new_std = 0
        for e in sorted(monomials_of_degree(nvars, d), key=order.key):
            if any(_divides(lt, e) for lt in leads):
                continue
            w = [to_rational(x) for x in image(e)]
            acc: Dict[int, Fraction] = {}
            for p, vec, combo in echelon:
                if w[p] != 0:
                    f = w[p] / vec[p]
                    w = [a - f * b for a, b in zip(w, vec)]
                    for s, c in combo.items():
                        v = acc.get(s, 0) + f * c
                        if v:
                            acc[s] = v
                        else:
                            acc.pop(s, None)
            if any(x != 0 for x in w):
                t = len(standard)
                standard.append(e)
                combo = {s: -c for s, c in acc.items()}
                combo[t] = Fraction(1)
                pivot = next(i for i, x in enumerate(w) if x != 0)
                echelon.append((pivot, w, combo))
                new_std += 1
            else:
                terms = {e: Fraction(1)}
                for s, c in acc.items():
                    terms[standard[s]] = terms.get(standard[s], 0) - c
                leads.append(e)
                relations.append(MultiPoly(nvars, terms))
        if new_std == 0:
            break
        d += 1
    return GroebnerBasis(relations, order, nvars), sorted(standard, key=order.basis_key)


# ---------------------------------------------------------------------------
# polynomial subspaces


def canonical_span(polys: Iterable[MultiPoly], nvars: int, order: MonomialOrder = GRLEX) -> Tuple[MultiPoly, ...]:
    """Canonical basis of the span: rref with monomial columns in basis order.

    Pivots sit on the smallest monomials, so the span of 1, x1, x2 + x1^2/2
    comes back literally as those three polynomials.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return ()
    cols = sorted({e for p in polys for e in p._terms}, key=order.basis_key)
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for p in polys:
        r = [Fraction(0)] * len(cols)
        for e, c in p.items():
            r[index[e]] = c
        rows.append(r)
    red, _ = rref_rows(rows, len(cols))
    return tuple(MultiPoly(nvars, {cols[i]: c for i, c in enumerate(r) if c}) for r in red)
