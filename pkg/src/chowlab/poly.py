"""Sparse multivariate polynomials over weighted-graded rings."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import HomogeneityError, MissingImageError, ParseError, SpecMismatchError
from .fields import FieldElement, FieldSpec, parse_field

Exponent = tuple[int, ...]

MAX_EXPONENT = 2**31 - 1


@dataclass(frozen=True)
class RingSpec:
    """k[x_1..x_n] with positive integer weights, modulo optional relations.

    Relations are polynomials over :meth:`ambient`, the same ring without
    relations.
    """

    field: FieldSpec
    variables: tuple[tuple[str, int], ...]
    relations: tuple["WeightedPoly", ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        variables = tuple((str(n), int(w)) for n, w in self.variables)
        object.__setattr__(self, "variables", variables)
        names = [n for n, _ in variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n, w in variables:
            if w < 1:
                raise ValueError(f"weight of {n} must be positive, got {w}")
            if not re.fullmatch(r"[A-Za-z_]\w*", n):
                raise ValueError(f"bad variable name {n!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})
        for rel in self.relations:
            if rel.ring.variables != variables or rel.ring.field != self.field:
                raise SpecMismatchError("relation lives in a different ring")
            if not rel.is_homogeneous():
                raise HomogeneityError(f"relation {rel} is not weighted-homogeneous")

    @classmethod
    def polynomial_ring(cls, fld: FieldSpec, variables: Iterable) -> RingSpec:
        """Accepts ``[("X", 2), ...]`` or bare names (weight 1)."""
        vs = [(v, 1) if isinstance(v, str) else tuple(v) for v in variables]
        return cls(fld, tuple(vs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MissingImageError(f"no variable {name!r} in ring") from None

    def ambient(self) -> RingSpec:
        if not self.relations:
            return self
        return RingSpec(self.field, self.variables)

    def with_relations(self, relations: Iterable["WeightedPoly"]) -> RingSpec:
        amb = self.ambient()
        rels = tuple(amb.coerce(r) for r in relations)
        return RingSpec(self.field, self.variables, rels)

    def same_ambient(self, other: RingSpec) -> bool:
        return self is other or (self.variables == other.variables and self.field == other.field)

    def coerce(self, f: "WeightedPoly") -> "WeightedPoly":
        """View f as a polynomial of this ring (same variables and field)."""
        if f.ring is self:
            return f
        if not self.same_ambient(f.ring):
            raise SpecMismatchError("polynomial from a different ring")
        return WeightedPoly(self, f._terms, _trusted=True)

    # -- element constructors ----------------------------------------------

    def zero(self) -> "WeightedPoly":
        return WeightedPoly(self, {}, _trusted=True)

    def one(self) -> "WeightedPoly":
        return self.constant(1)

    def constant(self, c: Any) -> "WeightedPoly":
        v = self.field.element(c).value
        if self.field.is_zero(v):
            return self.zero()
        return WeightedPoly(self, {(0,) * self.nvars: v}, _trusted=True)

    def var(self, name: str) -> "WeightedPoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return WeightedPoly(self, {tuple(e): self.field.one}, _trusted=True)

    def gens(self) -> list["WeightedPoly"]:
        return [self.var(n) for n in self.names]

    def monomial(self, exp: Exponent, coeff: Any = 1) -> "WeightedPoly":
        v = self.field.element(coeff).value
        if self.field.is_zero(v):
            return self.zero()
        return WeightedPoly(self, {tuple(exp): v})

    def parse(self, text: str) -> "WeightedPoly":
        return _Parser(self, text).parse()

    def degree_of(self, exp: Exponent) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def canonical_key(self, exp: Exponent):
        """Weighted degree first, then reverse-lex tie-break; larger is earlier."""
        return (self.degree_of(exp),) + tuple(-e for e in reversed(exp))

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.literal(),
            "variables": [[n, w] for n, w in self.variables],
            "relations": [str(r) for r in self.relations],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> RingSpec:
        fld = parse_field(doc["field"])
        variables = []
        for v in doc["variables"]:
            if isinstance(v, str):
                variables.append((v, 1))
            elif isinstance(v, Mapping):
                variables.append((v["name"], int(v.get("weight", 1))))
            else:
                variables.append((v[0], int(v[1])))
        base = cls(fld, tuple(variables))
        rels = [base.parse(r) for r in doc.get("relations", [])]
        return base.with_relations(rels) if rels else base


class WeightedPoly:
    """Immutable sparse polynomial; ``_terms`` maps exponent tuples to raw coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Exponent, Any], *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = dict(terms)
        else:
            fld = ring.field
            n = ring.nvars
            clean: dict[Exponent, Any] = {}
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n or any(e < 0 or e > MAX_EXPONENT for e in exp):
                    raise ValueError(f"bad exponent tuple {exp}")
                if isinstance(c, FieldElement):
                    c = fld.element(c).value
                if fld.is_zero(c):
                    continue
                clean[exp] = c
            self._terms = clean
        self._hash = None

    # -- views ---------------------------------------------------------------

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def terms(self) -> dict[Exponent, FieldElement]:
        fld = self.ring.field
        return {e: FieldElement(fld, c) for e, c in self._terms.items()}

    def raw_terms(self) -> dict[Exponent, Any]:
        return dict(self._terms)

    def coefficient(self, exp: Exponent) -> FieldElement:
        return FieldElement(self.field, self._terms.get(tuple(exp), self.field.zero))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def sorted_exponents(self) -> list[Exponent]:
        return sorted(self._terms, key=self.ring.canonical_key, reverse=True)

    def support_variables(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # -- grading -------------------------------------------------------------

    def weighted_degree(self) -> int | None:
        """Maximal weighted degree over the terms; ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(self.ring.degree_of(e) for e in self._terms)

    def total_degree(self) -> int | None:
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def order(self) -> int | None:
        if not self._terms:
            return None
        return min(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree_of(e) for e in self._terms}) <= 1

    def homogeneous_components(self) -> dict[int, WeightedPoly]:
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            parts.setdefault(self.ring.degree_of(e), {})[e] = c
        return {d: WeightedPoly(self.ring, t, _trusted=True) for d, t in parts.items()}

    # -- arithmetic ----------------------------------------------------------

    def _other(self, other) -> WeightedPoly:
        if isinstance(other, WeightedPoly):
            if other.ring is not self.ring and not self.ring.same_ambient(other.ring):
                raise SpecMismatchError("polynomials over different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> WeightedPoly:
        other = self._other(other)
        fld = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                s = fld.add(out[e], c)
                if fld.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return WeightedPoly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> WeightedPoly:
        neg = self.field.neg
        return WeightedPoly(self.ring, {e: neg(c) for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> WeightedPoly:
        return self + (-self._other(other))

    def __rsub__(self, other) -> WeightedPoly:
        return self._other(other) - self

    def __mul__(self, other) -> WeightedPoly:
        other = self._other(other)
        fld = self.field
        add, mul, is_zero = fld.add, fld.mul, fld.is_zero
        out: dict[Exponent, Any] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = mul(c1, c2)
                if e in out:
                    out[e] = add(out[e], c)
                else:
                    out[e] = c
        return WeightedPoly(self.ring, {e: c for e, c in out.items() if not is_zero(c)}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> WeightedPoly:
        if n < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Any) -> WeightedPoly:
        fld = self.field
        v = c if not isinstance(c, (int, Fraction, FieldElement, str)) else fld.element(c).value
        if fld.is_zero(v):
            return self.ring.zero()
        return WeightedPoly(self.ring, {e: fld.mul(x, v) for e, x in self._terms.items()}, _trusted=True)

    def mul_term(self, exp: Exponent, c: Any) -> WeightedPoly:
        """Multiply by the monomial c*x^exp (raw coefficient)."""
        mul = self.field.mul
        return WeightedPoly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): mul(x, c) for e, x in self._terms.items()},
            _trusted=True,
        )

    def lead(self) -> tuple[Exponent, Any]:
        """Leading term in the canonical storage order."""
        e = max(self._terms, key=self.ring.canonical_key)
        return e, self._terms[e]

    def monic(self) -> WeightedPoly:
        if not self._terms:
            return self
        _, c = self.lead()
        return self.scale(self.field.inv(c))

    # -- substitution ----------------------------------------------------------

    def substitute(self, images: Mapping[str, WeightedPoly], target: RingSpec | None = None) -> WeightedPoly:
        """Ring-homomorphism image; every variable that occurs needs an image.

        Variables absent from ``images`` are kept when the target ring has a
        variable of the same name.
        """
        if target is None:
            imgs = [v for v in images.values() if isinstance(v, WeightedPoly)]
            target = imgs[0].ring if imgs else self.ring
        maps: list[WeightedPoly | None] = []
        for name in self.ring.names:
            if name in images:
                img = images[name]
                if not isinstance(img, WeightedPoly):
                    img = target.constant(img)
                elif not target.same_ambient(img.ring):
                    raise SpecMismatchError(f"image of {name} lives in another ring")
                maps.append(target.coerce(img))
            elif name in target.names:
                maps.append(target.var(name))
            else:
                maps.append(None)
        result = target.zero()
        cache: dict[tuple[int, int], WeightedPoly] = {}
        for e, c in self._terms.items():
            term = target.constant(FieldElement(self.field, c)) if target.field == self.field else None
            if term is None:
                raise SpecMismatchError("substitution across fields")
            for i, k in enumerate(e):
                if not k:
                    continue
                if maps[i] is None:
                    raise MissingImageError(f"no image for variable {self.ring.names[i]}")
                key = (i, k)
                if key not in cache:
                    cache[key] = maps[i] ** k
                term = term * cache[key]
            result = result + term
        return result

    # -- comparison / text ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, WeightedPoly):
            return self.ring.same_ambient(other.ring) and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"WeightedPoly({format_poly(self)!r})"


def format_poly(f: WeightedPoly) -> str:
    if f.is_zero():
        return "0"
    fld = f.field
    names = f.ring.names
    out: list[str] = []
    for e in f.sorted_exponents():
        c = f._terms[e]
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        negative = fld.kind == "rationals" and c < 0
        if negative:
            c = -c
        if mono:
            if c == fld.one:
                body = mono
            else:
                body = f"{fld.format(c)}*{mono}"
        else:
            body = fld.format(c)
        if out:
            out.append(("-" if negative else "+") + body)
        else:
            out.append(("-" if negative else "") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\[[^\]]*\])|(\S))")


class _Parser:
    """Recursive descent over: expr := term (('+'|'-') term)*, term := factor ('*' factor)*."""

    def __init__(self, ring: RingSpec, text: str):
        self.ring = ring
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            pos = m.end()
            num, name, bracket, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif name is not None:
                self.tokens.append(("name", name))
            elif bracket is not None:
                self.tokens.append(("ext", bracket))
            elif sym is not None:
                self.tokens.append(("sym", sym))
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return tok

    def expect(self, sym: str) -> None:
        tok = self.take()
        if tok != ("sym", sym):
            raise ParseError(f"expected {sym!r} in {self.text!r}, got {tok[1]!r}")

    def parse(self) -> WeightedPoly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        f = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return f

    def expr(self) -> WeightedPoly:
        sign = 1
        if self.peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> WeightedPoly:
        f = self.power()
        while self.peek() == ("sym", "*"):
            self.take()
            f = f * self.power()
        return f

    def power(self) -> WeightedPoly:
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            e = int(val)
            if e > MAX_EXPONENT:
                raise ParseError("exponent exceeds 32-bit bound")
            base = base**e
        return base

    def atom(self) -> WeightedPoly:
        kind, val = self.take()
        ring = self.ring
        if kind == "num":
            if self.peek() == ("sym", "/") and self.i + 1 < len(self.tokens) and self.tokens[self.i + 1][0] == "num":
                self.take()
                den = int(self.take()[1])
                if den == 0:
                    raise ParseError("zero denominator")
                return ring.constant(ring.field.element(Fraction(int(val), den)))
            return ring.constant(int(val))
        if kind == "ext":
            return ring.constant(FieldElement(ring.field, ring.field.parse(val)))
        if kind == "name":
            if val not in ring.names:
                raise ParseError(f"unknown variable {val!r}; ring has {list(ring.names)}")
            return ring.var(val)
        if val == "(":
            f = self.expr()
            self.expect(")")
            return f
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_poly_list(ring: RingSpec, text: str) -> list[WeightedPoly]:
    """Comma-separated polynomials; commas inside brackets do not split."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [ring.parse(p) for p in parts if p.strip()]
