"""Buchberger's algorithm and the ideal operations built on it.

The engine works on plain ``dict[exponent, raw coefficient]`` maps and a sort
key per monomial order; :class:`WeightedPoly` only appears at the boundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .errors import HomogeneityError, ImproperIdealError, SpecMismatchError
from .poly import Exponent, RingSpec, WeightedPoly

WGREVLEX = "weighted-grevlex"
LEX = "lex"
ELIMINATION = "elimination"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on a ring's exponent tuples.

    ``eliminated`` lists variable indices forming the greater block of an
    elimination order; each block is ordered by weighted grevlex.
    """

    kind: str
    weights: tuple[int, ...]
    eliminated: tuple[int, ...] = ()

    @classmethod
    def grevlex(cls, ring: RingSpec) -> MonomialOrder:
        return cls(WGREVLEX, ring.weights)

    @classmethod
    def lex(cls, ring: RingSpec) -> MonomialOrder:
        return cls(LEX, ring.weights)

    @classmethod
    def elimination(cls, ring: RingSpec, eliminate: Iterable[str]) -> MonomialOrder:
        idx = tuple(sorted(ring.index(n) for n in eliminate))
        return cls(ELIMINATION, ring.weights, idx)

    def key_function(self) -> Callable[[Exponent], tuple]:
        w = self.weights
        if self.kind == LEX:
            return lambda e: e
        if self.kind == WGREVLEX:
            n = len(w)
            rng = range(n - 1, -1, -1)

            def key(e):
                return (sum(e[i] * w[i] for i in range(n)),) + tuple(-e[i] for i in rng)

            return key
        if self.kind == ELIMINATION:
            first = self.eliminated
            rest = tuple(i for i in range(len(w)) if i not in first)

            def block(e, idx):
                return (sum(e[i] * w[i] for i in idx),) + tuple(-e[i] for i in reversed(idx))

            return lambda e: block(e, first) + block(e, rest)
        raise ValueError(f"unknown monomial order {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == ELIMINATION:
            return f"{self.kind}{list(self.eliminated)}"
        return self.kind


# -- raw dict-polynomial kernels --------------------------------------------


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class _Engine:
    def __init__(self, ring: RingSpec, order: MonomialOrder):
        self.ring = ring
        self.fld = ring.field
        self.order = order
        self.key = order.key_function()
        self.weights = ring.weights

    def deg(self, e: Exponent) -> int:
        return sum(x * w for x, w in zip(e, self.weights))

    def lm(self, p: dict) -> Exponent:
        return max(p, key=self.key)

    def monic(self, p: dict) -> dict:
        fld = self.fld
        inv = fld.inv(p[self.lm(p)])
        return {e: fld.mul(c, inv) for e, c in p.items()}

    def sub_multiple(self, p: dict, c: Any, shift: Exponent, g: dict) -> None:
        """p -= c * x^shift * g, in place."""
        fld = self.fld
        mul, sub, is_zero = fld.mul, fld.sub, fld.is_zero
        for e, gc in g.items():
            t = tuple(a + b for a, b in zip(e, shift))
            v = mul(c, gc)
            if t in p:
                r = sub(p[t], v)
                if is_zero(r):
                    del p[t]
                else:
                    p[t] = r
            else:
                p[t] = fld.neg(v)

    def reduce(self, p: dict, basis: Sequence[tuple[Exponent, dict]], full: bool = True) -> dict:
        """Normal form of p; basis entries are (leading monomial, monic poly)."""
        p = dict(p)
        rem: dict = {}
        key = self.key
        while p:
            t = max(p, key=key)
            c = p[t]
            for lm, g in basis:
                if _divides(lm, t):
                    self.sub_multiple(p, c, _sub_exp(t, lm), g)
                    break
            else:
                if not full:
                    rem.update(p)
                    return rem
                rem[t] = c
                del p[t]
        return rem

    def spoly(self, f: tuple[Exponent, dict], g: tuple[Exponent, dict]) -> dict:
        lf, pf = f
        lg, pg = g
        l = _lcm(lf, lg)
        out: dict = {}
        one = self.fld.one
        self.sub_multiple(out, self.fld.neg(one), _sub_exp(l, lf), pf)
        self.sub_multiple(out, one, _sub_exp(l, lg), pg)
        return out


STRATEGIES = ("normal", "sugar", "fifo")


def _run_buchberger(eng: _Engine, polys: list[dict], strategy: str) -> list[dict]:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown pair strategy {strategy!r}")
    basis: list[tuple[Exponent, dict]] = []
    sugar: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}
    counter = itertools.count()

    def add(p: dict, s: int) -> None:
        p = eng.monic(p)
        lm = eng.lm(p)
        j = len(basis)
        basis.append((lm, p))
        sugar.append(s)
        for i in range(j):
            li = basis[i][0]
            l = _lcm(li, lm)
            ps = max(sugar[i] + eng.deg(_sub_exp(l, li)), s + eng.deg(_sub_exp(l, lm)))
            pairs[(i, j)] = (eng.deg(l), ps, eng.key(l), next(counter))

    def selection_key(item):
        ld, ps, lk, seq = item[1]
        if strategy == "normal":
            return (ld, ps, lk, seq)
        if strategy == "sugar":
            return (ps, ld, lk, seq)
        return (seq,)

    def chain_redundant(i: int, j: int) -> bool:
        l = _lcm(basis[i][0], basis[j][0])
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][0], l):
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    return True
        return False

    for p in polys:
        if p:
            add(p, max(eng.deg(e) for e in p))
    while pairs:
        (i, j), _ = min(pairs.items(), key=selection_key)
        psugar = pairs.pop((i, j))[1]
        li, lj = basis[i][0], basis[j][0]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if chain_redundant(i, j):
            continue
        h = eng.reduce(eng.spoly(basis[i], basis[j]), basis, full=False)
        if h:
            add(h, psugar)
    return _reduce_basis(eng, [p for _, p in basis])


def _reduce_basis(eng: _Engine, polys: list[dict]) -> list[dict]:
    items = [(eng.lm(p), eng.monic(p)) for p in polys if p]
    items.sort(key=lambda it: eng.key(it[0]))
    minimal: list[tuple[Exponent, dict]] = []
    for lm, p in items:
        if not any(_divides(m, lm) for m, _ in minimal):
            minimal.append((lm, p))
    out = []
    for idx, (lm, p) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = eng.reduce(p, others, full=True)
        out.append(eng.monic(r))
    out.sort(key=lambda p: eng.key(eng.lm(p)))
    return out


# -- public types ------------------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    ring: RingSpec
    order: MonomialOrder
    elements: tuple[WeightedPoly, ...]

    def _engine(self) -> _Engine:
        return _Engine(self.ring, self.order)

    def leading_monomials(self) -> list[Exponent]:
        key = self.order.key_function()
        return [max(g._terms, key=key) for g in self.elements]

    def normal_form(self, f: WeightedPoly) -> WeightedPoly:
        return normal_form(f, self)

    def contains(self, f: WeightedPoly) -> bool:
        return normal_form(f, self).is_zero()

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def text(self) -> list[str]:
        return [str(g) for g in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _check_ring(polys: Sequence[WeightedPoly], ring: RingSpec | None) -> RingSpec:
    if ring is None:
        if not polys:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = polys[0].ring
    amb = ring.ambient()
    for f in polys:
        if not amb.same_ambient(f.ring):
            raise SpecMismatchError("generators over different rings")
    return amb


def buchberger(
    gens: Sequence[WeightedPoly],
    order: MonomialOrder | None = None,
    *,
    ring: RingSpec | None = None,
    strategy: str = "normal",
) -> GroebnerBasis:
    """The reduced Groebner basis of the ideal generated by ``gens``.

    Default pair selection is the normal strategy (least lcm degree) with the
    sugar degree as tie-break; ``strategy`` may also be ``"sugar"`` or
    ``"fifo"``.  The reduced basis does not depend on the strategy.
    """
    amb = _check_ring(gens, ring)
    if order is None:
        order = MonomialOrder.grevlex(amb)
    eng = _Engine(amb, order)
    raw = [dict(g._terms) for g in gens if not g.is_zero()]
    result = _run_buchberger(eng, raw, strategy)
    return GroebnerBasis(amb, order, tuple(WeightedPoly(amb, p, _trusted=True) for p in result))


def normal_form(f: WeightedPoly, basis: GroebnerBasis) -> WeightedPoly:
    if not basis.ring.same_ambient(f.ring):
        raise SpecMismatchError("polynomial and basis live in different rings")
    eng = basis._engine()
    items = [(eng.lm(g._terms), g._terms) for g in basis.elements]
    return WeightedPoly(basis.ring, eng.reduce(f._terms, items), _trusted=True)


def s_polynomial(f: WeightedPoly, g: WeightedPoly, order: MonomialOrder) -> WeightedPoly:
    eng = _Engine(f.ring.ambient(), order)
    fm, gm = eng.monic(f._terms), eng.monic(g._terms)
    return WeightedPoly(eng.ring, eng.spoly((eng.lm(fm), fm), (eng.lm(gm), gm)), _trusted=True)


def exact_divide(f: WeightedPoly, g: WeightedPoly) -> WeightedPoly:
    """f / g, raising ValueError when g does not divide f."""
    amb = f.ring.ambient()
    eng = _Engine(amb, MonomialOrder.grevlex(amb))
    lg = eng.lm(g._terms)
    inv = eng.fld.inv(g._terms[lg])
    p = dict(f._terms)
    q: dict = {}
    while p:
        t = eng.lm(p)
        if not _divides(lg, t):
            raise ValueError(f"{g} does not divide {f}")
        c = eng.fld.mul(p[t], inv)
        shift = _sub_exp(t, lg)
        q[shift] = c
        eng.sub_multiple(p, c, shift, g._terms)
    return WeightedPoly(amb, q, _trusted=True)


# -- ideals -----------------------------------------------------------------


class IdealHandle:
    """An ideal of ``ring``: its relations together with ``generators``.

    Bases are computed lazily and cached per monomial order.
    """

    def __init__(self, ring: RingSpec, generators: Iterable[WeightedPoly] = ()):
        self.ring = ring
        amb = ring.ambient()
        self.generators = tuple(amb.coerce(g) for g in generators)
        self._bases: dict[tuple[MonomialOrder, str], GroebnerBasis] = {}

    @property
    def ambient(self) -> RingSpec:
        return self.ring.ambient()

    def all_generators(self) -> list[WeightedPoly]:
        rels = [self.ambient.coerce(r) for r in self.ring.relations]
        return [g for g in rels + list(self.generators) if not g.is_zero()]

    def basis(self, order: MonomialOrder | None = None, strategy: str = "normal") -> GroebnerBasis:
        if order is None:
            order = MonomialOrder.grevlex(self.ambient)
        key = (order, strategy)
        if key not in self._bases:
            self._bases[key] = buchberger(self.all_generators(), order, ring=self.ambient, strategy=strategy)
        return self._bases[key]

    def contains(self, f: WeightedPoly) -> bool:
        return self.basis().contains(f)

    def is_unit(self) -> bool:
        return self.basis().is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.all_generators())

    def same_ideal(self, other: IdealHandle) -> bool:
        return self.basis().elements == other.basis(MonomialOrder.grevlex(other.ambient)).elements

    def extended(self, more: Iterable[WeightedPoly]) -> IdealHandle:
        return IdealHandle(self.ring, list(self.generators) + list(more))

    def canonical_text(self) -> str:
        return ", ".join(self.basis().text())

    def __repr__(self) -> str:
        return f"IdealHandle({self.canonical_text()!r})"


def eliminate(ideal: IdealHandle, keep: Iterable[str]) -> IdealHandle:
    """I intersected with the subring on ``keep``, as an ideal of the free ambient ring."""
    amb = ideal.ambient
    keep = set(keep)
    drop = [n for n in amb.names if n not in keep]
    if not drop:
        return IdealHandle(amb, ideal.basis().elements)
    order = MonomialOrder.elimination(amb, drop)
    gb = ideal.basis(order)
    dropped = {amb.index(n) for n in drop}
    kept = [g for g in gb.elements if not (g.support_variables() & dropped)]
    return IdealHandle(amb, kept)


def _fresh_name(ring: RingSpec, stem: str = "_t") -> str:
    name, i = stem, 0
    while name in ring.names:
        i += 1
        name = f"{stem}{i}"
    return name


def intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """I ∩ J via elimination of an auxiliary variable t from tI + (1-t)J."""
    amb = I.ambient
    t = _fresh_name(amb)
    big = RingSpec(amb.field, amb.variables + ((t, 1),))
    tv = big.var(t)

    def lift(f: WeightedPoly) -> WeightedPoly:
        return WeightedPoly(big, {e + (0,): c for e, c in f._terms.items()}, _trusted=True)

    gens = [tv * lift(f) for f in I.all_generators()]
    gens += [(big.one() - tv) * lift(g) for g in J.all_generators()]
    if not gens:
        return IdealHandle(amb, [])
    elim = eliminate(IdealHandle(big, gens), amb.names)
    out = [WeightedPoly(amb, {e[:-1]: c for e, c in g._terms.items()}, _trusted=True) for g in elim.generators]
    return IdealHandle(amb, out)


def ideal_quotient(I: IdealHandle, J: IdealHandle | WeightedPoly) -> IdealHandle:
    """(I : J); the result keeps I's ring."""
    if isinstance(J, WeightedPoly):
        J = IdealHandle(I.ambient, [J])
    amb = I.ambient
    if not amb.same_ambient(J.ambient):
        raise SpecMismatchError("ideals over different rings")
    jgens = J.all_generators()
    if not jgens:
        return IdealHandle(I.ring, [amb.one()])
    result: IdealHandle | None = None
    for g in jgens:
        inter = intersect(I, IdealHandle(amb, [g]))
        q = IdealHandle(amb, [exact_divide(h, g) for h in inter.basis().elements])
        result = q if result is None else intersect(result, q)
    return IdealHandle(I.ring, result.basis().elements)


def saturation(I: IdealHandle, f: WeightedPoly) -> IdealHandle:
    """(I : f^∞) by iterated quotients until the reduced basis stabilizes."""
    cur = I
    while True:
        nxt = ideal_quotient(cur, f)
        if nxt.basis().elements == cur.basis().elements:
            return nxt
        cur = nxt


def krull_dimension(I: IdealHandle) -> int:
    """dim ring/I; the unit ideal gets -1 by convention."""
    gb = I.basis()
    if gb.is_unit():
        return -1
    n = I.ambient.nvars
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in gb.leading_monomials()]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0  # pragma: no cover


# -- Hilbert series ----------------------------------------------------------


def _minimalize(mons: Iterable[Exponent]) -> list[Exponent]:
    out: list[Exponent] = []
    for m in sorted(set(mons), key=sum):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_add(a: dict[int, int], b: dict[int, int], shift: int = 0) -> dict[int, int]:
    out = dict(a)
    for d, c in b.items():
        out[d + shift] = out.get(d + shift, 0) + c
    return {d: c for d, c in out.items() if c}


def _numerator(mons: list[Exponent], weights: Sequence[int]) -> dict[int, int]:
    mons = _minimalize(mons)
    if not mons:
        return {0: 1}
    n = len(weights)
    counts = [sum(1 for m in mons if m[i]) for i in range(n)]
    if max(counts) <= 1:
        # pairwise coprime generators
        out = {0: 1}
        for m in mons:
            d = sum(x * w for x, w in zip(m, weights))
            out = _poly_add(out, {dd + d: -c for dd, c in out.items()})
        return out
    x = max(range(n), key=lambda i: (counts[i], -i))
    e = min(m[x] for m in mons if m[x])
    pivot = tuple(e if i == x else 0 for i in range(n))
    plus = [m for m in mons if m[x] < e] + [pivot]
    colon = [tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in mons]
    return _poly_add(_numerator(plus, weights), _numerator(colon, weights), shift=e * weights[x])


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod(1 - t^w) for the ring's weights."""

    numerator: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]

    @property
    def numerator_dict(self) -> dict[int, int]:
        return dict(self.numerator)

    def coefficients(self, upto: int) -> list[int]:
        """Power-series coefficients h_0..h_upto."""
        series = [0] * (upto + 1)
        for d, c in self.numerator:
            if d <= upto:
                series[d] += c
        for w in self.weights:
            for i in range(w, upto + 1):
                series[i] += series[i - w]
        return series

    def _split_at_one(self) -> tuple[int, list[int]]:
        """(order of vanishing of the numerator at t = 1, quotient coefficients)."""
        deg = max(d for d, _ in self.numerator) if self.numerator else 0
        coeffs = [0] * (deg + 1)
        for d, c in self.numerator:
            coeffs[d] = c
        k = 0
        while coeffs and sum(coeffs) == 0:
            # divide by (1 - t): q_i = sum_{j<=i} a_j
            acc, q = 0, []
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs = q
            k += 1
        return k, coeffs

    def dimension(self) -> int:
        if not self.numerator:
            return -1
        k, _ = self._split_at_one()
        return len(self.weights) - k

    def multiplicity(self) -> Fraction:
        """lim_{t->1} (1-t)^dim H(t)."""
        if not self.numerator:
            raise ImproperIdealError("multiplicity of the zero module")
        _, q = self._split_at_one()
        denom = 1
        for w in self.weights:
            denom *= w
        return Fraction(sum(q), denom)

    def numerator_text(self, var: str = "t") -> str:
        parts = []
        for d, c in sorted(self.numerator):
            mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
            if mono:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(sign + body)
        return "".join(parts) if parts else "0"

    def denominator_text(self, var: str = "t") -> str:
        return "*".join(f"(1-{var}^{w})" if w > 1 else f"(1-{var})" for w in self.weights)

    def __str__(self) -> str:
        return f"({self.numerator_text()})/({self.denominator_text()})"


def hilbert_series(I: IdealHandle) -> HilbertSeries:
    if not I.is_homogeneous():
        raise HomogeneityError("Hilbert series needs weighted-homogeneous generators")
    amb = I.ambient
    gb = I.basis()
    num = _numerator(gb.leading_monomials(), amb.weights)
    return HilbertSeries(tuple(sorted(num.items())), amb.weights)


def graded_multiplicity(I: IdealHandle) -> Fraction:
    """e*(ring/I) = lim_{t->1} (1-t)^dim H(t), exact."""
    if I.is_unit():
        raise ImproperIdealError("multiplicity of the unit ideal")
    return hilbert_series(I).multiplicity()


def graded_piece_dimension(I: IdealHandle, degree: int) -> int:
    return hilbert_series(I).coefficients(degree)[degree]
