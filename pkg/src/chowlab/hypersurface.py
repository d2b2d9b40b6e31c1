"""Fermat and mixed weighted hypersurfaces, irreducibility certificates, beta-reduction.

The two families are

* fermat: ``Y^m + X_1^n + ... + X_d^n`` with ``deg X_i = m``, ``deg Y = n``;
* mixed:  ``X^n + Y^m + X^a Z^b + W_3^n + ... + W_d^n`` with ``deg Y = n`` and
  every other variable of degree ``m``.

In both cases the weight-``m`` variables generate a Noether normalization T.

Irreducibility of ``Y^m + beta*X^n`` for ``gcd(m, n) = 1`` and ``beta != 0``
holds over *every* field, not only algebraically closed ones.  Over K = k(X)
the polynomial is ``Y^m - c`` with ``c = -beta*X^n``.  By Capelli's theorem it
is irreducible in K[Y] unless c is a p-th power for some prime p | m, or
4 | m and c lies in -4K^4.  Both obstructions force the X-adic valuation of
c, which is n, to be divisible by p (resp. 4), impossible since gcd(m, n) = 1.
Being monic in Y, the polynomial is then irreducible in k[X, Y] by Gauss's
lemma.  The brute-force factorizer below checks this independently over small
finite fields.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Iterable, Mapping, Sequence

from .errors import HypothesisError, InvalidFamilyError, ResourceBoundError
from .fields import FieldElement, FieldSpec, parse_field
from .groebner import IdealHandle, exact_divide, krull_dimension
from .linalg import inverse, rank, rref
from .poly import Exponent, RingSpec, WeightedPoly

FERMAT = "fermat"
MIXED = "mixed"

MAX_ORACLE_DEGREE = 8
MAX_ORACLE_FIELD = 13
MAX_ORACLE_CANDIDATES = 2_000_000

BETA_ZERO = "beta-zero"
BETA_NONZERO = "beta-nonzero"

BETA_WARNING = (
    "beta depends on the choice of v (it rescales by n-th powers of units); "
    "only whether it vanishes is basis-invariant"
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    m: int
    n: int
    d: int
    field: FieldSpec
    a: int | None = None
    b: int | None = None

    def __post_init__(self) -> None:
        if self.family not in (FERMAT, MIXED):
            raise InvalidFamilyError(f"unknown family {self.family!r}")
        if self.m < 2 or self.n < 2:
            raise InvalidFamilyError("m and n must be at least 2")
        if self.d < 2:
            raise InvalidFamilyError("d must be at least 2")
        if gcd(self.m, self.n) != 1:
            raise InvalidFamilyError(f"gcd(m, n) = {gcd(self.m, self.n)} != 1")
        char = self.field.characteristic
        if char and (self.m * self.n) % char == 0:
            raise InvalidFamilyError(f"characteristic {char} divides mn = {self.m * self.n}")
        if self.family == MIXED:
            if self.a is None or self.b is None or self.a < 1 or self.b < 1:
                raise InvalidFamilyError("mixed family needs a, b >= 1")
            if self.a + self.b != self.n:
                raise InvalidFamilyError(f"a + b = {self.a + self.b} but n = {self.n}")

    @classmethod
    def from_json(cls, doc: Mapping | str) -> FamilySpec:
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            return cls(
                family=doc["family"],
                m=int(doc["m"]),
                n=int(doc["n"]),
                d=int(doc.get("d", 2)),
                field=parse_field(doc.get("field", "QQ")),
                a=None if doc.get("a") is None else int(doc["a"]),
                b=None if doc.get("b") is None else int(doc["b"]),
            )
        except KeyError as exc:
            raise InvalidFamilyError(f"family document lacks {exc}") from None

    def to_json(self) -> dict:
        doc = {"family": self.family, "m": self.m, "n": self.n, "d": self.d, "field": self.field.literal()}
        if self.family == MIXED:
            doc["a"], doc["b"] = self.a, self.b
        return doc


@dataclass(frozen=True)
class FamilyRing:
    spec: FamilySpec
    ring: RingSpec
    relation: WeightedPoly
    normalization: tuple[str, ...]

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def d(self) -> int:
        return self.spec.d

    def parse(self, text: str) -> WeightedPoly:
        return self.ring.ambient().parse(text)

    def zero_ideal(self) -> IdealHandle:
        return IdealHandle(self.ring)


def build_family(spec: FamilySpec) -> FamilyRing:
    m, n, d = spec.m, spec.n, spec.d
    if spec.family == FERMAT:
        xs = [f"X{i}" for i in range(1, d + 1)]
        variables = [(x, m) for x in xs] + [("Y", n)]
        amb = RingSpec(spec.field, tuple(variables))
        rel = amb.var("Y") ** m
        for x in xs:
            rel = rel + amb.var(x) ** n
        normalization = tuple(xs)
    else:
        ws = [f"W{j}" for j in range(3, d + 1)]
        variables = [("X", m), ("Y", n), ("Z", m)] + [(w, m) for w in ws]
        amb = RingSpec(spec.field, tuple(variables))
        X, Y, Z = amb.var("X"), amb.var("Y"), amb.var("Z")
        rel = X**n + Y**m + X**spec.a * Z**spec.b
        for w in ws:
            rel = rel + amb.var(w) ** n
        normalization = ("X", "Z", *ws)
    ring = amb.with_relations([rel])
    return FamilyRing(spec, ring, rel, normalization)


# -- brute-force bivariate factorization ------------------------------------


@dataclass(frozen=True)
class Factorization:
    unit: FieldElement
    factors: tuple[tuple[WeightedPoly, int], ...]
    ring: RingSpec | None = None

    def expand(self) -> WeightedPoly:
        ring = self.ring or (self.factors[0][0].ring if self.factors else None)
        if ring is None:
            raise ValueError("empty factorization has no ring")
        out = ring.constant(self.unit)
        for g, e in self.factors:
            out = out * g**e
        return out

    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def distinct(self) -> int:
        return len(self.factors)

    def to_json(self) -> dict:
        return {
            "unit": str(self.unit),
            "factors": [{"factor": str(g), "multiplicity": e} for g, e in self.factors],
        }


def _grading_weights(exps: Sequence[Exponent], idx: tuple[int, int]) -> tuple[int, int] | None:
    """Positive weights on the two active variables making every exponent equidegree."""
    i, j = idx
    pts = [(e[i], e[j]) for e in exps]
    base = pts[0]
    w = None
    for p in pts[1:]:
        dx, dy = p[0] - base[0], p[1] - base[1]
        if dx == 0 and dy == 0:
            continue
        if dx * dy >= 0:
            return None
        g = gcd(abs(dx), abs(dy))
        cand = (abs(dy) // g, abs(dx) // g)
        if w is None:
            w = cand
        elif w != cand:
            return None
    return w or (1, 1)


def _normalized_vectors(fld: FieldSpec, k: int) -> Iterable[tuple]:
    """Coefficient vectors of length k whose first nonzero entry is 1."""
    elems = list(fld.elements())
    for lead in range(k):
        for tail in itertools.product(elems, repeat=k - lead - 1):
            yield (fld.zero,) * lead + (fld.one,) + tail


def _divides_poly(g: WeightedPoly, f: WeightedPoly) -> WeightedPoly | None:
    try:
        return exact_divide(f, g)
    except ValueError:
        return None


def _smallest_divisor(
    f: WeightedPoly, active: tuple[int, int], max_candidates: int, prune: bool = True
) -> WeightedPoly | None:
    ring = f.ring
    fld = ring.field
    n = ring.nvars
    i, j = active
    exps = list(f._terms)
    degx = max(e[i] for e in exps)
    degy = max(e[j] for e in exps)
    total = max(e[i] + e[j] for e in exps)

    def mono(a: int, b: int) -> Exponent:
        e = [0] * n
        e[i] += a
        e[j] += b
        return tuple(e)

    weights = _grading_weights(exps, active) if prune else None
    if weights is not None:
        # factors of a graded polynomial in a graded domain are graded
        wdeg = sum(e[i] * weights[0] + e[j] * weights[1] for e in exps[:1])
        levels = []
        for D in range(1, wdeg // 2 + 1):
            mons = [
                (a, b)
                for a in range(degx + 1)
                for b in range(degy + 1)
                if a * weights[0] + b * weights[1] == D
            ]
            if mons:
                levels.append(mons)
    else:
        levels = []
        for t in range(1, total // 2 + 1):
            mons = [(a, b) for a in range(min(t, degx) + 1) for b in range(min(t, degy) + 1) if a + b <= t]
            if any(a + b == t for a, b in mons):
                # highest-degree monomials first so normalization fixes a top coefficient
                mons.sort(key=lambda ab: (-(ab[0] + ab[1]), -ab[1]))
                levels.append(mons)
    q = fld.size
    for mons in levels:
        k = len(mons)
        if (q**k - 1) // (q - 1) > max_candidates:
            raise ResourceBoundError(f"{(q**k - 1) // (q - 1)} candidate divisors exceed the cap {max_candidates}")
        for vec in _normalized_vectors(fld, k):
            terms = {mono(a, b): c for (a, b), c in zip(mons, vec) if not fld.is_zero(c)}
            g = WeightedPoly(ring, terms, _trusted=True)
            if g.is_constant():
                continue
            if _divides_poly(g, f) is not None:
                return g
    return None


def factor_bivariate_bruteforce(
    f: WeightedPoly,
    fld: FieldSpec | None = None,
    *,
    max_degree: int = MAX_ORACLE_DEGREE,
    max_field: int = MAX_ORACLE_FIELD,
    max_candidates: int = MAX_ORACLE_CANDIDATES,
    homogeneous_pruning: bool = True,
) -> Factorization:
    """Complete factorization of a polynomial in (at most) two variables over a small finite field.

    Exhaustive divisor search, smallest degree first: the first divisor found
    is irreducible, and the search recurses on the cofactor.  When f is
    weighted-homogeneous for some positive weights on its two variables only
    homogeneous candidates are tried, unless ``homogeneous_pruning`` is off.
    """
    ring = f.ring
    fld = fld or ring.field
    if fld != ring.field:
        raise ValueError("field does not match the polynomial's ring")
    if not fld.is_finite:
        raise ResourceBoundError("brute-force factorization needs a finite field")
    if fld.size > max_field:
        raise ResourceBoundError(f"field size {fld.size} exceeds the cap {max_field}")
    if f.is_zero():
        raise HypothesisError("cannot factor zero")
    if (f.total_degree() or 0) > max_degree:
        raise ResourceBoundError(f"total degree {f.total_degree()} exceeds the cap {max_degree}")
    support = sorted(f.support_variables())
    if len(support) > 2:
        raise ValueError(f"polynomial {f} involves more than two variables")
    active = tuple(support) if len(support) == 2 else (support[0], support[0]) if support else (0, 0)
    if len(support) == 1 and ring.nvars > 1:
        other = next(k for k in range(ring.nvars) if k != support[0])
        active = (support[0], other)

    found: dict[WeightedPoly, int] = {}
    rest = f
    while not rest.is_constant():
        g = _smallest_divisor(rest, active, max_candidates, homogeneous_pruning)
        if g is None:
            g = rest.monic()
        g = g.monic()
        found[g] = found.get(g, 0) + 1
        rest = exact_divide(rest, g)
    unit = rest.coefficient((0,) * ring.nvars)
    factors = sorted(found.items(), key=lambda kv: (kv[0].total_degree(), str(kv[0])))
    return Factorization(unit, tuple(factors), ring)


# -- Kummer/Capelli criterion -------------------------------------------------


@dataclass(frozen=True)
class IrreducibilityVerdict:
    irreducible: bool
    reason: str

    def __bool__(self) -> bool:
        return self.irreducible


def fermat_irreducible(m: int, n: int, beta: FieldElement | int, fld: FieldSpec | None = None) -> IrreducibilityVerdict:
    """Decide irreducibility of ``Y^m + beta*X^n`` for coprime m, n."""
    if gcd(m, n) != 1:
        raise HypothesisError(f"gcd({m}, {n}) != 1")
    if m < 2 or n < 2:
        raise HypothesisError("m, n must be at least 2")
    if not isinstance(beta, FieldElement):
        if fld is None:
            raise HypothesisError("an integer beta needs a field")
        beta = fld.element(beta)
    fld = beta.spec
    char = fld.characteristic
    if char and (m * n) % char == 0:
        raise HypothesisError(f"characteristic {char} divides mn")
    if beta.is_zero():
        return IrreducibilityVerdict(False, f"beta = 0 leaves Y^{m}, a perfect power")
    reason = (
        f"Y^{m} - c with c = -beta*X^{n} over k(X): c has X-adic valuation {n}, coprime to {m}, "
        f"so c is not a p-th power for any prime p | {m} and not in -4K^4; Capelli gives "
        f"irreducibility in k(X)[Y], and monicity in Y lifts it to k[X,Y] (Gauss)"
    )
    return IrreducibilityVerdict(True, reason)


# -- domain certificates --------------------------------------------------------


@dataclass(frozen=True)
class DomainCertificate:
    regular_sequence: tuple[str, ...]
    reduced_bivariate: WeightedPoly
    prime_chain: tuple[IdealHandle, ...]
    method: str
    chain_dimensions: tuple[int, ...]

    @property
    def chain_length(self) -> int:
        return len(self.prime_chain) - 1

    def to_json(self) -> dict:
        return {
            "regular_sequence": list(self.regular_sequence),
            "reduced": str(self.reduced_bivariate),
            "method": self.method,
            "chain": [[str(g) for g in I.generators] for I in self.prime_chain],
            "chain_dimensions": list(self.chain_dimensions),
        }


def certify_domain(fr: FamilyRing) -> DomainCertificate:
    """Kill all but two normalization variables and certify the bivariate quotient.

    The killed variables form a regular sequence (each step drops the Krull
    dimension by one in a Cohen-Macaulay ring) whose final quotient is a
    domain, so every partial quotient is a domain too.
    """
    spec = fr.spec
    if spec.family == FERMAT:
        seq = tuple(f"X{i}" for i in range(spec.d, 1, -1))
    else:
        seq = tuple(f"W{j}" for j in range(spec.d, 2, -1)) + ("Z",)
    amb = fr.ring.ambient()
    reduced = fr.relation.substitute({v: amb.zero() for v in seq}, amb)
    expected = (
        amb.var("Y") ** spec.m + amb.var("X1") ** spec.n
        if spec.family == FERMAT
        else amb.var("X") ** spec.n + amb.var("Y") ** spec.m
    )
    if reduced != expected:
        raise AssertionError(f"quotient by {seq} gave {reduced}, expected {expected}")
    if fr.field.is_finite:
        fac = factor_bivariate_bruteforce(reduced)
        if not fac.is_irreducible():
            raise AssertionError(f"reduced relation {reduced} factors as {fac}")
        method = "oracle-verified"
    else:
        verdict = fermat_irreducible(spec.m, spec.n, fr.field.element(1))
        if not verdict:
            raise AssertionError(verdict.reason)
        method = "capelli-criterion"
    chain = tuple(IdealHandle(fr.ring, [amb.var(v) for v in seq[:i]]) for i in range(len(seq) + 1))
    dims = tuple(krull_dimension(I) for I in chain)
    if any(dims[i] - dims[i + 1] != 1 for i in range(len(dims) - 1)):
        raise AssertionError(f"dimensions {dims} do not drop by one along {seq}")
    return DomainCertificate(seq, reduced, chain, method, dims)


# -- regular sequences in T_m and beta-reduction ------------------------------


def linear_coordinates(fr: FamilyRing, form: WeightedPoly) -> list[Any]:
    """Coordinates of a degree-m form of T in the basis of normalization variables."""
    amb = fr.ring.ambient()
    form = amb.coerce(form)
    if form.is_zero():
        return [fr.field.zero] * len(fr.normalization)
    if not form.is_homogeneous() or form.weighted_degree() != fr.m:
        raise HypothesisError(f"{form} is not a form of degree {fr.m}")
    idx = [amb.index(v) for v in fr.normalization]
    coords = [fr.field.zero] * len(idx)
    for e, c in form._terms.items():
        if sum(e) != 1 or e.index(1) not in idx:
            raise HypothesisError(f"{form} does not lie in T_{fr.m}")
        coords[idx.index(e.index(1))] = c
    return coords


def form_from_coordinates(fr: FamilyRing, coords: Sequence[Any]) -> WeightedPoly:
    amb = fr.ring.ambient()
    out = amb.zero()
    for v, c in zip(fr.normalization, coords):
        if not fr.field.is_zero(c):
            out = out + amb.var(v).scale(c)
    return out


def regular_sequence_check(fr: FamilyRing, u: Sequence[WeightedPoly]) -> bool:
    """Linear independence of degree-m forms of T (equivalent to T-regularity)."""
    rows = [linear_coordinates(fr, f) for f in u]
    return rank(fr.field, rows) == len(rows) if rows else True


@dataclass(frozen=True)
class BetaReduction:
    u: tuple[WeightedPoly, ...]
    v: WeightedPoly
    betas: tuple[tuple[str, FieldElement], ...]
    beta: FieldElement
    case: str
    reduced_ring: RingSpec
    reduced_relation: WeightedPoly
    change_of_basis: tuple[tuple[str, WeightedPoly], ...]
    warning: str = BETA_WARNING

    def to_json(self) -> dict:
        return {
            "u": [str(f) for f in self.u],
            "v": str(self.v),
            "betas": {k: str(b) for k, b in self.betas},
            "beta": str(self.beta),
            "case": self.case,
            "reduced": str(self.reduced_relation),
            "warning": self.warning,
        }


def _canonical_v(fr: FamilyRing, rows: list[list[Any]]) -> list[Any]:
    _, pivots = rref(fr.field, rows)
    j = next(c for c in range(len(fr.normalization)) if c not in pivots)
    return [fr.field.one if c == j else fr.field.zero for c in range(len(fr.normalization))]


def beta_reduce(fr: FamilyRing, u: Sequence[WeightedPoly], v: WeightedPoly | None = None) -> BetaReduction:
    """Collapse A/(u)A to k[v, Y]/(Y^m + beta*v^n) and report beta."""
    fld = fr.field
    d = fr.d
    if len(u) != d - 1:
        raise HypothesisError(f"need {d - 1} forms, got {len(u)}")
    rows = [linear_coordinates(fr, f) for f in u]
    if rank(fld, rows) != d - 1:
        raise HypothesisError("forms are linearly dependent, not a T-regular sequence")
    vrow = _canonical_v(fr, rows) if v is None else linear_coordinates(fr, v)
    M = rows + [vrow]
    try:
        Minv = inverse(fld, M)
    except ValueError:
        raise HypothesisError("v does not complete u to a basis of T_m") from None

    m, n = fr.m, fr.n
    unames = [f"u{j}" for j in range(1, d)]
    big = RingSpec(fld, tuple((x, m) for x in unames) + (("v", m), ("Y", n)))
    images: dict[str, WeightedPoly] = {"Y": big.var("Y")}
    for i, x in enumerate(fr.normalization):
        img = big.zero()
        for j, name in enumerate(unames + ["v"]):
            if not fld.is_zero(Minv[i][j]):
                img = img + big.var(name).scale(Minv[i][j])
        images[x] = img
    full = fr.relation.substitute(images, big)
    small = RingSpec(fld, (("v", m), ("Y", n)))
    killed = full.substitute({x: small.zero() for x in unames} | {"v": small.var("v"), "Y": small.var("Y")}, small)

    betas = [FieldElement(fld, Minv[i][d - 1]) for i in range(d)]
    by_name = dict(zip(fr.normalization, betas))
    if fr.spec.family == FERMAT:
        beta = fld.element(0)
        for b in betas:
            beta = beta + b**n
    else:
        bx, bz = by_name["X"], by_name["Z"]
        beta = bx**n + bx**fr.spec.a * bz**fr.spec.b
        for w in fr.normalization[2:]:
            beta = beta + by_name[w] ** n
    expected = small.var("Y") ** m + (small.var("v") ** n).scale(beta)
    if killed != expected:
        raise AssertionError(f"substitution gave {killed}, closed form predicts {expected}")
    case = BETA_ZERO if beta.is_zero() else BETA_NONZERO
    return BetaReduction(
        u=tuple(fr.ring.ambient().coerce(f) for f in u),
        v=form_from_coordinates(fr, vrow),
        betas=tuple(by_name.items()),
        beta=beta,
        case=case,
        reduced_ring=small.with_relations([expected]),
        reduced_relation=expected,
        change_of_basis=tuple((x, images[x]) for x in fr.normalization),
    )
