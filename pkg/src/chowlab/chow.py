"""div(Q, x), graded rational equivalence, and per-prime torsion witnesses.

Lengths are computed from a two-variable presentation of ring/(Q, x): when x
is linear in some variable z, eliminating z leaves k[a, b]/(g), and the length
of that ring localized at (p) is the multiplicity of the irreducible factor p
in g.  When Q already has dimension one, (Q, x) is primary to the irrelevant
ideal and the length is the k-dimension of the Artinian quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .assoc_primes import ass1_count_principal, factor_reduced
from .cycles import (
    COORDINATE_PLUS_IRREDUCIBLE,
    ORACLE_VERIFIED,
    PRINCIPAL_IN_DOMAIN,
    Cycle,
    PrimeLabel,
)
from .errors import (
    DimensionMismatchError,
    HomogeneityError,
    HypothesisError,
    NotAUnitModQError,
    ScopeError,
    XiNotFoundError,
)
from .groebner import IdealHandle, eliminate, graded_multiplicity, hilbert_series, krull_dimension
from .hypersurface import FamilyRing, linear_coordinates
from .poly import RingSpec, WeightedPoly


def _unwrap(ring: RingSpec | FamilyRing) -> tuple[RingSpec, FamilyRing | None]:
    if isinstance(ring, FamilyRing):
        return ring.ring, ring
    return ring, None


def zero_label(ring: RingSpec | FamilyRing) -> PrimeLabel:
    """The zero ideal of a domain as a prime label (family rings are certified domains)."""
    rs, fr = _unwrap(ring)
    cert = ORACLE_VERIFIED if (fr is not None or rs.relations) else PRINCIPAL_IN_DOMAIN
    return PrimeLabel.from_generators(rs, [], cert)


def irrelevant_label(ring: RingSpec | FamilyRing) -> PrimeLabel:
    rs, _ = _unwrap(ring)
    return PrimeLabel.from_generators(rs, rs.ambient().gens(), COORDINATE_PLUS_IRREDUCIBLE)


def _linear_variable(x: WeightedPoly) -> int | None:
    """Index of the first variable occurring in x only through a single degree-one term."""
    for i in range(x.ring.nvars):
        occ = [e for e in x._terms if e[i]]
        if len(occ) == 1 and occ[0][i] == 1 and sum(occ[0]) == 1:
            return i
    return None


def _bivariate_reduction(rs: RingSpec, x: WeightedPoly) -> tuple[WeightedPoly, bool]:
    """g with ring/(x) = k[a, b]/(g); the flag says whether x itself must join each prime."""
    amb = rs.ambient()
    if not rs.relations and rs.nvars == 2:
        return x, False
    z = _linear_variable(x)
    if z is None or len(rs.relations) != 1 or rs.nvars != 3:
        raise ScopeError(
            f"no two-variable presentation of ring/({x}): need a 3-variable hypersurface "
            "and x linear in one variable"
        )
    zname = amb.names[z]
    c = x._terms[tuple(1 if i == z else 0 for i in range(rs.nvars))]
    rest = x - amb.var(zname).scale(c)
    image = rest.scale(amb.field.neg(amb.field.inv(c)))
    g = amb.coerce(rs.relations[0]).substitute({zname: image}, amb)
    if g.is_zero():
        raise HypothesisError(f"{x} is a zero divisor (divides the relation)")
    return g, True


def div_cycle(ring: RingSpec | FamilyRing, Q: PrimeLabel | None, x: WeightedPoly) -> Cycle:
    """The cycle of (A/Q)/x(A/Q) in dimension cdim(A/Q) - 1."""
    rs, _ = _unwrap(ring)
    amb = rs.ambient()
    x = amb.coerce(x)
    if not x.is_homogeneous() or x.is_zero():
        raise HomogeneityError(f"{x} is not a nonzero homogeneous element")
    if Q is None:
        Q = zero_label(rs)
    if Q.contains(x):
        raise NotAUnitModQError(f"{x} lies in {Q}")
    target = Q.cdim - 1
    zero = zero_label(rs)
    if Q == zero:
        g, with_x = _bivariate_reduction(rs, x)
        fac = factor_reduced(g)
        coeffs: dict[PrimeLabel, int] = {}
        single = len(fac.factors) == 1 and fac.factors[0][1] == 1
        for p, e in fac.factors:
            gens = [x, p] if with_x else [p]
            cert = PRINCIPAL_IN_DOMAIN if single or not with_x else COORDINATE_PLUS_IRREDUCIBLE
            label = PrimeLabel.from_generators(rs, gens, cert)
            if label.cdim != target:
                raise AssertionError(f"{label} has cdim {label.cdim}, expected {target}")
            coeffs[label] = coeffs.get(label, 0) + e
        return Cycle(target, coeffs)
    if Q.cdim == 1:
        quotient = IdealHandle(rs, list(Q.basis.elements) + [x])
        if krull_dimension(quotient) != 0:
            raise AssertionError(f"(Q, x) is not primary to the irrelevant ideal")
        # Artinian quotient: H(t) is a polynomial and H(1) is its k-dimension
        length = hilbert_series(quotient).multiplicity()
        return Cycle(0, {irrelevant_label(rs): int(length)})
    raise ScopeError(f"div(Q, x) is only supported for Q = 0 or cdim(Q) = 1; got cdim {Q.cdim}")


# -- rational-equivalence ledger ------------------------------------------------


@dataclass(frozen=True)
class Relation:
    ring: RingSpec
    Q: PrimeLabel
    x: WeightedPoly
    cycle: Cycle

    def replay(self) -> Cycle:
        return div_cycle(self.ring, self.Q, self.x)

    def sort_key(self) -> tuple:
        return (self.cycle.dimension, self.Q.key, str(self.x))

    def to_json(self) -> dict:
        return {"Q": self.Q.key, "x": str(self.x), "div": self.cycle.to_json()}


@dataclass(frozen=True)
class RelationLedger:
    relations: tuple[Relation, ...] = ()

    def record(self, rel: Relation) -> RelationLedger:
        if rel.replay() != rel.cycle:
            raise AssertionError("relation does not replay")
        if any(r.sort_key() == rel.sort_key() for r in self.relations):
            return self
        return RelationLedger(tuple(sorted(self.relations + (rel,), key=Relation.sort_key)))

    def merge(self, other: RelationLedger) -> RelationLedger:
        out = self
        for r in other.relations:
            out = out.record(r)
        return out

    def verify(self) -> bool:
        return all(r.replay() == r.cycle for r in self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def to_json(self) -> dict:
        return {"relations": [r.to_json() for r in self.relations]}


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Row-style HNF over the integers: echelon rows, positive pivots, entries above pivots reduced."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == len(a):
                break
    return a[:r], pivots


def ledger_reduce(ledger: RelationLedger, z: Cycle) -> Cycle:
    """Canonical representative of z modulo the lattice spanned by the ledger's relations."""
    rels = [r.cycle for r in ledger.relations]
    for c in rels:
        if c.dimension != z.dimension:
            raise DimensionMismatchError(f"relation of dimension {c.dimension} vs cycle of dimension {z.dimension}")
    labels: dict[str, PrimeLabel] = {}
    for c in rels + [z]:
        for p in c.coefficients:
            labels.setdefault(p.key, p)
    order = sorted(labels)
    if not order:
        return z
    rows = [[c.as_dict().get(k, 0) for k in order] for c in rels]
    hnf, pivots = hermite_normal_form(rows)
    vec = [z.as_dict().get(k, 0) for k in order]
    for row, c in zip(hnf, pivots):
        q = vec[c] // row[c]
        if q:
            vec = [a - q * b for a, b in zip(vec, row)]
    return Cycle(z.dimension, {labels[k]: v for k, v in zip(order, vec) if v})


# -- torsion witnesses ------------------------------------------------------------


def find_xi_in_prime(
    ring: RingSpec | FamilyRing,
    P: PrimeLabel,
    avoiding: str | None = None,
    normalization: Sequence[str] | None = None,
) -> WeightedPoly:
    """A nonzero degree-m form of T lying in P, found by eliminating the non-T variables."""
    rs, fr = _unwrap(ring)
    if normalization is None:
        if fr is None:
            raise ScopeError("plain rings need an explicit normalization")
        normalization = fr.normalization
    amb = rs.ambient()
    weights = {amb.weights[amb.index(v)] for v in normalization}
    if len(weights) != 1:
        raise ScopeError("normalization variables must share one weight")
    m = weights.pop()
    contraction = eliminate(P.ideal(), normalization)
    slice_m = [g for g in contraction.basis().elements if g.weighted_degree() == m]
    if not slice_m:
        raise XiNotFoundError(f"{P} meets T_{m} only in zero")
    if avoiding is not None and len(slice_m) > 1:
        av = amb.var(avoiding)
        slice_m = [g for g in slice_m if g != av] + [g for g in slice_m if g == av]
    return slice_m[0].monic()


@dataclass(frozen=True)
class TorsionWitness:
    P: PrimeLabel
    xi: WeightedPoly
    n: int
    relation: Relation

    def to_json(self) -> dict:
        return {
            "prime": self.P.key,
            "xi": str(self.xi),
            "n": self.n,
            "relation": self.relation.to_json(),
        }


def torsion_witness(
    ring: RingSpec | FamilyRing,
    P: PrimeLabel,
    ledger: RelationLedger | None = None,
    normalization: Sequence[str] | None = None,
) -> tuple[TorsionWitness, RelationLedger]:
    """div(0, xi) = n[P] for a height-one homogeneous prime P of a two-dimensional domain."""
    rs, fr = _unwrap(ring)
    dim = krull_dimension(IdealHandle(rs))
    if dim != 2:
        raise ScopeError(f"torsion witnesses need a two-dimensional ring, got dimension {dim}")
    if P.cdim != 1:
        raise HypothesisError(f"{P} has cdim {P.cdim}, not 1")
    xi = find_xi_in_prime(ring, P, normalization=normalization)
    D = div_cycle(rs, None, xi)
    support = D.support()
    if len(support) != 1 or support[0] != P:
        raise HypothesisError(
            f"div(0, {xi}) = {D} is not supported on {P} alone",
        )
    if fr is not None:
        count = ass1_count_principal(fr, xi)
        if count.count != 1 or count.primes[0] != P:
            raise HypothesisError(f"#Ass^(1) A/({xi}) = {count.count}, expected the single prime {P}")
    label = support[0]
    rel = Relation(rs, zero_label(rs), xi, D)
    ledger = (ledger or RelationLedger()).record(rel)
    return TorsionWitness(label, xi, D.coefficient(label), rel), ledger


# -- associativity formula ------------------------------------------------------------


@dataclass(frozen=True)
class AssociativityReport:
    passed: bool
    quotient_multiplicity: Fraction
    weighted_sum: Fraction
    degree_times_multiplicity: Fraction
    terms: tuple[tuple[str, int, Fraction], ...]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "e_quotient": str(self.quotient_multiplicity),
            "sum_lengths_times_e": str(self.weighted_sum),
            "deg_times_e": str(self.degree_times_multiplicity),
            "terms": [{"prime": k, "length": l, "e": str(e)} for k, l, e in self.terms],
        }


def associativity_check(ring: RingSpec | FamilyRing, x: WeightedPoly) -> AssociativityReport:
    """e*(A/x) = sum_P length * e*(A/P) = deg(x) * e*(A), checked in exact rationals."""
    rs, _ = _unwrap(ring)
    x = rs.ambient().coerce(x)
    D = div_cycle(rs, None, x)
    lhs = graded_multiplicity(IdealHandle(rs, [x]))
    terms = []
    total = Fraction(0)
    for P in D.support():
        e = graded_multiplicity(P.ideal())
        length = D.coefficient(P)
        terms.append((P.key, length, e))
        total += length * e
    rhs = x.weighted_degree() * graded_multiplicity(IdealHandle(rs))
    return AssociativityReport(lhs == total == rhs, lhs, total, rhs, tuple(terms))
