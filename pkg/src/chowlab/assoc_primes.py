"""Counting height-one (and height-top) associated primes.

Graded stand-in for the local setting: a standard-graded domain plays the role
of a local ring whose associated graded ring is a domain, and the order of a
form is its least total degree.

For a nonzero x in a domain, the associated primes of A/(x) of height one are
exactly the minimal primes of (x) (any embedded prime has height at least two).
For a regular sequence in a Cohen-Macaulay family ring the quotient is
unmixed, so its top-height associated primes are again its minimal primes.
Counts are therefore taken as the number of distinct irreducible factors of a
bivariate reduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Sequence

from .cycles import COORDINATE_PLUS_IRREDUCIBLE, ORACLE_VERIFIED, PRINCIPAL_IN_DOMAIN, PrimeLabel
from .errors import HypothesisError, ResourceBoundError, ScopeError
from .fields import FieldElement, FieldSpec
from .groebner import IdealHandle, graded_multiplicity, krull_dimension
from .hypersurface import (
    BETA_ZERO,
    BetaReduction,
    FamilyRing,
    Factorization,
    beta_reduce,
    factor_bivariate_bruteforce,
    fermat_irreducible,
    linear_coordinates,
)
from .poly import RingSpec, WeightedPoly

BINARY_FORM = "binary-form-factorization"
BETA_REDUCTION = "beta-reduction"
GROEBNER_MINIMAL_PRIMES = "groebner-minimal-primes"


@dataclass(frozen=True)
class AssCount:
    count: int
    primes: tuple[PrimeLabel, ...]
    method: str
    certificate: Any = None

    def __post_init__(self) -> None:
        if self.count != len(self.primes):
            raise ValueError("count must equal the number of listed primes")
        if len({p.key for p in self.primes}) != len(self.primes):
            raise ValueError("listed primes are not distinct")

    def to_json(self) -> dict:
        doc = {"count": self.count, "primes": [p.key for p in self.primes], "method": self.method}
        if isinstance(self.certificate, BetaReduction):
            doc["case"] = self.certificate.case
            doc["beta"] = str(self.certificate.beta)
        return doc


def order_of(x: WeightedPoly) -> int:
    """Least total degree of a term; the graded analogue of the m-adic order."""
    if any(w != 1 for w in x.ring.weights):
        raise ScopeError("order is defined for standard-graded rings only")
    if x.is_zero():
        raise HypothesisError("order of zero is undefined")
    return x.order()


# -- univariate factorization by trial division -----------------------------


def _utrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _udivmod(fld: FieldSpec, a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [fld.zero] * max(len(a) - len(b) + 1, 0)
    inv = fld.inv(b[-1])
    while len(a) >= len(b) and a:
        c = fld.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = fld.sub(a[shift + i], fld.mul(c, bc))
        while a and fld.is_zero(a[-1]):
            a.pop()
    return q, a


@lru_cache(maxsize=None)
def monic_irreducibles(fld: FieldSpec, degree: int) -> tuple[tuple, ...]:
    """Every monic irreducible of the given degree over a finite field (coefficients low -> high)."""
    import itertools

    elems = list(fld.elements())
    out = []
    for tail in itertools.product(elems, repeat=degree):
        f = list(tail) + [fld.one]
        if degree > 1 and fld.is_zero(f[0]):
            continue
        if all(_udivmod(fld, f, list(g))[1] for k in range(1, degree // 2 + 1) for g in monic_irreducibles(fld, k)):
            out.append(tuple(f))
    return tuple(out)


def factor_univariate(fld: FieldSpec, f: Sequence) -> list[tuple[tuple, int]]:
    """Monic irreducible factors with multiplicity, by trial division up to half the degree."""
    f = list(f)
    while f and fld.is_zero(f[-1]):
        f.pop()
    if not f:
        raise HypothesisError("cannot factor zero")
    f = [fld.div(c, f[-1]) for c in f]
    out = []
    k = 1
    while 2 * k <= len(f) - 1:
        for g in monic_irreducibles(fld, k):
            e = 0
            while True:
                q, r = _udivmod(fld, f, list(g))
                if r:
                    break
                f, e = q, e + 1
            if e:
                out.append((g, e))
        k += 1
    if len(f) > 1:
        out.append((tuple(f), 1))
    out.sort(key=lambda ge: (len(ge[0]), [fld.sort_key(c) for c in reversed(ge[0])]))
    return out


def factor_binary_form(x: WeightedPoly) -> list[tuple[WeightedPoly, int]]:
    """Factor a binary form over a finite field by dehomogenizing at the first variable."""
    ring = x.ring
    fld = ring.field
    if ring.nvars != 2 or not fld.is_finite:
        raise ScopeError("binary-form factorization needs k[X,Y] over a finite field")
    if x.is_zero() or not x.is_homogeneous():
        raise HypothesisError(f"{x} is not a nonzero form")
    s = x.total_degree()
    if len(set(sum(e) for e in x._terms)) != 1:
        raise HypothesisError(f"{x} is not homogeneous in the standard grading")
    # f(t) = x(1, t); t stands for Y/X
    f = [fld.zero] * (s + 1)
    for (a, b), c in x._terms.items():
        f[b] = c
    while f and fld.is_zero(f[-1]):
        f.pop()
    X, Y = ring.gens()
    out = []
    xpow = s - (len(f) - 1)
    if xpow:
        out.append((X, xpow))
    for g, e in factor_univariate(fld, f):
        form = ring.zero()
        k = len(g) - 1
        for i, c in enumerate(g):
            if not fld.is_zero(c):
                form = form + (X ** (k - i) * Y**i).scale(c)
        out.append((form.monic(), e))
    return out


# -- reduced bivariate relations ----------------------------------------------


def factor_reduced(g: WeightedPoly) -> Factorization:
    """Factor a polynomial in two variables: brute force when feasible, else structurally.

    The structural route covers monomials and coprime binomials ``a*Y^m + b*v^n``.
    """
    fld = g.field
    if g.is_zero():
        raise HypothesisError("reduced relation is zero")
    if fld.is_finite:
        try:
            return factor_bivariate_bruteforce(g)
        except ResourceBoundError:
            pass
    ring = g.ring
    terms = sorted(g._terms.items(), key=lambda kv: ring.canonical_key(kv[0]), reverse=True)
    if len(terms) == 1:
        e, c = terms[0]
        factors = tuple((ring.var(ring.names[i]), k) for i, k in enumerate(e) if k)
        return Factorization(FieldElement(fld, c), factors, ring)
    if len(terms) == 2:
        (e1, c1), (e2, c2) = terms
        s1, s2 = [i for i, k in enumerate(e1) if k], [i for i, k in enumerate(e2) if k]
        if len(s1) == 1 and len(s2) == 1 and s1 != s2:
            m, n = e1[s1[0]], e2[s2[0]]
            if gcd(m, n) == 1 and min(m, n) >= 2:
                beta = FieldElement(fld, fld.div(c2, c1))
                if fermat_irreducible(m, n, beta):
                    return Factorization(FieldElement(fld, c1), ((g.monic(), 1),), ring)
    raise ScopeError(f"no supported factorization route for {g} over {fld}")


# -- counts --------------------------------------------------------------------


def _binary_form_count(ring: RingSpec, x: WeightedPoly) -> AssCount:
    if ring.relations or ring.nvars != 2:
        raise ScopeError("binary-form shape needs a two-variable polynomial ring")
    if not ring.field.is_finite:
        raise ScopeError("binary-form shape needs a finite field")
    if len(set(ring.weights)) == 1:
        pieces = factor_binary_form(x)
    else:
        pieces = list(factor_bivariate_bruteforce(x).factors)
    primes = tuple(PrimeLabel.from_generators(ring, [p], PRINCIPAL_IN_DOMAIN) for p, _ in pieces)
    return AssCount(len(primes), primes, BINARY_FORM)


def _beta_primes(fr: FamilyRing, u: Sequence[WeightedPoly], br: BetaReduction) -> tuple[PrimeLabel, ...]:
    fac = factor_reduced(br.reduced_relation)
    amb = fr.ring.ambient()
    primes = []
    for p, _ in fac.factors:
        if br.case == BETA_ZERO:
            # the only factor is Y; its preimage adds Y to (u)
            lift = amb.var("Y")
            primes.append(PrimeLabel.from_generators(fr.ring, list(u) + [lift], COORDINATE_PLUS_IRREDUCIBLE))
        else:
            cert = PRINCIPAL_IN_DOMAIN if len(u) == 1 else ORACLE_VERIFIED
            primes.append(PrimeLabel.from_generators(fr.ring, list(u), cert))
    return tuple(primes)


def ass1_count_principal(ring: RingSpec | FamilyRing, x: WeightedPoly) -> AssCount:
    """#Ass^(1) A/(x) for a binary form in k[X,Y] or a nonzero x in T_m of a d = 2 family ring."""
    if x.is_zero():
        raise HypothesisError("x = 0 is not regular")
    if not x.is_homogeneous():
        raise HypothesisError(f"{x} is not homogeneous")
    if isinstance(ring, FamilyRing):
        if ring.d != 2:
            raise ScopeError("principal counts on family rings need d = 2; use ass_top_count_regseq")
        try:
            linear_coordinates(ring, x)
        except HypothesisError:
            raise ScopeError(f"{x} does not lie in T_{ring.m}") from None
        br = beta_reduce(ring, [x])
        primes = _beta_primes(ring, [x], br)
        return AssCount(len(primes), primes, BETA_REDUCTION, br)
    return _binary_form_count(ring, ring.ambient().coerce(x))


def ass_top_count_regseq(fr: FamilyRing, u: Sequence[WeightedPoly]) -> AssCount:
    """#Ass^(d-1) A/(u)A for a T-regular sequence u of d-1 forms in T_m."""
    br = beta_reduce(fr, u)
    primes = _beta_primes(fr, u, br)
    dim = krull_dimension(IdealHandle(fr.ring)) - len(u)
    for p in primes:
        if p.cdim != dim:
            raise AssertionError(f"{p} has cdim {p.cdim}, expected {dim}")
    return AssCount(len(primes), primes, BETA_REDUCTION, br)


# -- sampling alpha_A(s) --------------------------------------------------------


@dataclass(frozen=True)
class AlphaSampleReport:
    s: int
    trials: int
    histogram: dict[int, int]
    max: int
    bound: Fraction
    seed: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.max, self.s)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "trials": self.trials,
            "seed": self.seed,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "max": self.max,
            "bound": str(self.bound),
            "max_over_s": str(self.ratio),
        }


def random_form(ring: RingSpec, s: int, rng: random.Random) -> WeightedPoly:
    fld = ring.field
    while True:
        coeffs = [fld.random(rng) for _ in range(s + 1)]
        if any(not fld.is_zero(c) for c in coeffs):
            break
    return WeightedPoly(ring, {(s - i, i): c for i, c in enumerate(coeffs)})


def alpha_sample(ring: RingSpec, s: int, trials: int, seed: int) -> AlphaSampleReport:
    """Histogram of A_s(x) over uniformly sampled nonzero forms of degree s."""
    if s < 1:
        raise HypothesisError("s must be positive")
    if ring.nvars != 2 or ring.relations or any(w != 1 for w in ring.weights):
        raise ScopeError("alpha sampling runs on standard-graded k[X,Y]")
    rng = random.Random(seed)
    hist: dict[int, int] = {}
    for _ in range(trials):
        x = random_form(ring, s, rng)
        c = len(factor_binary_form(x))
        hist[c] = hist.get(c, 0) + 1
    e0 = graded_multiplicity(IdealHandle(ring))
    return AlphaSampleReport(s, trials, dict(sorted(hist.items())), max(hist) if hist else 0, s * e0, seed)


def ufd_extremal_witness(ring: RingSpec, s: int, lambdas: Sequence) -> tuple[WeightedPoly, AssCount]:
    """u_s = prod (X + lambda_i Y), whose height-one primes are the s distinct (X + lambda_i Y)."""
    fld = ring.field
    lams = [fld.element(l) for l in lambdas]
    if len(lams) != s:
        raise HypothesisError(f"need {s} scalars, got {len(lams)}")
    if any(l.is_zero() for l in lams):
        raise HypothesisError("scalars must be units")
    if len({l.value for l in lams}) != len(lams):
        raise HypothesisError("scalars must be distinct")
    X, Y = ring.gens()
    linear = [X + Y.scale(l) for l in lams]
    u = ring.one()
    for t in linear:
        u = u * t
    count = ass1_count_principal(ring, u)
    expected = {PrimeLabel.from_generators(ring, [t]).key for t in linear}
    if {p.key for p in count.primes} != expected or count.count != s:
        raise AssertionError(f"primes of {u} are not the expected linear forms")
    # two distinct linear forms cut out the irrelevant ideal, so the unions are disjoint
    for i in range(s):
        for j in range(i + 1, s):
            if krull_dimension(IdealHandle(ring, [linear[i], linear[j]])) != 0:
                raise AssertionError("linear forms are not pairwise transverse")
    return u, count
