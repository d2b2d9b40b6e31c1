"""Exact graded commutative algebra for torsion in Chow groups of weighted hypersurfaces."""

from .assoc_primes import (
    AlphaSampleReport,
    AssCount,
    alpha_sample,
    ass1_count_principal,
    ass_top_count_regseq,
    ufd_extremal_witness,
)
from .chow import (
    RelationLedger,
    associativity_check,
    div_cycle,
    find_xi_in_prime,
    ledger_reduce,
    torsion_witness,
)
from .cycles import Cycle, PrimeLabel
from .errors import ChowlabError
from .fields import FieldElement, FieldSpec, parse_field
from .groebner import (
    GroebnerBasis,
    IdealHandle,
    MonomialOrder,
    buchberger,
    eliminate,
    graded_multiplicity,
    hilbert_series,
    ideal_quotient,
    intersect,
    krull_dimension,
    normal_form,
    s_polynomial,
    saturation,
)
from .hypersurface import (
    FamilyRing,
    FamilySpec,
    beta_reduce,
    build_family,
    certify_domain,
    factor_bivariate_bruteforce,
    fermat_irreducible,
)
from .poly import RingSpec, WeightedPoly

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
