"""Prime labels and cycles: formal integer combinations of homogeneous primes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DimensionMismatchError, HomogeneityError, SpecMismatchError
from .groebner import GroebnerBasis, IdealHandle, krull_dimension
from .poly import RingSpec, WeightedPoly

PRINCIPAL_IN_DOMAIN = "principal-in-domain"
COORDINATE_PLUS_IRREDUCIBLE = "coordinate-plus-irreducible"
ORACLE_VERIFIED = "oracle-verified"
CLAIMED = "claimed"


@dataclass(frozen=True, eq=False)
class PrimeLabel:
    """A homogeneous prime of ``ring`` identified by its reduced Groebner basis.

    The basis is taken in the ambient polynomial ring and includes the ring's
    relations, so two labels are equal exactly when their ideals are.
    """

    ring: RingSpec
    basis: GroebnerBasis
    cdim: int
    certificate: str = CLAIMED

    @classmethod
    def from_generators(
        cls, ring: RingSpec, gens: Iterable[WeightedPoly], certificate: str = CLAIMED
    ) -> PrimeLabel:
        ideal = IdealHandle(ring, list(gens))
        for g in ideal.all_generators():
            if not g.is_homogeneous():
                raise HomogeneityError(f"prime generator {g} is not homogeneous")
        return cls(ring, ideal.basis(), krull_dimension(ideal), certificate)

    @property
    def key(self) -> str:
        return ", ".join(self.basis.text())

    def ideal(self) -> IdealHandle:
        return IdealHandle(self.ring.ambient(), self.basis.elements)

    def contains(self, f: WeightedPoly) -> bool:
        return self.basis.contains(f)

    def with_certificate(self, certificate: str) -> PrimeLabel:
        return PrimeLabel(self.ring, self.basis, self.cdim, certificate)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrimeLabel):
            return NotImplemented
        return self.ring.same_ambient(other.ring) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return f"[({self.key})]"

    def to_json(self) -> dict:
        return {"basis": self.basis.text(), "cdim": self.cdim, "certificate": self.certificate}


@dataclass(frozen=True)
class Cycle:
    dimension: int
    coefficients: Mapping[PrimeLabel, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for label, c in self.coefficients.items():
            if label.cdim != self.dimension:
                raise DimensionMismatchError(f"{label} has cdim {label.cdim}, cycle dimension is {self.dimension}")
            if c:
                clean[label] = clean.get(label, 0) + int(c)
        object.__setattr__(self, "coefficients", {k: v for k, v in clean.items() if v})

    @classmethod
    def of(cls, label: PrimeLabel, coeff: int = 1) -> Cycle:
        return cls(label.cdim, {label: coeff})

    @classmethod
    def zero(cls, dimension: int) -> Cycle:
        return cls(dimension, {})

    def _check(self, other: Cycle) -> None:
        if other.dimension != self.dimension:
            raise DimensionMismatchError("cycles of different dimensions")

    def __add__(self, other: Cycle) -> Cycle:
        self._check(other)
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, 0) + v
        return Cycle(self.dimension, out)

    def __neg__(self) -> Cycle:
        return Cycle(self.dimension, {k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: Cycle) -> Cycle:
        return self + (-other)

    def __rmul__(self, n: int) -> Cycle:
        return Cycle(self.dimension, {k: n * v for k, v in self.coefficients.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.dimension == other.dimension and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash((self.dimension, tuple(sorted(self.as_dict().items()))))

    def is_zero(self) -> bool:
        return not self.coefficients

    def support(self) -> list[PrimeLabel]:
        return sorted(self.coefficients, key=lambda p: p.key)

    def coefficient(self, label: PrimeLabel) -> int:
        return self.coefficients.get(label, 0)

    def as_dict(self) -> dict[str, int]:
        return {p.key: self.coefficients[p] for p in self.support()}

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in ((p, self.coefficients[p]) for p in self.support()))

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "terms": self.as_dict()}

    @classmethod
    def from_json(cls, doc: Mapping, ring: RingSpec) -> Cycle:
        from .poly import parse_poly_list

        coeffs = {}
        for key, c in doc.get("terms", {}).items():
            label = PrimeLabel.from_generators(ring, parse_poly_list(ring.ambient(), key))
            if label.cdim != doc["dimension"]:
                raise DimensionMismatchError(f"label {key} has cdim {label.cdim}")
            if label.key != key:
                raise SpecMismatchError(f"label {key!r} is not a canonical basis (canonical: {label.key!r})")
            coeffs[label] = int(c)
        return cls(int(doc["dimension"]), coeffs)
