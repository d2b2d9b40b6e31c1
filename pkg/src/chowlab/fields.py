"""Exact coefficient fields: the rationals, prime fields and small extension fields.

Polynomials store *raw* coefficient values (``Fraction`` for QQ, ``int`` for
GF(p), ``tuple[int, ...]`` for GF(p^k)) and call the arithmetic methods of
their :class:`FieldSpec`.  :class:`FieldElement` is the boxed public view.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

from .errors import InvalidFieldError, ParseError, SpecMismatchError

RATIONALS = "rationals"
PRIME = "prime-field"
EXTENSION = "extension-field"

MAX_PRIME = 2**31
MAX_EXTENSION_DEGREE = 4


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


# -- dense univariate helpers over GF(p), coefficient lists low -> high -------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _upoly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _upoly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _upoly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _upoly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _upoly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _upoly_mod(base, m, p)
    while e:
        if e & 1:
            result = _upoly_mod(_upoly_mul(result, base, p), m, p)
        base = _upoly_mod(_upoly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _has_root(f: list[int], p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Irreducibility of a monic univariate polynomial over GF(p).

    Exhaustive divisor search when the candidate space is small, Rabin's test
    otherwise.
    """
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    if p ** (k // 2) <= 200_000:
        if _has_root(f, p):
            return False
        for deg in range(2, k // 2 + 1):
            for tail in itertools.product(range(p), repeat=deg):
                if not _upoly_mod(f, list(tail) + [1], p):
                    return False
        return True
    x = [0, 1]
    if _upoly_sub(_upoly_powmod(x, p**k, f, p), x, p):
        return False
    for r in {r for r in range(2, k + 1) if k % r == 0 and is_prime(r)}:
        h = _upoly_sub(_upoly_powmod(x, p ** (k // r), f, p), x, p)
        if len(_upoly_gcd(f, h, p)) > 1:
            return False
    return True


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """The first monic irreducible of degree k, tails enumerated in base-p order."""
    for n in range(p**k):
        tail = [(n // p**i) % p for i in range(k)]
        cand = tail + [1]
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise InvalidFieldError(f"no irreducible of degree {k} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int = 0
    k: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == RATIONALS:
            return
        if self.kind not in (PRIME, EXTENSION):
            raise InvalidFieldError(f"unknown field kind {self.kind!r}")
        if not (2 <= self.p <= MAX_PRIME) or not is_prime(self.p):
            raise InvalidFieldError(f"{self.p} is not a prime <= 2^31")
        if self.kind == PRIME:
            if self.k != 1:
                raise InvalidFieldError("prime field must have k = 1")
            return
        if not 1 <= self.k <= MAX_EXTENSION_DEGREE:
            raise InvalidFieldError(f"extension degree must lie in 1..{MAX_EXTENSION_DEGREE}")
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise InvalidFieldError("modulus must be monic of degree k")
        if not is_irreducible_mod_p(list(mod), self.p):
            raise InvalidFieldError(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    # -- constructors -------------------------------------------------------

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(PRIME, p)

    @classmethod
    def extension(cls, p: int, k: int, modulus: tuple[int, ...] | None = None) -> FieldSpec:
        if modulus is None:
            modulus = first_irreducible(p, k)
        return cls(EXTENSION, p, k, tuple(modulus))

    # -- metadata -----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != RATIONALS

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS else self.p

    @property
    def size(self) -> int | None:
        return None if self.kind == RATIONALS else self.p**self.k

    def literal(self) -> str:
        if self.kind == RATIONALS:
            return "QQ"
        if self.kind == PRIME:
            return f"GF({self.p})"
        mod = _format_univariate(self.modulus)
        return f"GF({self.p}^{self.k});modulus={mod}"

    def __str__(self) -> str:
        return self.literal()

    # -- raw-value arithmetic ------------------------------------------------

    @property
    def zero(self) -> Any:
        if self.kind == RATIONALS:
            return Fraction(0)
        if self.kind == PRIME:
            return 0
        return (0,) * self.k

    @property
    def one(self) -> Any:
        if self.kind == RATIONALS:
            return Fraction(1)
        if self.kind == PRIME:
            return 1
        return (1,) + (0,) * (self.k - 1)

    def from_int(self, n: int) -> Any:
        if self.kind == RATIONALS:
            return Fraction(n)
        if self.kind == PRIME:
            return n % self.p
        return (n % self.p,) + (0,) * (self.k - 1)

    def from_fraction(self, q: Fraction) -> Any:
        if self.kind == RATIONALS:
            return Fraction(q)
        if q.denominator % self.p == 0:
            raise ParseError(f"denominator {q.denominator} vanishes in {self.literal()}")
        return self.mul(self.from_int(q.numerator), self.inv(self.from_int(q.denominator)))

    def from_coords(self, coords) -> Any:
        if self.kind != EXTENSION:
            raise ParseError(f"bracketed coefficient requires an extension field, got {self.literal()}")
        coords = [int(c) % self.p for c in coords]
        if len(coords) > self.k:
            coords = _upoly_mod(coords, list(self.modulus), self.p)
        return tuple(coords + [0] * (self.k - len(coords)))

    def is_zero(self, a: Any) -> bool:
        if self.kind == EXTENSION:
            return not any(a)
        return a == 0

    def add(self, a: Any, b: Any) -> Any:
        if self.kind == RATIONALS:
            return a + b
        if self.kind == PRIME:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Any, b: Any) -> Any:
        if self.kind == RATIONALS:
            return a - b
        if self.kind == PRIME:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Any) -> Any:
        if self.kind == RATIONALS:
            return -a
        if self.kind == PRIME:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def mul(self, a: Any, b: Any) -> Any:
        if self.kind == RATIONALS:
            return a * b
        if self.kind == PRIME:
            return a * b % self.p
        prod = _upoly_mod(_upoly_mul(list(a), list(b), self.p), list(self.modulus), self.p)
        return tuple(prod + [0] * (self.k - len(prod)))

    def inv(self, a: Any) -> Any:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == RATIONALS:
            return 1 / a
        if self.kind == PRIME:
            return pow(a, -1, self.p)
        return self._ext_inv(a)

    def _ext_inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        # extended Euclid in GF(p)[x] against the modulus
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, rem = _upoly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        out = [x * c % p for x in s0]
        out = _upoly_mod(out, list(self.modulus), p)
        return tuple(out + [0] * (self.k - len(out)))

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def pow(self, a: Any, e: int) -> Any:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> Iterator[Any]:
        """All field elements in a fixed order; finite fields only."""
        if self.kind == RATIONALS:
            raise InvalidFieldError("QQ is not enumerable")
        if self.kind == PRIME:
            yield from range(self.p)
            return
        for n in range(self.p**self.k):
            yield tuple((n // self.p**i) % self.p for i in range(self.k))

    def nonzero_elements(self) -> Iterator[Any]:
        return (a for a in self.elements() if not self.is_zero(a))

    def random(self, rng) -> Any:
        if self.kind == RATIONALS:
            return Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if self.kind == PRIME:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def sort_key(self, a: Any):
        if self.kind == RATIONALS:
            return (a.numerator, a.denominator)
        if self.kind == PRIME:
            return a
        return tuple(reversed(a))

    # -- text --------------------------------------------------------------

    def format(self, a: Any) -> str:
        if self.kind == RATIONALS:
            return str(a)
        if self.kind == PRIME:
            return str(a)
        return "[" + ",".join(str(c) for c in a) + "]"

    def parse(self, text: str) -> Any:
        text = text.strip()
        try:
            if text.startswith("["):
                if not text.endswith("]"):
                    raise ParseError(f"unterminated coefficient {text!r}")
                inner = text[1:-1].strip()
                coords = [int(c) for c in inner.split(",")] if inner else []
                return self.from_coords(coords)
            return self.from_fraction(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {text!r}") from exc

    def element(self, value: Any) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatchError("field element from a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, Fraction):
            return FieldElement(self, self.from_fraction(value))
        if isinstance(value, str):
            return FieldElement(self, self.parse(value))
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_coords(value))
        raise TypeError(f"cannot coerce {value!r} into {self.literal()}")


def _upoly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return _trim(q), a


def _format_univariate(coeffs: tuple[int, ...], var: str = "x") -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            mono = str(c)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if c != 1:
                mono = f"{c}*{mono}"
        parts.append(mono)
    return "+".join(parts) if parts else "0"


_UTERM = re.compile(r"^(?:(\d+)\*?)?(?:([A-Za-z_]\w*)(?:\^(\d+))?)?$")


def _parse_univariate(text: str, p: int) -> tuple[int, ...]:
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty modulus")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = _UTERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"bad modulus term {body!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        e = 0 if m.group(2) is None else int(m.group(3) or 1)
        c = -c if sign == "-" else c
        coeffs[e] = coeffs.get(e, 0) + c
    deg = max(coeffs)
    return tuple(coeffs.get(e, 0) % p for e in range(deg + 1))


_FIELD_RE = re.compile(r"^GF\((\d+)(?:\^(\d+))?\)$")


def parse_field(text: str) -> FieldSpec:
    """Parse ``QQ``, ``GF(p)`` or ``GF(p^k)[;modulus=...]``."""
    s = text.strip()
    if s in ("QQ", "Q"):
        return FieldSpec.rationals()
    head, _, tail = s.partition(";")
    m = _FIELD_RE.match(head.replace(" ", ""))
    if not m:
        raise ParseError(f"unrecognized field literal {text!r}")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    modulus = None
    if tail:
        key, _, val = tail.partition("=")
        if key.strip() != "modulus":
            raise ParseError(f"unknown field option {key!r}")
        if not is_prime(p):
            raise InvalidFieldError(f"{p} is not prime")
        modulus = _parse_univariate(val, p)
    if k == 1 and modulus is None:
        return FieldSpec.prime(p)
    if not is_prime(p):
        raise InvalidFieldError(f"{p} is not prime")
    return FieldSpec.extension(p, k, modulus)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: Any

    def __post_init__(self) -> None:
        spec, v = self.spec, self.value
        if spec.kind == RATIONALS:
            if not isinstance(v, Fraction):
                object.__setattr__(self, "value", Fraction(v))
        elif spec.kind == PRIME:
            if not 0 <= v < spec.p:
                raise ValueError(f"{v} outside [0, {spec.p})")
        elif len(v) != spec.k or not all(0 <= c < spec.p for c in v):
            raise ValueError(f"{v} is not a reduced coordinate tuple")

    def _coerce(self, other) -> Any:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatchError("field elements from different fields")
            return other.value
        return self.spec.element(other).value

    def __add__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self.value, self._coerce(other)))

    def __rsub__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self._coerce(other), self.value))

    def __mul__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.div(self.value, self._coerce(other)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.value))

    def is_zero(self) -> bool:
        return self.spec.is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return self.spec.format(self.value)
