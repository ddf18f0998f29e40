"""Exact arithmetic over the integers, prime fields and the rationals.

Elements are small immutable wrappers around Python ints, so integer
arithmetic is arbitrary precision for free.  The field of fractions of the
integers is :class:`fractions.Fraction`; a prime field is its own field of
fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InputError


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """Either the integers (``prime is None``) or the prime field GF(prime)."""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None:
            if isinstance(self.prime, bool) or not isinstance(self.prime, int):
                raise InputError(f"modulus must be an integer, got {self.prime!r}")
            if not is_prime(self.prime):
                raise InputError(f"modulus {self.prime} is not prime")

    @property
    def is_field(self) -> bool:
        return self.prime is not None

    def normalize(self, value: int) -> int:
        return value if self.prime is None else value % self.prime

    def elem(self, value: int) -> "RingElem":
        return RingElem(self.normalize(int(value)), self)

    def zero(self) -> "RingElem":
        return RingElem(0, self)

    def one(self) -> "RingElem":
        return RingElem(1, self)

    def inverse(self, value: int) -> int:
        if self.prime is None:
            if value in (1, -1):
                return value
            raise InputError(f"{value} is not a unit in Z")
        value %= self.prime
        if value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(value, -1, self.prime)

    def to_json(self):
        return "Z" if self.prime is None else {"prime": self.prime}

    @classmethod
    def from_json(cls, obj) -> "RingSpec":
        if obj == "Z":
            return INTEGERS
        if isinstance(obj, dict) and set(obj) == {"prime"}:
            return cls(obj["prime"])
        raise InputError(f"bad ring spec {obj!r}")

    def __str__(self):
        return "Z" if self.prime is None else f"GF({self.prime})"


INTEGERS = RingSpec()


def PrimeField(p: int) -> RingSpec:
    return RingSpec(p)


@dataclass(frozen=True)
class RingElem:
    value: int
    ring: RingSpec

    def __post_init__(self):
        if self.ring.prime is not None and not 0 <= self.value < self.ring.prime:
            object.__setattr__(self, "value", self.value % self.ring.prime)

    def _coerce(self, other) -> int:
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise InputError(f"mixed rings: {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElem(self.ring.normalize(self.value + v), self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElem(self.ring.normalize(self.value - v), self.ring)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElem(self.ring.normalize(v - self.value), self.ring)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return RingElem(self.ring.normalize(self.value * v), self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring.normalize(-self.value), self.ring)

    def __pow__(self, e: int):
        if self.ring.prime is None:
            if e < 0:
                raise InputError("negative power in Z")
            return RingElem(self.value ** e, self.ring)
        if e < 0:
            return RingElem(pow(self.ring.inverse(self.value), -e, self.ring.prime), self.ring)
        return RingElem(pow(self.value, e, self.ring.prime), self.ring)

    def inverse(self) -> "RingElem":
        return RingElem(self.ring.inverse(self.value), self.ring)

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.normalize(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ring))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"RingElem({self.value}, {self.ring})"


FractionElem = Union[Fraction, RingElem]


def _check_same(x: RingElem, y: RingElem, spec: RingSpec) -> None:
    if x.ring != spec or y.ring != spec:
        raise InputError(f"operands not in {spec}")


def ring_add(x: RingElem, y: RingElem, spec: RingSpec) -> RingElem:
    _check_same(x, y, spec)
    return x + y


def ring_mul(x: RingElem, y: RingElem, spec: RingSpec) -> RingElem:
    _check_same(x, y, spec)
    return x * y


def ring_neg(x: RingElem, spec: RingSpec) -> RingElem:
    if x.ring != spec:
        raise InputError(f"operand not in {spec}")
    return -x


def fraction_field_elem(x: RingElem, spec: RingSpec) -> FractionElem:
    """Embed ``x`` into the field of fractions of ``spec``."""
    if x.ring != spec:
        raise InputError(f"operand not in {spec}")
    if spec.prime is None:
        return Fraction(x.value)
    return x


def in_base_ring(x: FractionElem, spec: RingSpec) -> bool:
    if spec.prime is not None:
        return True
    if isinstance(x, RingElem):
        return x.ring == spec
    return Fraction(x).denominator == 1


def to_base_ring(x: FractionElem, spec: RingSpec) -> RingElem:
    if not in_base_ring(x, spec):
        raise InputError(f"{x} is not in {spec}")
    if isinstance(x, RingElem):
        return x
    return RingElem(Fraction(x).numerator, spec)


def parse_elem(text: str, spec: RingSpec) -> RingElem:
    try:
        return spec.elem(int(str(text).strip()))
    except ValueError as exc:
        raise InputError(f"bad ring element {text!r}") from exc


def parse_fraction(text: str, spec: RingSpec) -> FractionElem:
    if spec.prime is not None:
        return parse_elem(text, spec)
    try:
        return Fraction(str(text).strip())
    except ValueError as exc:
        raise InputError(f"bad rational {text!r}") from exc


def format_fraction(x: FractionElem) -> str:
    if isinstance(x, RingElem):
        return str(x.value)
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
