"""Multilinear polynomials over Z and GF(p).

A polynomial in ``n`` variables is a map from monomials to nonzero
coefficients.  Internally a monomial is a bitmask (bit ``j`` set means
``x_{j+1}`` occurs); at the I/O boundary it is the sorted list of 1-based
variable numbers.  There is no exponent data, so multilinearity holds by
construction.

The associative ones are exactly

* constants ``c``,
* the projections ``x_1`` and ``x_n``,
* shifted sums ``c + x_1 + ... + x_n``,
* ``sum(w**(i-1) * x_i)`` for ``n >= 3``, ``w != 1``, ``w**(n-1) == 1``,
* ``-b + a * prod(x_i + b)`` with ``a != 0`` and ``b`` in the fraction
  field such that ``a*b**k`` (``1 <= k < n``) and ``a*b**n - b`` lie in the
  ring.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import (
    INTEGERS,
    FractionElem,
    RingElem,
    RingSpec,
    format_fraction,
    in_base_ring,
    parse_elem,
    parse_fraction,
)
from .errors import InputError
from .finops import FiniteOp, check_size, decode

GF2 = RingSpec(2)


def mask_to_vars(mask: int) -> Tuple[int, ...]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j + 1)
        mask >>= 1
        j += 1
    return tuple(out)


def vars_to_mask(variables: Iterable[int], n: int) -> int:
    mask = 0
    for v in variables:
        if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
            raise InputError(f"variable {v!r} outside 1..{n}")
        bit = 1 << (v - 1)
        if mask & bit:
            raise InputError(f"variable x{v} repeated: not multilinear")
        mask |= bit
    return mask


@dataclass(frozen=True)
class MultilinearPoly:
    ring: RingSpec
    n: int
    terms: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise InputError("need at least one variable")
        top = 1 << self.n
        clean = {}
        for mask, value in self.terms.items():
            if not 0 <= mask < top:
                raise InputError(f"monomial {mask} has variables beyond x{self.n}")
            value = self.ring.normalize(int(value))
            if value:
                clean[mask] = value
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def from_coeffs(cls, ring: RingSpec, n: int, coeffs: Mapping) -> "MultilinearPoly":
        """Build from ``{vars: value}`` with vars an iterable of 1-based indices."""
        terms: Dict[int, int] = defaultdict(int)
        for variables, value in coeffs.items():
            if isinstance(value, RingElem):
                if value.ring != ring:
                    raise InputError("coefficient from another ring")
                value = value.value
            terms[vars_to_mask(variables, n)] += int(value)
        return cls(ring, n, terms)

    @property
    def coeffs(self) -> Dict[Tuple[int, ...], RingElem]:
        return {mask_to_vars(m): RingElem(c, self.ring) for m, c in self.terms.items()}

    def coeff(self, variables: Iterable[int]) -> RingElem:
        return RingElem(self.terms.get(vars_to_mask(variables, self.n), 0), self.ring)

    def __call__(self, *point) -> RingElem:
        return eval_poly(self, point)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask, c in self.terms.items():
            mono = "*".join(f"x{v}" for v in mask_to_vars(mask))
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "n": self.n,
            "coeffs": [
                {"vars": list(mask_to_vars(m)), "coef": str(c)} for m, c in self.terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "MultilinearPoly":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise InputError(f"bad JSON: {exc}") from exc
        if not isinstance(obj, dict) or not {"ring", "n", "coeffs"} <= set(obj):
            raise InputError("polynomial JSON needs keys ring, n, coeffs")
        ring = RingSpec.from_json(obj["ring"])
        n = obj["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InputError(f"bad variable count {n!r}")
        terms: Dict[int, int] = defaultdict(int)
        for entry in obj["coeffs"]:
            if not isinstance(entry, dict) or not {"vars", "coef"} <= set(entry):
                raise InputError(f"bad coefficient entry {entry!r}")
            if not isinstance(entry["vars"], list):
                raise InputError("vars must be a list")
            mask = vars_to_mask(entry["vars"], n)
            terms[mask] += parse_elem(entry["coef"], ring).value
        return cls(ring, n, terms)


def eval_poly(p: MultilinearPoly, point: Sequence) -> RingElem:
    if len(point) != p.n:
        raise InputError(f"expected {p.n} values, got {len(point)}")
    xs = []
    for x in point:
        if isinstance(x, RingElem):
            if x.ring != p.ring:
                raise InputError(f"point entry in {x.ring}, polynomial over {p.ring}")
            xs.append(x.value)
        else:
            xs.append(int(x))
    total = 0
    for mask, c in p.terms.items():
        term = c
        j = 0
        while mask:
            if mask & 1:
                term *= xs[j]
            mask >>= 1
            j += 1
        total += term
    return p.ring.elem(total)


def compose_at(p: MultilinearPoly, i: int) -> MultilinearPoly:
    """``p(x_1..x_i, p(x_{i+1}..x_{i+n}), x_{i+n+1}..x_{2n-1})`` expanded.

    ``i`` is 0-based.  The inner copy's variables are disjoint from the outer
    slots that survive, so every product stays multilinear.
    """
    n = p.n
    if n < 2:
        raise InputError("composition needs n >= 2")
    if not 0 <= i < n:
        raise InputError(f"position {i} outside 0..{n - 1}")
    bit = 1 << i
    low = bit - 1
    inner = [(m << i, c) for m, c in p.terms.items()]
    out: Dict[int, int] = defaultdict(int)
    for s, cs in p.terms.items():
        base = (s & low) | ((s >> (i + 1)) << (i + n))
        if s & bit:
            for m, c in inner:
                out[base | m] += cs * c
        else:
            out[base] += cs
    return MultilinearPoly(p.ring, 2 * n - 1, out)


def is_associative_poly(p: MultilinearPoly) -> bool:
    """Symbolic check: all placements expand to the same coefficient map.

    Over GF(p) a multilinear polynomial is determined by its function
    (degree at most 1 < p in every variable), and over Z polynomials and
    polynomial functions correspond one to one, so equal coefficient maps is
    the same as equal functions.
    """
    if p.n < 2:
        raise InputError("associativity of polynomials needs n >= 2")
    prev = compose_at(p, 0).terms
    for i in range(1, p.n):
        cur = compose_at(p, i).terms
        if cur != prev:
            return False
        prev = cur
    return True


def value_table(p: MultilinearPoly) -> List[int]:
    """Values of ``p`` on GF(q)^n in index-law order."""
    q = p.ring.prime
    if q is None:
        raise InputError("value tables need a finite ring")
    check_size("polynomial value table", q ** p.n)
    return [eval_poly(p, decode(idx, q, p.n)).value for idx in range(q ** p.n)]


def to_finite_op(p: MultilinearPoly) -> FiniteOp:
    return FiniteOp(p.ring.prime, p.n, tuple(value_table(p)))


def pointwise_associative(p: MultilinearPoly) -> bool:
    """Check the associativity identity at every point of GF(q)^(2n-1).

    Independent of the symbolic path: it only evaluates ``p``.
    """
    q = p.ring.prime
    if q is None:
        raise InputError("pointwise check needs a prime field; Z is infinite")
    n = p.n
    if n < 2:
        raise InputError("associativity of polynomials needs n >= 2")
    check_size("pointwise tuples", q ** (2 * n - 1))
    values = {}
    for point in product(range(q), repeat=n):
        values[point] = eval_poly(p, point).value
    for t in product(range(q), repeat=2 * n - 1):
        first = None
        for i in range(n):
            inner = values[t[i:i + n]]
            val = values[t[:i] + (inner,) + t[i + n:]]
            if first is None:
                first = val
            elif val != first:
                return False
    return True


class FormKind(Enum):
    CONSTANT = "constant"
    FIRST_PROJ = "first_proj"
    LAST_PROJ = "last_proj"
    SHIFTED_SUM = "shifted_sum"
    OMEGA_SUM = "omega_sum"
    PRODUCT = "product"
    NO_FORM = "no_form"


@dataclass(frozen=True)
class MarMatForm:
    """One of the six associative shapes, with its parameters."""

    kind: FormKind
    c: Optional[RingElem] = None
    omega: Optional[RingElem] = None
    a: Optional[RingElem] = None
    b: Optional[FractionElem] = None

    @classmethod
    def constant(cls, c: RingElem) -> "MarMatForm":
        return cls(FormKind.CONSTANT, c=c)

    @classmethod
    def shifted_sum(cls, c: RingElem) -> "MarMatForm":
        return cls(FormKind.SHIFTED_SUM, c=c)

    @classmethod
    def omega_sum(cls, omega: RingElem) -> "MarMatForm":
        return cls(FormKind.OMEGA_SUM, omega=omega)

    @classmethod
    def product_form(cls, a: RingElem, b: FractionElem) -> "MarMatForm":
        return cls(FormKind.PRODUCT, a=a, b=b)

    def __bool__(self):
        return self.kind is not FormKind.NO_FORM

    def to_json(self) -> dict:
        out = {"form": self.kind.value}
        if self.c is not None:
            out["c"] = str(self.c)
        if self.omega is not None:
            out["omega"] = str(self.omega)
        if self.a is not None:
            out["a"] = str(self.a)
        if self.b is not None:
            out["b"] = format_fraction(self.b)
        return out

    @classmethod
    def from_json(cls, obj, ring: RingSpec) -> "MarMatForm":
        try:
            kind = FormKind(obj["form"])
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad form JSON {obj!r}") from exc
        kwargs = {}
        for key in ("c", "omega", "a"):
            if key in obj:
                kwargs[key] = parse_elem(obj[key], ring)
        if "b" in obj:
            kwargs["b"] = parse_fraction(obj["b"], ring)
        return cls(kind, **kwargs)


FIRST_PROJ = MarMatForm(FormKind.FIRST_PROJ)
LAST_PROJ = MarMatForm(FormKind.LAST_PROJ)
NO_FORM = MarMatForm(FormKind.NO_FORM)


def _frac_pow(x: FractionElem, e: int) -> FractionElem:
    return x ** e


def _to_frac(value: int, ring: RingSpec) -> FractionElem:
    return Fraction(value) if ring.prime is None else RingElem(value, ring)


def _frac_eq(x: FractionElem, value: int, ring: RingSpec) -> bool:
    if ring.prime is None:
        return Fraction(x) == value
    return x == RingElem(value, ring)


def _match_constant(p):
    if all(m == 0 for m in p.terms):
        return MarMatForm.constant(RingElem(p.terms.get(0, 0), p.ring))
    return None


def _match_first(p):
    return FIRST_PROJ if p.terms == {1: 1} else None


def _match_last(p):
    return LAST_PROJ if p.terms == {1 << (p.n - 1): 1} else None


def _match_shifted_sum(p):
    singles = {1 << j for j in range(p.n)}
    if any(m not in singles and m != 0 for m in p.terms):
        return None
    if any(p.terms.get(m) != 1 for m in singles):
        return None
    return MarMatForm.shifted_sum(RingElem(p.terms.get(0, 0), p.ring))


def _omega_ok(omega: RingElem, n: int) -> bool:
    return n >= 3 and omega != 1 and omega ** (n - 1) == 1


def _match_omega_sum(p):
    n = p.n
    if n < 3:
        return None
    omega = RingElem(p.terms.get(1 << 1, 0), p.ring)
    if not _omega_ok(omega, n):
        return None
    expected = {1 << j: (omega ** j).value for j in range(n)}
    return MarMatForm.omega_sum(omega) if p.terms == expected else None


def _product_conditions(a: RingElem, b: FractionElem, n: int, ring: RingSpec) -> bool:
    if not a:
        return False
    af = _to_frac(a.value, ring)
    if not all(in_base_ring(af * _frac_pow(b, k), ring) for k in range(1, n)):
        return False
    return in_base_ring(af * _frac_pow(b, n) - b, ring)


def _product_coeffs(a: RingElem, b: FractionElem, n: int, ring: RingSpec) -> Dict[int, FractionElem]:
    af = _to_frac(a.value, ring)
    out = {}
    for mask in range(1 << n):
        size = bin(mask).count("1")
        out[mask] = af * _frac_pow(b, n) - b if mask == 0 else af * _frac_pow(b, n - size)
    return out


def _match_product(p):
    n, ring = p.n, p.ring
    full = (1 << n) - 1
    a_val = p.terms.get(full, 0)
    if not a_val:
        return None
    a = RingElem(a_val, ring)
    lead = p.terms.get(full & ~(1 << (n - 1)), 0)
    if ring.prime is None:
        b = Fraction(lead, a_val)
    else:
        b = RingElem(lead, ring) * a.inverse()
    for mask, want in _product_coeffs(a, b, n, ring).items():
        if not _frac_eq(want, p.terms.get(mask, 0), ring):
            return None
    if not _product_conditions(a, b, n, ring):
        return None
    return MarMatForm.product_form(a, b)


_MATCHERS = (
    _match_constant,
    _match_first,
    _match_last,
    _match_shifted_sum,
    _match_omega_sum,
    _match_product,
)


def matching_forms(p: MultilinearPoly) -> List[MarMatForm]:
    """Every form ``p`` matches, in the fixed order constant .. product."""
    if p.n < 2:
        raise InputError("classification needs n >= 2")
    return [m for m in (match(p) for match in _MATCHERS) if m is not None]


def classify_marmat(p: MultilinearPoly) -> MarMatForm:
    matches = matching_forms(p)
    if len(matches) > 1:
        raise AssertionError(f"{p} matches several forms: {matches}")
    return matches[0] if matches else NO_FORM


def from_form(form: MarMatForm, ring: RingSpec, n: int) -> MultilinearPoly:
    """Expand a form into its coefficient map, validating its parameters."""
    if n < 2:
        raise InputError("forms are defined for n >= 2")

    def elem(x, name):
        if x is None:
            raise InputError(f"{form.kind.value} needs parameter {name}")
        if isinstance(x, RingElem):
            if x.ring != ring:
                raise InputError(f"{name} lies in {x.ring}, not {ring}")
            return x
        if isinstance(x, Fraction) and x.denominator != 1:
            raise InputError(f"{name} = {x} is not in {ring}")
        return ring.elem(int(x))

    kind = form.kind
    if kind is FormKind.CONSTANT:
        return MultilinearPoly(ring, n, {0: elem(form.c, "c").value})
    if kind is FormKind.FIRST_PROJ:
        return MultilinearPoly(ring, n, {1: 1})
    if kind is FormKind.LAST_PROJ:
        return MultilinearPoly(ring, n, {1 << (n - 1): 1})
    if kind is FormKind.SHIFTED_SUM:
        terms = {1 << j: 1 for j in range(n)}
        terms[0] = elem(form.c, "c").value
        return MultilinearPoly(ring, n, terms)
    if kind is FormKind.OMEGA_SUM:
        omega = elem(form.omega, "omega")
        if not _omega_ok(omega, n):
            raise InputError(f"omega = {omega} needs n >= 3, omega != 1, omega^(n-1) = 1")
        return MultilinearPoly(ring, n, {1 << j: (omega ** j).value for j in range(n)})
    if kind is FormKind.PRODUCT:
        a = elem(form.a, "a")
        if form.b is None:
            raise InputError("product form needs parameter b")
        b = form.b
        if ring.prime is None:
            if isinstance(b, RingElem):
                b = Fraction(b.value)
            b = Fraction(b)
        else:
            b = elem(b, "b") if not isinstance(b, Fraction) else _field_from_fraction(b, ring)
        if not _product_conditions(a, b, n, ring):
            raise InputError(f"a = {a}, b = {format_fraction(b)} violate the ring conditions")
        terms = {}
        for mask, value in _product_coeffs(a, b, n, ring).items():
            terms[mask] = value.numerator if ring.prime is None else value.value
        return MultilinearPoly(ring, n, terms)
    raise InputError("no polynomial for NO_FORM")


def _field_from_fraction(x: Fraction, ring: RingSpec) -> RingElem:
    return ring.elem(x.numerator) * ring.elem(x.denominator).inverse()


def poly_from_index(index: int, q: int, n: int) -> MultilinearPoly:
    """Inverse of the enumeration order: coefficient of monomial ``m`` is digit ``m``."""
    terms = {}
    for mask in range(1 << n):
        index, digit = divmod(index, q)
        if digit:
            terms[mask] = digit
    return MultilinearPoly(RingSpec(q), n, terms)


def poly_index(p: MultilinearPoly) -> int:
    q = p.ring.prime
    if q is None:
        raise InputError("only finite-field polynomials are enumerated")
    return sum(c * q ** m for m, c in p.terms.items())


def dense_coeffs(p: MultilinearPoly) -> List[int]:
    return [p.terms.get(m, 0) for m in range(1 << p.n)]


def anf(f: FiniteOp) -> MultilinearPoly:
    """Algebraic normal form of a Boolean operation (Moebius transform)."""
    if f.k != 2:
        raise InputError("ANF needs carrier {0,1}")
    n = f.n
    g = []
    for mask in range(1 << n):
        idx = 0
        for j in range(n):
            idx = (idx << 1) | ((mask >> j) & 1)
        g.append(f.table[idx])
    for j in range(n):
        bit = 1 << j
        for mask in range(1 << n):
            if mask & bit:
                g[mask] ^= g[mask ^ bit]
    return MultilinearPoly(GF2, n, {m: 1 for m, v in enumerate(g) if v})


def from_anf(p: MultilinearPoly) -> FiniteOp:
    if p.ring != GF2:
        raise InputError("expected a polynomial over GF(2)")
    return to_finite_op(p)


def anf_bridge(x):
    """Boolean table <-> GF(2) polynomial, in whichever direction ``x`` needs."""
    return from_anf(x) if isinstance(x, MultilinearPoly) else anf(x)
