"""Finite n-ary operations stored as flat value tables.

The tuple ``(a_1, ..., a_n)`` lives at index ``sum(a_i * k**(n-i))``, first
argument most significant.  All operations here are pure; ``FiniteOp`` is
immutable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernels
from .errors import InfeasibleSize, InputError

DEFAULT_MAX_CELLS = 2 ** 24
MIN_MAX_CELLS = 2 ** 10

_max_cells = DEFAULT_MAX_CELLS


def get_max_cells() -> int:
    return _max_cells


def set_max_cells(bound: int) -> None:
    """Set the guard rail on table sizes, tuple spaces and candidate counts."""
    global _max_cells
    if bound < MIN_MAX_CELLS:
        raise InputError(f"guard rail must be >= {MIN_MAX_CELLS}, got {bound}")
    _max_cells = bound


def check_size(what: str, size: int, bound: Optional[int] = None) -> None:
    bound = _max_cells if bound is None else bound
    if size > bound:
        raise InfeasibleSize(what, size, bound)


@dataclass(frozen=True)
class FiniteOp:
    k: int
    n: int
    table: Tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if self.k < 1 or self.n < 0:
            raise InputError(f"bad carrier/arity k={self.k}, n={self.n}")
        table = tuple(int(v) for v in self.table)
        if len(table) != self.k ** self.n:
            raise InputError(f"table length {len(table)} != {self.k}^{self.n}")
        if any(not 0 <= v < self.k for v in table):
            raise InputError(f"table entries must lie in [0, {self.k})")
        object.__setattr__(self, "table", table)

    def __repr__(self):
        return f"FiniteOp(k={self.k}, n={self.n}, table={list(self.table)})"

    def __call__(self, *args: int) -> int:
        return eval_op(self, args)

    @property
    def index(self) -> int:
        """The table read as base-k digits, cell 0 most significant."""
        value = 0
        for v in self.table:
            value = value * self.k + v
        return value

    @property
    def bitmask(self) -> int:
        """Packed one-bit-per-cell form, only for k = 2 (equals ``index``)."""
        if self.k != 2:
            raise InputError("bitmask form needs k = 2")
        return self.index

    @classmethod
    def from_index(cls, index: int, k: int, n: int) -> "FiniteOp":
        cells = k ** n
        digits = [0] * cells
        for j in range(cells - 1, -1, -1):
            index, digits[j] = divmod(index, k)
        if index:
            raise InputError("table index out of range")
        return cls(k, n, tuple(digits))

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "table": list(self.table)}

    @classmethod
    def from_json(cls, obj) -> "FiniteOp":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise InputError(f"bad JSON: {exc}") from exc
        if not isinstance(obj, dict) or not {"k", "n", "table"} <= set(obj):
            raise InputError("operation JSON needs keys k, n, table")
        k, n, table = obj["k"], obj["n"], obj["table"]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (k, n)):
            raise InputError("k and n must be integers")
        if not isinstance(table, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in table
        ):
            raise InputError("table must be a list of integers")
        if k ** n > _max_cells:
            raise InfeasibleSize("table", k ** n, _max_cells)
        return cls(k, n, tuple(table))


@dataclass(frozen=True)
class DerivationCertificate:
    """Witness that some operation equals ``derive(base, ell)``."""

    base: FiniteOp
    ell: int

    @property
    def arity(self) -> int:
        return derived_arity(self.base.n, self.ell)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "ell": self.ell}


def derived_arity(n: int, ell: int) -> int:
    return ell * (n - 1) + 1


def encode(args: Sequence[int], k: int) -> int:
    idx = 0
    for a in args:
        idx = idx * k + a
    return idx


def decode(idx: int, k: int, n: int) -> Tuple[int, ...]:
    out = [0] * n
    for j in range(n - 1, -1, -1):
        idx, out[j] = divmod(idx, k)
    return tuple(out)


def eval_op(f: FiniteOp, args: Sequence[int]) -> int:
    if len(args) != f.n:
        raise InputError(f"expected {f.n} arguments, got {len(args)}")
    for a in args:
        if not 0 <= a < f.k:
            raise InputError(f"argument {a} outside [0, {f.k})")
    return f.table[encode(args, f.k)]


def is_associative(f: FiniteOp, max_tuples: Optional[int] = None) -> bool:
    """Generalized associativity over all (2n-1)-tuples.

    Only adjacent placements are compared, stopping at the first mismatch;
    equality of neighbours chains to equality of all placements.
    """
    if f.n <= 1:
        return True
    check_size("associativity tuples", f.k ** (2 * f.n - 1), max_tuples)
    return kernels.table_is_associative(f.table, f.k, f.n)


def identity_op(k: int) -> FiniteOp:
    return FiniteOp(k, 1, tuple(range(k)))


def derive(f: FiniteOp, ell: int) -> FiniteOp:
    """The ell-fold left-nested iterate of f, of arity ell*(n-1)+1."""
    if ell < 0:
        raise InputError("ell must be nonnegative")
    if ell == 0:
        return identity_op(f.k)
    k, n = f.k, f.n
    arity = derived_arity(n, ell)
    check_size("derived table", k ** arity)
    # f_{l+1}(a) = f_l(f(a_1..a_n), a_{n+1}, ...): fold from the left
    table = f.table
    rest_arity = arity - n
    out = []
    for head in range(k ** n):
        first = table[head]
        if rest_arity == 0:
            out.append(first)
            continue
        for rest in product(range(k), repeat=rest_arity):
            acc = first
            for pos in range(0, rest_arity, n - 1):
                acc = table[encode((acc,) + rest[pos:pos + n - 1], k)]
            out.append(acc)
    return FiniteOp(k, arity, tuple(out))


def derivable_from(f: FiniteOp, g: FiniteOp) -> Optional[DerivationCertificate]:
    if f.k != g.k:
        raise InputError(f"carrier mismatch: {f.k} vs {g.k}")
    if g.n == 1:
        if f.n != 1:
            return None
        # iterates of a unary map are eventually periodic
        seen = set()
        current, ell = identity_op(g.k).table, 0
        while current not in seen:
            if current == f.table:
                return DerivationCertificate(g, ell)
            seen.add(current)
            current = tuple(g.table[v] for v in current)
            ell += 1
        return None
    if f.n == 1:
        ell = 0
    elif (f.n - 1) % (g.n - 1) == 0:
        ell = (f.n - 1) // (g.n - 1)
    else:
        return None
    if derive(g, ell).table == f.table:
        return DerivationCertificate(g, ell)
    return None


def is_primitive(
    f: FiniteOp, assoc_catalog: Dict[int, Sequence[FiniteOp]]
) -> Tuple[bool, Optional[DerivationCertificate]]:
    """Search smaller-arity associative ops for one deriving to ``f``.

    ``assoc_catalog`` maps arity ``m`` to all associative ops of that arity;
    it must cover every ``2 <= m < n`` with ``(m-1) | (n-1)``.  Unary bases
    are never needed since their derived operations stay unary.  The first
    certificate found has the smallest base arity, then the smallest base
    table index.
    """
    n = f.n
    if n <= 2:
        return True, None
    for m in range(2, n):
        if (n - 1) % (m - 1):
            continue
        if m not in assoc_catalog:
            raise InputError(f"catalog lacks arity {m}, needed for arity {n}")
        ell = (n - 1) // (m - 1)
        for g in sorted(assoc_catalog[m], key=lambda op: op.index):
            if g.k != f.k:
                raise InputError("catalog carrier mismatch")
            if derive(g, ell).table == f.table:
                return False, DerivationCertificate(g, ell)
    return True, None


def all_tables(k: int, n: int) -> List[FiniteOp]:
    check_size("candidate tables", k ** (k ** n))
    return [FiniteOp.from_index(i, k, n) for i in range(k ** (k ** n))]
