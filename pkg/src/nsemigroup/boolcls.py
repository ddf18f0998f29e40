"""Associative operations on {0, 1}.

For n >= 2 there are exactly eight: the two constants, the first and last
projections, n-ary OR and AND, n-ary XOR (``SUM``) and XOR plus one
(``SUMBAR``).  This module builds them, recognises them, and answers which
of them are derived from smaller arities.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Tuple

from .errors import InputError
from .finops import (
    DerivationCertificate,
    FiniteOp,
    derivable_from,
    derived_arity,
    encode,
    is_associative,
)


class BoolForm(Enum):
    CONST0 = "const0"
    CONST1 = "const1"
    PROJ1 = "proj1"
    PROJN = "projn"
    OR = "or"
    AND = "and"
    SUM = "sum"
    SUMBAR = "sumbar"
    NOT_ASSOCIATIVE = "not_associative"


class UnaryForm(Enum):
    CONST0 = "const0"
    CONST1 = "const1"
    IDENTITY = "identity"
    NEGATION = "negation"


CANONICAL_FORMS = [f for f in BoolForm if f is not BoolForm.NOT_ASSOCIATIVE]

_UNARY_TABLES = {
    UnaryForm.CONST0: (0, 0),
    UnaryForm.CONST1: (1, 1),
    UnaryForm.IDENTITY: (0, 1),
    UnaryForm.NEGATION: (1, 0),
}


@dataclass(frozen=True)
class BoolFormDescriptor:
    form: object  # BoolForm, or UnaryForm when n == 1
    n: int

    def to_json(self) -> dict:
        return {"form": self.form.value, "n": self.n}

    @classmethod
    def from_json(cls, obj) -> "BoolFormDescriptor":
        n = obj["n"]
        space = UnaryForm if n == 1 else BoolForm
        try:
            return cls(space(obj["form"]), n)
        except ValueError as exc:
            raise InputError(f"unknown form {obj['form']!r}") from exc


def _cell(form: BoolForm, args: Tuple[int, ...]) -> int:
    if form is BoolForm.CONST0:
        return 0
    if form is BoolForm.CONST1:
        return 1
    if form is BoolForm.PROJ1:
        return args[0]
    if form is BoolForm.PROJN:
        return args[-1]
    if form is BoolForm.OR:
        return int(any(args))
    if form is BoolForm.AND:
        return int(all(args))
    parity = sum(args) & 1
    if form is BoolForm.SUM:
        return parity
    if form is BoolForm.SUMBAR:
        return parity ^ 1
    raise InputError(f"{form} has no table")


def canonical_op(form: BoolForm, n: int) -> FiniteOp:
    if n < 2:
        raise InputError("canonical families start at n = 2; use unary_op for n = 1")
    table = []
    for idx in range(2 ** n):
        args = tuple((idx >> (n - 1 - j)) & 1 for j in range(n))
        table.append(_cell(form, args))
    return FiniteOp(2, n, tuple(table))


def unary_op(form: UnaryForm) -> FiniteOp:
    return FiniteOp(2, 1, _UNARY_TABLES[form])


def canonical_ops(n: int) -> List[FiniteOp]:
    """All associative Boolean ops of arity n, sorted by table index."""
    if n == 1:
        ops = [unary_op(u) for u in UnaryForm]
    else:
        ops = [canonical_op(f, n) for f in CANONICAL_FORMS]
    return sorted(ops, key=lambda op: op.index)


def _require_boolean(f: FiniteOp) -> None:
    if f.k != 2:
        raise InputError(f"expected carrier {{0,1}}, got k={f.k}")


# probe words, by name; "0^n" etc. as in the case analysis
def probe_words(n: int) -> dict:
    return {
        "0^n": (0,) * n,
        "10^(n-1)": (1,) + (0,) * (n - 1),
        "0^(n-1)1": (0,) * (n - 1) + (1,),
        "1^n": (1,) * n,
        "110^(n-2)": (1, 1) + (0,) * (n - 2),
        "010^(n-2)": (0, 1) + (0,) * (n - 2),
        "01^(n-1)": (0,) + (1,) * (n - 1),
    }


def _probe_tree(read: Callable[[str], int]) -> Tuple[BoolForm, str]:
    if read("0^n") == 0:
        if read("10^(n-1)") == 0:
            if read("0^(n-1)1") == 0:
                if read("1^n") == 0:
                    return BoolForm.CONST0, "1.1.1.1"
                return BoolForm.AND, "1.1.1.2"
            return BoolForm.PROJN, "1.1.2"
        if read("110^(n-2)") == 0:
            if read("010^(n-2)") == 0:
                return BoolForm.NOT_ASSOCIATIVE, "1.2.1.1"
            return BoolForm.SUM, "1.2.1.2"
        if read("01^(n-1)") == 0:
            return BoolForm.PROJ1, "1.2.2.1"
        return BoolForm.OR, "1.2.2.2"
    if read("10^(n-1)") == 0:
        return BoolForm.SUMBAR, "2.1"
    return BoolForm.CONST1, "2.2"


def probe_path(f: FiniteOp) -> Tuple[BoolFormDescriptor, str, dict]:
    """Run the decision tree; returns (descriptor, case label, probes read)."""
    _require_boolean(f)
    if f.n < 2:
        raise InputError("probe classification needs n >= 2")
    words = probe_words(f.n)
    reads = {}

    def read(name: str) -> int:
        value = f.table[encode(words[name], 2)]
        reads[name] = value
        return value

    form, case = _probe_tree(read)
    return BoolFormDescriptor(form, f.n), case, reads


def classify_by_probes(f: FiniteOp) -> BoolFormDescriptor:
    """Classify an associative Boolean op from at most seven table cells.

    The input is trusted to be associative.  A non-associative table can get
    any answer, except that the impossible probe pattern of case 1.2.1.1 is
    reported as ``NOT_ASSOCIATIVE``.
    """
    return probe_path(f)[0]


def all_probe_values(f: FiniteOp) -> dict:
    _require_boolean(f)
    return {name: f.table[encode(w, 2)] for name, w in probe_words(f.n).items()}


def classify_unary(f: FiniteOp) -> BoolFormDescriptor:
    _require_boolean(f)
    for form, table in _UNARY_TABLES.items():
        if f.table == table:
            return BoolFormDescriptor(form, 1)
    raise AssertionError("unreachable: four unary tables")


def canonical_form(f: FiniteOp) -> Optional[BoolForm]:
    """The family whose arity-n table equals ``f``, without an associativity check."""
    _require_boolean(f)
    for form in CANONICAL_FORMS:
        if canonical_op(form, f.n).table == f.table:
            return form
    return None


def classify_boolean(f: FiniteOp) -> BoolFormDescriptor:
    _require_boolean(f)
    if f.n == 1:
        return classify_unary(f)
    if f.n == 0:
        raise InputError("nullary operations are not classified")
    if not is_associative(f):
        return BoolFormDescriptor(BoolForm.NOT_ASSOCIATIVE, f.n)
    matches = [form for form in CANONICAL_FORMS if canonical_op(form, f.n).table == f.table]
    if len(matches) != 1:
        raise AssertionError(f"associative table matched {len(matches)} canonical forms")
    return BoolFormDescriptor(matches[0], f.n)


def binary_semigroups() -> List[FiniteOp]:
    """The eight binary semigroup operations on {0,1}, by table index."""
    return canonical_ops(2)


def derivable_from_binary(f: FiniteOp) -> Optional[DerivationCertificate]:
    _require_boolean(f)
    if f.n < 2:
        raise InputError("need n >= 2")
    for g in binary_semigroups():
        cert = derivable_from(f, g)
        if cert is not None:
            return cert
    return None


def derived_form(form: BoolForm, m: int, ell: int) -> BoolForm:
    """Family of ``derive(canonical_op(form, m), ell)`` for ell >= 1.

    Every family except SUMBAR is closed under derivation.  Each application
    of SUMBAR adds one, so ell applications leave the constant ell mod 2.
    """
    if ell < 1:
        raise InputError("ell must be >= 1 for an arity >= 2 result")
    if form is BoolForm.SUMBAR:
        return BoolForm.SUMBAR if ell % 2 else BoolForm.SUM
    return form


def primitive_sumbar_arity(n: int) -> bool:
    """Whether XOR-plus-one of arity n is primitive: n - 1 a power of two."""
    if n < 2:
        raise InputError("need n >= 2")
    m = n - 1
    return m & (m - 1) == 0


def primitive_boolean(f: FiniteOp) -> Tuple[bool, Optional[DerivationCertificate]]:
    """Primitivity of an associative Boolean op, with a witness when derived.

    Witnesses use the smallest possible base arity.  For SUMBAR that is
    ``m = 2**v + 1`` where ``2**v`` is the largest power of two dividing
    ``n - 1``, reached with the odd count ``ell = (n-1) / 2**v``.
    """
    _require_boolean(f)
    if f.n <= 2:
        return True, None
    form = canonical_form(f)
    if form is None:
        raise InputError("primitivity is defined for associative ops only")
    n = f.n
    if form is not BoolForm.SUMBAR:
        return False, DerivationCertificate(canonical_op(form, 2), n - 1)
    if primitive_sumbar_arity(n):
        return True, None
    two_power = (n - 1) & -(n - 1)
    m = two_power + 1
    ell = (n - 1) // two_power
    assert derived_arity(m, ell) == n and ell % 2 == 1
    return False, DerivationCertificate(canonical_op(BoolForm.SUMBAR, m), ell)
