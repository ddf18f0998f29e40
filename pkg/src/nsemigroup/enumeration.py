"""Exhaustive scans and theorem-verification harnesses.

Scans split the candidate index range into chunks handled by a thread pool
(the compiled kernels release the GIL) and merge chunk results in index
order, so reports do not depend on the thread count.
"""
from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernels
from .boolcls import (
    BoolForm,
    canonical_form,
    canonical_op,
    canonical_ops,
    classify_boolean,
    classify_unary,
    classify_by_probes,
    derived_form,
    primitive_boolean,
    primitive_sumbar_arity,
)
from .errors import InputError
from .finops import FiniteOp, check_size, derive, is_associative, is_primitive
from .mlpoly import (
    MultilinearPoly,
    classify_marmat,
    pointwise_associative,
    poly_from_index,
    to_finite_op,
)

FULL_TABLE_MAX_N = 10


@dataclass
class EnumerationReport:
    params: dict
    scanned: int = 0
    associative: int = 0
    histogram: Dict[str, int] = field(default_factory=dict)
    verdict: Optional[bool] = None
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "params": self.params,
            "scanned": self.scanned,
            "associative": self.associative,
            "histogram": dict(self.histogram),
            "verdict": None if self.verdict is None else ("pass" if self.verdict else "fail"),
            "elapsed_ms": self.elapsed_ms,
        }
        if self.details:
            out["details"] = self.details
        return out

    @property
    def passed(self) -> bool:
        return bool(self.verdict)


def _chunks(total: int, threads: int) -> List[Tuple[int, int]]:
    pieces = max(1, threads) * 4
    step = max(1, -(-total // pieces))
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _parallel_scan(fn, a: int, b: int, total: int, threads: int) -> List[int]:
    if threads == 1 or total < 1024:
        return fn(a, b, 0, total)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda r: fn(a, b, r[0], r[1]), _chunks(total, threads))
        return [i for part in parts for i in part]


def _resolve_threads(threads: int) -> int:
    if threads < 0:
        raise InputError("thread count must be >= 0")
    if threads == 0:
        import os

        return os.cpu_count() or 1
    return threads


def scan_associative_indices(k: int, n: int, threads: int = 1) -> List[int]:
    total = k ** (k ** n)
    check_size("candidate tables", total)
    return _parallel_scan(kernels.scan_tables, k, n, total, _resolve_threads(threads))


def enumerate_assoc_ops(k: int, n: int, threads: int = 1) -> Tuple[List[FiniteOp], EnumerationReport]:
    """All associative n-ary tables on k elements, by table index."""
    if k < 1 or n < 1:
        raise InputError("need k >= 1 and n >= 1")
    start = time.perf_counter()
    total = k ** (k ** n)
    check_size("candidate tables", total)
    ops = [FiniteOp.from_index(i, k, n) for i in scan_associative_indices(k, n, threads)]
    report = EnumerationReport({"k": k, "n": n}, scanned=total, associative=len(ops))
    if k == 2:
        report.histogram = dict(sorted(Counter(classify_boolean(f).form.value for f in ops).items()))
    else:
        report.histogram = {"associative": len(ops)}
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return ops, report


def naive_is_associative(table: Sequence[int], k: int, n: int) -> bool:
    """All-pairs associativity, every tuple, no shortcuts.

    Deliberately shares nothing with the optimized checker so the two can
    serve as oracles for each other.
    """
    if n <= 1:
        return True
    ok = True
    for t in product(range(k), repeat=2 * n - 1):
        values = []
        for i in range(n):
            inner_args = t[i:i + n]
            inner_idx = 0
            for a in inner_args:
                inner_idx = inner_idx * k + a
            outer_args = t[:i] + (table[inner_idx],) + t[i + n:]
            outer_idx = 0
            for a in outer_args:
                outer_idx = outer_idx * k + a
            values.append(table[outer_idx])
        for i in range(n):
            for j in range(n):
                if values[i] != values[j]:
                    ok = False
    return ok


def naive_enumerate(k: int, n: int) -> List[int]:
    check_size("candidate tables", k ** (k ** n))
    found = []
    for index, table in enumerate(product(range(k), repeat=k ** n)):
        if naive_is_associative(table, k, n):
            found.append(index)
    return found


def _marmat_label(form) -> str:
    return form.kind.value


def enumerate_assoc_multilinear(
    p: int,
    n: int,
    threads: int = 1,
    oracle_stride: int = 0,
) -> Tuple[List[MultilinearPoly], EnumerationReport]:
    """Scan every multilinear polynomial over GF(p) in n variables.

    Each polynomial is checked symbolically and classified; the verdict
    fails if associativity and "has a form" ever disagree.  With
    ``oracle_stride = s > 0`` every s-th polynomial is also checked
    pointwise and a disagreement fails the verdict too.
    """
    start = time.perf_counter()
    total = p ** (2 ** n)
    check_size("candidate polynomials", total)
    check_size("composition terms", 2 ** (2 * n - 1))
    hits = set(_parallel_scan(kernels.scan_polys, p, n, total, _resolve_threads(threads)))
    assoc: List[MultilinearPoly] = []
    histogram: Counter = Counter()
    mismatches = []
    oracle_checked = 0
    for index in range(total):
        poly = poly_from_index(index, p, n)
        form = classify_marmat(poly)
        is_assoc = index in hits
        if is_assoc != bool(form):
            mismatches.append(index)
        if oracle_stride and index % oracle_stride == 0:
            oracle_checked += 1
            if pointwise_associative(poly) != is_assoc:
                mismatches.append(index)
        if is_assoc:
            assoc.append(poly)
            histogram[_marmat_label(form)] += 1
    report = EnumerationReport(
        {"prime": p, "n": n},
        scanned=total,
        associative=len(assoc),
        histogram=dict(sorted(histogram.items())),
        verdict=not mismatches,
    )
    report.details = {"oracle_checked": oracle_checked, "mismatches": mismatches[:20]}
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return assoc, report


def verify_two_element_theorem(n: int, threads: int = 1) -> EnumerationReport:
    """Enumerated associative set equals the eight canonical tables."""
    if n < 2:
        raise InputError("the theorem starts at n = 2")
    start = time.perf_counter()
    canon = {f.table for f in canonical_ops(n)}
    if n <= 4:
        ops, report = enumerate_assoc_ops(2, n, threads)
        found = {f.table for f in ops}
        report.verdict = found == canon
        report.details = {"expected": len(canon), "found": len(found)}
    else:
        # full scan is 2^(2^n) tables; check the families instead
        check_size("associativity tuples", 2 ** (2 * n - 1))
        ok = True
        hist = {}
        for form in [f for f in BoolForm if f is not BoolForm.NOT_ASSOCIATIVE]:
            f = canonical_op(form, n)
            good = is_associative(f) and classify_by_probes(f).form is form
            hist[form.value] = int(good)
            ok &= good
        report = EnumerationReport({"k": 2, "n": n, "mode": "families"}, scanned=8,
                                   associative=sum(hist.values()), histogram=hist, verdict=ok)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def boolean_catalog(max_arity: int) -> Dict[int, List[FiniteOp]]:
    """Associative Boolean ops by arity: enumerated up to 3, canonical families above."""
    catalog = {}
    for m in range(1, max_arity + 1):
        if m <= 3:
            catalog[m] = enumerate_assoc_ops(2, m)[0]
        else:
            catalog[m] = canonical_ops(m)
    return catalog


def brute_force_primitive_set(n: int, catalog: Dict[int, List[FiniteOp]]) -> List[FiniteOp]:
    ops = catalog[n]
    return [f for f in ops if is_primitive(f, catalog)[0]]


def _form_name(f: FiniteOp) -> str:
    # catalog entries are associative already; skip the full check
    return (classify_unary(f).form if f.n == 1 else canonical_form(f)).value


def _predicted_primitive(n: int) -> List[FiniteOp]:
    if n <= 2:
        return canonical_ops(n)
    return [canonical_op(BoolForm.SUMBAR, n)] if primitive_sumbar_arity(n) else []


def _symbolic_primitive_forms(n: int) -> List[BoolForm]:
    """Forms of arity n not reachable from any smaller arity, by family algebra."""
    out = []
    for form in (f for f in BoolForm if f is not BoolForm.NOT_ASSOCIATIVE):
        reachable = False
        for m in range(2, n):
            if (n - 1) % (m - 1):
                continue
            ell = (n - 1) // (m - 1)
            for base in (f for f in BoolForm if f is not BoolForm.NOT_ASSOCIATIVE):
                if derived_form(base, m, ell) is form:
                    reachable = True
        if not reachable:
            out.append(form)
    return out


def verify_proposition(max_n: int) -> EnumerationReport:
    """Primitive Boolean ops of each arity match the predicted sets.

    Up to ``FULL_TABLE_MAX_N`` the primitive set comes from table-level
    derivation search over the full catalog; above it from family algebra.
    Each arity also cross-checks ``primitive_boolean``.
    """
    if max_n < 1:
        raise InputError("max_n must be >= 1")
    start = time.perf_counter()
    table_n = min(max_n, FULL_TABLE_MAX_N)
    catalog = boolean_catalog(table_n)
    ok = True
    primitive_sumbar = []
    per_arity = {}
    for n in range(1, max_n + 1):
        if n <= table_n:
            found = brute_force_primitive_set(n, catalog)
            got = sorted(f.index for f in found)
            want = sorted(f.index for f in _predicted_primitive(n))
            agree = got == want
            if n >= 2:
                for f in catalog[n]:
                    agree &= primitive_boolean(f)[0] == (f.index in got)
            names = [_form_name(f) for f in found]
        else:
            forms = _symbolic_primitive_forms(n)
            want = [BoolForm.SUMBAR] if primitive_sumbar_arity(n) else []
            agree = forms == want
            names = [f.value for f in forms]
        if n >= 2 and ("sumbar" in names):
            primitive_sumbar.append(n)
        per_arity[str(n)] = names
        ok &= agree
    expected_sumbar = [n for n in range(2, max_n + 1) if primitive_sumbar_arity(n)]
    ok &= primitive_sumbar == expected_sumbar
    report = EnumerationReport({"max_n": max_n}, scanned=max_n,
                               associative=len(primitive_sumbar),
                               histogram={"primitive_sumbar": len(primitive_sumbar)},
                               verdict=ok)
    report.details = {"primitive_sumbar_arities": primitive_sumbar, "primitive_by_arity": per_arity}
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def verify_semigroup_count(k: int, n: int = 2, threads: int = 1) -> EnumerationReport:
    """Optimized scan versus the naive all-pairs oracle on k elements."""
    ops, report = enumerate_assoc_ops(k, n, threads)
    oracle = naive_enumerate(k, n)
    report.verdict = [f.index for f in ops] == oracle
    report.details = {"oracle_count": len(oracle)}
    return report


def verify_marmat(p: int, n: int, threads: int = 1, oracle_stride: int = 1) -> EnumerationReport:
    return enumerate_assoc_multilinear(p, n, threads, oracle_stride)[1]


def rectangular_band(rows: int, cols: int) -> FiniteOp:
    """Binary op on I x J, element (i, j) encoded as i*cols + j, with (i,j)(k,l) = (i,l)."""
    if rows < 1 or cols < 1:
        raise InputError("rows and cols must be >= 1")
    size = rows * cols
    table = []
    for x in range(size):
        for y in range(size):
            table.append((x // cols) * cols + y % cols)
    return FiniteOp(size, 2, tuple(table))


def idempotent_map_op(phi: Sequence[int], n: int) -> FiniteOp:
    """``(x_1, ..., x_n) -> phi(x_1)`` for an idempotent map phi."""
    k = len(phi)
    if k < 1 or any(not 0 <= v < k for v in phi):
        raise InputError("phi must map {0..k-1} into itself")
    if any(phi[phi[x]] != phi[x] for x in range(k)):
        raise InputError("phi is not idempotent")
    if n < 1:
        raise InputError("n must be >= 1")
    block = k ** (n - 1)
    return FiniteOp(k, n, tuple(phi[x] for x in range(k) for _ in range(block)))


def multilinear_tables(p: int, n: int) -> List[Tuple[int, ...]]:
    """Value tables of the associative multilinear polynomial functions."""
    polys, _ = enumerate_assoc_multilinear(p, n)
    return [to_finite_op(poly).table for poly in polys]
