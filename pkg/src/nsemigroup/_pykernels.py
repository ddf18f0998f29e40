"""Pure-Python hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or when ``NSEMIGROUP_PURE_PYTHON`` is set.

Conventions shared with the compiled module:

* A table on ``k`` elements of arity ``n`` is a flat sequence of ``k**n``
  values; the tuple ``(a_1, ..., a_n)`` sits at ``sum(a_i * k**(n-i))``.
* The *table index* of a whole table reads the cells as base-``k`` digits,
  cell 0 most significant, so sorting by index is lexicographic order.
* A dense multilinear polynomial over GF(p) in ``n`` variables is a list of
  ``2**n`` residues; entry ``m`` is the coefficient of the monomial whose
  variables are the set bits of ``m`` (bit ``j`` is variable ``j + 1``).
* The *polynomial index* reads entry ``m`` as the base-``p`` digit of weight
  ``p**m``.
"""
from itertools import product

BACKEND = "python"


def table_is_associative(table, k, n):
    if n <= 1:
        return True
    w = [k ** (n - 1 - j) for j in range(n)]
    rng = range(n)
    for t in product(range(k), repeat=2 * n - 1):
        prev = -1
        for i in rng:
            inner = table[sum(t[i + j] * w[j] for j in rng)]
            idx = inner * w[i]
            for j in range(i):
                idx += t[j] * w[j]
            for j in range(i + 1, n):
                idx += t[j + n - 1] * w[j]
            val = table[idx]
            if prev >= 0 and val != prev:
                return False
            prev = val
    return True


def scan_tables(k, n, start, stop):
    """Indices in ``[start, stop)`` whose tables are associative."""
    cells = k ** n
    table = []
    rem = start
    for _ in range(cells):
        table.append(rem % k)
        rem //= k
    table.reverse()
    found = []
    for index in range(start, stop):
        if table_is_associative(table, k, n):
            found.append(index)
        j = cells - 1
        while j >= 0:
            table[j] += 1
            if table[j] < k:
                break
            table[j] = 0
            j -= 1
    return found


def compose_dense(coeffs, p, n, i):
    """Coefficients of p(x_1..x_i, p(x_{i+1}..x_{i+n}), ...) in 2n-1 variables."""
    out = [0] * (1 << (2 * n - 1))
    bit = 1 << i
    low = bit - 1
    inner = [(m, c) for m, c in enumerate(coeffs) if c]
    for s, cs in enumerate(coeffs):
        if not cs:
            continue
        base = (s & low) | ((s >> (i + 1)) << (i + n))
        if s & bit:
            for m, c in inner:
                idx = base | (m << i)
                out[idx] = (out[idx] + cs * c) % p
        else:
            out[base] = (out[base] + cs) % p
    return out


def poly_is_associative(coeffs, p, n):
    if n <= 1:
        return True
    prev = compose_dense(coeffs, p, n, 0)
    for i in range(1, n):
        cur = compose_dense(coeffs, p, n, i)
        if cur != prev:
            return False
        prev = cur
    return True


def scan_polys(p, n, start, stop):
    """Indices in ``[start, stop)`` whose dense GF(p) polynomials are associative."""
    size = 1 << n
    coeffs = []
    rem = start
    for _ in range(size):
        coeffs.append(rem % p)
        rem //= p
    found = []
    for index in range(start, stop):
        if poly_is_associative(coeffs, p, n):
            found.append(index)
        j = 0
        while j < size:
            coeffs[j] += 1
            if coeffs[j] < p:
                break
            coeffs[j] = 0
            j += 1
    return found
