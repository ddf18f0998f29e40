# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the shared conventions."""
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcmp, memset

BACKEND = "cython"


cdef bint _assoc(const int* table, int k, int n, int* t, long long* w) noexcept nogil:
    cdef int m = 2 * n - 1
    cdef int i, j, val, prev
    cdef long long idx, inner
    if n <= 1:
        return True
    memset(t, 0, m * sizeof(int))
    while True:
        prev = -1
        for i in range(n):
            inner = 0
            for j in range(n):
                inner += t[i + j] * w[j]
            idx = table[inner] * w[i]
            for j in range(i):
                idx += t[j] * w[j]
            for j in range(i + 1, n):
                idx += t[j + n - 1] * w[j]
            val = table[idx]
            if prev >= 0 and val != prev:
                return False
            prev = val
        j = m - 1
        while j >= 0:
            t[j] += 1
            if t[j] < k:
                break
            t[j] = 0
            j -= 1
        if j < 0:
            return True


cdef long long* _weights(int k, int n):
    cdef long long* w = <long long*> malloc(n * sizeof(long long))
    cdef int j
    w[n - 1] = 1
    for j in range(n - 2, -1, -1):
        w[j] = w[j + 1] * k
    return w


def table_is_associative(table, int k, int n):
    if n <= 1:
        return True
    cdef long long cells = len(table)
    cdef int* tab = <int*> malloc(cells * sizeof(int))
    cdef int* t = <int*> malloc((2 * n - 1) * sizeof(int))
    cdef long long* w = _weights(k, n)
    cdef long long c
    cdef bint result
    try:
        for c in range(cells):
            tab[c] = table[c]
        with nogil:
            result = _assoc(tab, k, n, t, w)
        return bool(result)
    finally:
        free(tab)
        free(t)
        free(w)


def scan_tables(int k, int n, long long start, long long stop):
    cdef long long cells = 1
    cdef int j
    for j in range(n):
        cells *= k
    cdef int* tab = <int*> malloc(cells * sizeof(int))
    cdef int* t = <int*> malloc((2 * n - 1) * sizeof(int))
    cdef long long* w = _weights(k, n)
    cdef long long index, rem, c
    cdef bint hit
    found = []
    try:
        rem = start
        for c in range(cells - 1, -1, -1):
            tab[c] = rem % k
            rem //= k
        index = start
        while index < stop:
            with nogil:
                while index < stop:
                    hit = _assoc(tab, k, n, t, w)
                    index += 1
                    c = cells - 1
                    while c >= 0:
                        tab[c] += 1
                        if tab[c] < k:
                            break
                        tab[c] = 0
                        c -= 1
                    if hit:
                        break
            if hit:
                found.append(index - 1)
        return found
    finally:
        free(tab)
        free(t)
        free(w)


cdef void _compose(const long long* coeffs, int p, int n, int i, long long* out) noexcept nogil:
    cdef long long size = 1LL << n
    cdef long long outsize = 1LL << (2 * n - 1)
    cdef long long bit = 1LL << i
    cdef long long low = bit - 1
    cdef long long s, m, base, idx
    memset(out, 0, outsize * sizeof(long long))
    for s in range(size):
        if coeffs[s] == 0:
            continue
        base = (s & low) | ((s >> (i + 1)) << (i + n))
        if s & bit:
            for m in range(size):
                if coeffs[m] == 0:
                    continue
                idx = base | (m << i)
                out[idx] = (out[idx] + coeffs[s] * coeffs[m]) % p
        else:
            out[base] = (out[base] + coeffs[s]) % p


cdef bint _poly_assoc(const long long* coeffs, int p, int n, long long* a, long long* b) noexcept nogil:
    cdef long long outsize = 1LL << (2 * n - 1)
    cdef int i
    cdef long long* prev = a
    cdef long long* cur = b
    cdef long long* tmp
    if n <= 1:
        return True
    _compose(coeffs, p, n, 0, prev)
    for i in range(1, n):
        _compose(coeffs, p, n, i, cur)
        if memcmp(prev, cur, outsize * sizeof(long long)) != 0:
            return False
        tmp = prev
        prev = cur
        cur = tmp
    return True


def poly_is_associative(coeffs, int p, int n):
    if n <= 1:
        return True
    cdef long long size = 1LL << n
    cdef long long outsize = 1LL << (2 * n - 1)
    cdef long long* c = <long long*> malloc(size * sizeof(long long))
    cdef long long* a = <long long*> malloc(outsize * sizeof(long long))
    cdef long long* b = <long long*> malloc(outsize * sizeof(long long))
    cdef long long s
    cdef bint result
    try:
        for s in range(size):
            c[s] = coeffs[s] % p
        with nogil:
            result = _poly_assoc(c, p, n, a, b)
        return bool(result)
    finally:
        free(c)
        free(a)
        free(b)


def scan_polys(int p, int n, start, stop):
    cdef long long size = 1LL << n
    cdef long long outsize = 1LL << (2 * n - 1)
    cdef long long* c = <long long*> calloc(size, sizeof(long long))
    cdef long long* a = <long long*> malloc(outsize * sizeof(long long))
    cdef long long* b = <long long*> malloc(outsize * sizeof(long long))
    cdef long long s, index, lo, hi
    cdef bint hit
    found = []
    try:
        rem = start
        for s in range(size):
            c[s] = rem % p
            rem //= p
        lo = start
        hi = stop
        index = lo
        while index < hi:
            with nogil:
                while index < hi:
                    hit = _poly_assoc(c, p, n, a, b)
                    index += 1
                    s = 0
                    while s < size:
                        c[s] += 1
                        if c[s] < p:
                            break
                        c[s] = 0
                        s += 1
                    if hit:
                        break
            if hit:
                found.append(index - 1)
        return found
    finally:
        free(c)
        free(a)
        free(b)
