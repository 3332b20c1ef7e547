# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer echelon kernels; same contracts as ``_kernels_py``."""

from math import gcd

BACKEND = "cython"


cdef list _reduce(list rows, list pivots, list v):
    cdef Py_ssize_t r, c, p, n = len(v), nrows = len(rows)
    cdef list row
    cdef object d, f, g
    for r in range(nrows):
        p = pivots[r]
        f = v[p]
        if f:
            row = <list>rows[r]
            d = row[p]
            g = gcd(d, f)
            d = d // g
            f = f // g
            for c in range(n):
                if row[c]:
                    v[c] = d * v[c] - f * row[c]
                elif d != 1:
                    v[c] = d * v[c]
            g = gcd(*v)
            if g > 1:
                for c in range(n):
                    v[c] = v[c] // g
    return v


def echelon_reduce(list rows, list pivots, v):
    return _reduce(rows, pivots, list(v))


cdef Py_ssize_t _insert(list rows, list pivots, list w):
    cdef Py_ssize_t p = 0, r, c, n = len(w), nrows = len(rows)
    cdef list row
    cdef object d, f, g, a, b
    while not w[p]:
        p += 1
    if w[p] < 0:
        for c in range(n):
            w[c] = -w[c]
    d = w[p]
    for r in range(nrows):
        row = <list>rows[r]
        f = row[p]
        if f:
            g = gcd(d, f)
            a = d // g
            b = f // g
            for c in range(n):
                if w[c]:
                    row[c] = a * row[c] - b * w[c]
                elif a != 1:
                    row[c] = a * row[c]
            g = gcd(*row)
            if g > 1:
                for c in range(n):
                    row[c] = row[c] // g
    rows.append(w)
    pivots.append(p)
    return p


def echelon_insert(list rows, list pivots, w):
    # rows are mutated in place; callers must not share row lists elsewhere
    for r in range(len(rows)):
        rows[r] = list(rows[r])
    return _insert(rows, pivots, list(w))


cdef list _apply(list columns, list v):
    cdef Py_ssize_t j, n = len(v)
    cdef list out = [0] * n
    cdef list col
    cdef tuple ent
    cdef object x
    for j in range(n):
        x = v[j]
        if x:
            col = <list>columns[j]
            for ent in col:
                out[<Py_ssize_t>ent[0]] += ent[1] * x
    return out


def apply_sparse(list columns, v):
    return _apply(columns, list(v))


cdef Py_ssize_t _nnz(list v):
    cdef Py_ssize_t c, k = 0
    for c in range(len(v)):
        if v[c]:
            k += 1
    return k


def spin(list ops, seeds, Py_ssize_t dim, Py_ssize_t max_passes=-1):
    cdef list rows = [], pivots = [], frontier = [], nxt, w, r, v, op
    cdef Py_ssize_t passes = 0
    for s in seeds:
        r = _reduce(rows, pivots, list(s))
        if _nnz(r):
            _insert(rows, pivots, r)
            frontier.append(list(s))
    while frontier and len(rows) < dim:
        if max_passes >= 0 and passes >= max_passes:
            return rows, pivots, False
        passes += 1
        nxt = []
        for v in frontier:
            for op in ops:
                w = _apply(op, v)
                r = _reduce(rows, pivots, list(w))
                if _nnz(r):
                    _insert(rows, pivots, list(r))
                    nxt.append(w if _nnz(w) < _nnz(r) else r)
                    if len(rows) == dim:
                        return rows, pivots, True
        frontier = nxt
    return rows, pivots, True


def trace_pairing(list x, list y, Py_ssize_t n):
    cdef Py_ssize_t i, j, base
    cdef object s = 0, a
    for i in range(n):
        base = i * n
        for j in range(n):
            a = x[base + j]
            if a:
                s += a * y[j * n + i]
    return s
