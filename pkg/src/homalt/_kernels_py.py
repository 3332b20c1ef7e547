"""Pure-Python integer echelon kernels.

Vectors are lists of Python ints.  An echelon basis is a pair ``(rows, pivots)``
where every row is primitive, has a positive entry at its pivot and zeros at
the pivots of all other rows (a fully reduced, fraction-free echelon form).
The compiled twin in ``_kernels.pyx`` implements the same functions.
"""

from math import gcd

BACKEND = "python"


def echelon_reduce(rows, pivots, v):
    """Reduce ``v`` against the basis; returns a primitive (possibly zero) vector."""
    v = list(v)
    for row, p in zip(rows, pivots):
        f = v[p]
        if f:
            d = row[p]
            g = gcd(d, f)
            d //= g
            f //= g
            v = [d * a - f * b for a, b in zip(v, row)]
            g = gcd(*v)
            if g > 1:
                v = [a // g for a in v]
    return v


def echelon_insert(rows, pivots, w):
    """Append a reduced nonzero vector to the basis, keeping it fully reduced."""
    p = 0
    while not w[p]:
        p += 1
    if w[p] < 0:
        w = [-a for a in w]
    else:
        w = list(w)
    d = w[p]
    for r in range(len(rows)):
        row = rows[r]
        f = row[p]
        if f:
            g = gcd(d, f)
            a = d // g
            b = f // g
            new = [a * x - b * y for x, y in zip(row, w)]
            g = gcd(*new)
            if g > 1:
                new = [x // g for x in new]
            rows[r] = new
    rows.append(w)
    pivots.append(p)
    return p


def apply_sparse(columns, v):
    """Apply a column-sparse integer operator: ``columns[j]`` lists ``(i, value)``."""
    out = [0] * len(v)
    for j, x in enumerate(v):
        if x:
            for i, c in columns[j]:
                out[i] += c * x
    return out


def spin(ops, seeds, dim, max_passes=-1):
    """Span closure of ``seeds`` under the column-sparse operators ``ops``.

    Returns ``(rows, pivots, complete)``.  ``complete`` is false only when the
    pass budget ran out with new vectors still pending.
    """
    rows = []
    pivots = []
    frontier = []
    for s in seeds:
        r = echelon_reduce(rows, pivots, s)
        if any(r):
            echelon_insert(rows, pivots, r)
            frontier.append(list(s))
    passes = 0
    while frontier and len(rows) < dim:
        if max_passes >= 0 and passes >= max_passes:
            return rows, pivots, False
        passes += 1
        nxt = []
        for v in frontier:
            for op in ops:
                w = apply_sparse(op, v)
                r = echelon_reduce(rows, pivots, w)
                if any(r):
                    echelon_insert(rows, pivots, r)
                    # keep whichever representative is sparser for the next pass
                    nw = sum(1 for a in w if a)
                    nr = sum(1 for a in r if a)
                    nxt.append(w if nw < nr else r)
                    if len(rows) == dim:
                        return rows, pivots, True
        frontier = nxt
    return rows, pivots, True


def trace_pairing(x, y, n):
    """``trace(X @ Y)`` for two row-major flattened n x n integer matrices."""
    s = 0
    for i in range(n):
        base = i * n
        for j in range(n):
            a = x[base + j]
            if a:
                s += a * y[j * n + i]
    return s
