"""Exact linear algebra over the rationals.

Everything here is built on :class:`fractions.Fraction`.  Subspaces are kept in
canonical reduced row echelon form so that equality of subspaces is equality of
data.  Heavy elimination is delegated to the integer kernels in
:mod:`homalt.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import kernels
from .errors import DimensionError, MalformedRationalError, SingularMatrixError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise MalformedRationalError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise MalformedRationalError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise MalformedRationalError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def as_vector(v: Iterable, n: int | None = None) -> Vector:
    out = tuple(x if isinstance(x, Fraction) else Fraction(x) for x in v)
    if n is not None and len(out) != n:
        raise DimensionError(f"expected a vector of length {n}, got {len(out)}")
    return out


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def lin_comb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def to_int_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same span)."""
    den = 1
    for a in v:
        if a:
            den = lcm(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in v]
    g = gcd(*ints)
    if g > 1:
        ints = [a // g for a in ints]
    return ints


def _rows_to_rref(rows: list[list[int]], pivots: list[int]) -> tuple[Vector, ...]:
    order = sorted(range(len(rows)), key=pivots.__getitem__)
    out = []
    for r in order:
        row, d = rows[r], rows[r][pivots[r]]
        out.append(tuple(Fraction(a, d) if a else ZERO for a in row))
    return tuple(out)


# --------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored as its reduced row echelon basis.

    Build instances with :func:`canonicalize` (or the helpers below); the
    constructor trusts its input.
    """

    ambient_dim: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(b) if a) for b in self.basis)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def is_proper_nonzero(self) -> bool:
        return 0 < self.dim < self.ambient_dim

    def residue(self, v: Sequence) -> Vector:
        """``v`` minus its component along the pivot columns."""
        v = as_vector(v, self.ambient_dim)
        out = list(v)
        for b, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                for k, a in enumerate(b):
                    if a:
                        out[k] -= c * a
        return tuple(out)

    def contains_vector(self, v: Sequence) -> bool:
        return is_zero(self.residue(v))

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in :attr:`basis`; ``v`` must lie in the subspace."""
        v = as_vector(v, self.ambient_dim)
        if not self.contains_vector(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coordinates(self, c: Sequence) -> Vector:
        return lin_comb(c, self.basis, self.ambient_dim)

    def complement_indices(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains_vector(b) for b in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return canonicalize(self.basis + other.basis, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersection(self, other)

    def image(self, m: "Matrix") -> "Subspace":
        if m.cols != self.ambient_dim:
            raise DimensionError("matrix does not act on this ambient space")
        return canonicalize([m.apply(b) for b in self.basis], m.rows)

    def is_invariant(self, m: "Matrix") -> bool:
        return all(self.contains_vector(m.apply(b)) for b in self.basis)

    def restrict(self, m: "Matrix") -> "Matrix":
        """Matrix of an operator preserving the subspace, in basis coordinates."""
        cols = [self.coordinates(m.apply(b)) for b in self.basis]
        return Matrix.from_columns(cols, self.dim)

    def inclusion(self) -> "Matrix":
        return Matrix.from_columns(self.basis, self.ambient_dim)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )


def canonicalize(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    """Span of ``vectors`` in canonical reduced row echelon form."""
    rows: list[list[int]] = []
    pivots: list[int] = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionError(
                f"vector of length {len(v)} in ambient dimension {ambient_dim}"
            )
        r = kernels.echelon_reduce(rows, pivots, to_int_vector(v))
        if any(r):
            kernels.echelon_insert(rows, pivots, r)
            if len(rows) == ambient_dim:
                break
    return Subspace(ambient_dim, _rows_to_rref(rows, pivots))


def subspace_from_int_rows(rows: list[list[int]], pivots: list[int], n: int) -> Subspace:
    return Subspace(n, _rows_to_rref(rows, pivots))


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked relation system."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if not a.basis or not b.basis:
        return Subspace.zero(n)
    gens = list(a.basis) + [vec_scale(-1, v) for v in b.basis]
    relations = Matrix.from_columns(gens, n).kernel()
    r = a.dim
    return canonicalize([lin_comb(k[:r], a.basis, n) for k in relations.basis], n)


def subspace_ops(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace, bool]:
    """Return ``(a + b, a & b, b <= a)``."""
    _check_ambient(a, b)
    return a + b, intersection(a, b), a.contains(b)


# --------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        if not all(isinstance(x, Fraction) for x in self.entries):
            object.__setattr__(
                self, "entries", tuple(Fraction(x) for x in self.entries)
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        if any(len(c) != rows for c in columns):
            raise DimensionError("column length mismatch")
        k = len(columns)
        return cls(rows, k, tuple(columns[j][i] for i in range(rows) for j in range(k)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def scalar(cls, n: int, c) -> "Matrix":
        c = Fraction(c)
        return cls(n, n, tuple(c if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "Matrix":
        """Matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
        n = len(perm)
        e = [ZERO] * (n * n)
        for j, i in enumerate(perm):
            e[i * n + j] = ONE
        return cls(n, n, tuple(e))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.cols} columns")
        c = self.cols
        e = self.entries
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(
            sum((e[i * c + j] * x for j, x in nz), ZERO) for i in range(self.rows)
        )

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            cols = [self.apply(other.col(j)) for j in range(other.cols)]
            return Matrix.from_columns(cols, self.rows)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, vec_add(self.entries, other.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, vec_sub(self.entries, other.entries))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        c = Fraction(c)
        return Matrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shapes differ")

    def transpose(self) -> "Matrix":
        return Matrix.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.rows)

    def row_space(self) -> Subspace:
        return canonicalize([self.row(i) for i in range(self.rows)], self.cols)

    def rank(self) -> int:
        return self.row_space().dim

    def image(self) -> Subspace:
        return canonicalize([self.col(j) for j in range(self.cols)], self.rows)

    def kernel(self) -> Subspace:
        rs = self.row_space()
        piv = rs.pivots
        vecs = []
        for f in rs.complement_indices():
            v = [ZERO] * self.cols
            v[f] = ONE
            for b, p in zip(rs.basis, piv):
                v[p] = -b[f]
            vecs.append(v)
        return canonicalize(vecs, self.cols)

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for c in range(n):
            p = next((r for r in range(c, n) if aug[r][c]), None)
            if p is None:
                raise SingularMatrixError("matrix is singular")
            aug[c], aug[p] = aug[p], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for r in range(n):
                f = aug[r][c]
                if r != c and f:
                    pr = aug[c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], pr)]
        return Matrix.from_rows([row[n:] for row in aug], n)

    def det(self) -> Fraction:
        """Determinant by fraction-free (Bareiss) elimination on cleared rows."""
        if not self.is_square:
            raise DimensionError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return ONE
        den = 1
        for x in self.entries:
            den = lcm(den, x.denominator)
        a = [[int(x * den) for x in self.row(i)] for i in range(n)]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                p = next((r for r in range(k + 1, n) if a[r][k]), None)
                if p is None:
                    return ZERO
                a[k], a[p] = a[p], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return Fraction(sign * a[n - 1][n - 1], den ** n)

    def solve(self, rhs: Sequence) -> Vector | None:
        """One solution of ``self @ x = rhs`` (free variables zero), or None."""
        if len(rhs) != self.rows:
            raise DimensionError("right-hand side length mismatch")
        rows = [list(self.row(i)) + [Fraction(rhs[i])] for i in range(self.rows)]
        return _solve_augmented(rows, self.cols)


def _solve_augmented(rows: Iterable[Sequence], nvars: int) -> Vector | None:
    ir: list[list[int]] = []
    piv: list[int] = []
    for row in rows:
        r = kernels.echelon_reduce(ir, piv, to_int_vector(row))
        if any(r):
            p = kernels.echelon_insert(ir, piv, r)
            if p == nvars:
                return None
    x = [ZERO] * nvars
    for row, p in zip(ir, piv):
        x[p] = Fraction(row[nvars], row[p])
    return tuple(x)


def solve_system(rows: Iterable[Sequence], nvars: int) -> Vector | None:
    """Solve a system given as augmented rows ``[a_1..a_n | b]``.

    Rows are consumed lazily, so large sparse systems never need a dense matrix.
    """
    return _solve_augmented(rows, nvars)


# --------------------------------------------------------------------------
# Polynomials (coefficient lists, highest degree first)


def char_poly(m: Matrix) -> list[Fraction]:
    """Monic characteristic polynomial of ``m``, highest degree first.

    The matrix is brought to upper Hessenberg form by exact similarity
    elimination, then the determinant recurrence of the Hessenberg form is
    expanded.
    """
    if not m.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = m.rows
    h = m.to_rows()
    for j in range(n - 2):
        p = next((i for i in range(j + 1, n) if h[i][j]), None)
        if p is None:
            continue
        if p != j + 1:
            h[p], h[j + 1] = h[j + 1], h[p]
            for row in h:
                row[p], row[j + 1] = row[j + 1], row[p]
        piv = h[j + 1][j]
        for k in range(j + 2, n):
            t = h[k][j] / piv
            if t:
                hk, hj = h[k], h[j + 1]
                for c in range(n):
                    hk[c] -= t * hj[c]
                for row in h:
                    row[j + 1] += t * row[k]
    # polys stored lowest degree first during the recurrence
    polys = [[ONE]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [ZERO] + prev  # x * p_{k-1}
        hkk = h[k - 1][k - 1]
        for i, c in enumerate(prev):
            cur[i] -= hkk * c
        prod = ONE
        for i in range(k - 1, 0, -1):
            prod *= h[i][i - 1]
            if not prod:
                break
            t = h[i - 1][k - 1] * prod
            if t:
                for d, c in enumerate(polys[i - 1]):
                    cur[d] -= t * c
        polys.append(cur)
    return list(reversed(polys[n]))


def poly_eval(coeffs: Sequence, x) -> Fraction:
    acc = ZERO
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_divide_root(coeffs: Sequence, r) -> list[Fraction]:
    """Synthetic division by ``(x - r)``; the remainder must be zero."""
    out = []
    acc = ZERO
    for c in coeffs[:-1]:
        acc = acc * r + c
        out.append(acc)
    return out


def rational_roots(coeffs: Sequence) -> list[Fraction]:
    """Distinct rational roots of a polynomial (highest degree first), sorted."""
    cs = [Fraction(c) for c in coeffs]
    while cs and not cs[0]:
        cs = cs[1:]
    if len(cs) <= 1:
        return []
    roots: set[Fraction] = set()
    while len(cs) > 1 and not cs[-1]:
        roots.add(ZERO)
        cs = cs[:-1]
    if len(cs) > 1:
        ints = to_int_vector(cs)
        lead, const = abs(ints[0]), abs(ints[-1])
        # Cauchy bound on root magnitudes
        bound = 1 + Fraction(max(abs(c) for c in ints[1:]), lead)
        from sympy import divisors

        qs = divisors(lead)
        for p in divisors(const):
            for q in qs:
                if gcd(p, q) != 1 or Fraction(p, q) > bound:
                    continue
                for sp in (p, -p):
                    if _homogeneous_eval(ints, sp, q) == 0:
                        roots.add(Fraction(sp, q))
    return sorted(roots)


def _homogeneous_eval(ints: Sequence[int], p: int, q: int) -> int:
    """``q^d * f(p/q)`` in integer arithmetic."""
    acc = 0
    qpow = 1
    for c in ints:
        acc = acc * p + c * qpow
        qpow *= q
    return acc


def rank_sequence(m: Matrix, eigenvalue, length: int | None = None) -> list[int]:
    """``[rank((m - eigenvalue*I)^i) for i = 1..length]``."""
    n = m.rows
    length = n if length is None else length
    shifted = m - Matrix.scalar(n, eigenvalue)
    out = []
    power = Matrix.identity(n)
    for _ in range(length):
        power = power @ shifted
        out.append(power.rank())
    return out


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    deg = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        if not c:
            continue
        d = deg - i
        mag = abs(c)
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        if mono and mag == 1:
            body = mono
        else:
            body = str(mag) + mono
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, b in terms[1:]:
        out += f" {s} {b}"
    return out
