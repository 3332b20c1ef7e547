"""Algebra-building operations: twisting, untwisting, transport, sums, quotients."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import CheckResult, HomAlgebra, is_hom_ideal, is_morphism, default_labels
from .errors import NotAMorphismError, NotAnIdealError, NotIdempotentError, SingularMatrixError, DimensionError
from .exactlin import ZERO, Matrix, Subspace, canonicalize, zero_vector


@dataclass(frozen=True)
class TwistPair:
    """A Hom-algebra and its induced untwisted algebra, ``mu = alpha o mu'``."""

    original: HomAlgebra
    induced: HomAlgebra

    def is_consistent(self) -> bool:
        a = self.original
        return all(
            a.twist.apply(self.induced.product[i][j]) == a.product[i][j]
            for i in range(a.dim)
            for j in range(a.dim)
        )


def _compose_product(m: Matrix, alg: HomAlgebra) -> tuple:
    return tuple(tuple(m.apply(v) for v in row) for row in alg.product)


def yau_twist(alg: HomAlgebra, beta: Matrix) -> HomAlgebra:
    """``(A, beta o mu, beta o alpha)``; ``beta`` must be a morphism of ``alg``."""
    check = is_morphism(beta, alg, alg)
    if not check:
        raise NotAMorphismError("twisting map is not a morphism of the algebra", check.witness)
    return HomAlgebra(alg.dim, alg.labels, _compose_product(beta, alg), beta @ alg.twist, alg.name)


def untwist(alg: HomAlgebra) -> TwistPair:
    """Induced algebra ``(A, alpha^-1 o mu)`` with identity twist."""
    try:
        inv = alg.twist.inverse()
    except SingularMatrixError:
        raise SingularMatrixError("twist is singular; no induced algebra") from None
    induced = HomAlgebra(
        alg.dim, alg.labels, _compose_product(inv, alg), Matrix.identity(alg.dim), alg.name
    )
    return TwistPair(alg, induced)


def transport_product(induced_src: HomAlgebra, phi: Matrix) -> HomAlgebra:
    """``phi o mu o (phi^-1 x phi^-1)`` with twist ``phi alpha phi^-1``."""
    if (phi.rows, phi.cols) != (induced_src.dim, induced_src.dim):
        raise DimensionError("phi must be square of the algebra's dimension")
    inv = phi.inverse()
    n = induced_src.dim
    pre = [inv.col(j) for j in range(n)]
    prod = tuple(
        tuple(phi.apply(induced_src.mul(pre[i], pre[j])) for j in range(n)) for i in range(n)
    )
    twist = phi @ induced_src.twist @ inv
    return HomAlgebra(n, induced_src.labels, prod, twist, induced_src.name)


def _sum_labels(a: HomAlgebra, b: HomAlgebra) -> tuple:
    if set(a.labels).isdisjoint(b.labels):
        return a.labels + b.labels
    return tuple(f"{x}_1" for x in a.labels) + tuple(f"{x}_2" for x in b.labels)


def direct_sum(a: HomAlgebra, b: HomAlgebra) -> HomAlgebra:
    """Block direct sum; ``a`` occupies coordinates ``0 .. a.dim - 1``."""
    n, m = a.dim, b.dim
    N = n + m
    zero = zero_vector(N)
    prod = []
    for i in range(N):
        row = []
        for j in range(N):
            if i < n and j < n:
                row.append(a.product[i][j] + (ZERO,) * m)
            elif i >= n and j >= n:
                row.append((ZERO,) * n + b.product[i - n][j - n])
            else:
                row.append(zero)
        prod.append(tuple(row))
    rows = [list(a.twist.row(i)) + [ZERO] * m for i in range(n)]
    rows += [[ZERO] * n + list(b.twist.row(i)) for i in range(m)]
    twist = Matrix.from_rows(rows, N) if N else Matrix.zeros(0)
    name = f"{a.name}+{b.name}" if a.name and b.name else ""
    return HomAlgebra(N, _sum_labels(a, b), tuple(prod), twist, name)


def projection_matrix(ideal: Subspace) -> Matrix:
    """Coordinates modulo ``ideal`` on the non-pivot unit vectors."""
    n = ideal.ambient_dim
    keep = ideal.complement_indices()
    cols = []
    for j in range(n):
        e = [ZERO] * n
        e[j] = 1
        r = ideal.residue(e)
        cols.append(tuple(r[k] for k in keep))
    return Matrix.from_columns(cols, len(keep))


def quotient(alg: HomAlgebra, ideal: Subspace) -> tuple[HomAlgebra, Matrix]:
    """Quotient algebra on the non-pivot representatives, plus the projection."""
    check = is_hom_ideal(alg, ideal)
    if not check:
        raise NotAnIdealError("subspace is not a two-sided Hom-ideal", check.witness)
    keep = ideal.complement_indices()
    proj = projection_matrix(ideal)
    prod = tuple(
        tuple(proj.apply(alg.product[a][b]) for b in keep) for a in keep
    )
    twist_cols = [proj.apply(alg.twist_columns[a]) for a in keep]
    twist = Matrix.from_columns(twist_cols, len(keep)) if keep else Matrix.zeros(0)
    labels = tuple(alg.labels[a] for a in keep)
    q = HomAlgebra(len(keep), labels, prod, twist, f"{alg.name}/I" if alg.name else "")
    return q, proj


@dataclass(frozen=True)
class SplitResult:
    part_quotient: HomAlgebra
    part_kernel: HomAlgebra
    iso_witness: Matrix
    check: CheckResult
    kernel: Subspace
    image: Subspace

    @property
    def verified(self) -> bool:
        return self.check.ok and self.iso_witness.is_invertible()


def idempotent_split(alg: HomAlgebra) -> SplitResult:
    """Split an algebra with idempotent twist along ``A = Ker(alpha) + Im(alpha)``.

    The candidate isomorphism ``A -> (A/Ker) + Ker`` is
    ``x -> (class of alpha x, x - alpha x)``.  It is checked, not assumed:
    ``check`` records whether it is a morphism onto the direct sum.
    """
    a = alg.twist
    if a @ a != a:
        d = a @ a - a
        j = next(j for j in range(a.cols) if any(d.col(j)))
        from .algebra import Witness

        raise NotIdempotentError(
            "twist is not idempotent", Witness("idempotent", (j,), d.col(j))
        )
    ker = a.kernel()
    img = a.image()
    part_q, proj = quotient(alg, ker)
    part_k = alg.restrict(ker)
    n = alg.dim
    target = direct_sum(part_q, part_k)
    comp = Matrix.identity(n) - a
    cols = []
    for j in range(n):
        ax = alg.twist_columns[j]
        kx = comp.col(j)
        cols.append(proj.apply(ax) + ker.coordinates(kx))
    iso = Matrix.from_columns(cols, target.dim)
    check = is_morphism(iso, alg, target)
    return SplitResult(part_q, part_k, iso, check, ker, img)


def graph_subspace(phi: Matrix) -> Subspace:
    """Graph ``{(u, phi u)}`` of ``phi: A -> B`` inside ``A + B``."""
    n = phi.cols
    return canonicalize(
        [tuple(1 if k == j else 0 for k in range(n)) + phi.col(j) for j in range(n)],
        n + phi.rows,
    )


def relabel(alg: HomAlgebra, labels=None) -> HomAlgebra:
    labels = default_labels(alg.dim) if labels is None else tuple(labels)
    return HomAlgebra(alg.dim, labels, alg.product, alg.twist, alg.name)
