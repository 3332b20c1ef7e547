"""Hom-algebras given by structure constants and a twisting map.

A :class:`HomAlgebra` on basis ``b_0 .. b_{n-1}`` stores ``product[i][j]``, the
coordinate vector of ``mu(b_i, b_j)``, together with the twist ``alpha`` as a
matrix acting on column vectors.  All identity checks run over basis tuples and
record the first failing tuple together with its (nonzero) defect vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionError
from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Vector,
    as_vector,
    canonicalize,
    is_zero,
    solve_system,
    unit_vector,
    vec_add,
    vec_sub,
    zero_vector,
)


@dataclass(frozen=True)
class Witness:
    """A failing basis tuple and the nonzero vector it produces.

    ``kind`` names the identity or condition, ``indices`` the basis indices in
    argument order.
    """

    kind: str
    indices: tuple
    defect: Vector

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "defect": [str(x) for x in self.defect],
        }


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        d = {"ok": self.ok}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


PASS = CheckResult(True)


@dataclass(frozen=True)
class HomAlgebra:
    dim: int
    labels: tuple
    product: tuple
    twist: Matrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.dim
        labels = tuple(self.labels)
        if len(labels) != n:
            raise DimensionError(f"{len(labels)} labels for dimension {n}")
        if len(set(labels)) != n:
            raise ValueError("basis labels must be distinct")
        object.__setattr__(self, "labels", labels)
        if len(self.product) != n or any(len(row) != n for row in self.product):
            raise DimensionError("product tensor must have shape n x n x n")
        prod = tuple(tuple(as_vector(v, n) for v in row) for row in self.product)
        object.__setattr__(self, "product", prod)
        if (self.twist.rows, self.twist.cols) != (n, n):
            raise DimensionError("twist must be an n x n matrix")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_entries(
        cls,
        dim: int,
        entries: Iterable[tuple],
        twist: Matrix | None = None,
        labels: Sequence[str] | None = None,
        name: str = "",
    ) -> "HomAlgebra":
        """Build from sparse ``(i, j, k, c)`` entries; absent products are zero.

        Repeated ``(i, j, k)`` keys must agree.
        """
        table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        seen = {}
        for i, j, k, c in entries:
            c = Fraction(c)
            key = (i, j, k)
            if key in seen and seen[key] != c:
                raise ValueError(f"conflicting coefficients for product entry {key}")
            seen[key] = c
            table[i][j][k] = c
        if twist is None:
            twist = Matrix.identity(dim)
        if labels is None:
            labels = default_labels(dim)
        return cls(dim, tuple(labels), tuple(tuple(tuple(v) for v in row) for row in table), twist, name)

    def with_name(self, name: str) -> "HomAlgebra":
        return HomAlgebra(self.dim, self.labels, self.product, self.twist, name)

    def entries(self) -> list[tuple[int, int, int, Fraction]]:
        """Nonzero structure constants as sorted ``(i, j, k, c)``."""
        return [
            (i, j, k, c)
            for i in range(self.dim)
            for j in range(self.dim)
            for k, c in enumerate(self.product[i][j])
            if c
        ]

    # -- cached operator data ------------------------------------------------

    @cached_property
    def _sparse(self) -> tuple:
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(v) if c) for v in row)
            for row in self.product
        )

    @cached_property
    def twist_columns(self) -> tuple:
        return tuple(self.twist.col(j) for j in range(self.dim))

    def left_operator(self, i: int) -> Matrix:
        """Matrix of ``x -> mu(b_i, x)``."""
        return Matrix.from_columns(self.product[i], self.dim)

    def right_operator(self, i: int) -> Matrix:
        """Matrix of ``x -> mu(x, b_i)``."""
        return Matrix.from_columns([self.product[j][i] for j in range(self.dim)], self.dim)

    @cached_property
    def operators(self) -> tuple:
        """``(alpha, L_0..L_{n-1}, R_0..R_{n-1})``; the ideal-defining operator set."""
        n = self.dim
        return (self.twist,) + tuple(self.left_operator(i) for i in range(n)) + tuple(
            self.right_operator(i) for i in range(n)
        )

    @cached_property
    def operator_set(self):
        from .spinning import OperatorSet

        return OperatorSet(self.operators, self.dim)

    # -- arithmetic ----------------------------------------------------------

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionError(f"elements must have length {n}")
        out = [ZERO] * n
        sp = self._sparse
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = sp[i]
            for j, b in ynz:
                t = a * b
                for k, c in row[j]:
                    out[k] += t * c
        return tuple(out)

    def alpha(self, x: Sequence) -> Vector:
        return self.twist.apply(x)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def restrict(self, sub: Subspace) -> "HomAlgebra":
        """The Hom-subalgebra carried by ``sub``, in the coordinates of its basis."""
        if sub.ambient_dim != self.dim:
            raise DimensionError("subspace does not live in this algebra")
        b = sub.basis
        prod = tuple(
            tuple(sub.coordinates(self.mul(u, v)) for v in b) for u in b
        )
        twist = sub.restrict(self.twist)
        labels = []
        for v in b:
            p = next(i for i, a in enumerate(v) if a)
            labels.append(self.labels[p])
        return HomAlgebra(sub.dim, tuple(labels), prod, twist, self.name)


def default_labels(n: int, prefix: str = "e", start: int = 0) -> tuple:
    return tuple(f"{prefix}{i + start}" for i in range(n))


def zero_algebra() -> HomAlgebra:
    return HomAlgebra(0, (), (), Matrix.zeros(0))


def _conform(alg: HomAlgebra, *xs: Sequence) -> list[Vector]:
    return [as_vector(x, alg.dim) for x in xs]


def mul(alg: HomAlgebra, x: Sequence, y: Sequence) -> Vector:
    x, y = _conform(alg, x, y)
    return alg.mul(x, y)


def hom_associator(alg: HomAlgebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """``mu(mu(x, y), alpha z) - mu(alpha x, mu(y, z))``."""
    x, y, z = _conform(alg, x, y, z)
    return vec_sub(alg.mul(alg.mul(x, y), alg.alpha(z)), alg.mul(alg.alpha(x), alg.mul(y, z)))


def associator_table(alg: HomAlgebra) -> list:
    """``table[i][j][k] = as(b_i, b_j, b_k)`` over all basis triples."""
    n = alg.dim
    prod = alg.product
    tw = alg.twist_columns
    left = [[alg.mul(prod[i][j], tw[k]) for k in range(n)] for i in range(n) for j in range(n)]
    right = [[alg.mul(tw[i], prod[j][k]) for k in range(n)] for i in range(n) for j in range(n)]
    return [
        [[vec_sub(left[i * n + j][k], right[i * n + j][k]) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]


@dataclass(frozen=True)
class IdentityReport:
    multiplicative: bool
    left_alternative: bool
    right_alternative: bool
    hom_associative: bool
    witnesses: dict

    FLAGS = ("multiplicative", "left_alternative", "right_alternative", "hom_associative")

    @property
    def hom_alternative(self) -> bool:
        return self.multiplicative and self.left_alternative and self.right_alternative

    def flags(self) -> dict:
        return {f: getattr(self, f) for f in self.FLAGS}

    def to_dict(self) -> dict:
        return {
            "flags": self.flags(),
            "witnesses": {k: w.to_dict() for k, w in self.witnesses.items()},
        }


def multiplicativity_defect(alg: HomAlgebra, i: int, j: int) -> Vector:
    tw = alg.twist_columns
    return vec_sub(alg.alpha(alg.product[i][j]), alg.mul(tw[i], tw[j]))


def check_identities(alg: HomAlgebra) -> IdentityReport:
    """Check multiplicativity, both Hom-alternativity laws and Hom-associativity.

    Alternativity is tested in polarized form over all basis triples, which is
    equivalent to the quadratic laws in characteristic 0.  All four checks
    always run.
    """
    n = alg.dim
    witnesses: dict = {}

    mult = None
    for i in range(n):
        for j in range(n):
            d = multiplicativity_defect(alg, i, j)
            if not is_zero(d):
                mult = Witness("multiplicative", (i, j), d)
                break
        if mult:
            break
    if mult:
        witnesses["multiplicative"] = mult

    table = associator_table(alg)
    left = right = assoc = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a = table[i][j][k]
                if assoc is None and not is_zero(a):
                    assoc = Witness("hom_associative", (i, j, k), a)
                if left is None:
                    d = vec_add(a, table[j][i][k])
                    if not is_zero(d):
                        left = Witness("left_alternative", (i, j, k), d)
                if right is None:
                    d = vec_add(a, table[i][k][j])
                    if not is_zero(d):
                        right = Witness("right_alternative", (i, j, k), d)
    for key, w in (("left_alternative", left), ("right_alternative", right), ("hom_associative", assoc)):
        if w is not None:
            witnesses[key] = w
    return IdentityReport(mult is None, left is None, right is None, assoc is None, witnesses)


def recheck_witness(alg: HomAlgebra, w: Witness) -> Vector:
    """Re-evaluate an identity witness from scratch on basis vectors."""
    e = alg.basis_vector
    if w.kind == "multiplicative":
        i, j = w.indices
        return vec_sub(alg.alpha(alg.mul(e(i), e(j))), alg.mul(alg.alpha(e(i)), alg.alpha(e(j))))
    i, j, k = w.indices
    a = hom_associator(alg, e(i), e(j), e(k))
    if w.kind == "hom_associative":
        return a
    if w.kind == "left_alternative":
        return vec_add(a, hom_associator(alg, e(j), e(i), e(k)))
    if w.kind == "right_alternative":
        return vec_add(a, hom_associator(alg, e(i), e(k), e(j)))
    raise ValueError(f"unknown witness kind {w.kind!r}")


def is_morphism(f: Matrix, src: HomAlgebra, dst: HomAlgebra) -> CheckResult:
    """Whether ``f`` intertwines the products and the twists.

    Witness kinds: ``"product"`` with a basis pair of ``src``, ``"twist"`` with a
    basis index of ``src``.
    """
    if (f.rows, f.cols) != (dst.dim, src.dim):
        raise DimensionError(
            f"morphism must be {dst.dim}x{src.dim}, got {f.rows}x{f.cols}"
        )
    images = [f.col(j) for j in range(src.dim)]
    for i in range(src.dim):
        for j in range(src.dim):
            d = vec_sub(f.apply(src.product[i][j]), dst.mul(images[i], images[j]))
            if not is_zero(d):
                return CheckResult(False, Witness("product", (i, j), d))
    for j in range(src.dim):
        d = vec_sub(f.apply(src.twist_columns[j]), dst.alpha(images[j]))
        if not is_zero(d):
            return CheckResult(False, Witness("twist", (j,), d))
    return PASS


def is_hom_ideal(alg: HomAlgebra, h: Subspace) -> CheckResult:
    """Whether ``h`` is a two-sided Hom-ideal.

    On failure the witness holds the offending vector: kind ``"twist"`` with
    ``(p,)``, kind ``"h*a"`` for ``mu(h_p, b_i)`` with ``(p, i)``, or ``"a*h"``
    for ``mu(b_i, h_p)`` with ``(i, p)``; ``h_p`` is the p-th canonical basis
    vector of ``h``.
    """
    if h.ambient_dim != alg.dim:
        raise DimensionError("subspace ambient dimension differs from the algebra")
    for p, v in enumerate(h.basis):
        w = alg.alpha(v)
        if not h.contains_vector(w):
            return CheckResult(False, Witness("twist", (p,), w))
    for i in range(alg.dim):
        e = alg.basis_vector(i)
        for p, v in enumerate(h.basis):
            w = alg.mul(v, e)
            if not h.contains_vector(w):
                return CheckResult(False, Witness("h*a", (p, i), w))
            w = alg.mul(e, v)
            if not h.contains_vector(w):
                return CheckResult(False, Witness("a*h", (i, p), w))
    return PASS


def is_hom_subalgebra(alg: HomAlgebra, h: Subspace) -> CheckResult:
    """Closure of ``h`` under the product and the twist (witness as above)."""
    if h.ambient_dim != alg.dim:
        raise DimensionError("subspace ambient dimension differs from the algebra")
    for p, v in enumerate(h.basis):
        w = alg.alpha(v)
        if not h.contains_vector(w):
            return CheckResult(False, Witness("twist", (p,), w))
    for p, u in enumerate(h.basis):
        for q, v in enumerate(h.basis):
            w = alg.mul(u, v)
            if not h.contains_vector(w):
                return CheckResult(False, Witness("h*h", (p, q), w))
    return PASS


def derived_product_space(alg: HomAlgebra, space: Subspace) -> Subspace:
    """``span{mu(u, v) : u, v in basis(space)}``."""
    b = space.basis
    return canonicalize((alg.mul(u, v) for u in b for v in b), alg.dim)


def zero_element(alg: HomAlgebra) -> Vector:
    return zero_vector(alg.dim)


def two_sided_unit(alg: HomAlgebra) -> Vector | None:
    """The element u with ``mu(u, x) = mu(x, u) = x`` for all x, if one exists."""
    n = alg.dim

    def rows():
        for j in range(n):
            for k in range(n):
                target = ONE if j == k else ZERO
                yield [alg.product[i][j][k] for i in range(n)] + [target]
                yield [alg.product[j][i][k] for i in range(n)] + [target]

    return solve_system(rows(), n)
