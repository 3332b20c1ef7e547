"""Invariant subspaces of a finite set of operators.

This is the engine behind ideal closure, simplicity, semisimplicity and
bimodule irreducibility: an :class:`OperatorSet` acting on ``Q^m`` is spun,
its unital associative envelope is closed, and a three-valued verdict on the
existence of proper invariant subspaces is produced.

* YES certificates: the envelope is all of ``M_m(Q)`` (Burnside).
* NO certificates: a candidate vector spins to a proper nonzero subspace.
* Complements of invariant subspaces are searched by spinning and, failing
  that, by solving exactly for an operator-commuting projection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import kernels
from .exactlin import (
    ZERO,
    Matrix,
    Subspace,
    canonicalize,
    char_poly,
    intersection,
    rational_roots,
    solve_system,
    subspace_from_int_rows,
    to_int_vector,
    unit_vector,
)


class Status(str, Enum):
    CERTIFIED_YES = "CERTIFIED_YES"
    CERTIFIED_NO = "CERTIFIED_NO"
    UNDECIDED = "UNDECIDED"

    def __str__(self) -> str:
        return self.value


YES = Status.CERTIFIED_YES
NO = Status.CERTIFIED_NO
UNDECIDED = Status.UNDECIDED


def _int_columns(m: Matrix) -> list[list[tuple[int, int]]]:
    den = 1
    for x in m.entries:
        if x:
            den = lcm(den, x.denominator)
    cols = []
    for j in range(m.cols):
        cols.append([(i, int(x * den)) for i, x in enumerate(m.col(j)) if x])
    return cols


def _left_mult_columns(g: Matrix) -> list[list[tuple[int, int]]]:
    """Column-sparse integer operator ``X -> G X`` on row-major n x n matrices."""
    n = g.rows
    gcols = _int_columns(g)
    return [[(i * n + c, v) for i, v in gcols[j]] for j in range(n) for c in range(n)]


def _flat_to_matrix(v: Sequence, n: int) -> Matrix:
    return Matrix(n, n, tuple(Fraction(x) for x in v))


@dataclass(frozen=True)
class EnvelopeAlgebra:
    """Unital associative algebra generated by a set of n x n matrices."""

    n: int
    basis: tuple
    generators: tuple
    complete: bool
    int_basis: tuple = field(default=(), compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.n * self.n

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def span(self) -> Subspace:
        return canonicalize([b.entries for b in self.basis], self.ambient_dim)

    def contains(self, m: Matrix) -> bool:
        return self.span().contains_vector(m.entries)

    def element(self, coeffs: Sequence) -> Matrix:
        n = self.n
        acc = [ZERO] * (n * n)
        for c, b in zip(coeffs, self.basis):
            if c:
                for k, x in enumerate(b.entries):
                    if x:
                        acc[k] += c * x
        return Matrix(n, n, tuple(acc))

    def random_element(self, rng: random.Random, spread: int = 3) -> Matrix:
        return self.element([Fraction(rng.randint(-spread, spread)) for _ in self.basis])

    def radical(self) -> list[Matrix]:
        """Basis of the radical: the kernel of the trace form ``tr(XY)``."""
        vecs = self.int_basis or tuple(to_int_vector(b.entries) for b in self.basis)
        d = len(vecs)
        n = self.n
        gram = [[0] * d for _ in range(d)]
        for a in range(d):
            for b in range(a, d):
                t = kernels.trace_pairing(list(vecs[a]), list(vecs[b]), n)
                gram[a][b] = gram[b][a] = t
        null = Matrix.from_rows(gram, d).kernel() if d else Subspace.zero(0)
        out = []
        for c in null.basis:
            acc = [0] * (n * n)
            for coef, v in zip(c, vecs):
                if coef:
                    for k, x in enumerate(v):
                        if x:
                            acc[k] += coef * x
            out.append(Matrix(n, n, tuple(Fraction(x) for x in acc)))
        return out


class OperatorSet:
    """A finite family of linear operators on ``Q^dim``.

    The first operator plays the role of the twist (its kernel is tried as a
    candidate source of invariant subspaces).
    """

    def __init__(self, ops: Sequence[Matrix], dim: int):
        self.ops = tuple(ops)
        self.dim = dim
        for m in self.ops:
            if (m.rows, m.cols) != (dim, dim):
                raise ValueError("operator shape does not match the space")
        self._cols = [_int_columns(m) for m in self.ops]
        self._envelope: EnvelopeAlgebra | None = None

    def spin(self, seeds: Iterable[Sequence]) -> Subspace:
        int_seeds = []
        for s in seeds:
            if len(s) != self.dim:
                raise ValueError("seed vector has the wrong length")
            int_seeds.append(to_int_vector(s))
        rows, pivots, _ = kernels.spin(self._cols, int_seeds, self.dim, -1)
        return subspace_from_int_rows(rows, pivots, self.dim)

    def spin_subspace(self, seed: Subspace) -> Subspace:
        return self.spin(seed.basis)

    def is_invariant(self, sub: Subspace) -> bool:
        return all(sub.is_invariant(m) for m in self.ops)

    def restrict(self, sub: Subspace) -> "OperatorSet":
        return OperatorSet([sub.restrict(m) for m in self.ops], sub.dim)

    def envelope(self, max_passes: int = -1) -> EnvelopeAlgebra:
        if max_passes < 0 and self._envelope is not None:
            return self._envelope
        n = self.dim
        gens = (Matrix.identity(n),) + self.ops
        if n == 0:
            env = EnvelopeAlgebra(0, (), gens, True)
        else:
            opcols = [_left_mult_columns(g) for g in self.ops]
            ident = to_int_vector(Matrix.identity(n).entries)
            rows, pivots, complete = kernels.spin(opcols, [ident], n * n, max_passes)
            order = sorted(range(len(rows)), key=pivots.__getitem__)
            int_basis = tuple(tuple(rows[r]) for r in order)
            basis = tuple(
                _flat_to_matrix(v, n) for v in subspace_from_int_rows(rows, pivots, n * n).basis
            )
            env = EnvelopeAlgebra(n, basis, gens, complete, int_basis)
        if max_passes < 0:
            self._envelope = env
        return env


# --------------------------------------------------------------------------
# candidate catalog


def eigenvectors(m: Matrix) -> list[tuple]:
    """Basis vectors of every rational eigenspace of ``m``."""
    out = []
    for lam in rational_roots(char_poly(m)):
        out.extend((m - Matrix.scalar(m.rows, lam)).kernel().basis)
    return out


def radical_image(ops: OperatorSet) -> Subspace:
    """``rad(E) . V``: an invariant subspace, proper and nonzero iff rad(E) != 0."""
    env = ops.envelope()
    vecs = []
    for r in env.radical():
        vecs.extend(r.col(j) for j in range(ops.dim))
    return canonicalize(vecs, ops.dim)


@dataclass(frozen=True)
class StructureVerdict:
    status: Status
    witness: Subspace | None = None
    note: str = ""
    envelope_dim: int | None = None
    components: tuple = ()
    component_status: tuple = ()
    completely_reducible: Status | None = None
    preconditions: tuple = ()

    def to_dict(self) -> dict:
        d = {"status": self.status.value, "note": self.note}
        if self.witness is not None:
            d["witness"] = subspace_to_dict(self.witness)
        if self.envelope_dim is not None:
            d["envelope_dim"] = self.envelope_dim
        if self.components:
            d["components"] = [subspace_to_dict(c) for c in self.components]
            d["component_status"] = [s.value for s in self.component_status]
        if self.completely_reducible is not None:
            d["completely_reducible"] = self.completely_reducible.value
        if self.preconditions:
            d["preconditions"] = list(self.preconditions)
        return d


def subspace_to_dict(s: Subspace) -> dict:
    return {"dim": s.dim, "basis": [[str(x) for x in b] for b in s.basis]}


def _search(ops: OperatorSet, candidates: Iterable[Sequence]) -> Subspace | None:
    seen = set()
    for v in candidates:
        if not any(v):
            continue
        key = tuple(to_int_vector(v))
        if next(x for x in key if x) < 0:
            key = tuple(-x for x in key)
        if key in seen:
            continue
        seen.add(key)
        s = ops.spin([v])
        if s.is_proper_nonzero():
            return s
    return None


def _catalog(ops: OperatorSet, rng: random.Random, budget: int):
    """Eigenvector candidates: generators first, then random envelope elements."""
    for m in ops.ops:
        yield from eigenvectors(m)
    env = ops.envelope()
    for _ in range(max(budget, 0)):
        yield from eigenvectors(env.random_element(rng))


def irreducibility(
    ops: OperatorSet,
    rng: random.Random,
    budget: int = 8,
    first: Subspace | None = None,
) -> StructureVerdict:
    """Three-valued verdict on whether ``ops`` admits no proper invariant subspace.

    ``first``, when given, is an invariant subspace to report if proper and
    nonzero before any search.
    """
    m = ops.dim
    if m == 0:
        return StructureVerdict(YES, note="zero-dimensional space: irreducible by convention", envelope_dim=0)
    if first is not None and first.is_proper_nonzero():
        return StructureVerdict(NO, first)
    units = [unit_vector(m, i) for i in range(m)]
    kernel = list(ops.ops[0].kernel().basis) if ops.ops else []
    w = _search(ops, units + kernel)
    if w is not None:
        return StructureVerdict(NO, w, "a basis or kernel vector spins to a proper subspace")
    env = ops.envelope()
    if env.is_full:
        return StructureVerdict(
            YES, note=f"envelope is the full matrix algebra (dim {env.dim} = {m}^2)", envelope_dim=env.dim
        )
    w = _search(ops, _catalog(ops, rng, budget))
    if w is not None:
        return StructureVerdict(NO, w, "a rational eigenvector spins to a proper subspace", env.dim)
    rad = radical_image(ops)
    if rad.is_proper_nonzero():
        return StructureVerdict(NO, rad, "nonzero envelope radical: rad(E).V is invariant", env.dim)
    return StructureVerdict(
        UNDECIDED, note=f"envelope dim {env.dim} < {m * m} and no candidate split", envelope_dim=env.dim
    )


def projector_complement(ops: OperatorSet, w: Subspace) -> Subspace | None:
    """Exact search for an invariant complement of ``w``.

    Solves for ``Q: V -> W`` with ``Q G = G|_W Q`` for every operator and
    ``Q|_W = id``.  Its kernel is an invariant complement; inconsistency
    proves that no invariant complement exists.
    """
    k, d = ops.dim, w.dim
    nv = d * k
    incl = w.inclusion()
    restricted = [w.restrict(g) for g in ops.ops]

    def rows():
        for r in range(d):
            for s in range(d):
                row = [ZERO] * (nv + 1)
                for t in range(k):
                    row[r * k + t] = incl[t, s]
                row[nv] = Fraction(1 if r == s else 0)
                yield row
        for g, gw in zip(ops.ops, restricted):
            for r in range(d):
                for c in range(k):
                    row = [ZERO] * (nv + 1)
                    for t in range(k):
                        x = g[t, c]
                        if x:
                            row[r * k + t] += x
                    for s in range(d):
                        x = gw[r, s]
                        if x:
                            row[s * k + c] -= x
                    if any(row):
                        yield row

    sol = solve_system(rows(), nv)
    if sol is None:
        return None
    q = Matrix(d, k, sol)
    return q.kernel()


def find_complement(
    ops: OperatorSet, w: Subspace, rng: random.Random, budget: int
) -> Subspace | None:
    """Invariant complement of the invariant subspace ``w``, or None if none exists.

    Cheap spins of unit vectors and generator eigenvectors are tried first;
    the exact projector system settles the rest.
    """
    m = ops.dim
    acc = Subspace.zero(m)

    def cands():
        yield from (unit_vector(m, i) for i in range(m))
        for g in ops.ops:
            yield from eigenvectors(g)

    for v in cands():
        if (w + acc).contains_vector(v):
            continue
        s = ops.spin([v])
        if intersection(s, w + acc).is_zero():
            acc = acc + s
            if w.dim + acc.dim == m:
                return acc
    return projector_complement(ops, w)


@dataclass
class _Piece:
    basis: list
    status: Status


def decompose(
    ops: OperatorSet, rng: random.Random, budget: int = 8
) -> tuple[Status, list[_Piece], Subspace | None, str]:
    """Split ``Q^m`` into invariant pieces, recursively.

    Returns ``(completely_reducible, pieces, obstruction, note)`` where each
    piece carries its own irreducibility status and ``obstruction`` is an
    invariant subspace without invariant complement when one was found.
    """
    m = ops.dim
    pieces: list[_Piece] = []
    stack = [(ops, [unit_vector(m, i) for i in range(m)])]
    while stack:
        local, basis = stack.pop()
        v = irreducibility(local, rng, budget)
        if v.status is not NO:
            pieces.append(_Piece(basis, v.status))
            continue
        comp = find_complement(local, v.witness, rng, budget)
        if comp is None:
            amb = canonicalize([_embed(basis, c, m) for c in v.witness.basis], m)
            return NO, pieces, amb, "an invariant subspace has no invariant complement"
        for sub in (comp, v.witness):
            sub_basis = [_embed(basis, c, m) for c in sub.basis]
            stack.append((local.restrict(sub), sub_basis))
    if all(p.status is YES for p in pieces):
        return YES, pieces, None, "every piece is certified irreducible"
    rad = radical_image(ops)
    if rad.is_zero():
        return YES, pieces, None, "envelope radical is zero: completely reducible"
    return NO, pieces, rad, "nonzero envelope radical"


def _embed(basis: list, coords: Sequence, m: int) -> tuple:
    out = [ZERO] * m
    for c, b in zip(coords, basis):
        if c:
            for k, x in enumerate(b):
                if x:
                    out[k] += c * x
    return tuple(out)


def pieces_to_subspaces(pieces: list[_Piece], m: int) -> list[tuple[Subspace, Status]]:
    """Pieces as canonical subspaces with their status, ordered by pivots."""
    pairs = [(canonicalize(p.basis, m), p.status) for p in pieces]
    return sorted(pairs, key=lambda cs: (cs[0].pivots, cs[0].basis))
