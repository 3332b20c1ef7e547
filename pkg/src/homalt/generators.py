"""Seeded random Hom-alternative algebras.

Small associative algebras are alternative, so Yau-twisting one by an
automorphism (or another self-morphism) yields a multiplicative
Hom-alternative algebra.  A random change of basis hides the block structure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import HomAlgebra, default_labels
from .constructions import direct_sum, transport_product, yau_twist
from .exactlin import ZERO, Matrix


def _from_rule(n: int, rule, name: str) -> HomAlgebra:
    entries = []
    for i in range(n):
        for j in range(n):
            for k, c in rule(i, j):
                entries.append((i, j, k, c))
    return HomAlgebra.from_entries(n, entries, None, None, name)


def matrix_algebra_2() -> HomAlgebra:
    """M_2(Q) on E11, E12, E21, E22."""
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]

    def rule(i, j):
        (a, b), (c, d) = units[i], units[j]
        return [(units.index((a, d)), 1)] if b == c else []

    return _from_rule(4, rule, "M2")


def upper_triangular_2() -> HomAlgebra:
    """Upper triangular 2 x 2 matrices on E11, E12, E22."""
    units = [(0, 0), (0, 1), (1, 1)]

    def rule(i, j):
        (a, b), (c, d) = units[i], units[j]
        return [(units.index((a, d)), 1)] if b == c else []

    return _from_rule(3, rule, "T2")


def truncated_polynomials(k: int) -> HomAlgebra:
    """Q[x]/(x^k) on 1, x, ..., x^(k-1)."""
    return _from_rule(k, lambda i, j: [(i + j, 1)] if i + j < k else [], f"Q[x]/x^{k}")


def nilpotent_polynomials(k: int) -> HomAlgebra:
    """x Q[x]/(x^(k+1)) on x, ..., x^k: a solvable algebra without unit."""
    return _from_rule(k, lambda i, j: [(i + j + 1, 1)] if i + j + 1 < k else [], f"xQ[x]/x^{k + 1}")


def cyclic_group_algebra(k: int) -> HomAlgebra:
    return _from_rule(k, lambda i, j: [((i + j) % k, 1)], f"Q[C{k}]")


def diagonal_algebra(n: int) -> HomAlgebra:
    return _from_rule(n, lambda i, j: [(i, 1)] if i == j else [], f"Q^{n}")


# -- morphisms -----------------------------------------------------------------


def _rand_nonzero(rng: random.Random, spread: int = 3) -> Fraction:
    return Fraction(rng.choice([x for x in range(-spread, spread + 1) if x]))


def _rand_invertible(rng: random.Random, n: int, spread: int = 2) -> Matrix:
    while True:
        m = Matrix.from_rows([[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)], n)
        if m.is_invertible():
            return m


def _poly_power(coeffs: list, e: int, k: int) -> list:
    """Coefficients of ``p^e`` truncated below degree ``k`` (index = degree)."""
    out = [Fraction(0)] * k
    out[0] = Fraction(1)
    for _ in range(e):
        nxt = [Fraction(0)] * k
        for a, x in enumerate(out):
            if x:
                for b, y in enumerate(coeffs):
                    if y and a + b < k:
                        nxt[a + b] += x * y
        out = nxt
    return out


def _substitution(k: int, a: Fraction, b: Fraction, nil: bool) -> Matrix:
    """Matrix of ``x -> a x + b x^2`` on the truncated or nilpotent polynomial basis."""
    top = k + 1 if nil else k
    p = [Fraction(0), a, b]
    cols = []
    degrees = range(1, k + 1) if nil else range(k)
    for d in degrees:
        img = _poly_power(p, d, top)
        cols.append(tuple(img[1:] if nil else img))
    return Matrix.from_columns(cols, k)


def _squaring(k: int, nil: bool) -> Matrix:
    """``x -> x^2``, a non-invertible endomorphism."""
    return _substitution(k, Fraction(0), Fraction(1), nil)


def _conjugation(p: Matrix, units: list) -> Matrix:
    inv = p.inverse()
    cols = []
    for a, b in units:
        e = Matrix.from_rows([[1 if (r, c) == (a, b) else 0 for c in range(2)] for r in range(2)])
        img = p @ e @ inv
        cols.append(tuple(img[r, c] for r, c in units))
    return Matrix.from_columns(cols, len(units))


@dataclass(frozen=True)
class Sample:
    """An associative algebra with a self-morphism ``beta`` to twist it by."""

    base: HomAlgebra
    beta: Matrix
    kind: str


def _block(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.rows, b.rows
    rows = [list(a.row(i)) + [ZERO] * m for i in range(n)]
    rows += [[ZERO] * n + list(b.row(i)) for i in range(m)]
    return Matrix.from_rows(rows, n + m)


def simple_sample(rng: random.Random, kind: str, invertible: bool = True) -> Sample:
    if kind == "M2":
        units = [(0, 0), (0, 1), (1, 0), (1, 1)]
        beta = _conjugation(_rand_invertible(rng, 2), units)
        if not invertible:
            beta = Matrix.zeros(4)
        return Sample(matrix_algebra_2(), beta, kind)
    if kind == "T2":
        p = Matrix.from_rows([[_rand_nonzero(rng), rng.randint(-2, 2)], [0, _rand_nonzero(rng)]])
        beta = _conjugation(p, [(0, 0), (0, 1), (1, 1)])
        if not invertible:
            beta = Matrix.zeros(3)
        return Sample(upper_triangular_2(), beta, kind)
    if kind in ("poly", "nil"):
        k = rng.randint(2, 4)
        nil = kind == "nil"
        alg = nilpotent_polynomials(k) if nil else truncated_polynomials(k)
        if invertible:
            beta = _substitution(k, _rand_nonzero(rng), Fraction(rng.randint(-2, 2)), nil)
        else:
            beta = _squaring(k, nil)
        return Sample(alg, beta, kind)
    if kind == "group":
        k = rng.randint(2, 4)
        units = [j for j in range(1, k) if gcd(j, k) == 1]
        j = rng.choice(units)
        beta = Matrix.permutation([(i * j) % k for i in range(k)])
        if not invertible:
            beta = Matrix.zeros(k)
        return Sample(cyclic_group_algebra(k), beta, kind)
    if kind == "diag":
        n = rng.randint(1, 3)
        perm = list(range(n))
        rng.shuffle(perm)
        if invertible:
            beta = Matrix.permutation(perm)
        else:
            keep = set(rng.sample(range(n), rng.randint(0, n - 1)))
            beta = Matrix.from_rows([[1 if r == c and r in keep else 0 for c in range(n)] for r in range(n)], n)
        return Sample(diagonal_algebra(n), beta, kind)
    raise ValueError(f"unknown kind {kind!r}")


KINDS = ("M2", "T2", "poly", "nil", "group", "diag")


def random_sample(
    rng: random.Random, invertible: bool | None = None, max_dim: int = 6, kinds=KINDS
) -> Sample:
    """A random associative algebra (possibly a direct sum of two) with a morphism."""
    inv = rng.random() < 0.7 if invertible is None else invertible
    while True:
        s = simple_sample(rng, rng.choice(kinds), inv)
        if rng.random() < 0.35:
            t = simple_sample(rng, rng.choice(kinds), inv)
            if s.base.dim + t.base.dim <= max_dim:
                alg = direct_sum(s.base, t.base)
                s = Sample(alg.with_name(f"{s.base.name}+{t.base.name}"), _block(s.beta, t.beta), f"{s.kind}+{t.kind}")
        if s.base.dim <= max_dim:
            return s


def change_basis(sample: Sample, phi: Matrix) -> Sample:
    """Transport the algebra along ``phi`` and conjugate the morphism to match."""
    alg = transport_product(sample.base, phi)
    beta = phi @ sample.beta @ phi.inverse()
    return Sample(alg, beta, sample.kind)


def random_hom_alternative(
    seed_or_rng, invertible: bool | None = None, max_dim: int = 6, basis_change: bool = True, kinds=KINDS
) -> tuple[HomAlgebra, Sample]:
    """Yau twist of a random associative algebra; returns the twist and its source."""
    rng = seed_or_rng if isinstance(seed_or_rng, random.Random) else random.Random(seed_or_rng)
    s = random_sample(rng, invertible, max_dim, kinds)
    if basis_change:
        s = change_basis(s, _rand_invertible(rng, s.base.dim, 1))
    alg = yau_twist(s.base, s.beta)
    return alg.with_name(f"twist({s.base.name})"), s


def random_four_dim(seed_or_rng, solvable: bool | None = None) -> tuple[HomAlgebra, Sample]:
    """Random invertible twist of a 4-dimensional associative algebra."""
    rng = seed_or_rng if isinstance(seed_or_rng, random.Random) else random.Random(seed_or_rng)
    if solvable is None:
        solvable = rng.random() < 0.5
    if solvable:
        base = nilpotent_polynomials(4)
        beta = _substitution(4, _rand_nonzero(rng), Fraction(rng.randint(-2, 2)), True)
        s = Sample(base, beta, "nil")
    else:
        choice = rng.choice(["M2", "poly4", "group4", "diag4", "T2+Q"])
        if choice == "M2":
            s = simple_sample(rng, "M2")
        elif choice == "poly4":
            s = Sample(truncated_polynomials(4), _substitution(4, _rand_nonzero(rng), Fraction(rng.randint(-2, 2)), False), choice)
        elif choice == "group4":
            s = Sample(cyclic_group_algebra(4), Matrix.permutation([(3 * i) % 4 for i in range(4)]), choice)
        elif choice == "diag4":
            perm = list(range(4))
            rng.shuffle(perm)
            s = Sample(diagonal_algebra(4), Matrix.permutation(perm), choice)
        else:
            t = simple_sample(rng, "T2")
            s = Sample(direct_sum(t.base, diagonal_algebra(1)), _block(t.beta, Matrix.identity(1)), choice)
    s = change_basis(s, _rand_invertible(rng, 4, 1))
    return yau_twist(s.base, s.beta).with_name(f"twist({s.kind})"), s


def random_subspace_vectors(rng: random.Random, n: int, count: int, spread: int = 2) -> list[list[int]]:
    return [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(count)]


def relabelled(alg: HomAlgebra) -> HomAlgebra:
    return HomAlgebra(alg.dim, default_labels(alg.dim), alg.product, alg.twist, alg.name)
