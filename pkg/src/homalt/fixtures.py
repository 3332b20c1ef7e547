"""Embedded fixture algebras.

``oct_alpha`` and ``oct_beta`` are the two twisted octonion tables, entered row
by row as literal tables; ``oct`` is recovered from ``oct_alpha`` by
untwisting.  Each fixture is also available as an algebra document.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import HomAlgebra
from .exactlin import Matrix

OCT_LABELS = tuple(f"e{i}" for i in range(8))

# row e_i lists mu(e_i, e_j) for j = 0..7
OCT_ALPHA_TABLE = """
e0  e5 e6 e7 e1 e2 e3 e4
e5 -e0 e1 e4 -e6 e3 -e2 -e7
e6 -e1 -e0 e2 e5 -e7 e4 -e3
e7 -e4 -e2 -e0 e3 e6 -e1 e5
e1 e6 -e5 -e3 -e0 e4 e7 -e2
e2 -e3 e7 -e6 -e4 -e0 e5 e1
e3 e2 -e4 e1 -e7 -e5 -e0 e6
e4 e7 e3 -e5 e2 -e1 -e6 -e0
"""

# alpha(e_i) for i = 0..7
OCT_ALPHA_TWIST = "e0 e5 e6 e7 e1 e2 e3 e4"

OCT_BETA_TABLE = """
e0 -e1 -e2 -e3 e4 e5 -e6 e7
-e1 -e0 e4 e7 e2 -e6 -e5 e3
-e2 -e4 -e0 e5 -e1 e3 e7 e6
-e3 -e7 -e5 -e0 -e6 -e2 -e4 -e1
e4 -e2 e1 e6 -e0 e7 -e3 -e5
e5 e6 -e3 e2 -e7 -e0 -e1 e4
-e6 e5 -e7 e4 e3 e1 -e0 -e2
e7 -e3 -e6 e1 e5 -e4 e2 -e0
"""


def _signed_label(tok: str) -> tuple[int, int]:
    sign = -1 if tok.startswith("-") else 1
    return sign, OCT_LABELS.index(tok.lstrip("+-"))


def parse_signed_table(text: str) -> list[tuple[int, int, int, int]]:
    entries = []
    rows = [line.split() for line in text.strip().splitlines()]
    for i, row in enumerate(rows):
        for j, tok in enumerate(row):
            s, k = _signed_label(tok)
            entries.append((i, j, k, s))
    return entries


def _oct_alpha_twist() -> Matrix:
    images = [OCT_LABELS.index(t) for t in OCT_ALPHA_TWIST.split()]
    return Matrix.permutation(images)


@lru_cache(maxsize=None)
def oct_alpha() -> HomAlgebra:
    return HomAlgebra.from_entries(
        8, parse_signed_table(OCT_ALPHA_TABLE), _oct_alpha_twist(), OCT_LABELS, "oct_alpha"
    )


@lru_cache(maxsize=None)
def oct_beta() -> HomAlgebra:
    return HomAlgebra.from_entries(
        8, parse_signed_table(OCT_BETA_TABLE), Matrix.scalar(8, -1), OCT_LABELS, "oct_beta"
    )


@lru_cache(maxsize=None)
def octonions() -> HomAlgebra:
    from .constructions import untwist

    return untwist(oct_alpha()).induced.with_name("oct")


@lru_cache(maxsize=None)
def a7_3() -> HomAlgebra:
    # basis (e1, e2, e3); the repeated mu(e3, e2) = e1 is entered once
    one = Fraction(1)
    entries = [(1, 1, 0, one), (1, 2, 0, one), (2, 1, 0, one), (2, 2, 0, one)]
    twist = Matrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    return HomAlgebra.from_entries(3, entries, twist, ("e1", "e2", "e3"), "a7_3")


@lru_cache(maxsize=None)
def a3p_3() -> HomAlgebra:
    entries = [(0, 0, 0, 1), (1, 1, 1, 1), (2, 2, 0, 1), (0, 2, 2, -1), (2, 0, 2, -1)]
    twist = Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    return HomAlgebra.from_entries(3, entries, twist, ("e1", "e2", "e3"), "a3p_3")


@lru_cache(maxsize=None)
def split2() -> HomAlgebra:
    twist = Matrix.from_rows([[1, 0], [0, 0]])
    return HomAlgebra.from_entries(2, [(0, 0, 0, 1)], twist, ("e1", "e2"), "split2")


FIXTURES = {
    "oct": octonions,
    "oct_alpha": oct_alpha,
    "oct_beta": oct_beta,
    "a7_3": a7_3,
    "a3p_3": a3p_3,
    "split2": split2,
}

DESCRIPTIONS = {
    "oct": "octonions with identity twist, obtained by untwisting oct_alpha",
    "oct_alpha": "octonions twisted by the 7-cycle automorphism alpha (table mu_1)",
    "oct_beta": "octonion table mu_2 with twist beta = -Id (not multiplicative)",
    "a7_3": "3-dimensional solvable Hom-associative algebra A_7^3",
    "a3p_3": "3-dimensional Hom-associative algebra A'_3^3, alpha(e2) = e2 supplied",
    "split2": "2-dimensional algebra with idempotent twist diag(1, 0)",
}

COMMENTS = {
    "a3p_3": "alpha(e2) is set to e2 so that the twist is multiplicative",
    "a7_3": "mu(e3,e2)=e1 is a single entry",
    "oct_beta": "beta = -Id does not satisfy beta(mu(x,y)) = mu(beta x, beta y); table kept as is",
}


def get(name: str) -> HomAlgebra:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
