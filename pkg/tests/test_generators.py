import random

import pytest

from homalt.algebra import check_identities, is_morphism
from homalt.constructions import untwist
from homalt.generators import (
    KINDS,
    cyclic_group_algebra,
    diagonal_algebra,
    matrix_algebra_2,
    nilpotent_polynomials,
    random_four_dim,
    random_hom_alternative,
    simple_sample,
    truncated_polynomials,
    upper_triangular_2,
)
from homalt.structure import derived_series


@pytest.mark.parametrize("alg", [
    matrix_algebra_2(), upper_triangular_2(), truncated_polynomials(3),
    nilpotent_polynomials(3), cyclic_group_algebra(4), diagonal_algebra(3),
], ids=lambda a: a.name)
def test_bases_are_associative(alg):
    r = check_identities(alg)
    assert r.hom_associative and r.hom_alternative


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("invertible", [True, False])
def test_sample_morphisms(kind, invertible):
    rng = random.Random(kind)
    for _ in range(5):
        s = simple_sample(rng, kind, invertible)
        assert is_morphism(s.beta, s.base, s.base)
        if invertible:
            assert s.beta.is_invertible()


@pytest.mark.parametrize("seed", range(40))
def test_random_is_hom_alternative(seed):
    alg, sample = random_hom_alternative(seed)
    assert check_identities(alg).hom_alternative
    assert alg.dim == sample.base.dim <= 6


def test_seeded_reproducible():
    assert random_hom_alternative(12)[0] == random_hom_alternative(12)[0]
    assert random_hom_alternative(12)[0] != random_hom_alternative(13)[0]


@pytest.mark.parametrize("seed", range(10))
def test_four_dim(seed):
    alg, _ = random_four_dim(seed)
    assert alg.dim == 4 and alg.twist.is_invertible()
    assert check_identities(untwist(alg).induced).hom_associative


def test_four_dim_solvable_flag():
    assert derived_series(random_four_dim(1, solvable=True)[0]).solvable
    assert not derived_series(random_four_dim(1, solvable=False)[0]).solvable
