import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homalt.algebra import HomAlgebra, hom_associator
from homalt.bimodule import (
    CHAIN_FLAGS,
    HomBimodule,
    bimodule_irreducibility,
    direct_sum_bimodule,
    is_alternative_bimodule,
    is_hom_bimodule,
    ker_im_subbimodules,
    module_hom_associator,
    regular_bimodule,
    subbimodule_spin,
    twist_bimodule,
    untwist_bimodule,
)
from homalt.constructions import untwist
from homalt.errors import CompatibilityError, DimensionError, SingularMatrixError
from homalt.exactlin import Matrix, Subspace, canonicalize, is_zero
from homalt.fixtures import FIXTURES, a3p_3, a7_3, oct_alpha, octonions, split2
from homalt.generators import random_four_dim, random_hom_alternative
from homalt.structure import Status, hom_ideal_closure

from oracles import unit

F = Fraction


def span(n, *idx):
    return canonicalize([unit(n, i) for i in idx], n)


def rand_vec(rng, n):
    return [F(rng.randint(-3, 3)) for _ in range(n)]


def corrupt(bim, side="left", i=1, p=0, q=0):
    ops = list(bim.left if side == "left" else bim.right)
    rows = ops[i].to_rows()
    rows[q][p] += 1
    ops[i] = Matrix.from_rows(rows, bim.dim)
    if side == "left":
        return HomBimodule(bim.base, bim.dim, bim.module_twist, tuple(ops), bim.right)
    return HomBimodule(bim.base, bim.dim, bim.module_twist, bim.left, tuple(ops))


def raw_tensors(bim):
    """Action tensors read straight off the operator matrices."""
    n, m = bim.base.dim, bim.dim
    left = [[[bim.left[i][q, p] for q in range(m)] for p in range(m)] for i in range(n)]
    right = [[[bim.right[i][q, p] for q in range(m)] for i in range(n)] for p in range(m)]
    return left, right


def eq3_flags(bim):
    """Independent check of (a,v,b) = -(v,a,b) = (b,a,v) = -(a,b,v) for untwisted actions."""
    n, m = bim.base.dim, bim.dim
    left, right = raw_tensors(bim)
    prod = bim.base.product

    def lv(i, vec):
        return [sum(vec[p] * left[i][p][q] for p in range(m)) for q in range(m)]

    def rv(vec, i):
        return [sum(vec[p] * right[p][i][q] for p in range(m)) for q in range(m)]

    def lvec(a, vec):
        out = [F(0)] * m
        for i, c in enumerate(a):
            if c:
                out = [x + c * y for x, y in zip(out, lv(i, vec))]
        return out

    def rvec(vec, a):
        out = [F(0)] * m
        for i, c in enumerate(a):
            if c:
                out = [x + c * y for x, y in zip(out, rv(vec, i))]
        return out

    e = [unit(m, p) for p in range(m)]
    flags = dict.fromkeys(CHAIN_FLAGS, True)
    for i in range(n):
        for j in range(n):
            for p in range(m):
                avb = [x - y for x, y in zip(rv(lv(i, e[p]), j), lv(i, rv(e[p], j)))]
                vab = [x - y for x, y in zip(rv(rv(e[p], i), j), rvec(e[p], prod[i][j]))]
                bav = [x - y for x, y in zip(lvec(prod[j][i], e[p]), lv(j, lv(i, e[p])))]
                abv = [x - y for x, y in zip(lvec(prod[i][j], e[p]), lv(i, lv(j, e[p])))]
                pairs = ((avb, [-x for x in vab]), ([-x for x in vab], bav), (bav, [-x for x in abv]))
                for flag, (lhs, rhs) in zip(CHAIN_FLAGS, pairs):
                    if lhs != rhs:
                        flags[flag] = False
    return flags


class TestModuleAssociator:
    def test_a7_3_regular_vanishes(self):
        r = is_hom_bimodule(regular_bimodule(a7_3()))
        assert all(not t for t in r.tables.values())

    def test_zero_module(self):
        bim = HomBimodule.from_entries(a7_3(), 0, [], [])
        assert module_hom_associator(bim, "AVA", unit(3, 0), (), unit(3, 1)) == ()

    def test_regular_reduces_to_algebra(self):
        alg = oct_alpha()
        bim = regular_bimodule(alg)
        found = False
        for i in range(8):
            for j in range(8):
                for k in range(8):
                    x, y, z = unit(8, i), unit(8, j), unit(8, k)
                    a = hom_associator(alg, x, y, z)
                    assert module_hom_associator(bim, "AVA", x, y, z) == a
                    found = found or not is_zero(a)
        assert found

    def test_bad_pattern(self):
        with pytest.raises(ValueError):
            module_hom_associator(regular_bimodule(a7_3()), "VVA", unit(3, 0), unit(3, 0), unit(3, 0))


class TestIsHomBimodule:
    @pytest.mark.parametrize("name", ["oct_alpha", "a3p_3", "a7_3", "oct", "split2"])
    def test_regular(self, name):
        r = is_hom_bimodule(regular_bimodule(FIXTURES[name]()))
        assert r.ok and not r.witnesses

    @pytest.mark.parametrize("side,i,p,q", [("left", 1, 0, 0), ("right", 2, 3, 5), ("left", 7, 7, 1)])
    def test_corrupted(self, side, i, p, q):
        r = is_hom_bimodule(corrupt(regular_bimodule(oct_alpha()), side, i, p, q))
        assert not r.ok
        assert set(r.witnesses) == {k for k, v in r.flags().items() if not v}
        assert all(not is_zero(w.defect) for w in r.witnesses.values())

    def test_basis_check_is_complete(self):
        bim = regular_bimodule(oct_alpha())
        rng = random.Random(2)
        for _ in range(200):
            a, v, b = rand_vec(rng, 8), rand_vec(rng, 8), rand_vec(rng, 8)
            avb = module_hom_associator(bim, "AVA", a, v, b)
            vab = module_hom_associator(bim, "VAA", v, a, b)
            bav = module_hom_associator(bim, "AAV", b, a, v)
            abv = module_hom_associator(bim, "AAV", a, b, v)
            assert avb == tuple(-x for x in vab) == bav == tuple(-x for x in abv)

    def test_direct_sum(self):
        s = direct_sum_bimodule(regular_bimodule(a3p_3()), regular_bimodule(a3p_3()))
        assert is_hom_bimodule(s).ok


class TestTwistCorrespondence:
    def test_untwist_oct_alpha(self):
        u = untwist_bimodule(regular_bimodule(oct_alpha()))
        assert u == regular_bimodule(octonions())
        assert all(is_alternative_bimodule(u).chain.values())
        assert eq3_flags(u) == is_hom_bimodule(u).chain

    def test_identity_unchanged(self):
        b = regular_bimodule(octonions())
        assert untwist_bimodule(b) == b
        assert twist_bimodule(b, Matrix.identity(8)) == b

    @pytest.mark.parametrize("name", ["oct_alpha", "a3p_3", "oct"])
    def test_round_trip(self, name):
        alg = FIXTURES[name]()
        b = regular_bimodule(alg)
        assert twist_bimodule(untwist_bimodule(b), alg.twist, alg.twist) == b

    def test_twist_octonions(self):
        a = oct_alpha().twist
        assert twist_bimodule(regular_bimodule(octonions()), a, a) == regular_bimodule(oct_alpha())

    def test_random_alpha_refused(self):
        rng = random.Random(8)
        m = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(8)] for _ in range(8)], 8)
        with pytest.raises(CompatibilityError) as info:
            twist_bimodule(regular_bimodule(octonions()), m, oct_alpha().twist)
        assert info.value.witness is not None

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            untwist_bimodule(regular_bimodule(split2()))

    @pytest.mark.parametrize("seed", range(4))
    def test_eq3_specialization(self, seed):
        alg, _ = random_four_dim(seed)
        u = untwist_bimodule(regular_bimodule(alg))
        assert eq3_flags(u) == is_hom_bimodule(u).chain
        for args in [("left", 1, 0, 0), ("right", 3, 2, 1), ("left", 0, 3, 3)]:
            bad = corrupt(u, *args)
            assert eq3_flags(bad) == is_hom_bimodule(bad).chain == is_alternative_bimodule(bad).chain

    @pytest.mark.parametrize("seed", range(10))
    def test_random_round_trip(self, seed):
        alg, _ = random_hom_alternative(seed, invertible=True)
        b = regular_bimodule(alg)
        assert is_hom_bimodule(b).ok
        u = untwist_bimodule(b)
        assert u.base == untwist(alg).induced
        assert twist_bimodule(u, alg.twist, alg.twist) == b


class TestSpin:
    def test_a3p_3(self):
        assert subbimodule_spin(regular_bimodule(a3p_3()), span(3, 0)) == span(3, 0, 2)

    def test_zero(self):
        assert subbimodule_spin(regular_bimodule(a3p_3()), Subspace.zero(3)).is_zero()

    def test_oct_alpha(self):
        assert subbimodule_spin(regular_bimodule(oct_alpha()), span(8, 5)).is_full()

    def test_ambient(self):
        with pytest.raises(DimensionError):
            subbimodule_spin(regular_bimodule(a3p_3()), Subspace.zero(2))

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_matches_ideal_closure(self, name):
        alg = FIXTURES[name]()
        bim = regular_bimodule(alg)
        rng = random.Random(name)
        for _ in range(20):
            seed = canonicalize([[rng.randint(-1, 1) for _ in range(alg.dim)]], alg.dim)
            assert subbimodule_spin(bim, seed) == hom_ideal_closure(alg, seed)

    @pytest.mark.parametrize("name", ["a3p_3", "a7_3", "split2"])
    @settings(max_examples=30)
    @given(data=st.data())
    def test_closure_laws(self, name, data):
        bim = direct_sum_bimodule(regular_bimodule(FIXTURES[name]()), regular_bimodule(FIXTURES[name]()))
        m = bim.dim
        vec = st.lists(st.integers(-2, 2), min_size=m, max_size=m)
        s = canonicalize(data.draw(st.lists(vec, max_size=2)), m)
        t = s + canonicalize(data.draw(st.lists(vec, max_size=2)), m)
        cs, ct = subbimodule_spin(bim, s), subbimodule_spin(bim, t)
        assert cs.contains(s) and ct.contains(cs) and subbimodule_spin(bim, cs) == cs


class TestKerIm:
    def test_split2(self):
        r = ker_im_subbimodules(regular_bimodule(split2()))
        assert r.kernel == span(2, 1) and r.kernel_flag
        assert r.image == span(2, 0) and not r.image_asserted

    def test_invertible(self):
        r = ker_im_subbimodules(regular_bimodule(oct_alpha()))
        assert r.kernel.is_zero() and r.image.is_full()
        assert r.kernel_flag and r.image_flag and r.image_asserted

    def test_image_measured_not_asserted(self):
        # base twist kills e1, module twist kills v1; the image is not a subbimodule here
        base = HomAlgebra.from_entries(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], Matrix.from_rows([[1, 0], [0, 0]]))
        bim = regular_bimodule(base)
        r = ker_im_subbimodules(bim)
        assert r.kernel_flag and not r.image_asserted

    @pytest.mark.parametrize("seed", range(20))
    def test_kernel_flag_random(self, seed):
        alg, _ = random_hom_alternative(seed)
        assert ker_im_subbimodules(regular_bimodule(alg)).kernel_flag


class TestIrreducibility:
    def test_oct_alpha(self):
        v = bimodule_irreducibility(regular_bimodule(oct_alpha()))
        assert v.status is Status.CERTIFIED_YES and v.envelope_dim == 64

    def test_a3p_3(self):
        v = bimodule_irreducibility(regular_bimodule(a3p_3()))
        assert v.status is Status.CERTIFIED_NO and v.witness == span(3, 0, 2)
        assert set(v.components) == {span(3, 0, 2), span(3, 1)}

    def test_zero_dim(self):
        v = bimodule_irreducibility(HomBimodule.from_entries(a7_3(), 0, [], []))
        assert v.status is Status.CERTIFIED_YES and "convention" in v.note

    def test_direct_sum_completely_reducible(self):
        s = direct_sum_bimodule(regular_bimodule(oct_alpha()), regular_bimodule(oct_alpha()))
        v = bimodule_irreducibility(s)
        assert v.status is Status.CERTIFIED_NO
        assert v.completely_reducible is Status.CERTIFIED_YES
        assert sorted(c.dim for c in v.components) == [8, 8]

    @pytest.mark.parametrize("name", ["oct_alpha", "oct", "a3p_3"])
    def test_irreducible_untwist_transfers(self, name):
        b = regular_bimodule(FIXTURES[name]())
        if bimodule_irreducibility(untwist_bimodule(b)).status is Status.CERTIFIED_YES:
            assert bimodule_irreducibility(b).status is Status.CERTIFIED_YES

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_irreducible_implies_invertible_twist(self, name):
        b = regular_bimodule(FIXTURES[name]())
        if bimodule_irreducibility(b).status is Status.CERTIFIED_YES and b.dim:
            assert b.module_twist.is_invertible()
