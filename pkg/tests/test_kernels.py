import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homalt import _kernels_py, kernels
from homalt.exactlin import canonicalize, subspace_from_int_rows

backends = [_kernels_py]
if kernels.available_backends().get("cython"):
    from homalt import _kernels

    backends.append(_kernels)

small = st.integers(min_value=-4, max_value=4)


def _sparse(dense):
    n = len(dense)
    return [[(i, dense[i][j]) for i in range(n) if dense[i][j]] for j in range(n)]


@pytest.mark.parametrize("impl", backends, ids=lambda m: m.BACKEND)
@given(vecs=st.lists(st.lists(small, min_size=5, max_size=5), max_size=6))
def test_echelon_matches_canonical_span(impl, vecs):
    rows, pivots = [], []
    for v in vecs:
        w = impl.echelon_reduce(rows, pivots, list(v))
        if any(w):
            impl.echelon_insert(rows, pivots, w)
    assert subspace_from_int_rows(rows, pivots, 5) == canonicalize(vecs, 5)


@pytest.mark.parametrize("impl", backends, ids=lambda m: m.BACKEND)
@given(
    ops=st.lists(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4), min_size=1, max_size=3),
    seed=st.lists(small, min_size=4, max_size=4),
)
def test_spin_is_invariant_and_minimal(impl, ops, seed):
    cols = [_sparse(d) for d in ops]
    rows, pivots, complete = impl.spin(cols, [seed], 4, -1)
    assert complete
    span = subspace_from_int_rows(rows, pivots, 4)
    if any(seed):
        assert span.contains_vector(seed)
    for d in ops:
        for b in span.basis:
            img = [sum(d[i][j] * b[j] for j in range(4)) for i in range(4)]
            assert span.contains_vector(img)


def test_backends_agree_on_random_spins():
    if len(backends) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 6)
        ops = [[[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)] for _ in range(rng.randint(1, 3))]
        seeds = [[rng.randint(-2, 2) for _ in range(n)]]
        results = [b.spin([_sparse(d) for d in ops], seeds, n, -1) for b in backends]
        assert results[0] == results[1]
        x = [rng.randint(-3, 3) for _ in range(n * n)]
        y = [rng.randint(-3, 3) for _ in range(n * n)]
        assert backends[0].trace_pairing(x, y, n) == backends[1].trace_pairing(x, y, n)


def test_trace_pairing_is_trace_of_product():
    x = [1, 2, 3, 4]
    y = [5, 6, 7, 8]
    # [[1,2],[3,4]] @ [[5,6],[7,8]] has trace 19 + 50
    assert _kernels_py.trace_pairing(x, y, 2) == 69


def test_partial_spin_reports_incomplete():
    shift = [[(1, 1)], [(2, 1)], [(3, 1)], []]
    rows, pivots, complete = _kernels_py.spin([shift], [[1, 0, 0, 0]], 4, 1)
    assert not complete and len(rows) < 4


def test_backend_selection_flag():
    assert kernels.BACKEND in ("python", "cython")
    assert kernels.available_backends()["python"]
