import numpy as np
import pytest
from hypothesis import given, strategies as st

from stmodkit.fields import F2, F3, F4
from stmodkit.linalg import (
    all_vectors,
    complement_basis,
    inverse,
    nullspace,
    rank,
    rref,
    solve,
    span,
    subspace_intersect,
    subspace_sum,
)


def matrices(f, max_rows=6, max_cols=6):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_rows))
        c = draw(st.integers(1, max_cols))
        vals = draw(st.lists(st.integers(0, f.cardinality - 1), min_size=r * c, max_size=r * c))
        return np.array(vals, dtype=np.int64).reshape(r, c)

    return build()


def brute_rank(f, m):
    # size of the row space, by enumeration
    coeffs = all_vectors(f, m.shape[0])
    rows = {tuple(v) for v in f.matmul(coeffs, m)}
    return int(round(np.log(len(rows)) / np.log(f.cardinality)))


@pytest.mark.parametrize("f", [F2, F3, F4], ids=lambda f: f.name)
@given(data=st.data())
def test_rank_matches_enumeration(f, data):
    m = data.draw(matrices(f, 4, 5))
    assert rank(f, m) == brute_rank(f, m)
    assert rank(f, m) == rank(f, m.T)


@pytest.mark.parametrize("f", [F3, F4], ids=lambda f: f.name)
@given(data=st.data())
def test_rref_is_reduced(f, data):
    m = data.draw(matrices(f))
    r, rk, piv = rref(f, m)
    assert rk == len(piv)
    for i, c in enumerate(piv):
        assert r[i, c] == 1
        assert np.count_nonzero(r[:, c]) == 1
    assert not np.any(r[rk:])


@pytest.mark.parametrize("f", [F3, F4], ids=lambda f: f.name)
@given(data=st.data())
def test_rank_nullity(f, data):
    m = data.draw(matrices(f))
    k = nullspace(f, m)
    assert k.dim + rank(f, m) == m.shape[1]
    if k.dim:
        assert not np.any(f.matmul(m, k.basis.T))


@pytest.mark.parametrize("f", [F3, F4], ids=lambda f: f.name)
@given(data=st.data())
def test_solve_roundtrip(f, data):
    a = data.draw(matrices(f))
    x = np.array(data.draw(st.lists(st.integers(0, f.cardinality - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = f.matmul(a, x)
    y = solve(f, a, b)
    assert np.array_equal(f.matmul(a, y), b)


def test_inverse(rng):
    for f in (F3, F4):
        for _ in range(20):
            a = f.random(rng, (4, 4))
            if rank(f, a) < 4:
                continue
            assert np.array_equal(f.matmul(a, inverse(f, a)), f.identity(4))


@pytest.mark.parametrize("f", [F3, F4], ids=lambda f: f.name)
@given(n=st.integers(1, 5), seed=st.integers(0, 10**6))
def test_sum_and_intersection_dimensions(f, n, seed):
    r = np.random.default_rng(seed)
    u = span(f, n, f.random(r, (2, n)))
    v = span(f, n, f.random(r, (3, n)))
    s, i = subspace_sum(u, v), subspace_intersect(u, v)
    assert s.dim + i.dim == u.dim + v.dim
    assert s.contains_space(u) and s.contains_space(v)
    assert u.contains_space(i) and v.contains_space(i)


def test_complement_basis(rng):
    f = F4
    u = span(f, 6, f.random(rng, (2, 6)))
    c = complement_basis(u)
    assert len(c) == 6 - u.dim
    assert subspace_sum(u, span(f, 6, c)).is_full()


def test_zero_dimensional_reduce():
    u = span(F3, 0, np.zeros((0, 0), dtype=np.int64))
    assert u.reduce(np.zeros((3, 0), dtype=np.int64)).shape == (3, 0)
