import numpy as np
import pytest
from hypothesis import given, strategies as st

from stmodkit.errors import DivisionByZero, MixedFields
from stmodkit.fields import F2, F3, F4, FieldElement, all_elements

FIELDS = [F2, F3, F4]


def elems(f):
    return st.integers(0, f.cardinality - 1)


def test_cardinalities():
    assert [(f.characteristic, f.cardinality) for f in FIELDS] == [(2, 2), (3, 3), (2, 4)]


def test_f4_tables():
    # w^2 = wbar, w + 1 = wbar, w * wbar = 1
    assert F4.mul(2, 2) == 3
    assert F4.add(2, 1) == 3
    assert F4.mul(2, 3) == 1
    assert F4.inv(2) == 3
    assert F4.frobenius(2) == 3
    assert [F4.symbol(c) for c in range(4)] == ["0", "1", "ω", "ω̄"]


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
def test_field_axioms_exhaustive(f):
    xs = range(f.cardinality)
    for a in xs:
        assert f.add(a, 0) == a and f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
        for b in xs:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in xs:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
def test_inverse_of_zero(f):
    with pytest.raises(DivisionByZero):
        f.inv(0)


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        FieldElement(F3, 1) + FieldElement(F4, 1)


def test_field_element_ops():
    w = FieldElement(F4, 2)
    assert (w * w * w).code == 1
    assert (w / w).code == 1
    assert len(all_elements(F4)) == 4


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
@given(data=st.data())
def test_matmul_matches_naive(f, data):
    n, k, m = (data.draw(st.integers(1, 5)) for _ in range(3))
    a = np.array(data.draw(st.lists(elems(f), min_size=n * k, max_size=n * k))).reshape(n, k)
    b = np.array(data.draw(st.lists(elems(f), min_size=k * m, max_size=k * m))).reshape(k, m)
    naive = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            s = 0
            for t in range(k):
                s = f.add(s, f.mul(a[i, t], b[t, j]))
            naive[i, j] = s
    assert np.array_equal(f.matmul(a, b), naive)


@given(a=elems(F4), b=elems(F4))
def test_frobenius_is_field_automorphism(a, b):
    assert F4.frobenius(F4.mul(a, b)) == F4.mul(F4.frobenius(a), F4.frobenius(b))
    assert F4.frobenius(F4.add(a, b)) == F4.add(F4.frobenius(a), F4.frobenius(b))
