import numpy as np
import pytest

from stmodkit.algebra import build_case_a, presentation_from_descriptor
from stmodkit.errors import AlgebraMismatch, InvalidModule
from stmodkit.module import (
    ModuleRep,
    direct_sum,
    dual_module,
    free_module,
    frobenius_conjugate,
    from_matrices,
    induced_trivial,
    module_violations,
    quotient_module,
    regular_module,
    restrict,
    simple_module,
    sub_module,
    submodule_generated,
)


def test_dimensions(A, A2, B, D, A4):
    assert (A.dim, A2.dim, B.dim, D.dim, A4.dim) == (18, 54, 24, 6, 12)
    assert A.generators == ("Z", "Y", "t") and B.generators == ("X", "Y", "Z", "t")
    assert D.generators == ("Y", "t") and A4.generators == ("X", "Y", "t")


def test_descriptor_roundtrip(A2, B):
    for a in (A2, B):
        assert presentation_from_descriptor(a.descriptor()) == a
    with pytest.raises(ValueError):
        presentation_from_descriptor({"case": "Q"})


def test_words_and_twisted_commutation(A, B):
    # tY = -Yt, tZ = Zt in case A; tX = wXt, tY = wbar Yt in case B
    f = A.field
    assert A.word("tY") == A.word("Yt").scale(f.minus_one)
    assert A.word("tZ") == A.word("Zt")
    assert A.word("Z^3").is_zero() and A.word("Y^2Y").is_zero()
    assert B.word("tX") == B.word("Xt").scale(2)
    assert B.word("tY") == B.word("Yt").scale(3)
    assert B.word("XY") == B.word("YX")
    assert B.word("X^2").is_zero()
    assert B.sylow_socle == B.word("XYZ")


def test_structure_constants_associative(A):
    rng = np.random.default_rng(0)
    f = A.field
    for _ in range(10):
        x, y, z = (A.element(f.random(rng, A.dim)) for _ in range(3))
        assert (x * y) * z == x * (y * z)


@pytest.mark.parametrize("case", ["A", "B"])
def test_regular_and_free_modules_satisfy_relations(case, A, B):
    a = A if case == "A" else B
    assert module_violations(regular_module(a)) == []
    for lam in a.eigenvalues:
        p = free_module(a, [lam])
        assert p.dim == a.n_monomials
        assert module_violations(p) == []


def test_module_violations_named(A):
    p = free_module(A, ["k"])
    bad = ModuleRep(A, {**p.action, "t": np.eye(p.dim, dtype=np.int64)})
    assert "tY=−Yt" in module_violations(bad)
    with pytest.raises(InvalidModule):
        from_matrices(A, Z=[[1]], Y=[[0]], t=[[1]])


def test_element_matrix_is_a_homomorphism(B):
    m = free_module(B, ["ω", "k"])
    rng = np.random.default_rng(3)
    f = B.field
    x, y = B.element(f.random(rng, B.dim)), B.element(f.random(rng, B.dim))
    assert np.array_equal(m.element_matrix(x * y), f.matmul(m.element_matrix(x), m.element_matrix(y)))


def test_dual_and_sum(A, B):
    for a in (A, B):
        m = direct_sum(free_module(a, ["k"]), simple_module(a, a.eigenvalues[-1]))
        assert module_violations(dual_module(m)) == []
        assert dual_module(m).dim == m.dim


def test_frobenius_conjugate_swaps_omegas(B, A):
    w = simple_module(B, "ω")
    c = frobenius_conjugate(w)
    assert int(c["t"][0, 0]) == B.eigenvalue_of("ω̄")
    with pytest.raises(AlgebraMismatch):
        frobenius_conjugate(simple_module(A, "k"))


def test_restriction(A, D):
    r = restrict(regular_module(A), D)
    assert r.algebra == D and r.dim == A.dim
    assert module_violations(r) == []


def test_sub_and_quotient(A):
    p = free_module(A, ["k"])
    e = np.zeros(p.dim, dtype=np.int64)
    e[0] = 1
    yp = submodule_generated(p, [p.field.matmul(p["Y"], e)])
    assert module_violations(sub_module(p, yp)) == []
    q = quotient_module(p, yp)
    assert q.dim == p.dim - yp.dim
    assert module_violations(q) == []


def test_induced_trivial(A, B):
    # kG tensored over the subalgebra with k: one Jordan block of the complementary generator
    for a, n in ((A, 3), (B, 2)):
        m = induced_trivial(a)
        assert m.dim == n
        assert module_violations(m) == []
        assert np.all(m["t"] == np.eye(n))


def test_case_a_r2_relations():
    a = build_case_a(2)
    assert a.nil_orders[0] == 9
    assert module_violations(free_module(a, ["ε"])) == []
