import pytest

from stmodkit.errors import TooLarge
from stmodkit.module import direct_sum, free_module, regular_module, simple_module
from stmodkit.oracles import (
    oracle_generic_decompose,
    oracle_is_indecomposable,
    oracle_step5_minimum,
    oracle_submodule_enum,
    submodule_lattice,
)
from stmodkit.projectives import type_module


def test_lattice_counts(D, B):
    assert oracle_submodule_enum(direct_sum(simple_module(D, "k"), simple_module(D, "ε"))).count == 4
    assert oracle_submodule_enum(type_module(D, "[k,ε]")).count == 3
    # two copies of k over F3: 0, the whole space and 4 lines
    assert len(submodule_lattice(direct_sum(simple_module(D, "k"), simple_module(D, "k")))) == 6
    # uniserial projective of kD: a chain
    assert oracle_submodule_enum(free_module(D, ["k"])).submodule_dims == [0, 1, 2, 3]


def test_lattice_summary_of_uniserial(D):
    s = oracle_submodule_enum(free_module(D, ["ε"]))
    assert (s.socle.dim, s.radical.dim) == (1, 2)
    # P_ε is uniserial ε / k / ε: no trivial submodule, no trivial quotient
    assert s.trivial_socle.dim == 0 and s.trivial_top.dim == 3


def test_indecomposable(D, A4):
    assert oracle_is_indecomposable(free_module(D, ["k"]))
    assert oracle_is_indecomposable(free_module(A4, ["ω"]))
    assert not oracle_is_indecomposable(direct_sum(simple_module(D, "k"), simple_module(D, "ε")))


def test_generic_decompose_names_fixtures(A, D):
    m = direct_sum(type_module(D, "[ε,k]"), free_module(D, ["k"]), simple_module(D, "ε"))
    assert oracle_generic_decompose(m).nonzero() == {"[ε,k]": 1, "P_k": 1, "ε": 1}
    # kG modules are restricted first
    assert oracle_generic_decompose(free_module(A, ["k"])).nonzero() == {"P_k": 3}


def test_too_large(A, B):
    with pytest.raises(TooLarge):
        oracle_submodule_enum(free_module(A, ["k"]))
    with pytest.raises(TooLarge):
        oracle_generic_decompose(regular_module(B))
    with pytest.raises(TooLarge):
        oracle_step5_minimum(free_module(A, ["k"]))


def test_step5_oracle_on_sign_module(A):
    # ε: t m = -m, Y kills it, nothing below; the minimal orbit is the line itself
    assert oracle_step5_minimum(simple_module(A, "ε")) == (1, 2)
    assert oracle_step5_minimum(simple_module(A, "k")) == (None, 0)
