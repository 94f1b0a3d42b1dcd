import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stmodkit.calculus import (
    core_filtration,
    dim_hom_from_trivial,
    dim_hom_to_trivial,
    hom_space,
    is_module_map,
    loewy_length,
    radical,
    radical_series,
    socle,
    socle_series,
    trivial_socle_tower,
    trivial_top_tower,
)
from stmodkit.module import direct_sum, free_module, is_submodule, simple_module
from stmodkit.oracles import oracle_submodule_enum
from stmodkit.projectives import type_module, uniserial
from stmodkit.random_modules import RandomSpec, random_module, random_subalgebra_module


def small(case, seed):
    desc = {"case": "A", "r": 1} if case == "A" else {"case": "B"}
    return random_module(RandomSpec(seed, "mixed", 1, [], 5 if case == "A" else 4, desc))


def test_series_of_projectives(A, B):
    pa = free_module(A, ["k"])
    assert [s.dim for s in radical_series(pa)] == [9, 8, 6, 3, 1, 0]
    assert [s.dim for s in socle_series(pa)] == [0, 1, 3, 6, 8, 9]
    assert loewy_length(pa) == 5
    pb = free_module(B, ["k"])
    assert [s.dim for s in radical_series(pb)] == [8, 7, 4, 1, 0]
    assert loewy_length(pb) == 4
    assert loewy_length(simple_module(B, "ω")) == 1


@pytest.mark.parametrize("case", ["A", "B"])
@pytest.mark.parametrize("seed", range(12))
def test_socle_radical_towers_match_enumeration(case, seed):
    m = small(case, seed)
    o = oracle_submodule_enum(m)
    assert socle(m) == o.socle
    assert radical(m) == o.radical
    assert trivial_socle_tower(m) == o.trivial_socle
    assert trivial_top_tower(m) == o.trivial_top


@settings(max_examples=25)
@given(seed=st.integers(0, 10**6))
def test_socle_radical_kd(seed, D):
    m = random_subalgebra_module(D, seed, 5)
    o = oracle_submodule_enum(m)
    assert socle(m) == o.socle and radical(m) == o.radical


def _brute_hom_dim(m, n):
    f = m.field
    count = 0
    for entries in itertools.product(range(f.cardinality), repeat=m.dim * n.dim):
        if is_module_map(m, n, np.array(entries, dtype=np.int64).reshape(n.dim, m.dim)):
            count += 1
    return int(round(np.log(count) / np.log(f.cardinality)))


def test_hom_space_matches_brute_force(A, B, D):
    cases = [
        (type_module(D, "[k,ε]"), type_module(D, "[k,ε]")),
        (type_module(D, "[k,ε]"), simple_module(D, "ε")),
        (simple_module(D, "k"), type_module(D, "[ε,k]")),
        (uniserial(A, "Z", "k"), uniserial(A, "Z", "k")),
        (uniserial(A, "Y", "ε"), direct_sum(simple_module(A, "k"), simple_module(A, "ε"))),
        (simple_module(B, "ω"), direct_sum(simple_module(B, "ω"), simple_module(B, "k"))),
    ]
    for m, n in cases:
        h = hom_space(m, n)
        assert h.dim == _brute_hom_dim(m, n)
        for row in h.basis:
            assert is_module_map(m, n, row.reshape(n.dim, m.dim))


def test_hom_with_trivial(A, B):
    pa = free_module(A, ["k", "ε"])
    assert dim_hom_from_trivial(pa) == 1 and dim_hom_to_trivial(pa) == 1
    pb = free_module(B, ["ω"])
    assert dim_hom_from_trivial(pb) == 0 and dim_hom_to_trivial(pb) == 0


@pytest.mark.parametrize("case", ["A", "B"])
@pytest.mark.parametrize("seed", range(6))
def test_core_filtration(case, seed):
    m = random_module(RandomSpec(seed, "mixed", 2, [], 20, {"case": case, "r": 1} if case == "A" else {"case": "B"}))
    lo, hi = core_filtration(m)
    assert is_submodule(m, lo) and is_submodule(m, hi)
    assert hi.contains_space(lo)


def test_trivial_towers_of_projective_cover(A):
    # the trivial part is the Z-string through the socle; the trivial top is P_k / Y P_k
    p = free_module(A, ["k"])
    assert trivial_socle_tower(p).dim == 3
    assert p.dim - trivial_top_tower(p).dim == 3
    assert trivial_socle_tower(simple_module(A, "k")).dim == 1
    assert trivial_socle_tower(simple_module(A, "ε")).dim == 0
    assert trivial_top_tower(simple_module(A, "ε")).dim == 1
