import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stmodkit.io import module_to_json
from stmodkit.module import module_violations
from stmodkit.random_modules import CONSTRUCTIONS, RandomSpec, random_module, random_subalgebra_module


@pytest.mark.parametrize("construction", CONSTRUCTIONS)
@pytest.mark.parametrize("case", [{"case": "A", "r": 1}, {"case": "B"}])
def test_every_construction_is_valid_and_reproducible(construction, case):
    for seed in range(3):
        spec = RandomSpec(seed, construction, 1, [], 24, case)
        m = random_module(spec)
        assert module_violations(m) == [] and m.dim <= 24
        assert module_to_json(random_module(spec)) == module_to_json(m)


@settings(max_examples=20)
@given(seed=st.integers(0, 2**63))
def test_subalgebra_modules(seed, D, A4):
    for a in (D, A4):
        m = random_subalgebra_module(a, seed, 12)
        assert module_violations(m) == [] and m.dim <= 12


def test_extension_pieces(A):
    m = random_module(RandomSpec(1, "extension", 1, ["ε", "P_ε"], 40, A.descriptor()))
    assert m.dim == 10


def test_seeds_differ():
    outs = {module_to_json(random_module(RandomSpec(s, "mixed", 1, [], 20, {"case": "B"}))) for s in range(10)}
    assert len(outs) > 5


def test_unknown_construction():
    with pytest.raises(ValueError):
        random_module(RandomSpec(0, "nonsense"))
