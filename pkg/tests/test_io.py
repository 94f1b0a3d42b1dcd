import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stmodkit.errors import InvalidModule
from stmodkit.io import canonical_json, module_from_json, module_to_dict, module_to_json, read_module, write_module
from stmodkit.module import free_module
from stmodkit.random_modules import RandomSpec, random_module


@settings(max_examples=30)
@given(seed=st.integers(0, 10**6), case=st.sampled_from(["A", "B"]))
def test_roundtrip_is_byte_identical(seed, case):
    desc = {"case": "A", "r": 1} if case == "A" else {"case": "B"}
    m = random_module(RandomSpec(seed, "mixed", 1, [], 16, desc))
    text = module_to_json(m)
    m2 = module_from_json(text)
    assert module_to_json(m2) == text
    for g in m.algebra.generators:
        assert np.array_equal(m[g], m2[g])


def test_file_roundtrip(tmp_path, B):
    m = free_module(B, ["ω̄"])
    p = tmp_path / "m.json"
    write_module(m, p)
    raw = p.read_bytes()
    assert raw.endswith(b"\n") and "ω̄".encode() in raw
    write_module(read_module(p), tmp_path / "n.json")
    assert (tmp_path / "n.json").read_bytes() == raw


def test_canonical_json_sorted():
    assert canonical_json({"b": 1, "a": np.int64(2)}) == '{"a":2,"b":1}\n'


def _doc(A):
    return module_to_dict(free_module(A, ["k"]))


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d.pop("action"), "missing field"),
        (lambda d: d.update(format_version=9), "format_version"),
        (lambda d: d.update(algebra={"case": "Q"}), "algebra"),
        (lambda d: d.update(field="F4"), "field"),
        (lambda d: d.update(dim=-1), "dim"),
        (lambda d: d["action"].pop("t"), "generators"),
        (lambda d: d["action"].update(t=[[7] * 9] * 9), "outside"),
        (lambda d: d["action"].update(t=[[1, 2]]), "integer matrix"),
    ],
)
def test_invalid_documents(A, mutate, fragment):
    d = _doc(A)
    mutate(d)
    with pytest.raises(InvalidModule) as e:
        module_from_json(json.dumps(d))
    assert fragment in str(e.value)


def test_relation_violations_reported(A):
    d = _doc(A)
    d["action"]["t"] = np.eye(9, dtype=int).tolist()
    with pytest.raises(InvalidModule) as e:
        module_from_json(json.dumps(d))
    assert e.value.violations == ["tY=−Yt"]


def test_not_json():
    with pytest.raises(InvalidModule):
        module_from_json("{not json")
