import numpy as np
import pytest

from stmodkit.acceptance import branch_fixtures_b, suite_module
from stmodkit.errors import InvariantViolation
from stmodkit.linalg import span
from stmodkit.module import direct_sum, free_module, frobenius_conjugate, regular_module, simple_module
from stmodkit.oracles import oracle_step5_minimum
from stmodkit.projectives import d_invariant
from stmodkit.solver import (
    SolverConfig,
    case_b_iterate,
    solve,
    step5_candidates,
    step5_exact,
    step5_exhaustive,
    subquotient,
    verify_filtration,
)

CASE_A = {"case": "A", "r": 1}
CASE_B = {"case": "B"}


def check(m, res):
    assert len(res.trace) == res.d_core
    assert all(r.d_after == r.d_before - 1 for r in res.trace)
    rep = verify_filtration(m, res)
    assert rep.passed, rep.failures
    return rep


def test_projective_needs_no_iterations(A, B):
    for a in (A, B):
        m = regular_module(a)
        res = solve(m)
        assert res.trace == [] and res.dim_M1 == 0 and res.codim_M2 == 0
        check(m, res)


def test_sign_module_one_drop(A):
    m = simple_module(A, "ε")
    res = solve(m)
    assert [r.step for r in res.trace] == ["4(1)"]
    check(m, res)


def test_omega_plus_projective(B):
    m = direct_sum(simple_module(B, "ω"), free_module(B, ["ω"]))
    assert d_invariant(m) == 1
    res = solve(m)
    assert [(r.d_before, r.d_after) for r in res.trace] == [(1, 0)]
    assert res.trace[0].step == "soc"
    check(m, res)


@pytest.mark.parametrize("idx", range(4))
def test_main_branch_fixtures_and_conjugates(idx):
    m = branch_fixtures_b()[idx]
    res = solve(m)
    assert {"yes", "no"} & {r.step for r in res.trace}
    check(m, res)
    c = frobenius_conjugate(m)
    rc = solve(c)
    assert rc.d_core == res.d_core
    assert [r.step for r in rc.trace] == [r.step for r in res.trace]
    check(c, rc)


@pytest.mark.parametrize(
    "case,seed,step",
    [(CASE_A, 1, "4(2)"), (CASE_A, 8, "5-8"), (CASE_B, 1, "ker"), (CASE_B, 45, "no"), (CASE_B, 86, "yes")],
)
def test_branches_are_reached(case, seed, step):
    m = suite_module(case, seed, 24)
    res = solve(m)
    assert step in [r.step for r in res.trace]
    check(m, res)


def test_case_a_r2(A2):
    for seed in range(3):
        m = suite_module(A2.descriptor(), seed, 30)
        check(m, solve(m))


def test_loewy_guard(B):
    # the solver only feeds core-reduced modules of Loewy length <= 3 to this step
    with pytest.raises(InvariantViolation) as e:
        case_b_iterate(regular_module(B))
    assert e.value.step == "le:ll3"


def test_verify_rejects_tampered_result(B):
    m = suite_module(CASE_B, 45, 24)
    f = m.field
    res = solve(m)
    # a line that some generator moves is not a submodule
    i = next(i for i in range(m.dim) if any(m[g][:, i].any() for g in ("X", "Y", "Z")))
    v = np.zeros(m.dim, dtype=np.int64)
    v[i] = 1
    res.M1 = span(f, m.dim, v)
    rep = verify_filtration(m, res)
    assert not rep.passed and "NotInvariant: M1" in rep.failures
    # the whole module is not cohomology-free (d > 0), so M1 = 0, M2 = M must fail
    res = solve(m)
    res.M1, res.M2 = span(f, m.dim, np.zeros((0, m.dim), dtype=np.int64)), span(f, m.dim, np.eye(m.dim, dtype=np.int64))
    assert d_invariant(m) > 0
    assert not verify_filtration(m, res).passed


def test_observer_sees_every_step(A):
    seen = []
    m = suite_module(CASE_A, 8, 24)
    res = solve(m, SolverConfig(observer=lambda mod, rec: seen.append((mod.dim, rec.step))))
    assert [s for _, s in seen] == [r.step for r in res.trace]


def test_step5_exact_matches_oracle():
    # collect the modules the solver hands to step 5 and compare with brute force
    sites = []
    for seed in range(40):
        m = suite_module(CASE_A, seed, 24)
        solve(m, SolverConfig(observer=lambda mod, rec: sites.append(mod) if rec.step == "5-8" else None))
    assert sites
    for mod in sites:
        _, got = step5_exact(mod)
        assert got == step5_exhaustive(mod, limit=mod.dim)[1]
        if mod.dim <= 8:
            assert got == oracle_step5_minimum(mod)[0]


def test_step5_candidates_are_subspaces(A):
    m = suite_module(CASE_A, 8, 24)
    s, y2m = step5_candidates(m)
    assert s.dim <= m.dim and y2m.dim <= m.dim


def test_subquotient(A):
    p = free_module(A, ["k"])
    from stmodkit.calculus import radical, socle

    q, lift = subquotient(p, socle(p), radical(p))
    assert q.dim == 7 and lift.shape == (9, 7)
