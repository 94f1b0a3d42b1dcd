"""The nine acceptance checks, shared by `stmodkit selftest` and the test suite.

Each check returns a CriterionResult; `run_all` prints one PASS/FAIL line each.
Random suites are seeded, so every run sees the same modules.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .algebra import build_case_a, build_case_b, build_d, subalgebra
from .calculus import core_filtration, loewy_length, radical, socle, trivial_socle_tower, trivial_top_tower
from .cohomology import duality_check, ext_hat, ext_hat_stable, syzygy, tate_cohomology
from .diagram import loewy_diagram
from .errors import InvariantViolation, UnclassifiedSummand
from .linalg import full_subspace, image, nullspace
from .module import induced_trivial, inflate, projective_indecomposable, regular_module, simple_module, submodule_generated
from .oracles import oracle_generic_decompose, oracle_step5_minimum, oracle_submodule_enum
from .projectives import decompose_restriction, is_projective, strip_projectives, type_dim, type_module
from .random_modules import RandomSpec, random_module, random_subalgebra_module
from .solver import SolverConfig, solve, step5_exact, subquotient, verify_filtration

WINDOW = 13  # degrees -6..6
CASE_A = {"case": "A", "r": 1}
CASE_B = {"case": "B"}


@dataclass(frozen=True)
class AcceptanceConfig:
    kd_modules: int = 500
    kd_max_dim: int = 12
    kb_modules: int = 200
    duality_pairs: int = 50
    duality_max_dim: int = 8
    duality_range: tuple = (-4, 4)
    duality_budget_s: float = 30.0
    solver_modules: int = 100
    max_dim_a: int = 40
    max_dim_b: int = 36
    oracle_modules: int = 100
    certificate_modules: int = 50
    regular_budget_s: float = 1.0
    seed_offset: int = 0


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number}: {self.title} ({self.seconds:.2f} s) {_short(self.detail)}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


def _short(detail: dict) -> str:
    keys = [k for k in detail if not isinstance(detail[k], (list, dict)) or len(detail[k]) <= 6]
    return "; ".join(f"{k}={detail[k]}" for k in keys[:8])


def _timed(fn):
    def wrapper(cfg: AcceptanceConfig | None = None) -> CriterionResult:
        cfg = cfg or AcceptanceConfig()
        t0 = time.perf_counter()
        res = fn(cfg)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- shared suites ----------------------------------------------------------------------------


def core_reduce(m):
    """Strip projectives, apply the core filtration, strip again."""
    m = strip_projectives(m)[0]
    s1, s2 = core_filtration(m)
    m, _ = subquotient(m, s1, s2, check=False)
    return strip_projectives(m)[0]


def suite_module(case: dict, seed: int, max_dim: int):
    return random_module(RandomSpec(seed, "mixed", 2, [], max_dim, case))


def branch_fixtures_b() -> list:
    """Case-B modules known to reach the main (non-early-exit) branch of the solver."""
    b = build_case_b()
    out = [syzygy(simple_module(b, lam), n) for lam in ("ω", "ω̄") for n in (-3, 3)]
    return [strip_projectives(m)[0] for m in out]


@dataclass
class SolverRun:
    case: str
    seed: int
    dim: int
    d_core: int = 0
    trace_ok: bool = False
    drops_ok: bool = False
    verify_failures: list = dc_field(default_factory=list)
    violation: str = ""
    steps: list = dc_field(default_factory=list)
    observed: list = dc_field(default_factory=list)  # (module, record) per iteration
    quotient: object = None
    certificate_valid: bool = False

    @property
    def ok(self) -> bool:
        return not self.violation and self.trace_ok and self.drops_ok and not self.verify_failures


def run_solver(m, case: str, seed: int) -> SolverRun:
    run = SolverRun(case, seed, m.dim)
    cfg = SolverConfig(observer=lambda mod, rec: run.observed.append((mod, rec)))
    try:
        res = solve(m, cfg)
    except InvariantViolation as e:
        run.violation = str(e)
        return run
    run.d_core = res.d_core
    run.steps = [r.step for r in res.trace]
    run.trace_ok = len(res.trace) == res.d_core
    run.drops_ok = all(r.d_after == r.d_before - 1 for r in res.trace)
    run.verify_failures = verify_filtration(m, res, WINDOW).failures
    run.quotient = res.quotient
    run.certificate_valid = res.certificate.valid
    return run


@lru_cache(maxsize=4)
def solver_suite(case: str, n: int, max_dim: int, offset: int = 0) -> tuple:
    desc = CASE_A if case == "A" else CASE_B
    return tuple(run_solver(suite_module(desc, offset + s, max_dim), case, offset + s) for s in range(n))


# -- criteria ------------------------------------------------------------------------------------


@_timed
def criterion_1(cfg: AcceptanceConfig) -> CriterionResult:
    """Regular modules strip into the projective indecomposables."""
    a, b = build_case_a(1), build_case_b()
    ra, rb = regular_module(a), regular_module(b)
    t0 = time.perf_counter()
    core_a, rep_a = strip_projectives(ra)
    core_b, rep_b = strip_projectives(rb)
    elapsed = time.perf_counter() - t0
    want_a = {"P_k": 1, "P_ε": 1}
    want_b = {"P_k": 1, "P_ω": 1, "P_ω̄": 1}
    dims_a = sorted(type_dim(a, t) for t in rep_a.nonzero())
    dims_b = sorted(type_dim(b, t) for t in rep_b.nonzero())
    nodes_a = [len(loewy_diagram(projective_indecomposable(a, n)).nodes) for n in ("k", "ε")]
    nodes_b = [len(loewy_diagram(projective_indecomposable(b, n)).nodes) for n in ("k", "ω", "ω̄")]
    ok = (
        rep_a.nonzero() == want_a
        and rep_b.nonzero() == want_b
        and core_a.dim == 0
        and core_b.dim == 0
        and dims_a == [9, 9]
        and dims_b == [8, 8, 8]
        and nodes_a == [9, 9]
        and nodes_b == [8, 8, 8]
        and elapsed < cfg.regular_budget_s
    )
    return CriterionResult(
        1,
        "regular modules: P_k+P_ε (9+9), P_k+P_ω+P_ω̄ (8+8+8)",
        ok,
        {"case_A": rep_a.nonzero(), "case_B": rep_b.nonzero(), "dims_A": dims_a, "dims_B": dims_b,
         "diagram_nodes_A": nodes_a, "diagram_nodes_B": nodes_b, "strip_seconds": round(elapsed, 4)},
    )


@_timed
def criterion_2(cfg: AcceptanceConfig) -> CriterionResult:
    """Random kD-modules decompose into the six listed types, matching the generic oracle."""
    d = build_d()
    allowed = {"k", "ε", "[k,ε]", "[ε,k]", "P_k", "P_ε"}
    bad_types, bad_dims, disagree, errors = [], [], [], []
    for s in range(cfg.kd_modules):
        seed = cfg.seed_offset + s
        m = random_subalgebra_module(d, seed, cfg.kd_max_dim)
        try:
            rep = decompose_restriction(m)
        except UnclassifiedSummand as e:
            errors.append((seed, str(e)))
            continue
        if not set(rep.nonzero()) <= allowed:
            bad_types.append(seed)
        if rep.total_dim() != m.dim:
            bad_dims.append(seed)
        if oracle_generic_decompose(m, seed=seed).nonzero() != rep.nonzero():
            disagree.append(seed)
    ok = not (bad_types or bad_dims or disagree or errors)
    return CriterionResult(
        2,
        f"kD classification on {cfg.kd_modules} random modules",
        ok,
        {"modules": cfg.kd_modules, "bad_types": bad_types, "bad_dims": bad_dims,
         "oracle_disagreements": disagree, "unclassified": errors[:5]},
    )


@_timed
def criterion_3(cfg: AcceptanceConfig) -> CriterionResult:
    """Core-reduced case-B modules restrict to the listed kA types; main branch sees only simples."""
    allowed = {"ω", "ω̄", "[ω,ω̄]", "[ω̄,ω]", "P_k", "P_ω", "P_ω̄"}
    bad, seen = [], {}
    for s in range(cfg.kb_modules):
        seed = cfg.seed_offset + s
        m = core_reduce(suite_module(CASE_B, seed, cfg.max_dim_b))
        try:
            rep = decompose_restriction(m).nonzero()
        except UnclassifiedSummand:
            bad.append(seed)
            continue
        for k in rep:
            seen[k] = seen.get(k, 0) + 1
        if not set(rep) <= allowed:
            bad.append(seed)
    runs = list(solver_suite("B", cfg.solver_modules, cfg.max_dim_b, cfg.seed_offset))
    runs += [run_solver(m, "B", -1 - i) for i, m in enumerate(branch_fixtures_b())]
    main, non_simple = 0, []
    for run in runs:
        for mod, rec in run.observed:
            if rec.step in ("yes", "no"):
                main += 1
                nonproj = decompose_restriction(mod).nonprojective_part()
                if any(type_dim(mod.algebra, k) != 1 for k in nonproj):
                    non_simple.append(run.seed)
    ok = not bad and not non_simple and main > 0
    return CriterionResult(
        3,
        f"kA restriction list on {cfg.kb_modules} core-reduced modules",
        ok,
        {"modules": cfg.kb_modules, "outside_list": bad, "types_seen": dict(sorted(seen.items())),
         "main_branch_iterations": main, "non_simple_at_main_branch": non_simple},
    )


@_timed
def criterion_4(cfg: AcceptanceConfig) -> CriterionResult:
    """Tate duality dim Ext^d(M,N) = dim Ext^(-d-1)(N,M) on random pairs."""
    lo, hi = cfg.duality_range
    failures = []
    t0 = time.perf_counter()
    for case in (CASE_A, CASE_B):
        for i in range(cfg.duality_pairs):
            s = cfg.seed_offset + 2 * i
            m = random_module(RandomSpec(s, "mixed", 1, [], cfg.duality_max_dim, case))
            n = random_module(RandomSpec(s + 1, "mixed", 1, [], cfg.duality_max_dim, case))
            rep = duality_check(m, n, lo, hi)
            if not rep.passed:
                failures.append((case["case"], s))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < cfg.duality_budget_s
    return CriterionResult(
        4,
        f"Tate duality on {cfg.duality_pairs} pairs per case, d in [{lo},{hi}]",
        ok,
        {"pairs": 2 * cfg.duality_pairs, "failures": failures, "seconds": round(elapsed, 2),
         "budget": cfg.duality_budget_s},
    )


@_timed
def criterion_5(cfg: AcceptanceConfig) -> CriterionResult:
    """Ext^1 of the kA-types computed directly and through the induced module."""
    b = build_case_b()
    a4 = subalgebra(b)
    ind = induced_trivial(b)
    k = simple_module(b, "k")
    table, discrepancies = {}, []
    for tag in ("ω", "ω̄", "[ω,ω̄]", "[ω̄,ω]"):
        u = inflate(type_module(a4, tag), b)
        direct = tate_cohomology(u, 1, 1).dims[1]
        induced = ext_hat(ind, u, 1)
        stable = ext_hat_stable(k, u, 1)
        table[tag] = {"H1_direct": direct, "Ext1_induced": induced, "H1_stable_hom": stable}
        if not direct == induced == stable:
            discrepancies.append(tag)
    ok = not discrepancies and all(v["H1_direct"] == 1 for v in table.values())
    return CriterionResult(
        5, "case-B Ext^1 values (two routes, plus stable Hom)", ok,
        {"table": table, "discrepancies": discrepancies, "induced_dim": ind.dim},
    )


@_timed
def criterion_6(cfg: AcceptanceConfig) -> CriterionResult:
    """Solver end-to-end on the random suites."""
    detail = {}
    ok = True
    for case, mx in (("A", cfg.max_dim_a), ("B", cfg.max_dim_b)):
        runs = solver_suite(case, cfg.solver_modules, mx, cfg.seed_offset)
        bad = [r.seed for r in runs if not r.ok]
        viol = [r.seed for r in runs if r.violation]
        steps = {}
        for r in runs:
            for s in r.steps:
                steps[s] = steps.get(s, 0) + 1
        detail[case] = {"modules": len(runs), "failed": bad, "violations": viol, "steps": steps,
                        "max_dim": max(r.dim for r in runs)}
        ok = ok and not bad and not viol
    return CriterionResult(6, f"solver end-to-end, {cfg.solver_modules} modules per case", ok, detail)


@_timed
def criterion_7(cfg: AcceptanceConfig) -> CriterionResult:
    """Loewy length <= 3 on every case-B iteration; XYM = Soc, Ker XY = Rad past the early exits."""
    runs = list(solver_suite("B", cfg.solver_modules, cfg.max_dim_b, cfg.seed_offset))
    runs += [run_solver(m, "B", -1 - i) for i, m in enumerate(branch_fixtures_b())]
    iters, main, ll_bad, eq_bad, cores_bad = 0, 0, [], [], []
    for run in runs:
        for mod, rec in run.observed:
            iters += 1
            if loewy_length(mod) > 3:
                ll_bad.append(run.seed)
            if rec.step in ("yes", "no"):
                main += 1
                f = mod.field
                xy = f.matmul(mod["X"], mod["Y"])
                xym = image(f, xy, full_subspace(f, mod.dim))
                if not (xym == socle(mod) and nullspace(f, xy) == radical(mod)):
                    eq_bad.append(run.seed)
    for s in range(cfg.solver_modules):
        core = core_reduce(suite_module(CASE_B, cfg.seed_offset + s, cfg.max_dim_b))
        if loewy_length(core) > 3:
            cores_bad.append(cfg.seed_offset + s)
    ok = not ll_bad and not eq_bad and not cores_bad and main > 0
    return CriterionResult(
        7, "case-B guards (Loewy length <= 3, XYM = Soc, Ker XY = Rad)", ok,
        {"iterations": iters, "main_branch": main, "loewy_failures": ll_bad, "xym_failures": eq_bad,
         "core_loewy_failures": cores_bad},
    )


@_timed
def criterion_8(cfg: AcceptanceConfig) -> CriterionResult:
    """Socle, radical, towers and the Step-5 choice against brute force."""
    mism = []
    checked = 0
    for case, bound in ((CASE_A, 5), (CASE_B, 4)):
        for s in range(cfg.oracle_modules):
            m = random_module(RandomSpec(cfg.seed_offset + s, "mixed", 1, [], bound, case))
            lat = oracle_submodule_enum(m)
            checked += 1
            for name, got, want in (
                ("socle", socle(m), lat.socle),
                ("radical", radical(m), lat.radical),
                ("trivial_socle", trivial_socle_tower(m), lat.trivial_socle),
                ("trivial_top", trivial_top_tower(m), lat.trivial_top),
            ):
                if got != want:
                    mism.append((case["case"], s, name))
    # Step 5 where the solver actually reaches it, and on arbitrary small modules
    step5_sites, step5_bad = 0, []
    for run in solver_suite("A", cfg.solver_modules, cfg.max_dim_a, cfg.seed_offset):
        for mod, rec in run.observed:
            if rec.step == "5-8" and mod.dim <= 8:
                step5_sites += 1
                best, _ = oracle_step5_minimum(mod)
                chosen = np.array(rec.witnesses.get("m_local", []), dtype=np.int64)
                got = rec.witnesses["dim_kGm"]
                real = submodule_generated(mod, [chosen]).dim if chosen.size else got
                if best != got or real != best:
                    step5_bad.append(run.seed)
    general_bad = []
    for s in range(cfg.oracle_modules):
        m = random_module(RandomSpec(cfg.seed_offset + s, "mixed", 1, [], 5, CASE_A))
        v, j = step5_exact(m)
        best, _ = oracle_step5_minimum(m)
        if j != best or (v is not None and submodule_generated(m, [v]).dim != best):
            general_bad.append(s)
    ok = not mism and not step5_bad and not general_bad and step5_sites > 0
    return CriterionResult(
        8, "oracle equivalence (dim <= 5 over F3, <= 4 over F4)", ok,
        {"lattice_modules": checked, "lattice_mismatches": mism, "step5_sites": step5_sites,
         "step5_mismatches": step5_bad, "step5_random_mismatches": general_bad},
    )


@_timed
def criterion_9(cfg: AcceptanceConfig) -> CriterionResult:
    """Certified modules have no Tate cohomology in the window; uncertified cores do."""
    from .cohomology import no_cohomology_certificate

    lo, hi = -(WINDOW // 2), WINDOW // 2
    certified = []
    for case, mx in (("A", cfg.max_dim_a), ("B", cfg.max_dim_b)):
        for run in solver_suite(case, cfg.solver_modules, mx, cfg.seed_offset):
            if run.quotient is not None and run.certificate_valid and run.quotient.dim:
                certified.append((case, run.seed, run.quotient))
    certified.sort(key=lambda x: (-x[2].dim, x[0], x[1]))
    certified = certified[: cfg.certificate_modules]
    cert_bad = [(c, s) for c, s, q in certified if not tate_cohomology(q, lo, hi).vanishes()]

    uncertified, s = [], 0
    while len(uncertified) < cfg.certificate_modules and s < 20 * cfg.certificate_modules:
        case = CASE_A if s % 2 == 0 else CASE_B
        seed = cfg.seed_offset + 10_000 + s
        s += 1
        m = core_reduce(suite_module(case, seed, cfg.max_dim_a if case is CASE_A else cfg.max_dim_b))
        if m.dim == 0 or is_projective(m) or no_cohomology_certificate(m).valid:
            continue
        uncertified.append((case["case"], seed, m))
    unc_bad = [(c, sd) for c, sd, m in uncertified if tate_cohomology(m, lo, hi).vanishes()]
    ok = (
        not cert_bad
        and not unc_bad
        and len(certified) == cfg.certificate_modules
        and len(uncertified) == cfg.certificate_modules
    )
    return CriterionResult(
        9, "certificate soundness sweep", ok,
        {"certified": len(certified), "certified_with_cohomology": cert_bad,
         "uncertified": len(uncertified), "uncertified_without_cohomology": unc_bad},
    )


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


def run_all(cfg: AcceptanceConfig | None = None, echo=print, only=None) -> list[CriterionResult]:
    out = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        res = fn(cfg)
        if echo:
            echo(res.line())
        out.append(res)
    return out


__all__ = ["AcceptanceConfig", "CriterionResult", "CRITERIA", "run_all", "core_reduce", "solver_suite"]
