"""Constructive filtration M1 <= M2 <= M with M2/M1 free of Tate cohomology.

The loop keeps a subquotient B/A of the input together with a lift of its
basis into M.  Each round strips projective summands (they are kept: they
go into M2 and carry no cohomology), applies the core filtration so that
Hom(k, -) and Hom(-, k) vanish, and if d > 0 runs one case step, which
returns S1 <= S2 with d(S2/S1) = d - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .algebra import AlgebraPresentation
from .calculus import (
    core_filtration,
    dim_hom_from_trivial,
    dim_hom_to_trivial,
    eigen_part,
    eigenvalue_of_vector,
    hyperplane_submodule,
    lift_eigen_preimage,
    loewy_length,
    radical,
    socle,
)
from .cohomology import NoCohomologyCertificate, no_cohomology_certificate, tate_cohomology, window_range
from .errors import InvariantViolation, NotInvariant
from .linalg import (
    Subspace,
    complement_basis,
    full_subspace,
    image,
    joint_kernel,
    nullspace,
    span,
    subspace_intersect,
    subspace_sum,
    zero_subspace,
)
from .module import ModuleRep, is_submodule, quotient, restrict, sub_module, validated
from .projectives import d_invariant, decompose_restriction, retraction, strip_projectives_full


@dataclass
class SolverConfig:
    step5: str = "exact"  # or "exhaustive" (brute force, small eigenspaces only)
    exhaustive_limit: int = 12
    check_steps: bool = True
    max_iterations: int = 10_000
    observer: Callable | None = None  # called as observer(module, record) after each step


@dataclass
class IterationRecord:
    d_before: int
    d_after: int
    step: str
    chosen_m: list | None = None
    witnesses: dict = dc_field(default_factory=dict)
    dims: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "d_before": self.d_before,
            "d_after": self.d_after,
            "step": self.step,
            "chosen_m": self.chosen_m,
            "witnesses": self.witnesses,
            "dims": self.dims,
        }


@dataclass
class PreambleRecord:
    d_before: int
    d_after: int
    projectives: dict
    removed_bottom: int
    removed_top: int


@dataclass
class FiltrationResult:
    module: ModuleRep
    M1: Subspace
    M2: Subspace
    quotient: ModuleRep
    certificate: NoCohomologyCertificate
    trace: list
    d_core: int
    preamble: list = dc_field(default_factory=list)

    @property
    def dim_M1(self) -> int:
        return self.M1.dim

    @property
    def codim_M2(self) -> int:
        return self.module.dim - self.M2.dim

    def to_json(self) -> dict:
        return {
            "algebra": self.module.algebra.descriptor(),
            "dim": self.module.dim,
            "M1": self.M1.basis.tolist(),
            "M2": self.M2.basis.tolist(),
            "dim_M1": self.dim_M1,
            "codim_M2": self.codim_M2,
            "quotient_dim": self.quotient.dim,
            "d_core": self.d_core,
            "trace": [r.to_json() for r in self.trace],
            "certificate": self.certificate.to_json(),
        }


# -- subquotients ---------------------------------------------------------------------------------


def subquotient(m: ModuleRep, s1: Subspace, s2: Subspace, check: bool = True) -> tuple[ModuleRep, np.ndarray]:
    """S2/S1 as a module, with the lift of its basis into m (columns)."""
    f = m.field
    if check:
        for s in (s1, s2):
            if not is_submodule(m, s):
                raise NotInvariant("subquotient of a non-submodule")
        if not s2.contains_space(s1):
            raise NotInvariant("S1 is not contained in S2")
    inner = sub_module(m, s2, check=False)
    s1_in = span(f, s2.dim, s2.coords(s1.basis)) if s1.dim else zero_subspace(f, s2.dim)
    q = quotient(inner, s1_in, check=False)
    lift = f.matmul(s2.basis.T, q.lift) if s2.dim else np.zeros((m.dim, 0), dtype=np.int64)
    return q.module, lift


def _lift_space(f, a_sub: Subspace, lift: np.ndarray, s: Subspace) -> Subspace:
    """A + lift(s) inside the ambient module."""
    vecs = f.matmul(lift, s.basis.T).T if s.dim else np.zeros((0, a_sub.ambient_dim), dtype=np.int64)
    return span(f, a_sub.ambient_dim, np.concatenate([a_sub.basis, vecs]))


def _violation(step: str, msg: str):
    raise InvariantViolation(step, msg)


def _first_outside(m: ModuleRep, big: Subspace, small: Subspace, eigs=None):
    """An eigenvector in big but not in small (both t-stable), or None."""
    for lam in eigs or m.algebra.eigenvalues:
        b = eigen_part(m, big, lam)
        c = complement_basis(eigen_part(m, small, lam), inside=b)
        if len(c):
            return c[0]
    return None


def _as_list(v) -> list:
    return [int(x) for x in np.asarray(v).reshape(-1)]


# -- case A -----------------------------------------------------------------------------------------


def _z_length(m: ModuleRep, v) -> int:
    """Smallest j with Z^j v = 0."""
    f = m.field
    z = m["Z"]
    j = 0
    w = np.asarray(v, dtype=np.int64)
    while np.any(w):
        w = f.matmul(z, w)
        j += 1
    return j


def step5_candidates(m: ModuleRep) -> tuple[Subspace, Subspace]:
    """S = {m in E_-1 ∩ Ker Y^2 : Zm in Y^2 M} and Y^2 M."""
    f = m.field
    y = m["Y"]
    y2 = f.matmul(y, y)
    eps = m.algebra.eigenvalues[1]
    y2m = image(f, y2, full_subspace(f, m.dim))
    cand = subspace_intersect(m.eigenspace(eps), nullspace(f, y2))
    from .linalg import subspace_preimage

    s = subspace_intersect(cand, subspace_preimage(f, m["Z"], y2m))
    return s, y2m


def step5_exact(m: ModuleRep):
    """The Step-5 element of minimal cyclic dimension, via the filtration S ∩ Ker Z^j.

    Once Step 4's early exits have failed, Y kills S, so dim kG m is the
    Z-length of m and the first j with (S ∩ Ker Z^j) not inside Y^2 M is the
    minimal dimension.  Outside that situation this falls back to brute force.
    """
    f = m.field
    s, y2m = step5_candidates(m)
    if s.dim and np.any(f.matmul(m["Y"], s.basis.T)):
        return step5_exhaustive(m, limit=m.dim)
    z = m["Z"]
    zp = np.eye(m.dim, dtype=np.int64)
    for j in range(1, m.algebra.nil_orders[0] + 1):
        zp = f.matmul(z, zp)
        sj = subspace_intersect(s, nullspace(f, zp))
        c = complement_basis(subspace_intersect(sj, y2m), inside=sj)
        if len(c):
            return c[0], j
    return None, None


def step5_exhaustive(m: ModuleRep, limit: int = 12):
    """Brute force over every vector of S: the minimal dim kG m and a first minimiser."""
    from .linalg import enumerate_subspace
    from .module import submodule_generated

    s, y2m = step5_candidates(m)
    if s.dim > limit:
        return None, None
    best, best_len = None, None
    for v in enumerate_subspace(s):
        if y2m.contains(v):
            continue
        ln = submodule_generated(m, [v]).dim
        if best_len is None or ln < best_len:
            best, best_len = v, ln
    return best, best_len


def _jordan_generators(f, z: np.ndarray) -> list[tuple[np.ndarray, int]]:
    """Generators b_i and sizes n_i of a Jordan decomposition of the nilpotent z."""
    n = z.shape[0]
    kers = [zero_subspace(f, n)]
    p = np.eye(n, dtype=np.int64)
    while kers[-1].dim < n:
        p = f.matmul(z, p)
        kers.append(nullspace(f, p))
    top = len(kers) - 1
    out = []
    for s in range(top, 0, -1):
        zk = image(f, z, kers[s + 1]) if s + 1 <= top else zero_subspace(f, n)
        low = subspace_sum(kers[s - 1], zk)
        # generators already chosen of larger size contribute Z-images inside zk
        for b in complement_basis(low, inside=kers[s]):
            out.append((b, s))
    return out


def case_a_iterate(m: ModuleRep, config: SolverConfig | None = None):
    """One pass of Steps 4-8; returns (S1, S2, record) with d(S2/S1) = d(M) - 1."""
    config = config or SolverConfig()
    f = m.field
    a = m.algebra
    eps = a.eigenvalues[1]
    d0 = d_invariant(m)
    y, z = m["Y"], m["Z"]
    y2 = f.matmul(y, y)
    whole = full_subspace(f, m.dim)
    y2m = image(f, y2, whole)
    soc = socle(m)
    rad = radical(m)
    big_l = nullspace(f, y2)

    # Step 4 (1): a socle vector outside Y^2 M spans a submodule ≅ ε
    v = _first_outside(m, soc, y2m)
    if v is not None:
        s1 = span(f, m.dim, v)
        rec = IterationRecord(d0, -1, "4(1)", _as_list(v), {"eigenvalue": int(eigenvalue_of_vector(m, v))})
        return s1, whole, rec
    # Step 4 (2): a vector of L outside Rad M gives a codimension-one M2
    v = _first_outside(m, big_l, rad)
    if v is not None:
        s2 = hyperplane_submodule(m, v)
        rec = IterationRecord(d0, -1, "4(2)", _as_list(v), {"eigenvalue": int(eigenvalue_of_vector(m, v))})
        return zero_subspace(f, m.dim), s2, rec

    # Step 5
    if config.step5 == "exhaustive":
        mvec, length = step5_exhaustive(m, config.exhaustive_limit)
        if mvec is None:
            mvec, length = step5_exact(m)
    else:
        mvec, length = step5_exact(m)
    if mvec is None:
        _violation("step5", "no element satisfies (i)-(iii) although d > 0")
    zm = f.matmul(z, mvec)
    if config.check_steps:
        if not eigenvalue_of_vector(m, mvec) == eps or y2m.contains(mvec) or not y2m.contains(zm):
            _violation("step5", "chosen m violates (i)-(iii)")
        if np.any(f.matmul(y, mvec)):
            _violation("step5", "Ym != 0 for the chosen m")
    u = lift_eigen_preimage(m, a.word("Y^2"), zm)
    if rad.contains(u):
        _violation("step5", "u lies in Rad(M)")

    # Step 6: M/L as a module over k[Z]/(Z^(3^r))
    q = quotient(m, big_l, check=False)
    zbar = q.module["Z"]
    ubar = f.matmul(q.project, u)
    n = _z_length(q.module, ubar)
    if n + 1 != length:
        _violation("step6", f"dim kGm = {length} but Z-length of u mod L is {n}")
    gens = _jordan_generators(f, zbar)
    chain = []
    for b, s in gens:
        for k in range(s):
            chain.append(b)
            b = f.matmul(zbar, b)
    basis_cols = np.stack(chain, axis=1) if chain else np.zeros((q.module.dim, 0), dtype=np.int64)
    from .linalg import solve

    coords = solve(f, basis_cols, ubar)
    if coords is None:
        _violation("step6", "Jordan basis does not span M/L")
    pick, off = None, 0
    for idx, (b, s) in enumerate(gens):
        if s == n and coords[off] != 0 and pick is None:
            pick = idx
        off += s
    if pick is None:
        _violation("step6", "no uniserial summand of length n with unit coefficient")
    v_cols, off = [], 0
    for idx, (b, s) in enumerate(gens):
        if idx != pick:
            v_cols.extend(range(off, off + s))
        off += s
    vbar = span(f, q.module.dim, basis_cols[:, v_cols].T) if v_cols else zero_subspace(f, q.module.dim)

    # Step 7: lift through N = Ker Y, taking the ε-part and its Y-image
    big_n = nullspace(f, y)
    v_tilde = q.preimage(vbar)
    v_minus = eigen_part(m, v_tilde, eps)
    v_hat = subspace_sum(subspace_sum(big_n, v_minus), image(f, y, v_minus))

    # Step 8
    s1 = span(f, m.dim, [f.matmul(m.monomial_matrix((i, 0)), mvec) for i in range(length)])
    s2 = v_hat
    if config.check_steps:
        if not is_submodule(m, s1) or not is_submodule(m, s2):
            _violation("step8", "M1 or M2 is not a submodule")
        if not s2.contains_space(s1):
            _violation("step8", "M1 is not inside M2")
        if m.dim - s2.dim != 2 * n:
            _violation("step7", f"codim M2 = {m.dim - s2.dim}, expected {2 * n}")
    rec = IterationRecord(
        d0,
        -1,
        "5-8",
        _as_list(mvec),
        {
            "m_local": _as_list(mvec),
            "u": _as_list(u),
            "n": int(n),
            "dim_kGm": int(length),
            "alpha_unit": int(coords[sum(s for _, s in gens[:pick])]),
            "jordan_sizes": [int(s) for _, s in gens],
        },
    )
    return s1, s2, rec


# -- case B -----------------------------------------------------------------------------------------


def _line_algebra(a: AlgebraPresentation, gen: str) -> AlgebraPresentation:
    """k[gen]/(gen^2) twisted by t: the algebra acting on M/(the other images)."""
    return AlgebraPresentation(
        case=f"{gen}-line", field=a.field, nilpotent=(gen,), nil_orders=(2,), t_order=3, eta=(a.eta_of(gen),)
    )


def _complement_of_cyclic(m: ModuleRep, gen: str, w1, keep) -> Subspace:
    """A submodule C with C ⊕ kG w1 = m, C ∋ keep; only `gen` and t act nontrivially on m.

    kG w1 is free over the line algebra, hence injective there, so it splits
    off; quotienting by k·keep first forces keep into the complement.
    """
    f = m.field
    line = _line_algebra(m.algebra, gen)
    if np.any(keep):
        ks = span(f, m.dim, keep)
        q = quotient(m, ks, check=False)
        mm, lift_q = q.module, q
        w = f.matmul(q.project, w1)
    else:
        mm, lift_q, w = m, None, w1
    mb = restrict(mm, line)
    iota = np.stack([w, f.matmul(mb[gen], w)], axis=1)
    pi = retraction(mb, iota, [int(eigenvalue_of_vector(mm, w))])
    c = nullspace(f, pi)
    if lift_q is not None:
        c = lift_q.preimage(c)
    return c


def case_b_iterate(m: ModuleRep, config: SolverConfig | None = None):
    """One round of the A4 x Z/2 argument; returns (S1, S2, record) with d(S2/S1) = d(M) - 1."""
    config = config or SolverConfig()
    f = m.field
    a = m.algebra
    d0 = d_invariant(m)
    x, y, z = m["X"], m["Y"], m["Z"]
    xy = f.matmul(x, y)
    whole = full_subspace(f, m.dim)
    if loewy_length(m) > 3:
        _violation("le:ll3", f"Loewy length {loewy_length(m)} > 3")
    soc = socle(m)
    rad = radical(m)
    xym = image(f, xy, whole)
    ker_xy = nullspace(f, xy)

    v = _first_outside(m, soc, xym)
    if v is not None:
        rec = IterationRecord(d0, -1, "soc", _as_list(v), {"eigenvalue": int(eigenvalue_of_vector(m, v))})
        return span(f, m.dim, v), whole, rec
    v = _first_outside(m, ker_xy, rad)
    if v is not None:
        rec = IterationRecord(d0, -1, "ker", _as_list(v), {"eigenvalue": int(eigenvalue_of_vector(m, v))})
        return zero_subspace(f, m.dim), hyperplane_submodule(m, v), rec
    if not (xym == soc and ker_xy == rad):
        _violation("le:XYM", "XYM != Soc(M) or Ker(XY) != Rad(M)")
    res = decompose_restriction(m).nonzero()
    bad = [k for k in res if not k.startswith("P_") and k.startswith("[")]
    if bad:
        _violation("le:XYM/restriction", f"non-simple non-projective summands {bad} of the kA restriction")

    omega, omega_bar = a.eigenvalues[1], a.eigenvalues[2]
    simple_soc = joint_kernel(f, [x, y], m.dim)
    mvec = _first_outside(m, simple_soc, xym, eigs=[omega])
    if mvec is not None:
        lam, p, q_ = omega, "X", "Y"  # m1 goes by X to a new vector, by Y into the k-line
    else:
        mvec = _first_outside(m, simple_soc, xym, eigs=[omega_bar])
        lam, p, q_ = omega_bar, "Y", "X"
    if mvec is None:
        _violation("le:MdaA", "no simple ω or ω̄ summand although d > 0")
    zm = f.matmul(z, mvec)
    m1 = lift_eigen_preimage(m, a.word("XY"), zm)
    pm1 = f.matmul(m[p], m1)
    qm1 = f.matmul(m[q_], m1)
    if eigenvalue_of_vector(m, m1) != lam:
        _violation("pr:eigenvalues", "m1 is not an eigenvector with the eigenvalue of m")
    if np.any(f.matmul(z, qm1)):
        _violation("hom-k", f"Z{q_}m1 != 0")
    other = subspace_sum(image(f, m[q_], whole), image(f, z, whole))  # YM + ZM (or XM + ZM)
    wit = {"m1": _as_list(m1), "eigenvalue": int(lam), "zm": _as_list(zm), "restriction": res}
    if other.contains(pm1):
        if np.any(f.matmul(z, pm1)):
            _violation("hom-k", f"Z{p}m1 != 0")
        s1 = span(f, m.dim, [mvec, zm, pm1, qm1])
        s2 = hyperplane_submodule(m, m1, keep=[mvec])
        step = "yes"
    else:
        s1 = span(f, m.dim, [mvec, zm, qm1])
        qt = quotient(m, other, check=False)
        c = _complement_of_cyclic(qt.module, p, f.matmul(qt.project, m1), f.matmul(qt.project, mvec))
        s2 = qt.preimage(c)
        step = "no"
        if config.check_steps and m.dim - s2.dim != 2:
            _violation("no-branch", f"codim M2 = {m.dim - s2.dim}, expected 2")
    if config.check_steps:
        if not is_submodule(m, s1) or not is_submodule(m, s2):
            _violation(f"{step}-branch", "M1 or M2 is not a submodule")
        if not s2.contains_space(s1):
            _violation(f"{step}-branch", "M1 is not inside M2")
        if s2.contains(m1):
            _violation(f"{step}-branch", "M2 contains m1")
    rec = IterationRecord(d0, -1, step, _as_list(mvec), wit)
    return s1, s2, rec


# -- the driver ------------------------------------------------------------------------------------------


@dataclass
class _State:
    ambient: ModuleRep
    a_sub: Subspace
    cur: ModuleRep
    lift: np.ndarray
    kept: Subspace


def _strip(st: _State) -> dict:
    f = st.ambient.field
    s = strip_projectives_full(st.cur)
    if s.projective.dim:
        st.kept = subspace_sum(st.kept, _lift_space(f, st.a_sub, st.lift, s.projective))
        st.lift = f.matmul(st.lift, s.core_basis.basis.T)
        st.cur = s.core
    return s.report.projective_part()


def _preamble(st: _State) -> PreambleRecord:
    f = st.ambient.field
    d_before = d_invariant(st.cur)
    projs = dict(_strip(st))
    s1, s2 = core_filtration(st.cur)
    removed_bottom, removed_top = s1.dim, st.cur.dim - s2.dim
    if removed_bottom or removed_top:
        st.a_sub = _lift_space(f, st.a_sub, st.lift, s1)
        st.cur, local = subquotient(st.cur, s1, s2, check=False)
        st.lift = f.matmul(st.lift, local)
        for k, v in _strip(st).items():
            projs[k] = projs.get(k, 0) + v
    if dim_hom_from_trivial(st.cur) or dim_hom_to_trivial(st.cur):
        _violation("cor:core", "Hom conditions fail after the core filtration")
    return PreambleRecord(d_before, d_invariant(st.cur), projs, removed_bottom, removed_top)


def solve(m: ModuleRep, config: SolverConfig | None = None) -> FiltrationResult:
    """Submodules M1 <= M2 of m with M2/M1 certified free of Tate cohomology."""
    config = config or SolverConfig()
    m = validated(m)
    f = m.field
    case = m.algebra.case
    if case not in ("A", "B"):
        raise ValueError(f"solve needs a case A or B module, got {m.algebra}")
    step = case_a_iterate if case == "A" else case_b_iterate
    st = _State(m, zero_subspace(f, m.dim), m, np.eye(m.dim, dtype=np.int64), zero_subspace(f, m.dim))
    trace, preamble = [], []
    d_core = None
    for _ in range(config.max_iterations):
        pre = _preamble(st)
        preamble.append(pre)
        if d_core is None:
            d_core = pre.d_after
        d = pre.d_after
        if d == 0:
            break
        s1, s2, rec = step(st.cur, config)
        nxt, local = subquotient(st.cur, s1, s2, check=config.check_steps)
        rec.d_after = d_invariant(nxt)
        rec.dims = {"module": st.cur.dim, "M1": s1.dim, "codim_M2": st.cur.dim - s2.dim}
        if rec.chosen_m is not None:
            rec.chosen_m = _as_list(f.matmul(st.lift, np.array(rec.chosen_m, dtype=np.int64)))
        trace.append(rec)
        if config.observer is not None:
            config.observer(st.cur, rec)
        if rec.d_after != rec.d_before - 1:
            _violation(f"d-drop/{rec.step}", f"d went {rec.d_before} -> {rec.d_after}")
        st.a_sub = _lift_space(f, st.a_sub, st.lift, s1)
        st.cur = nxt
        st.lift = f.matmul(st.lift, local)
    else:
        _violation("termination", "iteration limit reached")
    m1 = st.a_sub
    m2 = subspace_sum(_lift_space(f, st.a_sub, st.lift, full_subspace(f, st.cur.dim)), st.kept)
    quot, _ = subquotient(m, m1, m2, check=config.check_steps)
    cert = no_cohomology_certificate(quot)
    if not cert.valid:
        _violation("pr:res-nocoho", "final quotient has no valid certificate")
    return FiltrationResult(m, m1, m2, quot, cert, trace, d_core or 0, preamble)


# -- independent verification -------------------------------------------------------------------------------


@dataclass
class VerificationReport:
    m1_invariant: bool
    m2_invariant: bool
    nested: bool
    certificate_valid: bool
    window: tuple
    tate_dims: dict
    dim_M1: int
    codim_M2: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failures": self.failures,
            "m1_invariant": self.m1_invariant,
            "m2_invariant": self.m2_invariant,
            "nested": self.nested,
            "certificate_valid": self.certificate_valid,
            "window": list(self.window),
            "tate_dims": [self.tate_dims[d] for d in sorted(self.tate_dims)],
            "dim_M1": self.dim_M1,
            "codim_M2": self.codim_M2,
        }


def verify_filtration(m: ModuleRep, result: FiltrationResult, window: int | None = None) -> VerificationReport:
    lo, hi = window_range(window)
    fails = []
    inv1 = is_submodule(m, result.M1)
    inv2 = is_submodule(m, result.M2)
    nested = result.M2.contains_space(result.M1)
    if not inv1:
        fails.append("NotInvariant: M1")
    if not inv2:
        fails.append("NotInvariant: M2")
    if not nested:
        fails.append("M1 not inside M2")
    cert_ok, dims = False, {}
    if inv1 and inv2 and nested:
        quot, _ = subquotient(m, result.M1, result.M2, check=False)
        cert_ok = no_cohomology_certificate(quot).valid
        dims = tate_cohomology(quot, lo, hi).dims
        if not cert_ok:
            fails.append("certificate invalid")
        if any(dims.values()):
            fails.append(f"Tate cohomology nonzero in degrees {[d for d, v in dims.items() if v]}")
    return VerificationReport(
        inv1, inv2, nested, cert_ok, (lo, hi), dims, result.M1.dim, m.dim - result.M2.dim, fails
    )


__all__ = [
    "SolverConfig",
    "IterationRecord",
    "FiltrationResult",
    "solve",
    "case_a_iterate",
    "case_b_iterate",
    "verify_filtration",
    "subquotient",
]
