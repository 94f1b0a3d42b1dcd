"""Projective summands, restriction decompositions and the invariant d(M).

Projectivity is read off the Sylow socle element sigma: a module is projective
iff rank(sigma) * (number of nilpotent monomials) = dim M, and picking t-eigen
vectors whose sigma-images are independent gives generators of a maximal
projective (hence injective) submodule.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraPresentation, build_a4, build_d, subalgebra
from .calculus import eigen_part, radical, lift_eigen_preimage, socle
from .errors import InvariantViolation, UnclassifiedSummand
from .linalg import (
    Subspace,
    complement_basis,
    inverse,
    nullspace,
    rank,
    span,
    subspace_intersect,
)
from .module import ModuleRep, direct_sum, dual_module, free_module, restrict, simple_module, sub_module


# -- detection ---------------------------------------------------------------------------


def sigma_rank(m: ModuleRep) -> int:
    return rank(m.field, m.sigma)


def is_projective(m: ModuleRep) -> bool:
    return sigma_rank(m) * m.algebra.n_monomials == m.dim


def projective_counts(m: ModuleRep) -> dict[int, int]:
    """Number of P_lam summands for each eigenvalue lam: rank of sigma on E_lam."""
    f = m.field
    out = {}
    for lam in m.algebra.eigenvalues:
        e = m.eigenspace(lam)
        out[lam] = rank(f, f.matmul(m.sigma, e.basis.T)) if e.dim else 0
    return out


# -- free generators ----------------------------------------------------------------------


def orbit_matrix(m: ModuleRep, gens: list[np.ndarray]) -> np.ndarray:
    """Columns n v_i, generator-major then monomial order (the free-module basis)."""
    f = m.field
    if not len(gens):
        return np.zeros((m.dim, 0), dtype=np.int64)
    nm = m.algebra.n_monomials
    g = np.stack([np.asarray(v, dtype=np.int64) for v in gens], axis=1)
    r = f.matmul(m.stacked_monomials(), g).reshape(nm, m.dim, len(gens))
    return r.transpose(1, 2, 0).reshape(m.dim, len(gens) * nm)


def top_generators(m: ModuleRep, within: Subspace | None = None) -> tuple[list[np.ndarray], list[int]]:
    """t-eigenvectors mapping to a basis of M/Rad M (eigenvalue order)."""
    rad = radical(m)
    gens, eigs = [], []
    for lam in m.algebra.eigenvalues:
        e = m.eigenspace(lam)
        for v in complement_basis(eigen_part(m, rad, lam), inside=e):
            gens.append(v)
            eigs.append(lam)
    return gens, eigs


def free_generators(p: ModuleRep) -> tuple[list[int], np.ndarray]:
    """For projective p: eigenvalues and the invertible basis matrix B.

    B has columns n v_i, so B^-1 p B = free_module(alg, eigs) exactly.
    """
    gens, eigs = top_generators(p)
    b = orbit_matrix(p, gens)
    if b.shape != (p.dim, p.dim) or rank(p.field, b) != p.dim:
        raise InvariantViolation("free_generators", "module is not projective")
    return eigs, b


def _sigma_generators(m: ModuleRep) -> tuple[list[np.ndarray], list[int]]:
    """Eigenvectors whose sigma-images form a basis of sigma M."""
    f = m.field
    gens, eigs = [], []
    ker = nullspace(f, m.sigma)
    for lam in m.algebra.eigenvalues:
        e = m.eigenspace(lam)
        for v in complement_basis(subspace_intersect(ker, e), inside=e):
            gens.append(v)
            eigs.append(lam)
    return gens, eigs


# -- retractions onto injective submodules ------------------------------------------------------


def section(surj: np.ndarray, src: ModuleRep, tgt_eigs: list[int]) -> np.ndarray:
    """A module map s: F -> src with surj s = id, F = free_module(tgt_eigs).

    `surj` maps src onto the free module F (in its standard basis).
    The free generator e_i is lifted to an eigenvector, then extended.
    """
    f = src.field
    a = src.algebra
    one = a.word("1")
    nm = a.n_monomials
    gens = []
    for i, lam in enumerate(tgt_eigs):
        e = np.zeros(nm * len(tgt_eigs), dtype=np.int64)
        e[i * nm] = 1
        x = _solve_eigen(src, surj, e, lam)
        gens.append(x)
    return orbit_matrix(src, gens)


def _solve_eigen(m: ModuleRep, mat, target, lam):
    from .linalg import solve

    f = m.field
    u = solve(f, mat, target)
    if u is None:
        raise InvariantViolation("section", "map is not surjective")
    # mat intertwines t, so the lam-component of u still maps to the target
    return f.matmul(m.eigen_projector(lam), u)


def retraction(m: ModuleRep, iota: np.ndarray, eigs: list[int]) -> np.ndarray:
    """pi: M -> F with pi iota = id, for an injective module map iota: F -> M.

    Dualise: iota^T is a surjection M* -> F*; F* is projective, so it has a
    section s; then pi = s^T (in the basis where F* is free).
    """
    f = m.field
    fmod = free_module(m.algebra, eigs)
    fdual = dual_module(fmod)
    deigs, bd = free_generators(fdual)
    mdual = dual_module(m)
    # surjection M* -> F* -> (free basis of F*)
    surj = f.matmul(inverse(f, bd), iota.T)
    s = section(surj, mdual, deigs)  # F*-free -> M*
    # s' = s bd^-1 : F* -> M*, and pi = s'^T
    return f.matmul(s, inverse(f, bd)).T.copy()


# -- stripping ----------------------------------------------------------------------------


@dataclass
class DecompositionReport:
    """Multiplicities of indecomposable types; tags are the usual composition-factor names."""

    algebra: AlgebraPresentation
    counts: dict = dc_field(default_factory=dict)
    core_dim: int = 0

    def total_dim(self) -> int:
        return sum(type_dim(self.algebra, t) * c for t, c in self.counts.items()) + self.core_dim

    def nonzero(self) -> dict:
        return {k: v for k, v in self.counts.items() if v}

    def projective_part(self) -> dict:
        return {k: v for k, v in self.nonzero().items() if k.startswith("P_")}

    def nonprojective_part(self) -> dict:
        return {k: v for k, v in self.nonzero().items() if not k.startswith("P_")}

    def to_json(self) -> dict:
        out = {"algebra": self.algebra.descriptor(), "summands": self.nonzero()}
        if self.core_dim:
            out["core_dim"] = self.core_dim
        return out


def type_dim(a: AlgebraPresentation, tag: str) -> int:
    if tag.startswith("P_"):
        return a.n_monomials
    if tag.startswith("["):
        return tag.count(",") + 1
    return 1


@dataclass
class Stripped:
    core: ModuleRep
    core_basis: Subspace  # complement submodule C with M = Q ⊕ C
    projective: Subspace  # Q
    report: DecompositionReport
    generators: list = dc_field(default_factory=list)
    eigs: list = dc_field(default_factory=list)


def strip_projectives_full(m: ModuleRep) -> Stripped:
    f = m.field
    a = m.algebra
    gens, eigs = _sigma_generators(m)
    rep = DecompositionReport(a, {f"P_{a.simple_name(l)}": eigs.count(l) for l in a.eigenvalues})
    if not gens:
        whole = span(f, m.dim, np.eye(m.dim, dtype=np.int64))
        rep.core_dim = m.dim
        return Stripped(m, whole, span(f, m.dim, []), rep)
    iota = orbit_matrix(m, gens)
    q = span(f, m.dim, iota.T)
    if q.dim != iota.shape[1]:
        raise InvariantViolation("strip_projectives", "projective generators are dependent")
    pi = retraction(m, iota, eigs)
    c = nullspace(f, pi)
    core = sub_module(m, c, check=False)
    rep.core_dim = c.dim
    return Stripped(core, c, q, rep, gens, eigs)


def strip_projectives(m: ModuleRep) -> tuple[ModuleRep, DecompositionReport]:
    s = strip_projectives_full(m)
    return s.core, s.report


# -- restriction classification ---------------------------------------------------------------


def _rk_on(m: ModuleRep, mat, lam) -> int:
    e = m.eigenspace(lam)
    if e.dim == 0:
        return 0
    return rank(m.field, m.field.matmul(mat, e.basis.T))


def _decompose_d(m: ModuleRep) -> DecompositionReport:
    a = m.algebra
    plus, minus = a.eigenvalues
    y = m["Y"]
    y2 = m.monomial_matrix((2,))
    pk, pe = _rk_on(m, y2, plus), _rk_on(m, y2, minus)
    ke = _rk_on(m, y, plus) - pk - pe
    ek = _rk_on(m, y, minus) - pk - pe
    k = m.eigenspace(plus).dim - (2 * pk + pe + ke + ek)
    e = m.eigenspace(minus).dim - (pk + 2 * pe + ke + ek)
    counts = {"k": k, "ε": e, "[k,ε]": ke, "[ε,k]": ek, "P_k": pk, "P_ε": pe}
    if any(v < 0 for v in counts.values()):
        raise UnclassifiedSummand(f"negative multiplicity in {counts}")
    return DecompositionReport(a, counts)


_A4_X_UNISERIAL = {1: "[k,ω]", 2: "[ω,ω̄]", 3: "[ω̄,k]"}
_A4_Y_UNISERIAL = {1: "[k,ω̄]", 2: "[ω,k]", 3: "[ω̄,ω]"}


def _decompose_a4(m: ModuleRep) -> DecompositionReport:
    a = m.algebra
    f = m.field
    x, y = m["X"], m["Y"]
    xy = f.matmul(x, y)
    lams = a.eigenvalues
    w = lambda lam, c: int(f.mul(lam, c))  # noqa: E731
    p = {l: _rk_on(m, xy, l) for l in lams}
    xs = {l: _rk_on(m, x, l) - p[l] - p[w(l, 2)] for l in lams}
    ys = {l: _rk_on(m, y, l) - p[l] - p[w(l, 3)] for l in lams}
    s = {}
    for l in lams:
        used = 2 * p[l] + p[w(l, 2)] + p[w(l, 3)] + xs[l] + xs[w(l, 3)] + ys[l] + ys[w(l, 2)]
        s[l] = m.eigenspace(l).dim - used
    counts = {}
    for l in lams:
        counts[a.simple_name(l)] = s[l]
    for l in lams:
        counts[_A4_X_UNISERIAL[l]] = xs[l]
        counts[_A4_Y_UNISERIAL[l]] = ys[l]
    for l in lams:
        counts[f"P_{a.simple_name(l)}"] = p[l]
    if any(v < 0 for v in counts.values()):
        raise UnclassifiedSummand(f"negative multiplicity in {counts}")
    rep = DecompositionReport(a, counts)
    if rank_profile(m) != rank_profile(assemble(rep)):
        raise UnclassifiedSummand("rank profile does not match any sum of classified kA-modules")
    return rep


def decompose_restriction(m: ModuleRep) -> DecompositionReport:
    """Closed-form decomposition of a kD- or kA-module (or of the restriction of a kG-module)."""
    a = m.algebra
    if a.case in ("A", "B"):
        m = restrict(m, subalgebra(a))
        a = m.algebra
    if a.case == "D":
        return _decompose_d(m)
    if a.case == "A4":
        return _decompose_a4(m)
    raise ValueError(f"no closed-form classification over {a}")


def decompose(m: ModuleRep) -> DecompositionReport:
    """kD/kA: full closed form.  kG: projective summands plus the core dimension."""
    if m.algebra.case in ("D", "A4"):
        return decompose_restriction(m)
    return strip_projectives(m)[1]


# -- fixtures for the classified types -------------------------------------------------------------


def uniserial(a: AlgebraPresentation, gen: str, top) -> ModuleRep:
    """The length-two module with basis (v, gen v), t v = top v."""
    f = a.field
    if isinstance(top, str):
        top = a.eigenvalue_of(top)
    act = {g: np.zeros((2, 2), dtype=np.int64) for g in a.nilpotent}
    act[gen][1, 0] = 1
    act["t"] = np.diag([top, int(f.mul(a.eta_of(gen), top))]).astype(np.int64)
    low = int(f.mul(a.eta_of(gen), top))
    return ModuleRep(a, act, label=f"[{a.simple_name(top)},{a.simple_name(low)}]")


def type_module(a: AlgebraPresentation, tag: str) -> ModuleRep:
    if tag.startswith("P_"):
        return free_module(a, [a.eigenvalue_of(tag[2:])])
    if tag.startswith("["):
        top, low = tag[1:-1].split(",")
        tl, ll = a.eigenvalue_of(top), a.eigenvalue_of(low)
        for g in a.nilpotent:
            if int(a.field.mul(a.eta_of(g), tl)) == ll:
                return uniserial(a, g, tl)
        raise ValueError(tag)
    return simple_module(a, tag)


def type_tags(a: AlgebraPresentation) -> list[str]:
    if a.case == "D":
        return ["k", "ε", "[k,ε]", "[ε,k]", "P_k", "P_ε"]
    if a.case == "A4":
        names = [a.simple_name(l) for l in a.eigenvalues]
        return names + [_A4_X_UNISERIAL[l] for l in a.eigenvalues] + [
            _A4_Y_UNISERIAL[l] for l in a.eigenvalues
        ] + [f"P_{n}" for n in names]
    raise ValueError(a)


def assemble(rep: DecompositionReport) -> ModuleRep:
    from .module import zero_module

    pieces = []
    for tag, c in rep.nonzero().items():
        pieces += [type_module(rep.algebra, tag)] * c
    return direct_sum(*pieces) if pieces else zero_module(rep.algebra)


def rank_profile(m: ModuleRep) -> tuple:
    """Ranks of every nilpotent monomial and socle/radical dims, per t-eigenspace."""
    f = m.field
    a = m.algebra
    soc, rad = socle(m), radical(m)
    out = []
    for lam in a.eigenvalues:
        row = [m.eigenspace(lam).dim, eigen_part(m, soc, lam).dim, eigen_part(m, rad, lam).dim]
        for mono in a.monomials[1:]:
            row.append(_rk_on(m, m.monomial_matrix(mono), lam))
        out.append(tuple(row))
    return tuple(out)


# -- the induction measure --------------------------------------------------------------------------


def d_invariant(m: ModuleRep) -> int:
    """Case A: dim Soc(M restricted to D) - dim Y^2 M.  Case B: non-projective dimension over A."""
    f = m.field
    case = m.algebra.case
    if case in ("A", "D"):
        y = m["Y"]
        return m.dim - rank(f, y) - rank(f, f.matmul(y, y))
    if case in ("B", "A4"):
        xy = f.matmul(m["X"], m["Y"])
        return m.dim - 4 * rank(f, xy)
    raise ValueError(case)


def restriction_is_projective(m: ModuleRep) -> bool:
    return is_projective(restrict(m, subalgebra(m.algebra)))


__all__ = [
    "is_projective",
    "strip_projectives",
    "decompose_restriction",
    "d_invariant",
    "DecompositionReport",
    "free_generators",
]
