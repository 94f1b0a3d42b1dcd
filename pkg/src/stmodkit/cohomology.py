"""Resolutions, Tate cohomology, stable Hom and the no-cohomology certificate.

Free modules are kept in the standard basis of `free_module(alg, eigs)`:
basis vector (i, n) = n e_i, a t-eigenvector with eigenvalue chi(n) eig_i.
Module maps between free modules are then block diagonal by eigenvalue,
so kernels are computed one eigen block at a time.

The complete resolution of M is indexed as

    ... -> F_1 -> F_0 -> F_-1 -> F_-2 -> ...,     d_n : F_n -> F_(n-1)

with F_n (n >= 0) the minimal projective resolution, F_-1-i the minimal
injective coresolution, and d_0 = (M -> F_-1) o (F_0 -> M).  Then

    Ext^^n(M, N) = H^n(Hom(F_*, N)),   Hom(F_n, N) = sum_i E_(eig_i)(N).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraPresentation, subalgebra
from .calculus import dim_hom_from_trivial, eigen_part, hom_space, radical, socle
from .linalg import Subspace, complement_basis, nullspace, rank, span
from .module import ModuleRep, dual_module, free_module, restrict, simple_module, sub_module
from .projectives import is_projective, orbit_matrix, sigma_rank, strip_projectives_full

DEFAULT_WINDOW = 13


def default_window() -> int:
    """DEFAULT_WINDOW, unless STMODKIT_WINDOW says otherwise."""
    raw = os.environ.get("STMODKIT_WINDOW")
    if not raw:
        return DEFAULT_WINDOW
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"STMODKIT_WINDOW must be an integer, got {raw!r}") from None


def window_range(w: int | None = None) -> tuple[int, int]:
    """W consecutive degrees starting at -(W // 2); W = 13 gives [-6, 6]."""
    w = default_window() if w is None else w
    if w < 1:
        raise ValueError(f"window must be positive, got {w}")
    lo = -(w // 2)
    return lo, lo + w - 1


# -- free-module bookkeeping --------------------------------------------------------------


def basis_eigs(a: AlgebraPresentation, eigs) -> np.ndarray:
    """t-eigenvalue of every standard basis vector of free_module(a, eigs)."""
    f = a.field
    chis = np.array([a.chi(mono) for mono in a.monomials], dtype=np.int64)
    if not len(eigs):
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([f.mul(chis, int(l)) for l in eigs])


def equivariant_nullspace(f, a: AlgebraPresentation, mat, src_eigs: np.ndarray, tgt_eigs: np.ndarray) -> Subspace:
    """Kernel of a t-equivariant map between eigen-adapted bases, block by block."""
    n = mat.shape[1]
    rows = []
    for lam in a.eigenvalues:
        cols = np.flatnonzero(src_eigs == lam)
        if cols.size == 0:
            continue
        rws = np.flatnonzero(tgt_eigs == lam)
        block = mat[np.ix_(rws, cols)]
        ker = nullspace(f, block)
        if ker.dim:
            full = np.zeros((ker.dim, n), dtype=np.int64)
            full[:, cols] = ker.basis
            rows.append(full)
    if not rows:
        return span(f, n, [])
    return span(f, n, np.concatenate(rows))


def _cover_of_subspace(fmod: ModuleRep, k: Subspace) -> tuple[list[int], np.ndarray]:
    """Top generators of the submodule k of a module: eigenvalues and orbit matrix."""
    f = fmod.field
    a = fmod.algebra
    if k.dim == 0:
        return [], np.zeros((fmod.dim, 0), dtype=np.int64)
    rad = span(f, fmod.dim, np.concatenate([f.matmul(g, k.basis.T).T for g in fmod.nil_mats]))
    gens, eigs = [], []
    for lam in a.eigenvalues:
        k_lam = eigen_part(fmod, k, lam)
        for v in complement_basis(eigen_part(fmod, rad, lam), inside=k_lam):
            gens.append(v)
            eigs.append(lam)
    return eigs, orbit_matrix(fmod, gens)


def dual_free_permutation(a: AlgebraPresentation, eigs) -> tuple[list[int], np.ndarray]:
    """free_module(eigs)* is free: returns (eigs', Pi) with Pi: free(eigs') -> free(eigs)*.

    Pi sends n e'_i to the dual basis vector of (sigma/n) e_i, and
    eig'_i = (chi(sigma) eig_i)^-1.
    """
    f = a.field
    nm = a.n_monomials
    top = a.top_monomial
    cs = a.chi(top)
    new = [int(f.inv(f.mul(cs, int(l)))) for l in eigs]
    pi = np.zeros((nm * len(eigs), nm * len(eigs)), dtype=np.int64)
    for i in range(len(eigs)):
        for j, mono in enumerate(a.monomials):
            quo = tuple(t - e for t, e in zip(top, mono))
            pi[i * nm + a.monomial_index[quo], i * nm + j] = 1
    return new, pi


# -- covers, hulls and resolutions -------------------------------------------------------------


def projective_cover(m: ModuleRep) -> tuple[ModuleRep, np.ndarray]:
    eigs, surj = _cover_of_subspace(m, span(m.field, m.dim, np.eye(m.dim, dtype=np.int64)))
    return free_module(m.algebra, eigs), surj


def injective_hull(m: ModuleRep) -> tuple[ModuleRep, np.ndarray]:
    f = m.field
    p, surj = projective_cover(dual_module(m))
    eigs = _free_eigs(p)
    new, pi = dual_free_permutation(m.algebra, eigs)
    # surj^T : M -> P*, then into the free basis of P* via Pi^-1 = Pi^T
    return free_module(m.algebra, new), f.matmul(pi.T, surj.T)


def _free_eigs(p: ModuleRep) -> list[int]:
    nm = p.algebra.n_monomials
    return [int(p["t"][i * nm, i * nm]) for i in range(p.dim // nm)]


@dataclass
class Resolution:
    """Minimal projective resolution (F_0 <- F_1 <- ...) or injective coresolution.

    terms[i] lists the eigenvalues of the free generators of the i-th term.
    projective: differentials[i] : F_(i+1) -> F_i, augmentation : F_0 -> M.
    injective:  differentials[i] : I_i -> I_(i+1), augmentation : M -> I_0.
    """

    module: ModuleRep
    direction: str
    terms: list = dc_field(default_factory=list)
    differentials: list = dc_field(default_factory=list)
    augmentation: np.ndarray | None = None
    # state for extending the projective direction
    _kernel: Subspace | None = None

    @property
    def algebra(self) -> AlgebraPresentation:
        return self.module.algebra

    def term(self, i: int) -> ModuleRep:
        return free_module(self.algebra, self.terms[i])

    def term_dims(self) -> list[int]:
        nm = self.algebra.n_monomials
        return [nm * len(t) for t in self.terms]

    def __len__(self):
        return len(self.terms)


def _projective_resolution(m: ModuleRep, length: int) -> Resolution:
    f = m.field
    a = m.algebra
    res = Resolution(m, "projective")
    if length <= 0:
        return res
    p, surj = projective_cover(m)
    eigs = _free_eigs(p)
    res.terms.append(eigs)
    res.augmentation = surj
    ker = nullspace(f, surj) if surj.size else span(f, p.dim, np.eye(p.dim, dtype=np.int64))
    for _ in range(1, length):
        if ker.dim == 0:
            break
        prev = free_module(a, res.terms[-1])
        new_eigs, d = _cover_of_subspace(prev, ker)
        res.terms.append(new_eigs)
        res.differentials.append(d)
        ker = equivariant_nullspace(f, a, d, basis_eigs(a, new_eigs), basis_eigs(a, res.terms[-2]))
    res._kernel = ker
    return res


def _injective_resolution(m: ModuleRep, length: int) -> Resolution:
    f = m.field
    a = m.algebra
    pres = _projective_resolution(dual_module(m), length)
    res = Resolution(m, "injective")
    perms = []
    for eigs in pres.terms:
        new, pi = dual_free_permutation(a, eigs)
        res.terms.append(new)
        perms.append(pi)
    if pres.terms:
        res.augmentation = f.matmul(perms[0].T, pres.augmentation.T)
    for i, d in enumerate(pres.differentials):
        # d : P_(i+1) -> P_i dualises to P_i* -> P_(i+1)*
        res.differentials.append(f.matmul(perms[i + 1].T, f.matmul(d.T, perms[i])))
    return res


def minimal_resolution(m: ModuleRep, length: int, direction: str = "projective") -> Resolution:
    """The first `length` terms (fewer if the resolution stops at a projective)."""
    if direction == "projective":
        return _projective_resolution(m, length)
    if direction == "injective":
        return _injective_resolution(m, length)
    raise ValueError(direction)


def syzygy(m: ModuleRep, n: int = 1) -> ModuleRep:
    """Omega^n(M): kernels of projective covers (n > 0) or cokernels of injective hulls (n < 0)."""
    from .module import quotient_module

    cur = m
    for _ in range(abs(n)):
        if n > 0:
            p, surj = projective_cover(cur)
            if cur.dim == 0:
                return cur
            cur = sub_module(p, nullspace(cur.field, surj), check=False)
        else:
            i, inj = injective_hull(cur)
            if cur.dim == 0:
                return cur
            cur = quotient_module(i, span(cur.field, i.dim, inj.T))
    return cur


# -- complete resolutions and Ext^ -----------------------------------------------------------------


@dataclass
class CompleteResolution:
    module: ModuleRep
    proj: Resolution
    inj: Resolution

    @property
    def algebra(self):
        return self.module.algebra

    def term(self, n: int) -> list[int]:
        if n >= 0:
            return self.proj.terms[n] if n < len(self.proj.terms) else []
        i = -1 - n
        return self.inj.terms[i] if i < len(self.inj.terms) else []

    def differential(self, n: int) -> np.ndarray:
        """d_n : F_n -> F_(n-1)."""
        f = self.module.field
        nm = self.algebra.n_monomials
        rows, cols = nm * len(self.term(n - 1)), nm * len(self.term(n))
        if rows == 0 or cols == 0:
            return np.zeros((rows, cols), dtype=np.int64)
        if n >= 1:
            return self.proj.differentials[n - 1]
        if n == 0:
            return f.matmul(self.inj.augmentation, self.proj.augmentation)
        return self.inj.differentials[-n - 1]

    def verify(self, lo: int, hi: int) -> bool:
        """d^2 = 0 and exactness at every F_n, lo < n < hi."""
        f = self.module.field
        for n in range(lo + 1, hi):
            d_in, d_out = self.differential(n + 1), self.differential(n)
            if d_in.size and d_out.size and np.any(f.matmul(d_out, d_in)):
                return False
            dim_n = d_out.shape[1]
            if dim_n - rank(f, d_out) != rank(f, d_in):
                return False
        return True


def complete_resolution(m: ModuleRep, lo: int, hi: int) -> CompleteResolution:
    """Enough of the complete resolution to compute Ext^n for lo <= n <= hi."""
    n_proj = max(hi + 2, 1)
    n_inj = max(-lo + 1, 1)
    return CompleteResolution(m, minimal_resolution(m, n_proj), minimal_resolution(m, n_inj, "injective"))


_TRIVIAL_CACHE: dict = {}


def trivial_resolution(a: AlgebraPresentation, lo: int, hi: int) -> CompleteResolution:
    key = a
    cached = _TRIVIAL_CACHE.get(key)
    if cached is not None and cached[0] <= lo and cached[1] >= hi:
        return cached[2]
    lo2 = min(lo, cached[0]) if cached else lo
    hi2 = max(hi, cached[1]) if cached else hi
    cr = complete_resolution(simple_module(a, 1), lo2, hi2)
    _TRIVIAL_CACHE[key] = (lo2, hi2, cr)
    return cr


class CochainComplex:
    """Hom(F_*, N) for a complete resolution F_*, with cached ranks."""

    def __init__(self, cr: CompleteResolution, n: ModuleRep):
        self.cr = cr
        self.n = n
        a = n.algebra
        f = n.field
        self._eig = {lam: n.eigenspace(lam) for lam in a.eigenvalues}
        if n.dim:
            self._stack = np.stack([n.monomial_matrix(mono) for mono in a.monomials]).reshape(
                a.n_monomials, n.dim * n.dim
            )
        self._ranks: dict = {}
        self._f = f

    def cochain_dim(self, k: int) -> int:
        return sum(self._eig[lam].dim for lam in self.cr.term(k))

    def delta(self, k: int) -> np.ndarray:
        """delta^k : Hom(F_k, N) -> Hom(F_(k+1), N), precomposition with d_(k+1)."""
        f = self._f
        a = self.n.algebra
        nm = a.n_monomials
        src, tgt = self.cr.term(k), self.cr.term(k + 1)
        rows, cols = self.cochain_dim(k + 1), self.cochain_dim(k)
        out = np.zeros((rows, cols), dtype=np.int64)
        if rows == 0 or cols == 0:
            return out
        d = self.cr.differential(k + 1)
        dn = self.n.dim
        # coefficients of d(e_j) on the basis n e_i: shape (#tgt, #src, nm)
        coef = d[:, ::nm].T.reshape(len(tgt), len(src), nm)
        mats = f.matmul(coef.reshape(-1, nm), self._stack).reshape(len(tgt), len(src), dn, dn)
        col_off = np.cumsum([0] + [self._eig[l].dim for l in src])
        row_off = np.cumsum([0] + [self._eig[l].dim for l in tgt])
        for j, lj in enumerate(tgt):
            ej = self._eig[lj]
            if ej.dim == 0:
                continue
            piv = list(ej.pivots)
            for i, li in enumerate(src):
                ei = self._eig[li]
                if ei.dim == 0 or not np.any(mats[j, i]):
                    continue
                blk = f.matmul(mats[j, i], ei.basis.T)[piv, :]
                out[row_off[j] : row_off[j + 1], col_off[i] : col_off[i + 1]] = blk
        return out

    def delta_rank(self, k: int) -> int:
        if k not in self._ranks:
            mat = self.delta(k)
            self._ranks[k] = rank(self._f, mat) if mat.size else 0
        return self._ranks[k]

    def h(self, k: int) -> int:
        return self.cochain_dim(k) - self.delta_rank(k) - self.delta_rank(k - 1)


def ext_hat(m: ModuleRep, n: ModuleRep, degree: int) -> int:
    """dim Ext^^degree_kG(M, N) from the complete resolution of M."""
    cr = complete_resolution(m, degree, degree)
    return CochainComplex(cr, n).h(degree)


def ext_hat_range(m: ModuleRep, n: ModuleRep, lo: int, hi: int, cr: CompleteResolution | None = None) -> dict:
    cr = cr or complete_resolution(m, lo, hi)
    cc = CochainComplex(cr, n)
    return {d: cc.h(d) for d in range(lo, hi + 1)}


# -- stable Hom: the second route ----------------------------------------------------------------


def stable_hom_dim(a_mod: ModuleRep, b_mod: ModuleRep) -> int:
    """dim Hom(A, B) minus the maps factoring through a projective.

    Those are exactly g o iota for iota : A -> I(A) the injective hull and
    g in Hom(I(A), B), which is the sum of eigenspaces E_(eig_i)(B).
    """
    f = a_mod.field
    homs = hom_space(a_mod, b_mod).dim
    if homs == 0:
        return 0
    hull, iota = injective_hull(a_mod)
    eigs = _free_eigs(hull)
    nm = a_mod.algebra.n_monomials
    vecs = []
    for i, lam in enumerate(eigs):
        block = iota[i * nm : (i + 1) * nm, :]  # coefficient of n e_i in iota(v)
        for x in b_mod.eigenspace(lam).basis:
            # g(n e_i) = n x, so g iota = sum_n (n x) block[n, :]
            cols = np.stack([f.matmul(b_mod.monomial_matrix(mono), x) for mono in a_mod.algebra.monomials])
            vecs.append(f.matmul(cols.T, block).reshape(-1))
    if not vecs:
        return homs
    return homs - rank(f, np.array(vecs))


def ext_hat_stable(m: ModuleRep, n: ModuleRep, degree: int) -> int:
    """Ext^^d(M, N) = stable Hom(Omega^d M, N)."""
    return stable_hom_dim(syzygy(m, degree), n)


# -- Tate cohomology ------------------------------------------------------------------------------------


@dataclass
class TateTable:
    module: ModuleRep
    lo: int
    hi: int
    dims: dict

    def vanishes(self) -> bool:
        return not any(self.dims.values())

    def nonzero_degrees(self) -> list[int]:
        return [d for d, v in self.dims.items() if v]

    def to_json(self) -> dict:
        return {
            "module_id": self.module.label or "M",
            "range": [self.lo, self.hi],
            "dims": [self.dims[d] for d in range(self.lo, self.hi + 1)],
        }


def norm_rank(m: ModuleRep) -> int:
    """Rank of the norm element sum_{g in G} g, a unit multiple of sigma (1 + t + ... )."""
    f = m.field
    return rank(f, f.matmul(m.sigma, m.eigen_projector(1))) if m.dim else 0


def tate_h0_norm(m: ModuleRep) -> int:
    """H^^0 = M^G / N M."""
    return dim_hom_from_trivial(m) - norm_rank(m)


def tate_hm1_norm(m: ModuleRep) -> int:
    """H^^-1 = ker N / I_G M, with I_G M = Rad M + (t - 1) M."""
    f = m.field
    if m.dim == 0:
        return 0
    ig = radical(m)
    for lam in m.algebra.eigenvalues:
        if lam != 1:
            from .linalg import subspace_sum

            ig = subspace_sum(ig, m.eigenspace(lam))
    return (m.dim - norm_rank(m)) - ig.dim


def tate_cohomology(m: ModuleRep, lo: int | None = None, hi: int | None = None) -> TateTable:
    """H^^i(G, M) for lo <= i <= hi; degrees 0 and -1 by the norm map, the rest by Ext^(k, M)."""
    if lo is None or hi is None:
        lo, hi = window_range()
    cr = trivial_resolution(m.algebra, lo, hi)
    cc = CochainComplex(cr, m)
    dims = {}
    for d in range(lo, hi + 1):
        if d == 0:
            dims[d] = tate_h0_norm(m)
        elif d == -1:
            dims[d] = tate_hm1_norm(m)
        else:
            dims[d] = cc.h(d)
    return TateTable(m, lo, hi, dims)


def tate_cohomology_resolution(m: ModuleRep, lo: int, hi: int) -> dict:
    """Every degree from the complete resolution of k (no norm-map shortcut)."""
    cc = CochainComplex(trivial_resolution(m.algebra, lo, hi), m)
    return {d: cc.h(d) for d in range(lo, hi + 1)}


# -- duality ----------------------------------------------------------------------------------------------


@dataclass
class DualityReport:
    lo: int
    hi: int
    rows: list  # (d, Ext^d(M,N), Ext^(-d-1)(N,M), ok)

    @property
    def passed(self) -> bool:
        return all(r[3] for r in self.rows)

    def to_json(self) -> dict:
        return {
            "range": [self.lo, self.hi],
            "passed": self.passed,
            "degrees": [
                {"d": d, "ext_MN": a, "ext_NM_dual": b, "pass": ok} for d, a, b, ok in self.rows
            ],
        }


def duality_check(m: ModuleRep, n: ModuleRep, lo: int = -4, hi: int = 4) -> DualityReport:
    """dim Ext^d(M, N) = dim Ext^(-d-1)(N, M) for d in [lo, hi]."""
    left = ext_hat_range(m, n, lo, hi)
    right = ext_hat_range(n, m, -hi - 1, -lo - 1)
    rows = [(d, left[d], right[-d - 1], left[d] == right[-d - 1]) for d in range(lo, hi + 1)]
    return DualityReport(lo, hi, rows)


# -- the certificate ---------------------------------------------------------------------------------------


@dataclass
class NoCohomologyCertificate:
    """Evidence that M has no Tate cohomology.

    Checked on the projective-free core C of M (M = C + projectives):
    C restricted to H is projective and Hom_kH(k, C) = 0.
    """

    subgroup: str
    restriction_projective: bool
    socle_free: bool
    sigma_rank: int
    sigma_rank_needed: int
    trivial_socle_dim: int
    projective_summands: dict

    @property
    def valid(self) -> bool:
        return self.restriction_projective and self.socle_free

    def to_json(self) -> dict:
        return {
            "subgroup": self.subgroup,
            "valid": self.valid,
            "restriction_projective": self.restriction_projective,
            "socle_free": self.socle_free,
            "witness": {
                "sigma_rank": self.sigma_rank,
                "sigma_rank_needed": self.sigma_rank_needed,
                "trivial_socle_dim": self.trivial_socle_dim,
            },
            "projective_summands": self.projective_summands,
        }


def no_cohomology_certificate(m: ModuleRep) -> NoCohomologyCertificate:
    a = m.algebra
    h = subalgebra(a)
    stripped = strip_projectives_full(m)
    core = restrict(stripped.core, h)
    sr = sigma_rank(core)
    needed = core.dim // h.n_monomials if core.dim % h.n_monomials == 0 else -1
    triv = dim_hom_from_trivial(core)
    return NoCohomologyCertificate(
        subgroup="D" if h.case == "D" else "A",
        restriction_projective=is_projective(core),
        socle_free=triv == 0,
        sigma_rank=sr,
        sigma_rank_needed=needed,
        trivial_socle_dim=triv,
        projective_summands=stripped.report.nonzero(),
    )


__all__ = [
    "projective_cover",
    "injective_hull",
    "minimal_resolution",
    "syzygy",
    "tate_cohomology",
    "ext_hat",
    "ext_hat_stable",
    "stable_hom_dim",
    "duality_check",
    "no_cohomology_certificate",
    "TateTable",
    "NoCohomologyCertificate",
    "Resolution",
]
