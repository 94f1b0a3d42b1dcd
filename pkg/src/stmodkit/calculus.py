"""Socles, radicals, Homs, eigenspaces, towers and the core filtration."""
from __future__ import annotations

import numpy as np

from .algebra import AlgebraElement
from .errors import AlgebraMismatch, NotEigenvector, NotInImage
from .linalg import (
    Subspace,
    complement_basis,
    image,
    joint_kernel,
    joint_preimage,
    nullspace,
    span,
    subspace_intersect,
    subspace_sum,
    zero_subspace,
    full_subspace,
    solve,
)
from .module import ModuleRep, quotient


# -- radical and socle --------------------------------------------------------------


def radical_of(m: ModuleRep, sub: Subspace) -> Subspace:
    """Rad of a submodule: sum of the nilpotent images of it."""
    f = m.field
    if sub.dim == 0:
        return sub
    imgs = [f.matmul(g, sub.basis.T).T for g in m.nil_mats]
    return span(f, m.dim, np.concatenate(imgs))


def radical(m: ModuleRep) -> Subspace:
    # t has order prime to p, so the radical is generated by the nilpotent part
    return radical_of(m, full_subspace(m.field, m.dim))


def socle(m: ModuleRep) -> Subspace:
    return joint_kernel(m.field, m.nil_mats, m.dim)


def radical_series(m: ModuleRep) -> list[Subspace]:
    """M = Rad^0 > Rad^1 > ... > 0."""
    out = [full_subspace(m.field, m.dim)]
    while out[-1].dim:
        out.append(radical_of(m, out[-1]))
    return out


def socle_series(m: ModuleRep) -> list[Subspace]:
    """0 = Soc^0 < Soc^1 < ... < M."""
    f = m.field
    out = [zero_subspace(f, m.dim)]
    while out[-1].dim < m.dim:
        out.append(joint_preimage(f, m.nil_mats, out[-1]))
    return out


def loewy_length(m: ModuleRep) -> int:
    return len(radical_series(m)) - 1


# -- t-eigenspaces ----------------------------------------------------------------------


def eigenspace_decomposition_t(m: ModuleRep) -> dict[int, Subspace]:
    return {lam: m.eigenspace(lam) for lam in m.algebra.eigenvalues}


def eigen_part(m: ModuleRep, sub: Subspace, lam: int) -> Subspace:
    """sub ∩ E_lam, for a t-stable subspace."""
    return image(m.field, m.eigen_projector(lam), sub)


def is_eigenvector(m: ModuleRep, v, lam: int) -> bool:
    f = m.field
    v = np.asarray(v, dtype=np.int64)
    return not np.any(f.sub(f.matmul(m["t"], v), f.mul(v, lam)))


def eigenvalue_of_vector(m: ModuleRep, v):
    for lam in m.algebra.eigenvalues:
        if is_eigenvector(m, v, lam):
            return lam
    return None


def lift_eigen_preimage(m: ModuleRep, x: AlgebraElement, target) -> np.ndarray:
    """An eigenvector m1 with x m1 = target.

    x must be t-homogeneous (t x = eta x t) and target a t-eigenvector with
    eigenvalue zeta; then the eta^-1 zeta component of any preimage works.
    """
    f = m.field
    target = np.asarray(target, dtype=np.int64)
    eta = x.t_eigenvalue()
    if eta is None:
        raise NotEigenvector("x is not homogeneous for the t-grading")
    zeta = eigenvalue_of_vector(m, target)
    if zeta is None or not np.any(target):
        if not np.any(target):
            return np.zeros(m.dim, dtype=np.int64)
        raise NotEigenvector("target is not a t-eigenvector")
    u = solve(f, m.element_matrix(x), target)
    if u is None:
        raise NotInImage("target is not in the image of x")
    mu = int(f.mul(f.inv(eta), zeta))
    return f.matmul(m.eigen_projector(mu), u)


# -- Hom spaces -------------------------------------------------------------------------


def _eigen_coords(m: ModuleRep):
    """Per eigenvalue: basis columns B_lam and the block of each nilpotent generator."""
    f = m.field
    a = m.algebra
    bases = {lam: m.eigenspace(lam).basis.T for lam in a.eigenvalues}
    full = np.concatenate([bases[lam] for lam in a.eigenvalues], axis=1)
    from .linalg import inverse

    inv = inverse(f, full) if m.dim else full
    offs = {}
    o = 0
    for lam in a.eigenvalues:
        offs[lam] = (o, o + bases[lam].shape[1])
        o += bases[lam].shape[1]
    return bases, inv, offs


def hom_space(m: ModuleRep, n: ModuleRep) -> Subspace:
    """All kG-maps m -> n, as row-major vectorised dim(n) x dim(m) matrices.

    Homs preserve t-eigenspaces, so the unknowns are one block per
    eigenvalue; nilpotent generators couple the blocks.
    """
    if m.algebra != n.algebra:
        raise AlgebraMismatch(f"{m.algebra} vs {n.algebra}")
    f = m.field
    a = m.algebra
    if m.dim == 0 or n.dim == 0:
        return zero_subspace(f, m.dim * n.dim)
    bm, inv_m, off_m = _eigen_coords(m)
    bn, inv_n, off_n = _eigen_coords(n)
    # unknown block F_lam: E_lam(m) -> E_lam(n), of shape dn_lam x dm_lam (row-major)
    var_off = {}
    nv = 0
    for lam in a.eigenvalues:
        var_off[lam] = nv
        nv += bn[lam].shape[1] * bm[lam].shape[1]
    if nv == 0:
        return zero_subspace(f, m.dim * n.dim)
    rows = []
    for g in a.nilpotent:
        eta = a.eta_of(g)
        gm = f.matmul(inv_m, f.matmul(m[g], np.concatenate([bm[l] for l in a.eigenvalues], axis=1)))
        gn = f.matmul(inv_n, f.matmul(n[g], np.concatenate([bn[l] for l in a.eigenvalues], axis=1)))
        for lam in a.eigenvalues:
            mu = int(f.mul(eta, lam))
            dm_l, dn_m = bm[lam].shape[1], bn[mu].shape[1]
            if dm_l == 0 or dn_m == 0:
                continue
            # g_n|(E_lam -> E_mu) F_lam - F_mu g_m|(E_lam -> E_mu) = 0
            gn_blk = gn[off_n[mu][0] : off_n[mu][1], off_n[lam][0] : off_n[lam][1]]
            gm_blk = gm[off_m[mu][0] : off_m[mu][1], off_m[lam][0] : off_m[lam][1]]
            eq = np.zeros((dn_m * dm_l, nv), dtype=np.int64)
            if gn_blk.size:
                blk = f.kron(gn_blk, np.eye(dm_l, dtype=np.int64))
                eq[:, var_off[lam] : var_off[lam] + blk.shape[1]] = blk
            if gm_blk.size:
                blk = f.neg(f.kron(np.eye(dn_m, dtype=np.int64), gm_blk.T))
                s = var_off[mu]
                eq[:, s : s + blk.shape[1]] = f.add(eq[:, s : s + blk.shape[1]], blk)
            rows.append(eq)
    ker = nullspace(f, np.concatenate(rows)) if rows else full_subspace(f, nv)
    # back to standard coordinates: F = Bn blockdiag(F_lam) inv_m
    out = []
    for v in ker.basis:
        fm = np.zeros((n.dim, m.dim), dtype=np.int64)
        for lam in a.eigenvalues:
            dn_l, dm_l = bn[lam].shape[1], bm[lam].shape[1]
            if dn_l == 0 or dm_l == 0:
                continue
            blk = v[var_off[lam] : var_off[lam] + dn_l * dm_l].reshape(dn_l, dm_l)
            part = f.matmul(bn[lam], f.matmul(blk, inv_m[off_m[lam][0] : off_m[lam][1], :]))
            fm = f.add(fm, part)
        out.append(fm.reshape(-1))
    return span(f, m.dim * n.dim, np.array(out).reshape(-1, m.dim * n.dim))


def hom_matrices(m: ModuleRep, n: ModuleRep) -> list[np.ndarray]:
    return [v.reshape(n.dim, m.dim) for v in hom_space(m, n).basis]


def is_module_map(m: ModuleRep, n: ModuleRep, fmat) -> bool:
    f = m.field
    return all(
        not np.any(f.sub(f.matmul(n[g], fmat), f.matmul(fmat, m[g]))) for g in m.algebra.generators
    )


def hom_from_trivial(m: ModuleRep) -> Subspace:
    """Hom(k, M) identified with Soc(M) ∩ E_1."""
    return eigen_part(m, socle(m), 1)


def dim_hom_from_trivial(m: ModuleRep) -> int:
    return hom_from_trivial(m).dim


def dim_hom_to_trivial(m: ModuleRep) -> int:
    """dim Hom(M, k) = dim of the trivial part of M / Rad M."""
    return m.eigenspace(1).dim - eigen_part(m, radical(m), 1).dim


# -- towers -----------------------------------------------------------------------------


def _trivializers(m: ModuleRep) -> list[np.ndarray]:
    f = m.field
    return m.nil_mats + [f.sub(m["t"], np.eye(m.dim, dtype=np.int64))]


def trivial_socle_tower(m: ModuleRep) -> Subspace:
    """Largest submodule M' all of whose composition factors are trivial."""
    f = m.field
    ops = _trivializers(m)
    cur = zero_subspace(f, m.dim)
    while True:
        nxt = joint_preimage(f, ops, cur) if m.dim else cur
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def trivial_top_tower(m: ModuleRep) -> Subspace:
    """Smallest submodule M'' with M/M'' having only trivial composition factors."""
    f = m.field
    ops = _trivializers(m)
    cur = full_subspace(f, m.dim)
    while cur.dim:
        nxt = span(f, m.dim, np.concatenate([f.matmul(g, cur.basis.T).T for g in ops]))
        if nxt.dim == cur.dim:
            break
        cur = nxt
    return cur


def core_filtration(m: ModuleRep) -> tuple[Subspace, Subspace]:
    """M1 = M', M2/M1 = (M/M1)''.  Then Hom(k, M2/M1) = 0 = Hom(M2/M1, k)."""
    m1 = trivial_socle_tower(m)
    q = quotient(m, m1, check=False)
    m2 = q.preimage(trivial_top_tower(q.module))
    return m1, m2


# -- small helpers shared by the solver ----------------------------------------------------


def kernel_of(m: ModuleRep, mat) -> Subspace:
    return nullspace(m.field, mat)


def image_of(m: ModuleRep, mat) -> Subspace:
    return image(m.field, mat, full_subspace(m.field, m.dim))


def hyperplane_submodule(m: ModuleRep, v, keep=()) -> Subspace:
    """A codimension-one submodule not containing the eigenvector v.

    Needs v outside Rad(M).  The hyperplane is Rad(M) + (other eigenspaces)
    + a complement of k v inside E_lam modulo the radical, so it is t-stable
    and contains the radical.  Eigenvectors in `keep` are put inside it
    (they must be independent of v modulo the radical).
    """
    f = m.field
    lam = eigenvalue_of_vector(m, v)
    if lam is None:
        raise NotEigenvector("hyperplane_submodule needs an eigenvector")
    rad = radical(m)
    e = m.eigenspace(lam)
    kept = [w for w in keep if eigenvalue_of_vector(m, w) == lam]
    low = subspace_sum(eigen_part(m, rad, lam), span(f, m.dim, kept))
    inner = subspace_sum(low, span(f, m.dim, v))
    comp = np.concatenate([low.basis, complement_basis(inner, inside=e)])
    parts = [rad.basis, comp] + [m.eigenspace(mu).basis for mu in m.algebra.eigenvalues if mu != lam]
    out = span(f, m.dim, np.concatenate(parts))
    if out.dim != m.dim - 1:
        raise NotInImage("vector lies in the radical")
    return out


__all__ = [
    "radical",
    "socle",
    "radical_series",
    "socle_series",
    "loewy_length",
    "eigenspace_decomposition_t",
    "lift_eigen_preimage",
    "hom_space",
    "trivial_socle_tower",
    "trivial_top_tower",
    "core_filtration",
]
