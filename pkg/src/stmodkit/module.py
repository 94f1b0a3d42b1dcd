"""Finite-dimensional modules given by one matrix per algebra generator."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraElement, AlgebraPresentation
from .errors import AlgebraMismatch, InvalidModule, NotInvariant
from .fields import Field
from .linalg import Subspace, complement_basis, full_subspace, joint_preimage, span


@dataclass(frozen=True, eq=False)
class ModuleRep:
    algebra: AlgebraPresentation
    action: dict
    label: str = ""
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = self.algebra.generators
        if set(self.action) != set(gens):
            raise InvalidModule(f"action must name exactly {gens}, got {sorted(self.action)}")
        dims = {np.asarray(m).shape for m in self.action.values()}
        if len(dims) != 1:
            raise InvalidModule(f"inconsistent matrix shapes {dims}")
        (shape,) = dims
        if len(shape) != 2 or shape[0] != shape[1]:
            raise InvalidModule(f"action matrices must be square, got {shape}")
        ordered = {g: np.asarray(self.action[g], dtype=np.int64) for g in gens}
        object.__setattr__(self, "action", ordered)

    @property
    def dim(self) -> int:
        return self.action["t"].shape[0]

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"ModuleRep({self.algebra!r}, dim={self.dim}{name})"

    def __getitem__(self, gen: str) -> np.ndarray:
        return self.action[gen]

    @property
    def nil_mats(self) -> list[np.ndarray]:
        return [self.action[g] for g in self.algebra.nilpotent]

    # -- cached derived matrices ----------------------------------------------------

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def t_power(self, e: int) -> np.ndarray:
        e %= self.algebra.t_order

        def build():
            out = np.eye(self.dim, dtype=np.int64)
            for _ in range(e):
                out = self.field.matmul(self.action["t"], out)
            return out

        return self._cached(("tpow", e), build)

    def monomial_matrix(self, mono) -> np.ndarray:
        mono = tuple(mono)

        def build():
            if not any(mono):
                return np.eye(self.dim, dtype=np.int64)
            i = next(k for k, e in enumerate(mono) if e)
            rest = list(mono)
            rest[i] -= 1
            g = self.action[self.algebra.nilpotent[i]]
            return self.field.matmul(g, self.monomial_matrix(rest))

        return self._cached(("mono", mono), build)

    def stacked_monomials(self) -> np.ndarray:
        """All monomial matrices stacked vertically: shape (n_monomials * dim, dim)."""

        def build():
            if self.dim == 0:
                return np.zeros((0, 0), dtype=np.int64)
            return np.concatenate([self.monomial_matrix(mono) for mono in self.algebra.monomials])

        return self._cached("stacked", build)

    def element_matrix(self, x: AlgebraElement) -> np.ndarray:
        if x.algebra != self.algebra:
            raise AlgebraMismatch(f"{x.algebra} vs {self.algebra}")
        f = self.field
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for c, mono, e in x.terms():
            term = f.matmul(self.monomial_matrix(mono), self.t_power(e))
            out = f.add(out, f.mul(term, c))
        return out

    def word_matrix(self, text: str) -> np.ndarray:
        return self.element_matrix(self.algebra.word(text))

    @property
    def sigma(self) -> np.ndarray:
        """Action of the Sylow socle element."""
        return self.monomial_matrix(self.algebra.top_monomial)

    def eigen_projector(self, eig: int) -> np.ndarray:
        """e = (1/o) sum_i eig^(-i) t^i, projecting onto the eig-eigenspace of t."""

        def build():
            f = self.field
            o = self.algebra.t_order
            out = np.zeros((self.dim, self.dim), dtype=np.int64)
            for i in range(o):
                out = f.add(out, f.mul(self.t_power(i), f.power(eig, -i)))
            return f.mul(out, int(f.inv(f.from_int(o))))

        return self._cached(("proj", eig), build)

    def eigenspace(self, eig: int) -> Subspace:
        from .linalg import nullspace

        def build():
            f = self.field
            return nullspace(f, f.sub(self.action["t"], f.mul(np.eye(self.dim, dtype=np.int64), eig)))

        return self._cached(("eig", eig), build)

    def all_action_mats(self) -> list[np.ndarray]:
        return [self.action[g] for g in self.algebra.generators]


# -- relation checking -------------------------------------------------------------


def module_violations(m: ModuleRep) -> list[str]:
    a = m.algebra
    f = m.field
    n = m.dim
    eye = np.eye(n, dtype=np.int64)
    bad = []
    t = m.action["t"]
    for g, order in zip(a.nilpotent, a.nil_orders):
        power = eye
        for _ in range(order):
            power = f.matmul(m.action[g], power)
        if np.any(power):
            bad.append(f"{g}^{order}=0")
    for i, g in enumerate(a.nilpotent):
        for h in a.nilpotent[i + 1 :]:
            if np.any(f.sub(f.matmul(m[g], m[h]), f.matmul(m[h], m[g]))):
                bad.append(f"{g}{h}={h}{g}")
    for g in a.nilpotent:
        eta = a.eta_of(g)
        lhs = f.matmul(t, m[g])
        rhs = f.mul(f.matmul(m[g], t), eta)
        if np.any(f.sub(lhs, rhs)):
            bad.append(f"t{g}={_eta_symbol(a, eta)}{g}t")
    power = eye
    for _ in range(a.t_order):
        power = f.matmul(t, power)
    if np.any(f.sub(power, eye)):
        bad.append(f"t^{a.t_order}=1")
    return bad


def _eta_symbol(a: AlgebraPresentation, eta: int) -> str:
    if eta == 1:
        return ""
    if a.field.name == "F3":
        return "−"
    return a.field.symbol(eta)


def check_module(m: ModuleRep) -> bool:
    return not module_violations(m)


def validated(m: ModuleRep) -> ModuleRep:
    bad = module_violations(m)
    if bad:
        raise InvalidModule(f"relations violated: {bad}", bad)
    return m


# -- constructions ---------------------------------------------------------------------


def zero_module(a: AlgebraPresentation) -> ModuleRep:
    z = np.zeros((0, 0), dtype=np.int64)
    return ModuleRep(a, {g: z for g in a.generators}, label="0")


def simple_module(a: AlgebraPresentation, eig) -> ModuleRep:
    """One-dimensional module on which t acts by `eig` (a code or a name)."""
    if isinstance(eig, str):
        eig = a.eigenvalue_of(eig)
    act = {g: np.zeros((1, 1), dtype=np.int64) for g in a.nilpotent}
    act["t"] = np.array([[eig]], dtype=np.int64)
    return ModuleRep(a, act, label=a.simple_name(eig))


def regular_module(a: AlgebraPresentation) -> ModuleRep:
    """kG acting on itself by left multiplication on the monomial basis."""
    f = a.field
    d = a.dim
    act = {g: np.zeros((d, d), dtype=np.int64) for g in a.generators}
    for j, (mono, e) in enumerate(a.monomial_basis):
        for gi, g in enumerate(a.nilpotent):
            unit = tuple(1 if k == gi else 0 for k in range(len(a.nilpotent)))
            prod = a.mono_mul(unit, mono)
            if prod is not None:
                act[g][a.basis_index(prod, e), j] = 1
        act["t"][a.basis_index(mono, e + 1), j] = a.chi(mono)
    del f
    return ModuleRep(a, act, label="kG")


def free_module(a: AlgebraPresentation, eigs) -> ModuleRep:
    """Direct sum of the projective indecomposables P_eig, one per entry.

    Basis: (summand i, nilpotent monomial n) -> n e_i, ordered summand-major;
    t acts on n e_i by chi(n) * eig_i.
    """
    f = a.field
    eigs = [a.eigenvalue_of(e) if isinstance(e, str) else int(e) for e in eigs]
    nm = a.n_monomials
    d = nm * len(eigs)
    act = {g: np.zeros((d, d), dtype=np.int64) for g in a.generators}
    for i, lam in enumerate(eigs):
        base = i * nm
        for j, mono in enumerate(a.monomials):
            for gi, g in enumerate(a.nilpotent):
                unit = tuple(1 if k == gi else 0 for k in range(len(a.nilpotent)))
                prod = a.mono_mul(unit, mono)
                if prod is not None:
                    act[g][base + a.monomial_index[prod], base + j] = 1
            act["t"][base + j, base + j] = f.mul(a.chi(mono), lam)
    label = " ⊕ ".join(f"P_{a.simple_name(e)}" for e in eigs) or "0"
    return ModuleRep(a, act, label=label)


def projective_indecomposable(a: AlgebraPresentation, eig) -> ModuleRep:
    return free_module(a, [eig])


def induced_trivial(a: AlgebraPresentation) -> ModuleRep:
    """k induced from the distinguished subalgebra: P_k modulo the subalgebra's nilpotents."""
    from .algebra import subalgebra

    p = free_module(a, [1])
    sub_gens = [g for g in subalgebra(a).nilpotent]
    e = np.zeros(p.dim, dtype=np.int64)
    e[0] = 1
    rel = submodule_generated(p, [p.field.matmul(p[g], e) for g in sub_gens])
    q = quotient_module(p, rel)
    return ModuleRep(a, dict(q.action), label=f"k_{subalgebra(a).case}↑")


def direct_sum(*mods: ModuleRep) -> ModuleRep:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    a = mods[0].algebra
    for m in mods:
        if m.algebra != a:
            raise AlgebraMismatch("direct sum of modules over different algebras")
    d = sum(m.dim for m in mods)
    act = {}
    for g in a.generators:
        mat = np.zeros((d, d), dtype=np.int64)
        off = 0
        for m in mods:
            mat[off : off + m.dim, off : off + m.dim] = m[g]
            off += m.dim
        act[g] = mat
    return ModuleRep(a, act, label=" ⊕ ".join(m.label or "?" for m in mods))


def from_matrices(a: AlgebraPresentation, label: str = "", **mats) -> ModuleRep:
    return validated(ModuleRep(a, {g: np.asarray(v, dtype=np.int64) for g, v in mats.items()}, label))


def dual_module(m: ModuleRep) -> ModuleRep:
    """The dual twisted by the anti-automorphism fixing X, Y, Z and inverting t.

    Nilpotent generators act by their transposes and t by the transpose of
    its inverse.  Projectives go to projectives and the functor is exact, so
    it exchanges projective covers and injective hulls.
    """
    a = m.algebra
    act = {g: m[g].T.copy() for g in a.nilpotent}
    act["t"] = m.t_power(a.t_order - 1).T.copy()
    return ModuleRep(a, act, label=f"({m.label})*" if m.label else "")


def restrict(m: ModuleRep, sub: AlgebraPresentation) -> ModuleRep:
    """Restriction to the subalgebra generated by sub.generators."""
    for g in sub.generators:
        if g not in m.action:
            raise AlgebraMismatch(f"{sub} is not a subalgebra of {m.algebra}")
    return ModuleRep(sub, {g: m[g] for g in sub.generators}, label=f"{m.label}↓" if m.label else "")


def inflate(m: ModuleRep, big: AlgebraPresentation) -> ModuleRep:
    """A module of the subalgebra, extended by letting the extra generators act as 0.

    This is inflation along G -> G/C for the direct factor C.
    """
    act = {}
    for g in big.generators:
        act[g] = m[g] if g in m.action else np.zeros((m.dim, m.dim), dtype=np.int64)
    return validated(ModuleRep(big, act, label=m.label))


def frobenius_conjugate(m: ModuleRep) -> ModuleRep:
    """Apply the field automorphism entrywise, then swap X and Y (case B / A4).

    Conjugation turns tX = wXt into tX = wbar Xt, so swapping X and Y lands
    back in the same algebra.  Eigenvalues w and wbar are exchanged.
    """
    a = m.algebra
    f = m.field
    if "X" not in a.nilpotent:
        raise AlgebraMismatch("frobenius_conjugate is defined for case B and A4")
    act = {g: f.frobenius(m[g]) for g in a.generators}
    act["X"], act["Y"] = act["Y"], act["X"]
    return validated(ModuleRep(a, act, label=f"conj({m.label})" if m.label else ""))


# -- sub and quotient modules -------------------------------------------------------------


def is_submodule(m: ModuleRep, sub: Subspace) -> bool:
    f = m.field
    if sub.dim == 0:
        return True
    for g in m.algebra.generators:
        moved = f.matmul(m[g], sub.basis.T).T
        if np.any(sub.reduce(moved)):
            return False
    return True


def submodule_generated(m: ModuleRep, vectors) -> Subspace:
    """Smallest submodule containing the given row vectors."""
    f = m.field
    cur = span(f, m.dim, vectors)
    while True:
        if cur.dim == 0:
            return cur
        imgs = [cur.basis] + [f.matmul(g, cur.basis.T).T for g in m.all_action_mats()]
        nxt = span(f, m.dim, np.concatenate(imgs))
        if nxt.dim == cur.dim:
            return nxt
        cur = nxt


def largest_submodule_in(m: ModuleRep, w: Subspace) -> Subspace:
    """Largest submodule contained in the subspace w."""
    f = m.field
    cur = w
    while True:
        pre = joint_preimage(f, m.all_action_mats(), cur)
        from .linalg import subspace_intersect

        nxt = subspace_intersect(cur, pre)
        if nxt.dim == cur.dim:
            return nxt
        cur = nxt


def sub_module(m: ModuleRep, sub: Subspace, check: bool = True) -> ModuleRep:
    """The submodule on the RREF basis of `sub`."""
    f = m.field
    if check and not is_submodule(m, sub):
        raise NotInvariant("subspace is not invariant under the action")
    b = sub.basis
    piv = list(sub.pivots)
    act = {}
    for g in m.algebra.generators:
        moved = f.matmul(m[g], b.T)  # columns g b_j
        act[g] = moved[piv, :]
    return ModuleRep(m.algebra, act)


@dataclass(frozen=True, eq=False)
class Quotient:
    """M/S on the pivot-complement basis of S.

    `project` maps M -> M/S, `lift` sends quotient coordinates to the
    representatives e_j (j not a pivot of S).
    """

    module: ModuleRep
    sub: Subspace
    indices: tuple

    @property
    def project(self) -> np.ndarray:
        m = self.sub.ambient_dim
        f = self.sub.field
        eye = np.eye(m, dtype=np.int64)
        red = self.sub.reduce(eye)  # rows: reduced unit vectors
        return red[:, list(self.indices)].T.copy()

    @property
    def lift(self) -> np.ndarray:
        m = self.sub.ambient_dim
        out = np.zeros((m, len(self.indices)), dtype=np.int64)
        for k, j in enumerate(self.indices):
            out[j, k] = 1
        return out

    def preimage(self, s: Subspace) -> Subspace:
        """Preimage in M of a subspace of the quotient."""
        f = self.sub.field
        vecs = f.matmul(self.lift, s.basis.T).T if s.dim else np.zeros((0, self.sub.ambient_dim), dtype=np.int64)
        return span(f, self.sub.ambient_dim, np.concatenate([self.sub.basis, vecs]))


def quotient(m: ModuleRep, sub: Subspace, check: bool = True) -> Quotient:
    f = m.field
    if check and not is_submodule(m, sub):
        raise NotInvariant("subspace is not invariant under the action")
    idx = tuple(sub.complement_indices())
    act = {}
    for g in m.algebra.generators:
        cols = m[g][:, list(idx)]  # g e_j for complement j
        red = sub.reduce(cols.T)
        act[g] = red[:, list(idx)].T.copy()
    return Quotient(ModuleRep(m.algebra, act), sub, idx)


def quotient_module(m: ModuleRep, sub: Subspace) -> ModuleRep:
    return quotient(m, sub).module


def transport(m: ModuleRep, basis_cols: np.ndarray) -> ModuleRep:
    """The module in a new basis given by the columns of an invertible matrix."""
    from .linalg import inverse

    f = m.field
    inv = inverse(f, basis_cols)
    act = {g: f.matmul(inv, f.matmul(m[g], basis_cols)) for g in m.algebra.generators}
    return ModuleRep(m.algebra, act, label=m.label)


def whole(m: ModuleRep) -> Subspace:
    return full_subspace(m.field, m.dim)


def complement_rows(s: Subspace, inside: Subspace | None = None) -> np.ndarray:
    return complement_basis(s, inside)
