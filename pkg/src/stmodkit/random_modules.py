"""Seeded random modules: submodules and quotients of free modules, and extensions.

Every construction draws from a numpy Generator seeded by RandomSpec.seed,
so the same spec always produces the same matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraPresentation, build_a4, build_case_a, build_case_b, build_d, presentation_from_descriptor
from .cohomology import CochainComplex, complete_resolution, injective_hull, syzygy
from .linalg import nullspace, span
from .module import (
    ModuleRep,
    direct_sum,
    free_module,
    quotient_module,
    simple_module,
    sub_module,
    submodule_generated,
    transport,
    validated,
    zero_module,
)

CONSTRUCTIONS = ("submodule_of_free", "quotient", "extension", "syzygy", "mixed")


@dataclass
class RandomSpec:
    seed: int
    construction: str = "mixed"
    n_copies: int = 1
    pieces: list = dc_field(default_factory=list)
    max_dim: int = 40
    algebra: dict = dc_field(default_factory=lambda: {"case": "A", "r": 1})


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(np.uint64(seed % 2**64))


def random_eigenvector(m: ModuleRep, rng, lam=None, inside=None) -> np.ndarray:
    f = m.field
    if lam is None:
        lam = m.algebra.eigenvalues[rng.integers(len(m.algebra.eigenvalues))]
    e = m.eigenspace(lam)
    if inside is not None:
        from .linalg import subspace_intersect

        e = subspace_intersect(e, inside)
    if e.dim == 0:
        return np.zeros(m.dim, dtype=np.int64)
    return f.matmul(f.random(rng, e.dim), e.basis)


def random_free(a: AlgebraPresentation, rng, copies: int) -> ModuleRep:
    eigs = [a.eigenvalues[i] for i in rng.integers(len(a.eigenvalues), size=copies)]
    return free_module(a, eigs)


def random_submodule_of_free(a: AlgebraPresentation, rng, copies: int = 1, n_gens: int | None = None) -> ModuleRep:
    """kG-span of a few random eigenvectors inside a random free module, biased into the radical."""
    from .calculus import radical_series

    fm = random_free(a, rng, copies)
    n_gens = n_gens or int(rng.integers(1, copies + 2))
    layers = radical_series(fm)
    vecs = []
    for _ in range(n_gens):
        depth = int(rng.integers(1, len(layers) - 1)) if len(layers) > 2 else 0
        vecs.append(random_eigenvector(fm, rng, inside=layers[depth]))
    sub = submodule_generated(fm, vecs)
    return sub_module(fm, sub, check=False)


def random_quotient(a: AlgebraPresentation, rng, copies: int = 1, n_gens: int | None = None) -> ModuleRep:
    from .calculus import radical_series

    fm = random_free(a, rng, copies)
    n_gens = n_gens or int(rng.integers(1, copies + 2))
    layers = radical_series(fm)
    vecs = []
    for _ in range(n_gens):
        depth = int(rng.integers(1, len(layers) - 1)) if len(layers) > 2 else 0
        vecs.append(random_eigenvector(fm, rng, inside=layers[depth]))
    sub = submodule_generated(fm, vecs)
    return quotient_module(fm, sub)


def random_extension(c: ModuleRep, b: ModuleRep, rng) -> ModuleRep:
    """A random extension 0 -> B -> E -> C -> 0 from a 1-cocycle on the resolution of C.

    x in Hom(P_1, B) with x d_2 = 0; E = (P_0 ⊕ B) / {(d_1 p, -x p)}.
    """
    f = c.field
    a = c.algebra
    if c.dim == 0:
        return b
    cr = complete_resolution(c, 0, 1)
    cc = CochainComplex(cr, b)
    p1 = cr.term(1)
    p0 = cr.term(0)
    if not p1 or b.dim == 0:
        return direct_sum(c, b)
    delta = cc.delta(1)
    z1 = nullspace(f, delta) if delta.size else span(f, cc.cochain_dim(1), np.eye(cc.cochain_dim(1), dtype=np.int64))
    if z1.dim == 0:
        return direct_sum(c, b)
    coeffs = f.matmul(f.random(rng, z1.dim), z1.basis)
    # x(n e_i) = n x_i with x_i in E_(eig_i)(B)
    nm = a.n_monomials
    cols = []
    off = 0
    for lam in p1:
        e = b.eigenspace(lam)
        xi = f.matmul(coeffs[off : off + e.dim], e.basis) if e.dim else np.zeros(b.dim, dtype=np.int64)
        off += e.dim
        for mono in a.monomials:
            cols.append(f.matmul(b.monomial_matrix(mono), xi))
    x = np.stack(cols, axis=1)
    d1 = cr.differential(1)
    p0_mod = free_module(a, p0)
    total = direct_sum(p0_mod, b)
    rel = np.concatenate([d1, f.neg(x)], axis=0)
    sub = span(f, total.dim, rel.T)
    e = quotient_module(total, sub)
    del nm
    return e


def small_pieces(a: AlgebraPresentation) -> list[ModuleRep]:
    """Simples, their (co)syzygies and length-two modules: raw material for extensions."""
    out = [simple_module(a, l) for l in a.eigenvalues]
    out += [syzygy(s, 1) for s in out[: len(a.eigenvalues)]] + [syzygy(s, -1) for s in out[: len(a.eigenvalues)]]
    return out


def random_module(spec: RandomSpec) -> ModuleRep:
    """The module described by spec; valid and bit-reproducible from the seed."""
    a = presentation_from_descriptor(spec.algebra) if isinstance(spec.algebra, dict) else spec.algebra
    rng = _rng(spec.seed)
    m = _build(a, spec, rng)
    if m.dim > spec.max_dim:
        # keep a generated submodule of bounded size
        m = _shrink(m, spec.max_dim, rng)
    m = _scramble(m, rng)
    return validated(ModuleRep(a, dict(m.action), label=f"random:{spec.construction}:{spec.seed}"))


def _build(a, spec, rng) -> ModuleRep:
    kind = spec.construction
    if kind == "mixed":
        kind = ["submodule_of_free", "quotient", "extension", "extension", "sum", "syzygy"][int(rng.integers(6))]
    if kind == "submodule_of_free":
        return random_submodule_of_free(a, rng, spec.n_copies)
    if kind == "quotient":
        return random_quotient(a, rng, spec.n_copies)
    if kind == "extension":
        pieces = spec.pieces or _random_pieces(a, rng)
        c, b = pieces[0], pieces[1] if len(pieces) > 1 else pieces[0]
        c = _resolve_piece(a, c)
        b = _resolve_piece(a, b)
        return random_extension(c, b, rng)
    if kind == "syzygy":
        # (co)syzygies of small modules reach the deeper branches of the solver
        small = _build(a, RandomSpec(0, "extension", 1, [], spec.max_dim, spec.algebra), rng)
        if small.dim > max(4, spec.max_dim // 3):
            small = _shrink(small, max(4, spec.max_dim // 3), rng)
        n = [-2, -1, 1, 2][int(rng.integers(4))]
        from .projectives import strip_projectives

        return strip_projectives(syzygy(small, n))[0]
    if kind == "sum":
        parts = [_build(a, RandomSpec(0, "extension", 1, [], spec.max_dim, spec.algebra), rng) for _ in range(2)]
        return direct_sum(*parts)
    raise ValueError(f"unknown construction {kind!r}")


def _resolve_piece(a, p) -> ModuleRep:
    if isinstance(p, ModuleRep):
        return p
    from .projectives import type_module

    if isinstance(p, str) and (p.startswith("P_") or p.startswith("[") or len(p) <= 2):
        if p.startswith("P_"):
            return free_module(a, [a.eigenvalue_of(p[2:])])
        if p.startswith("["):
            return type_module(a, p)
        return simple_module(a, p)
    raise ValueError(f"cannot build piece {p!r}")


def _random_pieces(a, rng) -> list[ModuleRep]:
    pool = small_pieces(a)
    picks = []
    for _ in range(2):
        kind = int(rng.integers(4))
        if kind == 0:
            picks.append(pool[int(rng.integers(len(pool)))])
        elif kind == 1:
            picks.append(random_quotient(a, rng, 1))
        elif kind == 2:
            picks.append(random_submodule_of_free(a, rng, 1))
        else:
            s = pool[int(rng.integers(len(a.eigenvalues)))]
            t = pool[int(rng.integers(len(pool)))]
            picks.append(random_extension(s, t, rng))
    return picks


def _shrink(m: ModuleRep, bound: int, rng) -> ModuleRep:
    """A random quotient of m by a generated submodule, until dim <= bound."""
    cur = m
    while cur.dim > bound:
        v = random_eigenvector(cur, rng)
        sub = submodule_generated(cur, [v])
        if sub.dim == 0:
            continue
        cur = quotient_module(cur, sub)
    return cur


def _scramble(m: ModuleRep, rng) -> ModuleRep:
    """Random change of basis, so nothing is aligned with the coordinate axes."""
    from .linalg import rank

    f = m.field
    if m.dim == 0:
        return m
    while True:
        b = f.random(rng, (m.dim, m.dim))
        if rank(f, b) == m.dim:
            return transport(m, b)


def random_sum_of_types(a: AlgebraPresentation, rng, max_dim: int, tags: list[str] | None = None) -> ModuleRep:
    """Random direct sum of classified kD/kA indecomposables in a scrambled basis."""
    from .projectives import type_module, type_tags

    tags = tags or type_tags(a)
    parts = []
    dim = 0
    while True:
        t = tags[int(rng.integers(len(tags)))]
        p = type_module(a, t)
        if dim + p.dim > max_dim:
            break
        parts.append(p)
        dim += p.dim
        if rng.random() < 0.2:
            break
    m = direct_sum(*parts) if parts else zero_module(a)
    return _scramble(m, rng)


def random_subalgebra_module(a: AlgebraPresentation, seed: int, max_dim: int = 12) -> ModuleRep:
    """A kD or kA module: either a scrambled sum of types or a random sub/quotient/extension."""
    rng = _rng(seed)
    kind = int(rng.integers(4))
    if kind == 0:
        m = random_sum_of_types(a, rng, max_dim)
    elif kind == 1:
        m = random_submodule_of_free(a, rng, int(rng.integers(1, 4)))
    elif kind == 2:
        m = random_quotient(a, rng, int(rng.integers(1, 4)))
    else:
        pool = small_pieces(a)
        m = random_extension(pool[int(rng.integers(len(pool)))], pool[int(rng.integers(len(pool)))], rng)
    if m.dim > max_dim:
        m = _shrink(m, max_dim, rng)
    return validated(_scramble(m, rng))


__all__ = ["RandomSpec", "random_module", "random_extension", "random_submodule_of_free", "random_quotient"]
