"""Brute-force oracles, deliberately naive.

Nothing here uses the socle/radical/tower code of `calculus`: submodules are
found by enumerating vectors and closing sets under the action, and the
generic decomposition splits modules with random endomorphisms.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import subalgebra
from .errors import TooLarge
from .linalg import Subspace, all_vectors, rank, span
from .module import ModuleRep, restrict, sub_module

# exhaustive enumeration bounds (q^dim vectors)
ENUM_LIMITS = {2: 5, 3: 5, 4: 4}
GENERIC_LIMIT = 12
STEP5_LIMIT = 8


class _VectorTable:
    """All vectors of M indexed by their base-q digits, with addition and action tables."""

    def __init__(self, m: ModuleRep):
        f = m.field
        self.m = m
        self.q = q = f.cardinality
        self.n = n = m.dim
        self.vecs = all_vectors(f, n)  # row i has digits of i, least significant first
        self.size = len(self.vecs)
        self.weights = q ** np.arange(n, dtype=np.int64)
        idx = lambda rows: (np.asarray(rows, dtype=np.int64) @ self.weights)  # noqa: E731
        self.index = idx
        self.add = np.stack([idx(f.add(self.vecs, v[None, :])) for v in self.vecs])
        scal = [c for c in range(1, q)]
        self.scale = {c: idx(f.mul(self.vecs, c)) for c in scal}
        self.act = {g: idx(f.matmul(self.vecs, m[g].T)) for g in m.algebra.generators}

    def close(self, members: np.ndarray, seeds) -> np.ndarray:
        """Smallest invariant subspace containing `members` (a bool mask) and the seed indices."""
        mask = members.copy()
        queue = list(seeds)
        while queue:
            v = queue.pop()
            if mask[v]:
                continue
            cur = np.flatnonzero(mask)
            multiples = [v] + [int(self.scale[c][v]) for c in self.scale if c != 1]
            new = np.unique(self.add[np.ix_(cur, multiples)])
            mask[new] = True
            queue.extend(int(self.act[g][v]) for g in self.act)
        return mask

    def join(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros(self.size, dtype=bool)
        out[np.unique(self.add[np.ix_(np.flatnonzero(a), np.flatnonzero(b))])] = True
        return out

    def subspace(self, mask: np.ndarray) -> Subspace:
        return span(self.m.field, self.n, self.vecs[np.flatnonzero(mask)])

    def zero(self) -> np.ndarray:
        z = np.zeros(self.size, dtype=bool)
        z[0] = True
        return z


@dataclass
class LatticeSummary:
    count: int
    socle: Subspace
    radical: Subspace
    trivial_socle: Subspace  # largest submodule with only trivial composition factors
    trivial_top: Subspace  # smallest submodule with trivial quotient
    submodule_dims: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "socle_dim": self.socle.dim,
            "radical_dim": self.radical.dim,
            "trivial_socle_dim": self.trivial_socle.dim,
            "trivial_top_dim": self.trivial_top.dim,
            "submodule_dims": self.submodule_dims,
        }


def _check_enum_size(m: ModuleRep, limit: int | None = None):
    q = m.field.cardinality
    bound = limit if limit is not None else ENUM_LIMITS[q]
    if m.dim > bound:
        raise TooLarge(f"dim {m.dim} over F{q} exceeds the enumeration bound {bound}")


def submodule_lattice(m: ModuleRep) -> list[np.ndarray]:
    """Every submodule of m, as boolean masks over the enumerated vectors."""
    _check_enum_size(m)
    tab = _VectorTable(m)
    zero = tab.zero()
    cyclic = {}
    for v in range(tab.size):
        c = tab.close(zero, [v])
        cyclic.setdefault(c.tobytes(), c)
    seen = {zero.tobytes(): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic.values():
                if np.all(s[c]):
                    continue
                t = tab.join(s, c)
                key = t.tobytes()
                if key not in seen:
                    seen[key] = t
                    nxt.append(t)
        frontier = nxt
    return list(seen.values())


def oracle_submodule_enum(m: ModuleRep) -> LatticeSummary:
    """Count, socle, radical and trivial towers of m, all by exhaustive enumeration."""
    _check_enum_size(m)
    tab = _VectorTable(m)
    subs = submodule_lattice(m)
    sizes = np.array([s.sum() for s in subs])
    full = np.ones(tab.size, dtype=bool)

    def proper_sub(a, b):
        return a.sum() < b.sum() and bool(np.all(b[a]))

    nonzero = [s for s in subs if s.sum() > 1]
    atoms = [s for s in nonzero if not any(proper_sub(o, s) for o in nonzero)]
    soc = tab.zero()
    for s in atoms:
        soc = tab.join(soc, s)
    proper = [s for s in subs if s.sum() < tab.size]
    coatoms = [s for s in proper if not any(proper_sub(s, o) for o in proper)]
    rad = full.copy()
    for s in coatoms:
        rad &= s
    if not coatoms:
        rad = tab.zero()

    # t-fixed vectors and the span of (t - 1)M, by looking at every vector
    fixed = tab.act["t"] == np.arange(tab.size)
    moved = np.unique(tab.add[tab.act["t"], tab.scale[_neg_one(m)]])
    inside_fixed = [s for s in subs if np.all(fixed[s])]
    tsoc = max(inside_fixed, key=lambda s: s.sum())
    containing = [s for s in subs if np.all(s[moved])]
    ttop = min(containing, key=lambda s: s.sum())
    q = m.field.cardinality
    dims = sorted(int(round(np.log(s) / np.log(q))) for s in sizes)
    return LatticeSummary(
        len(subs), tab.subspace(soc), tab.subspace(rad), tab.subspace(tsoc), tab.subspace(ttop), dims
    )


def _neg_one(m: ModuleRep) -> int:
    return int(m.field.neg(1))


def oracle_step5_minimum(m: ModuleRep, limit: int = STEP5_LIMIT):
    """Minimal dim kG·m over every m in Ker Y^2 with tm = -m, m ∉ Y^2 M, Zm ∈ Y^2 M (case A).

    Every vector of M is tested; dim kG·m is the rank of {b·m : b a basis element of kG}.
    Returns (minimal dimension, number of candidates); (None, 0) when there is no candidate.
    """
    if m.algebra.case != "A":
        raise ValueError("the Step-5 oracle is for case A modules")
    _check_enum_size(m, limit)
    f = m.field
    vecs = all_vectors(f, m.dim)
    y2 = f.matmul(m["Y"], m["Y"])
    y2m = span(f, m.dim, y2.T)
    act = lambda g: f.matmul(vecs, g.T)  # noqa: E731
    minus = f.neg(vecs)
    in_y2m = lambda rows: ~np.any(y2m.reduce(rows), axis=1)  # noqa: E731
    cand = (
        np.all(act(m["t"]) == minus, axis=1)
        & ~np.any(act(y2), axis=1)
        & ~in_y2m(vecs)
        & in_y2m(act(m["Z"]))
    )
    mats = np.stack([m.element_matrix(e) for e in _kg_basis(m)])
    best = None
    for v in vecs[cand]:
        d = rank(f, np.einsum("bij,j->bi", mats, v) % f.characteristic)  # case A is over F3
        if best is None or d < best:
            best = d
    if best is None:
        return None, 0
    return best, int(cand.sum())


def _kg_basis(m: ModuleRep):
    from .algebra import AlgebraElement

    a = m.algebra
    out = []
    for i in range(a.dim):
        coeffs = np.zeros(a.dim, dtype=np.int64)
        coeffs[i] = 1
        out.append(AlgebraElement(a, coeffs))
    return out


# -- generic decomposition ---------------------------------------------------------------------


def _random_endomorphism(m: ModuleRep, basis, rng) -> np.ndarray:
    f = m.field
    coeffs = f.random(rng, len(basis))
    return f.matmul(coeffs, basis).reshape(m.dim, m.dim)


def _split(m: ModuleRep, rng, tries: int) -> list[ModuleRep]:
    """Fitting-split m with random endomorphisms until every piece looks local."""
    from .calculus import hom_space

    f = m.field
    if m.dim == 0:
        return []
    end = hom_space(m, m).basis
    for _ in range(tries):
        phi = _random_endomorphism(m, end, rng)
        p = phi
        for _ in range(max(1, m.dim.bit_length())):
            p = f.matmul(p, p)  # phi^(2^j) >= phi^dim
        rk = rank(f, p)
        if 0 < rk < m.dim:
            im = span(f, m.dim, p.T)
            from .linalg import nullspace

            ker = nullspace(f, p)
            return _split(sub_module(m, ker, check=False), rng, tries) + _split(
                sub_module(m, im, check=False), rng, tries
            )
    return [m]


def _isomorphic(a: ModuleRep, b: ModuleRep, rng, tries: int = 32) -> bool:
    from .calculus import hom_space

    if a.dim != b.dim:
        return False
    if a.dim == 0:
        return True
    f = a.field
    homs = hom_space(a, b).basis
    if len(homs) == 0:
        return False
    for _ in range(tries):
        h = f.matmul(f.random(rng, len(homs)), homs).reshape(b.dim, a.dim)
        if rank(f, h) == a.dim:
            return True
    return False


def oracle_generic_decompose(m: ModuleRep, seed: int = 0, tries: int = 48):
    """Decompose a kD/kA-module (kG modules are restricted first) by endomorphism splitting.

    Summands are named by isomorphism with the classified fixtures; anything else
    is reported as "?<dim>".
    """
    from .projectives import DecompositionReport, type_module, type_tags

    a = m.algebra
    if a.case in ("A", "B"):
        m = restrict(m, subalgebra(a))
        a = m.algebra
    if m.dim > GENERIC_LIMIT:
        raise TooLarge(f"dim {m.dim} exceeds {GENERIC_LIMIT}")
    rng = np.random.default_rng(seed)
    pieces = _split(m, rng, tries)
    fixtures = [(t, type_module(a, t)) for t in type_tags(a)]
    counts = {t: 0 for t in type_tags(a)}
    for p in pieces:
        for tag, fx in fixtures:
            if _isomorphic(p, fx, rng):
                counts[tag] += 1
                break
        else:
            key = f"?{p.dim}"
            counts[key] = counts.get(key, 0) + 1
    return DecompositionReport(a, counts)


def oracle_is_indecomposable(m: ModuleRep, seed: int = 0, tries: int = 48) -> bool:
    return len(_split(m, np.random.default_rng(seed), tries)) == 1


__all__ = [
    "LatticeSummary",
    "oracle_submodule_enum",
    "oracle_generic_decompose",
    "oracle_step5_minimum",
    "oracle_is_indecomposable",
    "submodule_lattice",
]
