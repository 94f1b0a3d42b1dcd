"""Dense exact linear algebra over F2, F3, F4.

Matrices are 2-d numpy int64 arrays of field codes; the field is passed
explicitly.  Linear maps act on column vectors.  Subspaces are stored by a
reduced row echelon basis, which makes equality a bit-exact comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DimensionMismatch
from .fields import Field


def as_matrix(a, rows=None, cols=None) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if rows is None else m.reshape(rows, cols)
    return m


def rref(f: Field, m, pivot_cols: int | None = None):
    """Reduced row echelon form.

    Returns (R, rank, pivots).  If `pivot_cols` is given, pivots are only
    searched among the first `pivot_cols` columns (the remaining columns are
    carried along, as for an augmented system).
    """
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d array")
    nrows, ncols = a.shape
    limit = ncols if pivot_cols is None else pivot_cols
    pivots: list[int] = []
    r = 0
    prime = f.is_prime
    p = f.characteristic
    for c in range(limit):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r, c:] = f.mul(a[r, c:], int(f.inv(piv)))
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            if prime:
                a[rows, c:] = (a[rows, c:] - col[rows, None] * a[r, c:]) % p
            else:
                a[rows, c:] ^= f.mul(col[rows, None], a[r, c:][None, :])
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(f: Field, m) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return rref(f, m)[1]


def solve_many(f: Field, a, b):
    """Solve a @ X = B column by column.

    Returns (X, solvable) where `solvable` is a boolean array per column;
    unsolvable columns of X are zero.
    """
    a = as_matrix(a)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if b.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"rhs has {b.shape[0]} rows, matrix has {a.shape[0]}")
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    red, rk, piv = rref(f, aug, pivot_cols=n)
    solvable = ~np.any(red[rk:, n:] != 0, axis=0)
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    if rk:
        x[piv, :] = red[:rk, n:]
    x[:, ~solvable] = 0
    if vector:
        return x[:, 0], bool(solvable[0])
    return x, solvable


def solve(f: Field, a, b):
    """Some x with a @ x == b, or None."""
    x, ok = solve_many(f, a, np.asarray(b, dtype=np.int64).reshape(-1))
    return x if ok else None


def inverse(f: Field, a) -> np.ndarray:
    a = as_matrix(a)
    n = a.shape[0]
    x, ok = solve_many(f, a, np.eye(n, dtype=np.int64))
    if a.shape != (n, n) or not ok.all() or rank(f, a) != n:
        raise DimensionMismatch("matrix is not invertible")
    return x


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^n given by its RREF basis (rows)."""

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple = dc_field(default=())

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"

    def reduce(self, vecs) -> np.ndarray:
        """Reduce row vectors modulo the subspace (zero on pivot columns)."""
        v = np.asarray(vecs, dtype=np.int64)
        single = v.ndim == 1
        v = v.reshape(1, -1) if single else v.reshape(v.shape[0], self.ambient_dim)
        if self.dim:
            coeffs = v[:, list(self.pivots)]
            v = self.field.sub(v, self.field.matmul(coeffs, self.basis))
        return v[0] if single else v

    def contains(self, vec) -> bool:
        return not np.any(self.reduce(vec))

    def contains_space(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return other.dim == 0 or not np.any(self.reduce(other.basis))

    def coords(self, vecs) -> np.ndarray:
        """Coordinates of member vectors in the RREF basis."""
        v = np.asarray(vecs, dtype=np.int64)
        return v[..., list(self.pivots)]

    def columns(self) -> np.ndarray:
        """Basis as the columns of an ambient_dim x dim matrix."""
        return self.basis.T.copy()

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]


def span(f: Field, n: int, vectors) -> Subspace:
    """Span of row vectors of length n."""
    v = np.asarray(vectors, dtype=np.int64)
    if v.size == 0:
        return zero_subspace(f, n)
    v = v.reshape(-1, n)
    red, rk, piv = rref(f, v)
    return Subspace(f, n, red[:rk].copy(), tuple(piv))


def span_columns(f: Field, m) -> Subspace:
    m = as_matrix(m)
    return span(f, m.shape[0], m.T)


def zero_subspace(f: Field, n: int) -> Subspace:
    return Subspace(f, n, np.zeros((0, n), dtype=np.int64), ())


def full_subspace(f: Field, n: int) -> Subspace:
    return Subspace(f, n, np.eye(n, dtype=np.int64), tuple(range(n)))


def nullspace(f: Field, m) -> Subspace:
    """Kernel of m acting on column vectors."""
    m = as_matrix(m)
    n = m.shape[1]
    if m.shape[0] == 0:
        return full_subspace(f, n)
    red, rk, piv = rref(f, m)
    free = [j for j in range(n) if j not in set(piv)]
    if not free:
        return zero_subspace(f, n)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        basis[k, j] = 1
        if rk:
            basis[k, piv] = f.neg(red[:rk, j])
    return span(f, n, basis)


def column_space(f: Field, m) -> Subspace:
    return span_columns(f, m)


def image(f: Field, m, sub: Subspace) -> Subspace:
    m = as_matrix(m)
    if m.shape[1] != sub.ambient_dim:
        raise DimensionMismatch("map and subspace do not match")
    if sub.dim == 0:
        return zero_subspace(f, m.shape[0])
    return span(f, m.shape[0], f.matmul(m, sub.basis.T).T)


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(f"ambient {u.ambient_dim} != {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return span(u.field, u.ambient_dim, np.concatenate([u.basis, v.basis]))


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """u ∩ v from the kernel of the stacked bases."""
    _check_ambient(u, v)
    f = u.field
    if u.dim == 0 or v.dim == 0:
        return zero_subspace(f, u.ambient_dim)
    stacked = np.concatenate([u.basis, v.basis]).T
    ker = nullspace(f, stacked)
    if ker.dim == 0:
        return zero_subspace(f, u.ambient_dim)
    return span(f, u.ambient_dim, f.matmul(ker.basis[:, : u.dim], u.basis))


def annihilator(v: Subspace) -> np.ndarray:
    """Rows spanning the functionals that vanish on v."""
    if v.dim == 0:
        return np.eye(v.ambient_dim, dtype=np.int64)
    return nullspace(v.field, v.basis).basis


def subspace_preimage(f: Field, m, v: Subspace) -> Subspace:
    """{x : m x in v}."""
    return joint_preimage(f, [m], v)


def joint_preimage(f: Field, maps, v: Subspace) -> Subspace:
    """{x : g x in v for every g in maps}."""
    maps = [as_matrix(g) for g in maps]
    n = maps[0].shape[1]
    for g in maps:
        if g.shape[0] != v.ambient_dim:
            raise DimensionMismatch("map target does not match subspace")
    ann = annihilator(v)
    if ann.shape[0] == 0:
        return full_subspace(f, n)
    return nullspace(f, np.concatenate([f.matmul(ann, g) for g in maps]))


def joint_kernel(f: Field, maps, n: int) -> Subspace:
    maps = [as_matrix(g) for g in maps]
    if not maps:
        return full_subspace(f, n)
    return nullspace(f, np.concatenate(maps))


def subspace_contains(u: Subspace, vec) -> bool:
    return u.contains(vec)


def complement_basis(u: Subspace, inside: Subspace | None = None) -> np.ndarray:
    """Rows extending a basis of u to a basis of `inside` (default: everything).

    Deterministic: the rows of inside's RREF basis are scanned in order.
    """
    f = u.field
    if inside is None:
        inside = full_subspace(f, u.ambient_dim)
    stacked = np.concatenate([u.basis, inside.basis])
    if stacked.shape[0] == 0:
        return np.zeros((0, u.ambient_dim), dtype=np.int64)
    # pivot columns of the transpose pick the earliest independent rows
    _, _, piv = rref(f, stacked.T)
    chosen = [j - u.dim for j in piv if j >= u.dim]
    return inside.basis[chosen].copy()


def enumerate_subspace(u: Subspace) -> np.ndarray:
    """All vectors of u as rows (q**dim of them)."""
    f = u.field
    q = f.cardinality
    k = u.dim
    if k == 0:
        return np.zeros((1, u.ambient_dim), dtype=np.int64)
    idx = np.arange(q**k)
    coeffs = np.stack([(idx // q**i) % q for i in range(k)], axis=1)
    return f.matmul(coeffs, u.basis)


def all_vectors(f: Field, n: int) -> np.ndarray:
    return enumerate_subspace(full_subspace(f, n))
