"""The group algebras as truncated polynomial algebras twisted by a cyclic t.

Every algebra here has the shape

    k[g_1, ..., g_s] / (g_i ** n_i)  ⋊  <t | t**o = 1>,     t g_i = eta_i g_i t

with commuting nilpotent generators g_i and a semisimple generator t whose
order o is invertible in k.  The four instances are

    case "A"  (Z/3^r x S3, char 3):  Z^(3^r) = Y^3 = 0, tZ = Zt, tY = -Yt
    case "B"  (Z/2 x A4, char 2):    X^2 = Y^2 = Z^2 = 0, tX = wXt, tY = wbar Yt, tZ = Zt
    case "D"  (S3 inside case A):    Y^3 = 0, tY = -Yt
    case "A4" (A4 inside case B):    X^2 = Y^2 = 0, tX = wXt, tY = wbar Yt

The basis is {n t^e} for nilpotent monomials n (sorted by degree) and
0 <= e < o.  Structure constants follow from

    (n1 t^a)(n2 t^b) = chi(n2)^a n1 n2 t^(a+b),   chi(n) = prod eta_i^(deg_i n).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BadCharacteristic, BadField
from .fields import F3, F4, OMEGA, OMEGA_BAR, Field

SIMPLE_NAMES = {
    "F3": {1: "k", 2: "ε"},
    "F4": {1: "k", OMEGA: "ω", OMEGA_BAR: "ω̄"},
}


@dataclass(frozen=True)
class AlgebraPresentation:
    case: str
    field: Field
    nilpotent: tuple[str, ...]
    nil_orders: tuple[int, ...]
    t_order: int
    eta: tuple[int, ...]
    r: int | None = None

    # -- descriptors -----------------------------------------------------------

    @property
    def generators(self) -> tuple[str, ...]:
        return self.nilpotent + ("t",)

    def descriptor(self) -> dict:
        d = {"case": self.case}
        if self.r is not None:
            d["r"] = self.r
        return d

    def __repr__(self):
        return f"kG[{self.case}{'' if self.r is None else f', r={self.r}'}]"

    def eta_of(self, gen: str) -> int:
        return self.eta[self.nilpotent.index(gen)]

    # -- bases -----------------------------------------------------------------

    @cached_property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        """Nilpotent monomials as exponent tuples, by degree then reverse lex."""
        exps = itertools.product(*[range(n) for n in self.nil_orders])
        return tuple(sorted(exps, key=lambda e: (sum(e), tuple(-x for x in e))))

    @cached_property
    def monomial_index(self) -> dict:
        return {e: i for i, e in enumerate(self.monomials)}

    @property
    def n_monomials(self) -> int:
        return len(self.monomials)

    @property
    def dim(self) -> int:
        return self.n_monomials * self.t_order

    @cached_property
    def monomial_basis(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        return tuple((m, e) for m in self.monomials for e in range(self.t_order))

    def basis_index(self, mono, e: int) -> int:
        return self.monomial_index[tuple(mono)] * self.t_order + (e % self.t_order)

    def monomial_name(self, mono) -> str:
        parts = []
        for g, k in zip(self.nilpotent, mono):
            if k == 1:
                parts.append(g)
            elif k > 1:
                parts.append(f"{g}^{k}")
        return "".join(parts) or "1"

    @property
    def top_monomial(self) -> tuple[int, ...]:
        """Exponents of the socle element of the nilpotent part."""
        return tuple(n - 1 for n in self.nil_orders)

    # -- the t grading -----------------------------------------------------------

    def chi(self, mono) -> int:
        """t-eigenvalue shift of a nilpotent monomial: t n = chi(n) n t."""
        f = self.field
        out = 1
        for eta, k in zip(self.eta, mono):
            out = int(f.mul(out, f.power(eta, k)))
        return out

    @cached_property
    def eigenvalues(self) -> tuple[int, ...]:
        """The t-eigenvalues of the simple modules, trivial first."""
        if self.t_order == 2:
            return (1, self.field.minus_one)
        return (1, OMEGA, OMEGA_BAR)

    def simple_name(self, eig: int) -> str:
        return SIMPLE_NAMES[self.field.name][eig]

    def eigenvalue_of(self, name: str) -> int:
        for e in self.eigenvalues:
            if self.simple_name(e) == name:
                return e
        raise KeyError(name)

    # -- multiplication --------------------------------------------------------------

    def mono_mul(self, m1, m2):
        prod = tuple(a + b for a, b in zip(m1, m2))
        if any(p >= n for p, n in zip(prod, self.nil_orders)):
            return None
        return prod

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """table[i, j] = (k, c): b_i b_j = c b_k, with c == 0 for a zero product."""
        f = self.field
        d = self.dim
        table = np.zeros((d, d, 2), dtype=np.int64)
        for i, (m1, a) in enumerate(self.monomial_basis):
            for j, (m2, b) in enumerate(self.monomial_basis):
                prod = self.mono_mul(m1, m2)
                if prod is None:
                    continue
                c = f.power(self.chi(m2), a)
                table[i, j] = (self.basis_index(prod, a + b), c)
        return table

    def element(self, coeffs=None) -> "AlgebraElement":
        v = np.zeros(self.dim, dtype=np.int64)
        if coeffs is not None:
            v[:] = np.asarray(coeffs, dtype=np.int64)
        return AlgebraElement(self, v)

    def word(self, text: str) -> "AlgebraElement":
        """Parse a product of generators such as 'tY', 'Z^2Y', 'XYZ' or '1'."""
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.basis_index(tuple(0 for _ in self.nilpotent), 0)] = 1
        out = AlgebraElement(self, v)
        for gen, power in _parse_word(text):
            g = self.generator_element(gen)
            for _ in range(power):
                out = out * g
        return out

    def generator_element(self, gen: str) -> "AlgebraElement":
        v = np.zeros(self.dim, dtype=np.int64)
        zero = tuple(0 for _ in self.nilpotent)
        if gen == "t":
            v[self.basis_index(zero, 1)] = 1
        else:
            mono = tuple(1 if g == gen else 0 for g in self.nilpotent)
            v[self.basis_index(mono, 0)] = 1
        return AlgebraElement(self, v)

    @cached_property
    def sylow_socle(self) -> "AlgebraElement":
        """The socle element of the nilpotent part (Z^(3^r-1)Y^2, XYZ, Y^2, XY)."""
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.basis_index(self.top_monomial, 0)] = 1
        return AlgebraElement(self, v)


def _parse_word(text: str):
    text = text.replace("*", "").strip()
    if text in ("", "1"):
        return []
    out = []
    i = 0
    while i < len(text):
        gen = text[i]
        i += 1
        power = 1
        if i < len(text) and text[i] == "^":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            power = int(text[i + 1 : j])
            i = j
        out.append((gen, power))
    return out


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: AlgebraPresentation
    coeffs: np.ndarray

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        a = self.algebra
        f = a.field
        table = a.structure_constants
        out = np.zeros(a.dim, dtype=np.int64)
        for i in np.flatnonzero(self.coeffs):
            for j in np.flatnonzero(other.coeffs):
                k, c = table[i, j]
                if c:
                    term = f.mul(f.mul(int(self.coeffs[i]), int(other.coeffs[j])), int(c))
                    out[k] = f.add(out[k], term)
        return AlgebraElement(a, out)

    def __add__(self, other):
        return AlgebraElement(self.algebra, self.algebra.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return AlgebraElement(self.algebra, self.algebra.field.sub(self.coeffs, other.coeffs))

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.field.mul(self.coeffs, c))

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra == self.algebra
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def terms(self):
        """(coefficient, monomial exponents, t power) for every nonzero term."""
        a = self.algebra
        for i in np.flatnonzero(self.coeffs):
            mono, e = a.monomial_basis[i]
            yield int(self.coeffs[i]), mono, e

    def t_eigenvalue(self):
        """eta with t x = eta x t if x is homogeneous, else None."""
        a = self.algebra
        etas = {a.chi(mono) for _, mono, _ in self.terms()}
        return etas.pop() if len(etas) == 1 else None

    def __repr__(self):
        a = self.algebra
        parts = []
        for c, mono, e in self.terms():
            w = a.monomial_name(mono)
            if e:
                w = (w if w != "1" else "") + ("t" if e == 1 else f"t^{e}")
            parts.append(w if c == 1 else f"{a.field.symbol(c)}*{w}")
        return " + ".join(parts) or "0"


def build_case_a(r: int = 1, field: Field = F3) -> AlgebraPresentation:
    if r < 1:
        raise ValueError("r must be positive")
    if field.characteristic != 3:
        raise BadCharacteristic("case A needs characteristic 3")
    return AlgebraPresentation(
        case="A",
        field=field,
        nilpotent=("Z", "Y"),
        nil_orders=(3**r, 3),
        t_order=2,
        eta=(1, field.minus_one),
        r=r,
    )


def build_case_b(field: Field = F4) -> AlgebraPresentation:
    if field.name != "F4":
        raise BadField("case B needs F4")
    return AlgebraPresentation(
        case="B",
        field=field,
        nilpotent=("X", "Y", "Z"),
        nil_orders=(2, 2, 2),
        t_order=3,
        eta=(OMEGA, OMEGA_BAR, 1),
    )


def build_d(field: Field = F3) -> AlgebraPresentation:
    """kD for D = S3 in characteristic 3."""
    return AlgebraPresentation(
        case="D", field=field, nilpotent=("Y",), nil_orders=(3,), t_order=2,
        eta=(field.minus_one,),
    )


def build_a4(field: Field = F4) -> AlgebraPresentation:
    """kA for A = A4 in characteristic 2."""
    return AlgebraPresentation(
        case="A4", field=field, nilpotent=("X", "Y"), nil_orders=(2, 2), t_order=3,
        eta=(OMEGA, OMEGA_BAR),
    )


def presentation_from_descriptor(d: dict) -> AlgebraPresentation:
    case = d["case"]
    if case == "A":
        return build_case_a(int(d.get("r", 1)))
    if case == "B":
        return build_case_b()
    if case == "D":
        return build_d()
    if case == "A4":
        return build_a4()
    raise ValueError(f"unknown algebra case {case!r}")


def subalgebra(a: AlgebraPresentation) -> AlgebraPresentation:
    """The distinguished subalgebra: kD inside case A, kA inside case B."""
    if a.case == "A":
        return build_d(a.field)
    if a.case == "B":
        return build_a4(a.field)
    raise ValueError(f"{a} has no distinguished subalgebra")


def subalgebra_generators(a: AlgebraPresentation) -> list[str]:
    return list(subalgebra(a).generators)


__all__ = [
    "AlgebraPresentation",
    "AlgebraElement",
    "build_case_a",
    "build_case_b",
    "build_d",
    "build_a4",
    "subalgebra",
    "subalgebra_generators",
    "presentation_from_descriptor",
    "F3",
    "F4",
]
