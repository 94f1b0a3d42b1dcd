"""Exact arithmetic in F2, F3 and F4.

Elements are stored as small integer codes so that whole matrices can live
in numpy integer arrays.  For F4 the encoding is fixed:

    0 -> 0, 1 -> 1, w -> 2, wbar -> 3

with w**3 == 1 and wbar == w**2 == w + 1.  Under this encoding the two bits
of a code are the coordinates over F2 in the basis (1, w), so addition is
bitwise XOR.
"""
from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .errors import DivisionByZero, MixedFields

OMEGA = 2
OMEGA_BAR = 3

_F4_MUL = np.array(
    [
        [0, 0, 0, 0],
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
    ],
    dtype=np.int64,
)
_F4_INV = np.array([0, 1, 3, 2], dtype=np.int64)


@dataclass(frozen=True)
class Field:
    """One of the three small fields, identified by its file name."""

    name: str

    def __post_init__(self):
        if self.name not in ("F2", "F3", "F4"):
            raise ValueError(f"unsupported field {self.name!r}")

    @property
    def characteristic(self) -> int:
        return 3 if self.name == "F3" else 2

    @property
    def cardinality(self) -> int:
        return {"F2": 2, "F3": 3, "F4": 4}[self.name]

    @property
    def is_prime(self) -> bool:
        return self.name != "F4"

    def __repr__(self):
        return self.name

    # -- elementwise operations on codes (ints or integer arrays) ----------

    def add(self, a, b):
        if self.name == "F4":
            return np.bitwise_xor(a, b)
        return (np.asarray(a) + b) % self.characteristic

    def neg(self, a):
        if self.name == "F4" or self.name == "F2":
            return np.asarray(a).copy() if isinstance(a, np.ndarray) else a
        return (-np.asarray(a)) % 3

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.name == "F4":
            return _F4_MUL[a, b]
        return (np.asarray(a) * b) % self.characteristic

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("inverse of zero")
        if self.name == "F4":
            return _F4_INV[a]
        return a  # 1 and 2 are self-inverse in F3, 1 in F2

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = int(self.inv(a)), -n
        out = 1
        for _ in range(n):
            out = int(self.mul(out, a))
        return out

    def sum(self, arr, axis=None):
        arr = np.asarray(arr)
        if self.name == "F4":
            return np.bitwise_xor.reduce(arr, axis=axis)
        return arr.sum(axis=axis) % self.characteristic

    # -- matrices ------------------------------------------------------------

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product of code arrays.

        Uses float64 BLAS; entries are < 4 so partial sums stay exact far
        beyond any dimension used here.
        """
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape[-1] == 0 or b.shape[0] == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return np.zeros(shape, dtype=np.int64)
        if self.name == "F4":
            a0 = (a & 1).astype(np.float64)
            a1 = (a >> 1).astype(np.float64)
            b0 = (b & 1).astype(np.float64)
            b1 = (b >> 1).astype(np.float64)
            a1b1 = a1 @ b1
            re = (np.rint(a0 @ b0 + a1b1).astype(np.int64)) & 1
            im = (np.rint(a0 @ b1 + a1 @ b0 + a1b1).astype(np.int64)) & 1
            return re | (im << 1)
        p = self.characteristic
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.mul(a[:, None, :, None], b[None, :, None, :])
        return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def frobenius(self, a):
        """a -> a**p; on F4 this swaps w and wbar."""
        if self.name == "F4":
            return _F4_MUL[a, a]
        return a

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.cardinality, size=shape, dtype=np.int64)

    # -- named constants -------------------------------------------------------

    @property
    def minus_one(self) -> int:
        return 2 if self.name == "F3" else 1

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> field."""
        return n % self.characteristic

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def symbol(self, code: int) -> str:
        if self.name == "F4":
            return ["0", "1", "ω", "ω̄"][code]
        return str(code)


F2 = Field("F2")
F3 = Field("F3")
F4 = Field("F4")


def field_from_name(name: str) -> Field:
    return Field(name)


@dataclass(frozen=True)
class FieldElement:
    """A scalar with operator overloading; mostly for tests and examples."""

    field: Field
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.cardinality:
            raise ValueError(f"code {self.code} out of range for {self.field}")

    def _check(self, other: "FieldElement"):
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise MixedFields(f"{self.field} vs {getattr(other, 'field', other)}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.add(self.code, other.code)))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.sub(self.code, other.code)))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.mul(self.code, other.code)))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.code)))

    def inverse(self):
        return FieldElement(self.field, int(self.field.inv(self.code)))

    def __truediv__(self, other):
        return self * other.inverse()

    def __repr__(self):
        return f"{self.field.symbol(self.code)}@{self.field.name}"


def field_ops(a: FieldElement, b: FieldElement, which: str) -> FieldElement:
    if which == "add":
        return a + b
    if which == "mul":
        return a * b
    if which == "neg":
        return -a
    if which == "inv":
        return a.inverse()
    raise ValueError(which)


def all_elements(f: Field) -> list[FieldElement]:
    """Every element of f, zero first and one second."""
    return [FieldElement(f, c) for c in range(f.cardinality)]
