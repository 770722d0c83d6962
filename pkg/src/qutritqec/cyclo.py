"""Exact arithmetic in Q(w), w a primitive cube root of unity, plus dense
linear algebra over it.

Every number is stored as ``a + b*w`` with rational ``a``, ``b``.  Because
``w**2 == -1 - w``, the set is closed under multiplication, so all code
amplitudes and Pauli phases can be manipulated without rounding.  A parallel
floating-point path (complex128) shares the same matrix/vector surface; the
exact path is authoritative, the float path exists for arbitrary-unitary
work and speed.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

#: Complex value of the primitive cube root of unity, for the embedding.
OMEGA_COMPLEX = complex(-0.5, math.sqrt(3.0) / 2.0)

RationalLike = Union[int, Fraction]


class DimensionMismatchError(ValueError):
    """Raised when matrix/vector shapes are incompatible."""


class CycloNumber:
    """Element ``a + b*w`` of the field Q(w), with ``a``, ``b`` rational.

    Multiplication uses ``w**2 == -1 - w``; conjugation sends ``w`` to
    ``w**2``, i.e. ``conj(a + b*w) == (a - b) - b*w``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def omega(cls, k: int = 1) -> "CycloNumber":
        """Return ``w**k`` (``k`` taken mod 3)."""
        k %= 3
        if k == 0:
            return cls(1, 0)
        if k == 1:
            return cls(0, 1)
        return cls(-1, -1)

    @classmethod
    def zero(cls) -> "CycloNumber":
        return cls(0, 0)

    @classmethod
    def one(cls) -> "CycloNumber":
        return cls(1, 0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "CycloNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloNumber(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(-self.a, -self.b)

    def __sub__(self, other) -> "CycloNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloNumber(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> "CycloNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "CycloNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # (a1 + b1 w)(a2 + b2 w) with w^2 = -1 - w
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return CycloNumber(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse; Q(w) is a field."""
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero CycloNumber")
        c = self.conjugate()
        return CycloNumber(c.a / n, c.b / n)

    def __truediv__(self, other) -> "CycloNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycloNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "CycloNumber":
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloNumber.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "CycloNumber":
        return CycloNumber(self.a - self.b, -self.b)

    def norm2(self) -> Fraction:
        """``|x|**2 = a**2 - a*b + b**2``, always a nonnegative rational."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def embed(self) -> complex:
        """Image under ``w -> exp(2*pi*i/3)``; a ring homomorphism."""
        return complex(self.a) + complex(self.b) * OMEGA_COMPLEX

    # -- predicates and hashing ---------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __complex__(self) -> complex:
        return self.embed()

    def __repr__(self) -> str:
        return f"CycloNumber({self.a!r}, {self.b!r})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*w"

    # -- JSON form ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> "CycloNumber":
        return cls(Fraction(obj["a"]), Fraction(obj["b"]))


def _coerce(x) -> "CycloNumber":
    if isinstance(x, CycloNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloNumber(x, 0)
    return NotImplemented


#: Singletons used throughout.
ZERO = CycloNumber(0, 0)
ONE = CycloNumber(1, 0)
OMEGA = CycloNumber.omega(1)
OMEGA2 = CycloNumber.omega(2)


def rational_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a nonnegative rational, or raise if irrational."""
    if q < 0:
        raise ValueError("negative rational has no real square root")
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"{q} is not a perfect rational square")
    return Fraction(rn, rd)


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------

def _as_cyclo_array(entries) -> np.ndarray:
    arr = np.empty((len(entries), len(entries[0])), dtype=object)
    for i, row in enumerate(entries):
        if len(row) != arr.shape[1]:
            raise DimensionMismatchError("ragged rows in matrix literal")
        for j, v in enumerate(row):
            c = _coerce(v)
            if c is NotImplemented:
                raise TypeError(f"cannot interpret {v!r} as a CycloNumber")
            arr[i, j] = c
    return arr


class DenseMatrix:
    """Dense matrix over either exact CycloNumbers or complex128.

    Both numeric paths expose the same operations; ``exact`` tells which one
    a given instance is on.  Mixed-path arithmetic is not supported — convert
    explicitly with :meth:`to_float`.
    """

    __slots__ = ("data", "exact")

    def __init__(self, data: np.ndarray, exact: bool):
        self.data = data
        self.exact = exact

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence]) -> "DenseMatrix":
        """Exact matrix from nested int/Fraction/CycloNumber entries."""
        return cls(_as_cyclo_array(entries), exact=True)

    @classmethod
    def from_complex(cls, array) -> "DenseMatrix":
        arr = np.asarray(array, dtype=np.complex128)
        if arr.ndim != 2:
            raise DimensionMismatchError("expected a 2-D array")
        return cls(arr, exact=False)

    @classmethod
    def zeros(cls, rows: int, cols: int, exact: bool = True) -> "DenseMatrix":
        if exact:
            arr = np.empty((rows, cols), dtype=object)
            arr[:, :] = ZERO
            return cls(arr, exact=True)
        return cls(np.zeros((rows, cols), dtype=np.complex128), exact=False)

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "DenseMatrix":
        m = cls.zeros(n, n, exact=exact)
        for i in range(n):
            m.data[i, i] = ONE if exact else 1.0 + 0.0j
        return m

    # -- shape and access ---------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple:
        return self.data.shape

    def entry(self, i: int, j: int):
        return self.data[i, j]

    def copy(self) -> "DenseMatrix":
        return DenseMatrix(self.data.copy(), self.exact)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_path(self, other: "DenseMatrix"):
        if self.exact != other.exact:
            raise TypeError("cannot mix exact and float matrices; convert first")

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check_same_path(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"add: {self.shape} vs {other.shape}")
        return DenseMatrix(self.data + other.data, self.exact)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check_same_path(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"sub: {self.shape} vs {other.shape}")
        return DenseMatrix(self.data - other.data, self.exact)

    def scale(self, s) -> "DenseMatrix":
        """Multiply every entry by the scalar ``s``."""
        if self.exact:
            c = _coerce(s)
            if c is NotImplemented:
                raise TypeError(f"cannot scale exact matrix by {s!r}")
            return DenseMatrix(self.data * c, True)
        return DenseMatrix(self.data * complex(s), False)

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check_same_path(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"matmul: {self.shape} incompatible with {other.shape}"
            )
        if not self.exact:
            return DenseMatrix(self.data @ other.data, False)
        return DenseMatrix(_exact_matmul(self.data, other.data), True)

    def matvec(self, vec: "StateVector") -> "StateVector":
        if self.exact != vec.exact:
            raise TypeError("cannot mix exact and float values; convert first")
        if self.cols != vec.dim:
            raise DimensionMismatchError(f"matvec: {self.shape} vs dim {vec.dim}")
        if not self.exact:
            return StateVector(self.data @ vec.data, False)
        col = _exact_matmul(self.data, vec.data.reshape(-1, 1))
        return StateVector(col.reshape(-1), True)

    def tensor(self, other: "DenseMatrix") -> "DenseMatrix":
        """Kronecker product; dims multiply."""
        self._check_same_path(other)
        return DenseMatrix(np.kron(self.data, other.data), self.exact)

    def adjoint(self) -> "DenseMatrix":
        if self.exact:
            out = np.empty((self.cols, self.rows), dtype=object)
            for i in range(self.rows):
                for j in range(self.cols):
                    out[j, i] = self.data[i, j].conjugate()
            return DenseMatrix(out, True)
        return DenseMatrix(self.data.conj().T, False)

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatchError("trace of non-square matrix")
        total = ZERO if self.exact else 0.0j
        for i in range(self.rows):
            total = total + self.data[i, i]
        return total

    # -- predicates ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if self.exact != other.exact or self.shape != other.shape:
            return False
        return bool(np.all(self.data == other.data))

    def is_unitary(self, tol: float = 1e-12) -> bool:
        """Exact path: ``A A+ == I`` with no tolerance; float path: max
        entry deviation at most ``tol``."""
        if self.rows != self.cols:
            return False
        prod = self @ self.adjoint()
        ident = DenseMatrix.identity(self.rows, exact=self.exact)
        if self.exact:
            return prod == ident
        return float(np.max(np.abs(prod.data - ident.data))) <= tol

    def is_hermitian(self) -> bool:
        return self.rows == self.cols and self == self.adjoint()

    def max_abs(self) -> float:
        """Largest entry magnitude, after embedding if exact."""
        return float(np.max(np.abs(self.to_float().data))) if self.data.size else 0.0

    # -- conversions --------------------------------------------------------

    def to_float(self) -> "DenseMatrix":
        if not self.exact:
            return self
        out = np.empty(self.shape, dtype=np.complex128)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self.data[i, j].embed()
        return DenseMatrix(out, False)

    def to_json(self) -> dict:
        if self.exact:
            entries = [
                [self.data[i, j].to_json() for j in range(self.cols)]
                for i in range(self.rows)
            ]
        else:
            entries = [
                [[self.data[i, j].real, self.data[i, j].imag] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json(cls, obj: dict) -> "DenseMatrix":
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatchError("entry grid does not match declared shape")
        first = entries[0][0] if rows and cols else {}
        if isinstance(first, dict):
            data = np.empty((rows, cols), dtype=object)
            for i in range(rows):
                for j in range(cols):
                    data[i, j] = CycloNumber.from_json(entries[i][j])
            return cls(data, exact=True)
        arr = np.array(
            [[complex(e[0], e[1]) for e in row] for row in entries],
            dtype=np.complex128,
        )
        return cls(arr, exact=False)

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)

    @classmethod
    def load(cls, path) -> "DenseMatrix":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"DenseMatrix({self.rows}x{self.cols}, {kind})"


def _exact_matmul(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Exact product of two object arrays of CycloNumbers.

    Splits each factor into integer numerator arrays for the 1 and w parts
    over a common denominator, multiplies with integer matmuls (int64 when a
    conservative bound rules out overflow, arbitrary-precision otherwise),
    and reassembles.  This keeps 243x243 products exact and fast.
    """
    a1, b1, d1 = _split_numerators(lhs)
    a2, b2, d2 = _split_numerators(rhs)
    inner = lhs.shape[1]
    m1 = max(int(np.max(np.abs(a1))), int(np.max(np.abs(b1))), 1)
    m2 = max(int(np.max(np.abs(a2))), int(np.max(np.abs(b2))), 1)
    if 2 * inner * m1 * m2 < 2**62:
        a1 = a1.astype(np.int64); b1 = b1.astype(np.int64)
        a2 = a2.astype(np.int64); b2 = b2.astype(np.int64)
    # (A1 + B1 w)(A2 + B2 w) = (A1A2 - B1B2) + (A1B2 + B1A2 - B1B2) w
    p_aa = a1 @ a2
    p_bb = b1 @ b2
    p_ab = a1 @ b2
    p_ba = b1 @ a2
    ra = p_aa - p_bb
    rb = p_ab + p_ba - p_bb
    den = d1 * d2
    out = np.empty((lhs.shape[0], rhs.shape[1]), dtype=object)
    for i in range(out.shape[0]):
        for j in range(out.shape[1]):
            out[i, j] = CycloNumber(
                Fraction(int(ra[i, j]), den), Fraction(int(rb[i, j]), den)
            )
    return out


def _split_numerators(arr: np.ndarray):
    """Write an object array of CycloNumbers as (A + B*w)/den with integer
    object arrays A, B and a single positive denominator."""
    den = 1
    for x in arr.flat:
        den = den * x.a.denominator // math.gcd(den, x.a.denominator)
        den = den * x.b.denominator // math.gcd(den, x.b.denominator)
    a = np.empty(arr.shape, dtype=object)
    b = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        a[idx] = x.a.numerator * (den // x.a.denominator)
        b[idx] = x.b.numerator * (den // x.b.denominator)
    return a, b, den


def exact_rank(matrix: DenseMatrix) -> int:
    """Rank over Q(w) by Gaussian elimination; no tolerances involved."""
    if not matrix.exact:
        raise TypeError("exact_rank requires an exact matrix")
    work = matrix.data.copy()
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if not work[r, col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            work[[pivot, rank], :] = work[[rank, pivot], :]
        inv = work[rank, col].inverse()
        for r in range(rank + 1, rows):
            if not work[r, col].is_zero():
                factor = work[r, col] * inv
                for c in range(col, cols):
                    work[r, c] = work[r, c] - factor * work[rank, c]
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# State vectors
# ---------------------------------------------------------------------------

def ket_to_index(ket: str) -> int:
    """Ternary string to basis index, leftmost digit most significant."""
    idx = 0
    for ch in ket:
        if ch not in "012":
            raise ValueError(f"invalid ternary digit {ch!r} in ket {ket!r}")
        idx = 3 * idx + int(ch)
    return idx


def index_to_ket(index: int, n_sites: int) -> str:
    digits = []
    for _ in range(n_sites):
        digits.append(str(index % 3))
        index //= 3
    return "".join(reversed(digits))


class StateVector:
    """Vector in the 3**n dimensional space, exact or floating point.

    Basis order follows the ket labels: ``|q1 q2 ... qn>`` maps to the index
    with q1 as the most significant ternary digit.
    """

    __slots__ = ("data", "exact")

    def __init__(self, data: np.ndarray, exact: bool):
        self.data = data
        self.exact = exact

    @classmethod
    def basis_state(cls, n_sites: int, ket: str, exact: bool = True) -> "StateVector":
        dim = 3**n_sites
        idx = ket_to_index(ket)
        if len(ket) != n_sites:
            raise ValueError(f"ket {ket!r} has {len(ket)} sites, expected {n_sites}")
        v = cls.zeros(dim, exact=exact)
        v.data[idx] = ONE if exact else 1.0 + 0.0j
        return v

    @classmethod
    def zeros(cls, dim: int, exact: bool = True) -> "StateVector":
        if exact:
            arr = np.empty(dim, dtype=object)
            arr[:] = ZERO
            return cls(arr, True)
        return cls(np.zeros(dim, dtype=np.complex128), False)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable, exact: bool = True) -> "StateVector":
        if exact:
            items = [_coerce(x) for x in amplitudes]
            if any(x is NotImplemented for x in items):
                raise TypeError("exact amplitudes must be rational or CycloNumber")
            arr = np.empty(len(items), dtype=object)
            arr[:] = items
            return cls(arr, True)
        return cls(np.asarray(list(amplitudes), dtype=np.complex128), False)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def n_sites(self) -> int:
        n = round(math.log(self.dim, 3))
        if 3**n != self.dim:
            raise ValueError(f"dimension {self.dim} is not a power of 3")
        return n

    def copy(self) -> "StateVector":
        return StateVector(self.data.copy(), self.exact)

    def _check_same_path(self, other: "StateVector"):
        if self.exact != other.exact:
            raise TypeError("cannot mix exact and float vectors; convert first")
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dims {self.dim} vs {other.dim}")

    def __add__(self, other: "StateVector") -> "StateVector":
        self._check_same_path(other)
        return StateVector(self.data + other.data, self.exact)

    def __sub__(self, other: "StateVector") -> "StateVector":
        self._check_same_path(other)
        return StateVector(self.data - other.data, self.exact)

    def scale(self, s) -> "StateVector":
        if self.exact:
            c = _coerce(s)
            if c is NotImplemented:
                raise TypeError(f"cannot scale exact vector by {s!r}")
            return StateVector(self.data * c, True)
        return StateVector(self.data * complex(s), False)

    def inner(self, other: "StateVector"):
        """``<self|other>``, conjugate-linear in ``self``."""
        self._check_same_path(other)
        if not self.exact:
            return complex(np.vdot(self.data, other.data))
        total = ZERO
        for x, y in zip(self.data, other.data):
            if not x.is_zero() and not y.is_zero():
                total = total + x.conjugate() * y
        return total

    def norm2(self):
        """Squared norm; exact path returns a Fraction."""
        if not self.exact:
            return float(np.vdot(self.data, self.data).real)
        total = Fraction(0)
        for x in self.data:
            if not x.is_zero():
                total += x.norm2()
        return total

    def nonzero_indices(self) -> list:
        if self.exact:
            return [i for i, x in enumerate(self.data) if not x.is_zero()]
        return [i for i in range(self.dim) if abs(self.data[i]) > 1e-14]

    def to_float(self) -> "StateVector":
        if not self.exact:
            return self
        out = np.fromiter((x.embed() for x in self.data), dtype=np.complex128,
                          count=self.dim)
        return StateVector(out, False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        if self.exact != other.exact or self.dim != other.dim:
            return False
        return bool(np.all(self.data == other.data))

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"StateVector(dim={self.dim}, {kind})"
