"""Symplectic representation of n-qutrit generalized Pauli operators.

A ``TernaryPauli`` is ``w**phase * prod_i X_i**x[i] Z_i**z[i]`` in per-site
normal form (X before Z), with all exponents mod 3.  The single-site
generators act as ``X|j> = |j+1 mod 3>`` and ``Z|j> = w**j |j>``, so
``Z X = w X Z`` and products reduce without leaving the group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cyclo import (
    CycloNumber,
    DenseMatrix,
    StateVector,
    ZERO,
)

#: Per-site symbols accepted by the parser; Yij means X**i Z**j.
_SYMBOL_TO_EXPONENTS = {
    "I": (0, 0),
    "X": (1, 0),
    "X2": (2, 0),
    "Z": (0, 1),
    "Z2": (0, 2),
    "Y11": (1, 1),
    "Y12": (1, 2),
    "Y21": (2, 1),
    "Y22": (2, 2),
}
_EXPONENTS_TO_SYMBOL = {v: k for k, v in _SYMBOL_TO_EXPONENTS.items()}

#: Dense simulation guard: 3**6 = 729 is the largest dimension we densify.
MAX_DENSE_SITES = 6


class PauliParseError(ValueError):
    """Raised on malformed operator strings."""


class ResourceLimitError(ValueError):
    """Raised when a dense representation would be unreasonably large."""


@dataclass(frozen=True)
class TernaryPauli:
    """Immutable n-site generalized Pauli in symplectic form."""

    n: int
    x: tuple
    z: tuple
    phase: int = 0

    def __post_init__(self):
        if len(self.x) != self.n or len(self.z) != self.n:
            raise ValueError("exponent tuples must have length n")
        object.__setattr__(self, "x", tuple(int(v) % 3 for v in self.x))
        object.__setattr__(self, "z", tuple(int(v) % 3 for v in self.z))
        object.__setattr__(self, "phase", int(self.phase) % 3)

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "TernaryPauli":
        return cls(n, (0,) * n, (0,) * n, 0)

    @classmethod
    def single_site(cls, n: int, site: int, x_exp: int, z_exp: int) -> "TernaryPauli":
        """Operator X**x_exp Z**z_exp on one site (0-based), identity elsewhere."""
        if not 0 <= site < n:
            raise ValueError(f"site {site} out of range for n={n}")
        xs = [0] * n
        zs = [0] * n
        xs[site] = x_exp
        zs[site] = z_exp
        return cls(n, tuple(xs), tuple(zs), 0)

    @classmethod
    def from_string(cls, text: str) -> "TernaryPauli":
        """Parse ``"w^k * S1 S2 ... Sn"`` with per-site symbols
        I, X, X2, Z, Z2, Y11, Y12, Y21, Y22 (phase prefix optional)."""
        tokens = text.split()
        phase = 0
        if tokens and (tokens[0] == "w" or tokens[0].startswith("w^")):
            if len(tokens) < 2 or tokens[1] != "*":
                raise PauliParseError(f"phase prefix must be 'w^k *': {text!r}")
            phase = 1 if tokens[0] == "w" else _parse_phase(tokens[0])
            tokens = tokens[2:]
        if not tokens:
            raise PauliParseError("empty operator string")
        xs, zs = [], []
        for tok in tokens:
            if tok not in _SYMBOL_TO_EXPONENTS:
                raise PauliParseError(f"unknown site symbol {tok!r}")
            xe, ze = _SYMBOL_TO_EXPONENTS[tok]
            xs.append(xe)
            zs.append(ze)
        return cls(len(tokens), tuple(xs), tuple(zs), phase)

    # -- presentation -------------------------------------------------------

    def to_string(self) -> str:
        body = " ".join(_EXPONENTS_TO_SYMBOL[(xe, ze)] for xe, ze in zip(self.x, self.z))
        if self.phase == 0:
            return body
        return f"w^{self.phase} * {body}"

    def __str__(self) -> str:
        return self.to_string()

    # -- group structure ----------------------------------------------------

    def __mul__(self, other: "TernaryPauli") -> "TernaryPauli":
        """Product in normal form.  Pushing the left factor's Z past the
        right factor's X contributes ``sum_i z_self[i] * x_other[i]`` to the
        phase exponent."""
        if not isinstance(other, TernaryPauli):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"site counts differ: {self.n} vs {other.n}")
        cross = sum(zs * xo for zs, xo in zip(self.z, other.x))
        return TernaryPauli(
            self.n,
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.z, other.z)),
            self.phase + other.phase + cross,
        )

    def adjoint(self) -> "TernaryPauli":
        """Inverse (these operators are unitary)."""
        cross = sum(xe * ze for xe, ze in zip(self.x, self.z))
        return TernaryPauli(
            self.n,
            tuple(-v for v in self.x),
            tuple(-v for v in self.z),
            -self.phase + cross,
        )

    def __pow__(self, k: int) -> "TernaryPauli":
        k %= 3
        out = TernaryPauli.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def is_identity(self, up_to_phase: bool = False) -> bool:
        trivial = all(v == 0 for v in self.x) and all(v == 0 for v in self.z)
        return trivial and (up_to_phase or self.phase == 0)

    def weight(self) -> int:
        """Number of sites acted on nontrivially."""
        return sum(1 for xe, ze in zip(self.x, self.z) if (xe, ze) != (0, 0))

    def symplectic(self) -> np.ndarray:
        """Exponent vector ``(x | z)`` in Z3^(2n); the phase is dropped."""
        return np.array(self.x + self.z, dtype=np.int64)

    # -- action -------------------------------------------------------------

    def permutation_and_phases(self) -> tuple[np.ndarray, np.ndarray]:
        """For each basis index k: the image index under the X part, and the
        w-exponent picked up (``phase + z . digits(k)``)."""
        dim = 3**self.n
        digits = _digit_table(self.n)
        z_arr = np.array(self.z, dtype=np.int64)
        x_arr = np.array(self.x, dtype=np.int64)
        weights = 3 ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        perm = np.mod(digits + x_arr, 3) @ weights
        exponents = np.mod(self.phase + digits @ z_arr, 3)
        assert perm.shape == (dim,)
        return perm, exponents

    def apply(self, state: StateVector) -> StateVector:
        """Apply to a state; O(3**n), no dense matrix built."""
        if state.dim != 3**self.n:
            raise ValueError(f"state dim {state.dim} does not match n={self.n}")
        perm, exponents = self.permutation_and_phases()
        if state.exact:
            out = StateVector.zeros(state.dim, exact=True)
            for k in state.nonzero_indices():
                out.data[perm[k]] = CycloNumber.omega(int(exponents[k])) * state.data[k]
            return out
        phases = np.exp(2j * math.pi * exponents / 3.0)
        out_arr = np.zeros(state.dim, dtype=np.complex128)
        out_arr[perm] = phases * state.data
        return StateVector(out_arr, False)

    def to_dense(self, exact: bool = True) -> DenseMatrix:
        """Dense 3**n x 3**n matrix; refuses n beyond 6 sites."""
        if self.n > MAX_DENSE_SITES:
            raise ResourceLimitError(
                f"dense form for n={self.n} sites exceeds the {MAX_DENSE_SITES}-site limit"
            )
        dim = 3**self.n
        perm, exponents = self.permutation_and_phases()
        if exact:
            mat = DenseMatrix.zeros(dim, dim, exact=True)
            for k in range(dim):
                mat.data[perm[k], k] = CycloNumber.omega(int(exponents[k]))
            return mat
        arr = np.zeros((dim, dim), dtype=np.complex128)
        arr[perm, np.arange(dim)] = np.exp(2j * math.pi * exponents / 3.0)
        return DenseMatrix(arr, exact=False)


def pauli_from_string(text: str) -> TernaryPauli:
    return TernaryPauli.from_string(text)


def pauli_to_string(op: TernaryPauli) -> str:
    return op.to_string()


def pauli_multiply(p: TernaryPauli, q: TernaryPauli) -> TernaryPauli:
    return p * q


def pauli_to_dense(op: TernaryPauli, exact: bool = True) -> DenseMatrix:
    return op.to_dense(exact=exact)


def commutation_exponent(p: TernaryPauli, q: TernaryPauli) -> int:
    """Exponent s with ``P Q = w**s Q P``:
    ``s = sum_i (z_p[i] x_q[i] - z_q[i] x_p[i]) mod 3``."""
    if p.n != q.n:
        raise ValueError(f"site counts differ: {p.n} vs {q.n}")
    total = 0
    for zp, xq, zq, xp in zip(p.z, q.x, q.z, p.x):
        total += zp * xq - zq * xp
    return total % 3


def _parse_phase(token: str) -> int:
    try:
        return int(token[2:]) % 3
    except ValueError as exc:
        raise PauliParseError(f"bad phase token {token!r}") from exc


_DIGIT_CACHE: dict = {}


def _digit_table(n: int) -> np.ndarray:
    """(3**n, n) array of ternary digits, leftmost site most significant."""
    if n not in _DIGIT_CACHE:
        idx = np.arange(3**n)
        table = np.empty((3**n, n), dtype=np.int64)
        for site in range(n):
            table[:, site] = (idx // 3 ** (n - 1 - site)) % 3
        _DIGIT_CACHE[n] = table
    return _DIGIT_CACHE[n]
