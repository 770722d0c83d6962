"""Single-qutrit error model: the nine sigma matrices, the shift/phase
operator basis, and exact decompositions of arbitrary 3x3 matrices in both.

The sigma family consists of nine unitaries, each fixing exactly one
computational basis state and mixing the other two with cube-root-of-unity
phases.  They are linearly independent and span the full 3x3 matrix space,
so correcting all of them corrects every single-qutrit unitary error.  The
second basis consists of the identity, the two phase operators Z, Z**2, the
two shift operators X, X**2, and the four shift-then-phase products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cyclo import CycloNumber, DenseMatrix, exact_rank

_W = CycloNumber.omega
_THIRD = CycloNumber(Fraction(1, 3))


def _m(rows) -> DenseMatrix:
    return DenseMatrix.from_entries(rows)


#: The nine sigma matrices, indexed 1..9.  Entries are 0, 1, w or w**2;
#: sigma 1-3 fix |0>, 4-6 fix |1>, 7-9 fix |2>.
_SIGMA = {
    1: _m([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
    2: _m([[1, 0, 0], [0, 0, _W(2)], [0, _W(1), 0]]),
    3: _m([[1, 0, 0], [0, 0, _W(1)], [0, _W(2), 0]]),
    4: _m([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
    5: _m([[0, 0, _W(2)], [0, 1, 0], [_W(1), 0, 0]]),
    6: _m([[0, 0, _W(1)], [0, 1, 0], [_W(2), 0, 0]]),
    7: _m([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    8: _m([[0, _W(2), 0], [_W(1), 0, 0], [0, 0, 1]]),
    9: _m([[0, _W(1), 0], [_W(2), 0, 0], [0, 0, 1]]),
}

#: Shift and phase generators as 3x3 exact matrices.
X1 = _m([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
X2 = X1 @ X1
Z1 = _m([[1, 0, 0], [0, _W(1), 0], [0, 0, _W(2)]])
Z2 = Z1 @ Z1

#: Nine-operator basis: Yij is the combined error that shifts by i first and
#: then phases by j, i.e. the matrix product Z**j . X**i.
PAULI_BASIS_LABELS = ("I", "Z1", "Z2", "X1", "X2", "Y11", "Y12", "Y21", "Y22")
PAULI_BASIS = {
    "I": DenseMatrix.identity(3),
    "Z1": Z1,
    "Z2": Z2,
    "X1": X1,
    "X2": X2,
    "Y11": Z1 @ X1,
    "Y12": Z2 @ X1,
    "Y21": Z1 @ X2,
    "Y22": Z2 @ X2,
}

#: Known expansions of sigma 1 and sigma 2 over the nine-operator basis,
#: as (label, w-exponent of the coefficient).  Each sums to 3*sigma.
SIGMA_EXPANSIONS = {
    1: (
        ("I", 0), ("Z1", 0), ("Z2", 0),
        ("X2", 0), ("Y22", 1), ("Y21", 2),
        ("X1", 0), ("Y12", 2), ("Y11", 1),
    ),
    2: (
        ("I", 0), ("Z1", 0), ("Z2", 0),
        ("Y22", 0), ("Y21", 1), ("X2", 2),
        ("Y12", 0), ("Y11", 2), ("X1", 1),
    ),
}


def build_sigma(i: int) -> DenseMatrix:
    """Return sigma_i for i in 1..9 (a fresh copy; entries are exact)."""
    if i not in _SIGMA:
        raise ValueError(f"sigma index must be 1..9, got {i}")
    return _SIGMA[i].copy()


def sigma_expansion_sum(i: int) -> DenseMatrix:
    """Sum of the nine basis operators with the published weights; equals
    ``3 * sigma_i`` for the indices with a recorded expansion."""
    if i not in SIGMA_EXPANSIONS:
        raise ValueError(f"no recorded expansion for sigma index {i}")
    total = DenseMatrix.zeros(3, 3, exact=True)
    for label, exponent in SIGMA_EXPANSIONS[i]:
        total = total + PAULI_BASIS[label].scale(_W(exponent))
    return total


@dataclass
class IndependenceReport:
    count: int
    rank: int

    @property
    def independent(self) -> bool:
        return self.rank == self.count


def check_sigma_independence(
    matrices: Optional[Sequence[DenseMatrix]] = None,
) -> IndependenceReport:
    """Vectorize the given 3x3 matrices (default: all nine sigmas) into
    9-component rows and report the exact rank of the stack."""
    if matrices is None:
        matrices = [_SIGMA[i] for i in range(1, 10)]
    rows = []
    for mat in matrices:
        if mat.shape != (3, 3) or not mat.exact:
            raise ValueError("independence check expects exact 3x3 matrices")
        rows.append([mat.entry(i, j) for i in range(3) for j in range(3)])
    stacked = DenseMatrix.from_entries(rows)
    return IndependenceReport(count=len(rows), rank=exact_rank(stacked))


def phase_system_determinant() -> CycloNumber:
    """Determinant of the 3x3 coefficient matrix shared by the three solve
    groups: ``3*(w - w**2) = 3 + 6w``, never zero."""
    w, w2 = _W(1), _W(2)
    return (w2 * w2 - w * w) - (w2 - w) + (w - w2)


def _solve_group(r0, r1, r2):
    """Solve  l0 + l1 + l2 = r0,  l0 + w^2 l1 + w l2 = r1,
    l0 + w l1 + w^2 l2 = r2.  The coefficient matrix is the conjugate
    character table, so the inverse is its conjugate over 3."""
    if isinstance(r0, CycloNumber):
        w, w2 = _W(1), _W(2)
        l0 = (r0 + r1 + r2) * _THIRD
        l1 = (r0 + w * r1 + w2 * r2) * _THIRD
        l2 = (r0 + w2 * r1 + w * r2) * _THIRD
        return l0, l1, l2
    w = _W(1).embed()
    w2 = _W(2).embed()
    return (
        (r0 + r1 + r2) / 3.0,
        (r0 + w * r1 + w2 * r2) / 3.0,
        (r0 + w2 * r1 + w * r2) / 3.0,
    )


def decompose_in_sigma(matrix: DenseMatrix):
    """Coefficients (l1..l9) with ``sum_i l_i sigma_i == matrix``.

    Solved as three independent 3x3 systems over disjoint entry triples:
    (l1,l2,l3) from entries (0,0),(1,2),(2,1); (l4,l5,l6) from
    (1,1),(0,2),(2,0); (l7,l8,l9) from (2,2),(0,1),(1,0).
    """
    if matrix.shape != (3, 3):
        raise ValueError("sigma decomposition is defined for 3x3 matrices")
    e = matrix.entry
    g1 = _solve_group(e(0, 0), e(1, 2), e(2, 1))
    g2 = _solve_group(e(1, 1), e(0, 2), e(2, 0))
    g3 = _solve_group(e(2, 2), e(0, 1), e(1, 0))
    return tuple(g1) + tuple(g2) + tuple(g3)


def reconstruct_from_sigma(coefficients) -> DenseMatrix:
    exact = isinstance(coefficients[0], CycloNumber)
    total = DenseMatrix.zeros(3, 3, exact=exact)
    for lam, i in zip(coefficients, range(1, 10)):
        basis = _SIGMA[i] if exact else _SIGMA[i].to_float()
        total = total + basis.scale(lam)
    return total


@dataclass
class PauliCoefficients:
    """Weights of a 3x3 matrix over the nine-operator basis.

    ``delta`` multiplies the identity, ``eta_j`` the phase operators Z**j,
    ``mu_i`` the shifts X**i and ``xi_ij`` the combined operators Yij.
    Reconstruction: ``delta*I + sum eta_j Z**j + sum mu_i X**i
    + sum xi_ij Yij`` gives back the decomposed matrix.
    """

    delta: object
    eta1: object
    eta2: object
    mu1: object
    mu2: object
    xi11: object
    xi12: object
    xi21: object
    xi22: object

    _FIELD_BY_LABEL = {
        "I": "delta", "Z1": "eta1", "Z2": "eta2", "X1": "mu1", "X2": "mu2",
        "Y11": "xi11", "Y12": "xi12", "Y21": "xi21", "Y22": "xi22",
    }

    def by_label(self, label: str):
        return getattr(self, self._FIELD_BY_LABEL[label])

    def as_dict(self) -> dict:
        return {label: self.by_label(label) for label in PAULI_BASIS_LABELS}

    @property
    def exact(self) -> bool:
        return isinstance(self.delta, CycloNumber)

    def reconstruct(self) -> DenseMatrix:
        total = DenseMatrix.zeros(3, 3, exact=self.exact)
        for label in PAULI_BASIS_LABELS:
            basis = PAULI_BASIS[label] if self.exact else PAULI_BASIS[label].to_float()
            total = total + basis.scale(self.by_label(label))
        return total


def decompose_in_pauli(matrix: DenseMatrix) -> PauliCoefficients:
    """Weights via trace inner products: ``coeff = tr(B+ M) / 3`` per basis
    operator B.  The nine operators are trace-orthogonal with norm 3, so
    this inverts the expansion exactly."""
    if matrix.shape != (3, 3):
        raise ValueError("basis decomposition is defined for 3x3 matrices")
    values = {}
    for label in PAULI_BASIS_LABELS:
        basis = PAULI_BASIS[label] if matrix.exact else PAULI_BASIS[label].to_float()
        tr = (basis.adjoint() @ matrix).trace()
        values[label] = tr * _THIRD if matrix.exact else tr / 3.0
    return PauliCoefficients(
        delta=values["I"], eta1=values["Z1"], eta2=values["Z2"],
        mu1=values["X1"], mu2=values["X2"],
        xi11=values["Y11"], xi12=values["Y12"],
        xi21=values["Y21"], xi22=values["Y22"],
    )


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-style 3x3 unitary via QR of a complex Gaussian matrix."""
    gauss = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, r = np.linalg.qr(gauss)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


@dataclass
class SpanReport:
    trials: int
    unitary_trials: int
    max_residual_sigma: float
    max_residual_pauli: float
    sigma_exact_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.sigma_exact_ok
            and self.max_residual_sigma <= 1e-11
            and self.max_residual_pauli <= 1e-11
        )


def verify_span_theorem(
    trials: int, seed: int = 0, unitary_fraction: float = 0.2
) -> SpanReport:
    """Sample random 3x3 matrices (a leading block of them unitary),
    decompose each in both bases, and record the worst reconstruction
    residual.  Also reruns the nine sigmas through both decompositions on
    the exact path, where reconstruction must be equality, not residual."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    n_unitary = round(trials * unitary_fraction)
    worst_sigma = 0.0
    worst_pauli = 0.0
    for t in range(trials):
        if t < n_unitary:
            sample = random_unitary(rng)
        else:
            sample = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        mat = DenseMatrix.from_complex(sample)
        coeffs = decompose_in_sigma(mat)
        resid = np.max(np.abs(reconstruct_from_sigma(coeffs).data - sample))
        worst_sigma = max(worst_sigma, float(resid))
        pc = decompose_in_pauli(mat)
        resid = np.max(np.abs(pc.reconstruct().data - sample))
        worst_pauli = max(worst_pauli, float(resid))
    exact_ok = True
    for i in range(1, 10):
        sig = _SIGMA[i]
        if reconstruct_from_sigma(decompose_in_sigma(sig)) != sig:
            exact_ok = False
        if decompose_in_pauli(sig).reconstruct() != sig:
            exact_ok = False
    return SpanReport(
        trials=trials,
        unitary_trials=n_unitary,
        max_residual_sigma=worst_sigma,
        max_residual_pauli=worst_pauli,
        sigma_exact_ok=exact_ok,
    )
