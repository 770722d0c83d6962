"""Syndrome diagnosis and table-driven correction.

Syndromes are computed two independent ways: symplectically (the
commutation exponent of each generator with the error, exact and fast) and
densely (stabilizer expectation values on a state vector, for validation
and for arbitrary non-Pauli corruptions).  The lookup table maps each
syndrome to the diagnosed single-site error; correction applies that
error's adjoint, after which the state equals the original codeword up to
a global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import gf3
from .code import StabilizerCode
from .cyclo import OMEGA_COMPLEX, CycloNumber, StateVector
from .pauli import TernaryPauli, commutation_exponent

#: Site-local error symbols in table order; Yij shifts by i and phases by j.
ERROR_TYPE_ORDER = ("X", "X2", "Z", "Z2", "Y11", "Y12", "Y21", "Y22")

_TYPE_EXPONENTS = {
    "X": (1, 0), "X2": (2, 0), "Z": (0, 1), "Z2": (0, 2),
    "Y11": (1, 1), "Y12": (1, 2), "Y21": (2, 1), "Y22": (2, 2),
}

_EIGENVALUE_STRINGS = ("1", "w", "w2")


class NotAnEigenstateError(ValueError):
    """The state is not close to a joint eigenstate of the generators."""


class UncorrectableError(LookupError):
    """No table entry for the observed syndrome."""


class SyndromeCollisionError(RuntimeError):
    """Two inequivalent errors produced the same syndrome."""


@dataclass(frozen=True)
class Syndrome:
    """Four w-exponents, one per generator; (0,0,0,0) means codespace."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", tuple(int(e) % 3 for e in self.exponents)
        )

    @property
    def trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def eigenvalue_strings(self) -> tuple:
        return tuple(_EIGENVALUE_STRINGS[e] for e in self.exponents)

    def eigenvalues(self) -> tuple:
        return tuple(OMEGA_COMPLEX**e for e in self.exponents)

    def __str__(self) -> str:
        return "(" + ", ".join(self.eigenvalue_strings()) + ")"


def single_error_set(n: int = 5) -> list:
    """Identity plus the eight nontrivial single-site errors on each site:
    8n + 1 elements, all distinct as exponent vectors."""
    out = [TernaryPauli.identity(n)]
    for site in range(n):
        for label in ERROR_TYPE_ORDER:
            xe, ze = _TYPE_EXPONENTS[label]
            out.append(TernaryPauli.single_site(n, site, xe, ze))
    return out


def syndrome_of(code_or_generators, error: TernaryPauli) -> Syndrome:
    """Symplectic syndrome: the i-th entry is the commutation exponent of
    generator i with the error."""
    generators = getattr(code_or_generators, "generators", code_or_generators)
    if error.n != generators[0].n:
        raise ValueError(
            f"error acts on {error.n} sites, generators on {generators[0].n}"
        )
    return Syndrome(tuple(commutation_exponent(g, error) for g in generators))


# ---------------------------------------------------------------------------
# Lookup table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    site: int          # 1-based; 0 for the error-free row
    error_type: str    # "I", "X", "X2", "Z", "Z2", "Y11", "Y12", "Y21", "Y22"
    error: TernaryPauli
    syndrome: Syndrome


class SyndromeTable:
    """Association from syndrome to the diagnosed error.

    ``diagnosed_error`` returns the stored representative; the operator a
    corrector must apply is its adjoint (``correction_for``), so that
    (applied correction) . (actual error) acts as a scalar on the
    codespace.  Degenerate entries (distinct errors, same syndrome,
    quotient in the generator group) keep the first representative.
    """

    def __init__(self, code: StabilizerCode, rows, entries, degenerate_pairs):
        self.code = code
        self.rows = tuple(rows)
        self._entries = dict(entries)
        self.degenerate_pairs = tuple(degenerate_pairs)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, syndrome: Syndrome) -> bool:
        return syndrome.exponents in self._entries

    def diagnosed_error(self, syndrome: Syndrome) -> TernaryPauli:
        try:
            return self._entries[syndrome.exponents]
        except KeyError:
            raise UncorrectableError(
                f"syndrome {syndrome} matches no single-site error"
            ) from None

    def correction_for(self, syndrome: Syndrome) -> TernaryPauli:
        return self.diagnosed_error(syndrome).adjoint()

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degenerate_pairs)


def build_syndrome_table(code: StabilizerCode) -> SyndromeTable:
    """Syndromes of the whole single-error set, with a collision audit.

    Distinct errors sharing a syndrome are tolerated only when their
    quotient lies in the generator group (harmless degeneracy, recorded in
    ``degenerate_pairs``); any other collision raises
    :class:`SyndromeCollisionError`.
    """
    span_rows = np.array([g.symplectic() for g in code.generators], dtype=np.int64)
    labels = [(0, "I")] + [
        (site + 1, label) for site in range(code.n) for label in ERROR_TYPE_ORDER
    ]
    rows = []
    entries: dict = {}
    first_row_for: dict = {}
    degenerate_pairs = []
    for (site, label), error in zip(labels, single_error_set(code.n)):
        syn = syndrome_of(code, error)
        row = TableRow(site=site, error_type=label, error=error, syndrome=syn)
        rows.append(row)
        key = syn.exponents
        if key not in entries:
            entries[key] = error
            first_row_for[key] = row
            continue
        quotient = (entries[key].adjoint() * error).symplectic()
        if gf3.in_row_space(span_rows, quotient):
            degenerate_pairs.append((first_row_for[key], row))
        else:
            prev = first_row_for[key]
            raise SyndromeCollisionError(
                f"syndrome {syn} is shared by inequivalent errors "
                f"{prev.error} and {error}"
            )
    return SyndromeTable(code, rows, entries, degenerate_pairs)


def format_table_csv(table: SyndromeTable, rows: Optional[Sequence] = None) -> str:
    """CSV rendering; eigenvalues written as 1, w, w2."""
    lines = ["error_site,error_type,s1,s2,s3,s4"]
    for row in (table.rows if rows is None else rows):
        lines.append(
            f"{row.site},{row.error_type},"
            + ",".join(row.syndrome.eigenvalue_strings())
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Dense syndrome extraction and correction
# ---------------------------------------------------------------------------

def _expectation(state: StateVector, op: TernaryPauli) -> complex:
    """<state|op|state> / <state|state> as a complex number."""
    applied = op.apply(state)
    if state.exact:
        ip = state.inner(applied)
        norm2 = state.norm2()
        return ip.embed() / float(norm2)
    ip = state.inner(applied)
    return ip / state.norm2()


def extract_syndrome(code: StabilizerCode, state: StateVector) -> Syndrome:
    """Dense syndrome via stabilizer expectation values.

    Each expectation is snapped to the nearest of {1, w, w**2}; a magnitude
    below 0.99 means the state is not a joint eigenstate (non-Pauli
    corruption or superposition of differently-corrupted codewords) and
    raises :class:`NotAnEigenstateError`.
    """
    exponents = []
    for i, g in enumerate(code.generators):
        value = _expectation(state, g)
        if abs(value) < 0.99:
            raise NotAnEigenstateError(
                f"generator {i + 1} expectation {value:.4f} has magnitude "
                f"{abs(value):.4f} < 0.99; not an eigenstate"
            )
        exponents.append(
            max(range(3), key=lambda k: (value * OMEGA_COMPLEX**-k).real)
        )
    return Syndrome(tuple(exponents))


def correct(state: StateVector, table: SyndromeTable) -> StateVector:
    """One full correction cycle: extract the syndrome, look up the
    diagnosed error, apply its adjoint.  Exact in, exact out."""
    syndrome = extract_syndrome(table.code, state)
    return table.correction_for(syndrome).apply(state)


# ---------------------------------------------------------------------------
# Arbitrary single-site corruption: branch-by-branch correction
# ---------------------------------------------------------------------------

def apply_single_site_unitary(
    state: StateVector, site: int, matrix: np.ndarray
) -> StateVector:
    """Apply a 3x3 operator to one site of a dense float state."""
    if state.exact:
        raise TypeError("single-site unitary application runs on the float path")
    n = state.n_sites
    if not 0 <= site < n:
        raise ValueError(f"site {site} out of range for {n} sites")
    arr = state.data.reshape(3**site, 3, 3 ** (n - site - 1))
    out = np.einsum("ab,ibj->iaj", np.asarray(matrix, dtype=np.complex128), arr)
    return StateVector(out.reshape(-1), False)


@dataclass
class MeasurementBranch:
    syndrome: Syndrome
    weight: float                  # Born probability of this outcome
    corrected: Optional[StateVector]
    fidelity: Optional[float]      # |<reference|corrected>|^2, if reference given


def measure_and_correct_branches(
    table: SyndromeTable,
    state: StateVector,
    reference: Optional[StateVector] = None,
    weight_tol: float = 1e-12,
) -> list:
    """Deterministic projective measurement of all four generators.

    Enumerates all 81 joint eigenspaces, projects the state onto each, and
    corrects every branch with nonnegligible Born weight.  With a
    ``reference`` codeword, each branch also reports the squared overlap of
    its corrected, renormalized state with the reference.  Branches whose
    syndrome has no table entry carry ``corrected=None``.
    """
    code = table.code
    work = state if not state.exact else state.to_float()
    branches = []
    for s1 in range(3):
        for s2 in range(3):
            for s3 in range(3):
                for s4 in range(3):
                    syn = Syndrome((s1, s2, s3, s4))
                    branch = work
                    for g, target in zip(code.generators, syn.exponents):
                        acc = branch.data.copy()
                        powered = branch
                        for k in (1, 2):
                            powered = g.apply(powered)
                            acc = acc + OMEGA_COMPLEX ** (-k * target) * powered.data
                        branch = StateVector(acc / 3.0, False)
                    weight = branch.norm2()
                    if weight <= weight_tol:
                        continue
                    normalized = branch.scale(1.0 / math.sqrt(weight))
                    try:
                        correction = table.correction_for(syn)
                    except UncorrectableError:
                        branches.append(
                            MeasurementBranch(syn, weight, None, None)
                        )
                        continue
                    corrected = correction.apply(normalized)
                    fid = None
                    if reference is not None:
                        ref = reference if not reference.exact else reference.to_float()
                        overlap = ref.inner(corrected)
                        fid = abs(overlap) ** 2 / ref.norm2()
                    branches.append(
                        MeasurementBranch(syn, weight, corrected, fid)
                    )
    return branches
