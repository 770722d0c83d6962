"""The five-qutrit stabilizer code.

Everything is derived from the four commuting generators IXZZX, XIXZZ,
ZXIXZ, ZZXIX: the rank-3 codespace projector, a deterministic logical
operator pair, exact canonical codewords, the Knill-Laflamme matrix over an
error set, and dense encoding of a logical qutrit.  A transcription of the
reference codeword listings ships as package data and is compared against
the derived codewords by a diagnostic cross-check that reports anomalies
(duplicated kets, residuals, overlaps) without ever failing hard.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Optional, Sequence

import numpy as np

from . import gf3
from .cyclo import (
    CycloNumber,
    DenseMatrix,
    StateVector,
    exact_rank,
    ket_to_index,
    rational_sqrt,
)
from .pauli import TernaryPauli, commutation_exponent, pauli_from_string

#: Per-site symbols of the four generators, first site leftmost.
DEFAULT_GENERATOR_STRINGS = (
    "I X Z Z X",
    "X I X Z Z",
    "Z X I X Z",
    "Z Z X I X",
)

_W = CycloNumber.omega


class CodeConstructionError(RuntimeError):
    """A structural invariant of the code failed during construction."""


# ---------------------------------------------------------------------------
# Code object and construction
# ---------------------------------------------------------------------------

class StabilizerCode:
    """Immutable bundle of generators, logical operators, and lazy caches
    for the projector and the canonical codewords."""

    def __init__(
        self,
        generators: Sequence[TernaryPauli],
        logical_x: TernaryPauli,
        logical_z: TernaryPauli,
    ):
        self.generators = tuple(generators)
        self.logical_x = logical_x
        self.logical_z = logical_z
        self._projector: Optional[DenseMatrix] = None
        self._codewords: Optional[tuple] = None

    @property
    def n(self) -> int:
        return self.generators[0].n

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def n_logical(self) -> int:
        """k = n - m encoded qudits."""
        return self.n - self.m

    @property
    def projector(self) -> DenseMatrix:
        if self._projector is None:
            self._projector = codespace_projector(self.generators)
        return self._projector

    @property
    def codewords(self) -> tuple:
        if self._codewords is None:
            self._codewords = canonical_codewords(self)
        return self._codewords

    def encode(self, alpha, beta, gamma) -> StateVector:
        return encode(self, alpha, beta, gamma)

    def __repr__(self) -> str:
        gens = ", ".join(g.to_string() for g in self.generators)
        return f"StabilizerCode(n={self.n}, generators=[{gens}])"


def build_code(
    generators: Optional[Iterable] = None, validate: bool = True
) -> StabilizerCode:
    """Construct the code, failing loudly on any violated invariant.

    ``generators`` may be Pauli strings or TernaryPauli values; the default
    is the published four-generator set.  With ``validate`` the projector
    (idempotent, Hermitian, exact rank 3) and the codewords (orthonormal,
    stabilized, correctly cycled by the logical shift) are checked now
    rather than on first use.
    """
    if generators is None:
        generators = DEFAULT_GENERATOR_STRINGS
    parsed = [
        g if isinstance(g, TernaryPauli) else pauli_from_string(g)
        for g in generators
    ]
    n = parsed[0].n
    if any(g.n != n for g in parsed):
        raise CodeConstructionError("generators act on differing site counts")
    for a, b in itertools.combinations(range(len(parsed)), 2):
        s = commutation_exponent(parsed[a], parsed[b])
        if s != 0:
            raise CodeConstructionError(
                f"generators {a + 1} and {b + 1} do not commute "
                f"(commutation exponent {s})"
            )
    for i, g in enumerate(parsed):
        if not (g ** 3).is_identity():
            raise CodeConstructionError(f"generator {i + 1} does not cube to identity")
    if len(parsed) != n - 1:
        raise CodeConstructionError(
            f"{len(parsed)} generators on {n} sites encode {n - len(parsed)} "
            "logical qudits; this construction expects exactly 1"
        )

    logical_x, logical_z = find_logical_operators(parsed)
    code = StabilizerCode(parsed, logical_x, logical_z)

    if validate:
        proj = code.projector
        if proj @ proj != proj:
            raise CodeConstructionError("projector is not idempotent")
        if proj != proj.adjoint():
            raise CodeConstructionError("projector is not Hermitian")
        rank = exact_rank(proj)
        if rank != 3:
            raise CodeConstructionError(f"projector rank is {rank}, expected 3")
        code.codewords  # noqa: B018 — forces codeword-level checks now
    return code


# ---------------------------------------------------------------------------
# Codespace projector
# ---------------------------------------------------------------------------

def generator_group(generators: Sequence[TernaryPauli]) -> list:
    """All 3**m products of generator powers (81 elements for m=4)."""
    out = []
    for exps in itertools.product(range(3), repeat=len(generators)):
        op = TernaryPauli.identity(generators[0].n)
        for g, e in zip(generators, exps):
            if e:
                op = op * (g ** e)
        out.append(op)
    return out


def codespace_projector(code_or_generators) -> DenseMatrix:
    """Exact projector onto the joint +1 eigenspace of all generators.

    Built as the group average (1/3**m) * sum over all generator products.
    Each product is a generalized permutation matrix, so the sum is
    accumulated by scattering integer w-components instead of multiplying
    dense matrices.
    """
    generators = getattr(code_or_generators, "generators", code_or_generators)
    elements = generator_group(generators)
    dim = 3 ** generators[0].n
    order = len(elements)
    acc_a = np.zeros((dim, dim), dtype=np.int64)
    acc_b = np.zeros((dim, dim), dtype=np.int64)
    # integer coordinates of w**e in the (1, w) basis
    wa = np.array([1, 0, -1], dtype=np.int64)
    wb = np.array([0, 1, -1], dtype=np.int64)
    cols = np.arange(dim)
    for op in elements:
        perm, exps = op.permutation_and_phases()
        np.add.at(acc_a, (perm, cols), wa[exps])
        np.add.at(acc_b, (perm, cols), wb[exps])
    cache: dict = {}
    data = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            key = (int(acc_a[i, j]), int(acc_b[i, j]))
            val = cache.get(key)
            if val is None:
                val = CycloNumber(Fraction(key[0], order), Fraction(key[1], order))
                cache[key] = val
            data[i, j] = val
    return DenseMatrix(data, exact=True)


# ---------------------------------------------------------------------------
# Logical operators
# ---------------------------------------------------------------------------

def commutation_matrix(generators: Sequence[TernaryPauli]) -> np.ndarray:
    """Rows r with r . (x|z) = commutation exponent of the generator with
    the operator whose exponent vector is (x|z)."""
    rows = []
    for g in generators:
        rows.append(np.concatenate([np.array(g.z), -np.array(g.x)]) % 3)
    return np.array(rows, dtype=np.int64)


def find_logical_operators(
    generators: Sequence[TernaryPauli],
) -> tuple[TernaryPauli, TernaryPauli]:
    """Deterministic logical (X, Z) pair from the symplectic kernel.

    Candidates are the exponent vectors commuting with every generator but
    outside the generator span.  The logical Z is the candidate whose
    (z|x) vector is lexicographically smallest; the logical X is the
    smallest candidate whose commutation exponent with that Z is 1.
    """
    n = generators[0].n
    comm = commutation_matrix(generators)
    kernel = gf3.null_space(comm)
    span_rows = np.array([g.symplectic() for g in generators], dtype=np.int64)
    expected = 2 * n - gf3.rank(span_rows)
    if len(kernel) != expected:
        raise CodeConstructionError(
            f"symplectic kernel has dimension {len(kernel)}, expected {expected}"
        )

    def sort_key(vec: np.ndarray):
        return tuple(vec[n:]) + tuple(vec[:n])  # (z | x) ordering

    candidates = [
        v
        for v in gf3.row_space_vectors(np.array(kernel, dtype=np.int64))
        if v.any() and not gf3.in_row_space(span_rows, v)
    ]
    if not candidates:
        raise CodeConstructionError("no logical candidates outside the generator span")
    candidates.sort(key=sort_key)
    zvec = candidates[0]
    logical_z = TernaryPauli(n, tuple(int(e) for e in zvec[:n]),
                             tuple(int(e) for e in zvec[n:]), 0)

    partner = None
    for v in candidates:
        s = int(np.dot(zvec[n:], v[:n]) - np.dot(v[n:], zvec[:n])) % 3
        if s == 1:
            partner = v
            break
    if partner is None:
        raise CodeConstructionError("no conjugate partner for the logical Z")
    logical_x = TernaryPauli(n, tuple(int(e) for e in partner[:n]),
                             tuple(int(e) for e in partner[n:]), 0)
    return logical_x, logical_z


# ---------------------------------------------------------------------------
# Canonical codewords
# ---------------------------------------------------------------------------

def _apply_eigenprojection(
    column: StateVector, logical_z: TernaryPauli, eigen_exponent: int
) -> StateVector:
    """(1/3)(I + w^-i Z_L + w^-2i Z_L**2) applied to a vector."""
    z1 = logical_z.apply(column).scale(_W(-eigen_exponent))
    z2 = (logical_z ** 2).apply(column).scale(_W(-2 * eigen_exponent))
    return (column + z1 + z2).scale(Fraction(1, 3))


def _normalize_exact(vec: StateVector) -> StateVector:
    """Unit-normalize with the amplitude of the smallest nonzero ket made a
    positive rational; requires the squared norm to be a perfect square."""
    nonzero = vec.nonzero_indices()
    if not nonzero:
        raise CodeConstructionError("eigenprojection produced the zero vector")
    anchored = vec.scale(vec.data[nonzero[0]].conjugate())
    norm2 = anchored.norm2()
    try:
        root = rational_sqrt(norm2)
    except ValueError as exc:
        raise CodeConstructionError(
            f"codeword norm**2 = {norm2} is not a perfect rational square"
        ) from exc
    return anchored.scale(Fraction(1) / root)


def canonical_codewords(code: StabilizerCode) -> tuple:
    """Orthonormal codewords (|0>, |1>, |2> logical), exact.

    |i> is the logical-Z eigenvector with eigenvalue w**i inside the
    projector range, extracted by eigenprojection of projector columns and
    normalized with a fixed phase convention (first nonzero amplitude
    positive).  Verifies stabilization, orthonormality, the logical-Z
    eigenvalues, and that the logical X cycles the three states.
    """
    proj = code.projector
    dim = proj.rows
    words = []
    for i in range(3):
        found = None
        for col in range(dim):
            column = StateVector(proj.data[:, col].copy(), exact=True)
            if not column.nonzero_indices():
                continue
            candidate = _apply_eigenprojection(column, code.logical_z, i)
            if candidate.nonzero_indices():
                found = candidate
                break
        if found is None:
            raise CodeConstructionError(
                f"no eigenvalue-w^{i} component found in the projector range"
            )
        words.append(_normalize_exact(found))

    for i, w_i in enumerate(words):
        for j, g in enumerate(code.generators):
            if g.apply(w_i) != w_i:
                raise CodeConstructionError(
                    f"generator {j + 1} does not fix codeword {i}"
                )
        expected = w_i.scale(_W(i))
        if code.logical_z.apply(w_i) != expected:
            raise CodeConstructionError(f"codeword {i} has wrong logical-Z eigenvalue")
    for i in range(3):
        for j in range(3):
            ip = words[i].inner(words[j])
            if ip != (CycloNumber.one() if i == j else CycloNumber.zero()):
                raise CodeConstructionError(
                    f"codewords {i}, {j} are not orthonormal (inner product {ip})"
                )
    for i in range(3):
        shifted = code.logical_x.apply(words[i])
        target = words[(i + 1) % 3]
        if not any(shifted == target.scale(_W(t)) for t in range(3)):
            raise CodeConstructionError(
                f"logical X does not map codeword {i} to codeword {(i + 1) % 3}"
            )
    return tuple(words)


# ---------------------------------------------------------------------------
# Knill-Laflamme verification
# ---------------------------------------------------------------------------

def _int_split(vec: StateVector) -> tuple[np.ndarray, np.ndarray, int]:
    """Exact vector as (A + B*w)/den with int64 components."""
    den = 1
    for c in vec.data:
        den = math.lcm(den, c.a.denominator, c.b.denominator)
    a = np.fromiter((int(c.a * den) for c in vec.data), dtype=np.int64,
                    count=vec.dim)
    b = np.fromiter((int(c.b * den) for c in vec.data), dtype=np.int64,
                    count=vec.dim)
    return a, b, den


def _fast_inner(u_split, v_split) -> CycloNumber:
    """<u|v> from integer splits; conjugate-linear in u."""
    (au, bu, du), (av, bv, dv) = u_split, v_split
    a1 = au - bu
    b1 = -bu
    ra = int(a1 @ av - b1 @ bv)
    rb = int(a1 @ bv + b1 @ av - b1 @ bv)
    den = du * dv
    return CycloNumber(Fraction(ra, den), Fraction(rb, den))


@dataclass
class KLReport:
    """Outcome of the Knill-Laflamme matrix check over an error set."""

    ok: bool
    n_errors: int
    c_matrix: np.ndarray          # object array of CycloNumber, one per pair
    violations: list = field(default_factory=list)
    weak_condition_ok: bool = True

    def __repr__(self) -> str:
        state = "pass" if self.ok else f"fail ({len(self.violations)} violations)"
        return f"KLReport({self.n_errors} errors, {state})"


def knill_laflamme_check(
    code: StabilizerCode,
    errors: Sequence[TernaryPauli],
    codewords: Optional[Sequence[StateVector]] = None,
) -> KLReport:
    """Exact check of <i|Ea+ Eb|j> = c_ab * delta_ij over all error pairs.

    The identity is adjoined if absent.  Violations are collected in the
    report, never raised; ``weak_condition_ok`` restates the subset of the
    condition involving only single errors against the identity (equal
    diagonal expectation values across the three codewords).
    """
    errs = list(errors)
    if not any(e.is_identity(up_to_phase=True) for e in errs):
        errs.insert(0, TernaryPauli.identity(code.n))
    words = tuple(codewords) if codewords is not None else code.codewords
    if any(not w.exact for w in words):
        raise TypeError("Knill-Laflamme check requires exact codewords")

    identity_indices = {
        k for k, e in enumerate(errs) if e.is_identity(up_to_phase=True)
    }
    # Precompute E|i> splits once per (error, codeword).
    applied = [
        [_int_split(e.apply(w)) for w in words]
        for e in errs
    ]
    n_err = len(errs)
    c_matrix = np.empty((n_err, n_err), dtype=object)
    violations = []
    weak_ok = True
    for a in range(n_err):
        for b in range(n_err):
            diag = [_fast_inner(applied[a][i], applied[b][i]) for i in range(3)]
            diag_equal = diag[0] == diag[1] == diag[2]
            pair_ok = diag_equal
            for i in range(3):
                for j in range(3):
                    if i == j:
                        continue
                    off = _fast_inner(applied[a][i], applied[b][j])
                    if not off.is_zero():
                        pair_ok = False
            c_matrix[a, b] = diag[0]
            if not pair_ok:
                violations.append(
                    (a, b, f"pair ({errs[a]}, {errs[b]}) breaks the condition")
                )
            if not diag_equal and (a in identity_indices or b in identity_indices):
                weak_ok = False
    return KLReport(
        ok=not violations,
        n_errors=n_err,
        c_matrix=c_matrix,
        violations=violations,
        weak_condition_ok=weak_ok,
    )


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def encode(code: StabilizerCode, alpha, beta, gamma) -> StateVector:
    """Dense logical encoding alpha|0> + beta|1> + gamma|2> (logical).

    Exact when all three amplitudes are rational/CycloNumber, floating
    point otherwise.  The squared amplitude sum must be within 1e-10 of 1.
    """
    coeffs = (alpha, beta, gamma)
    exact = all(isinstance(c, (int, Fraction, CycloNumber)) for c in coeffs)
    total = sum(
        (c.norm2() if isinstance(c, CycloNumber) else abs(complex(c)) ** 2)
        for c in coeffs
    )
    if abs(float(total) - 1.0) > 1e-10:
        raise ValueError(f"|alpha|^2+|beta|^2+|gamma|^2 = {float(total)}, not 1")
    words = code.codewords
    if exact:
        out = StateVector.zeros(words[0].dim, exact=True)
        for c, w in zip(coeffs, words):
            out = out + w.scale(c)
        return out
    out = StateVector.zeros(words[0].dim, exact=False)
    for c, w in zip(coeffs, words):
        out = out + w.to_float().scale(complex(c))
    return out


# ---------------------------------------------------------------------------
# CSS structure check
# ---------------------------------------------------------------------------

@dataclass
class CssReport:
    pure_x: list
    pure_z: list
    mixed: list

    @property
    def is_css(self) -> bool:
        return not self.mixed


def css_structure_report(generators: Sequence[TernaryPauli]) -> CssReport:
    """Syntactic split of generators into shift-only, phase-only, mixed.

    A CSS-form set has no mixed generators; the five-qutrit set has all
    four mixed, which is the printed-form face of its non-CSS character.
    """
    report = CssReport(pure_x=[], pure_z=[], mixed=[])
    for g in generators:
        has_x = any(e != 0 for e in g.x)
        has_z = any(e != 0 for e in g.z)
        if has_x and has_z:
            report.mixed.append(g.to_string())
        elif has_x:
            report.pure_x.append(g.to_string())
        else:
            report.pure_z.append(g.to_string())
    return report


# ---------------------------------------------------------------------------
# Reference listings and cross-check
# ---------------------------------------------------------------------------

def load_reference_listings() -> dict:
    """Packaged verbatim transcription of the three reference codeword
    listings (raw terms, duplicates preserved)."""
    path = resources.files("qutritqec") / "data" / "reference_codewords.json"
    return json.loads(path.read_text())


def _listing_vector(terms: Sequence[dict], n_sites: int) -> StateVector:
    vec = StateVector.zeros(3 ** n_sites, exact=True)
    for term in terms:
        idx = ket_to_index(term["ket"])
        coeff = CycloNumber(Fraction(term["coeff"]["a"]), Fraction(term["coeff"]["b"]))
        vec.data[idx] = vec.data[idx] + coeff
    return vec


@dataclass
class ListingReport:
    state: int
    raw_terms: int
    distinct_kets: int
    duplicates: dict
    projector_residual: float
    stabilizer_expectations: tuple
    overlaps: tuple

    @property
    def anomalies(self) -> list:
        out = []
        for ket, count in self.duplicates.items():
            out.append(f"listing {self.state}: ket {ket} appears {count} times")
        if self.projector_residual > 1e-12:
            out.append(
                f"listing {self.state}: outside the codespace "
                f"(residual {self.projector_residual:.3e})"
            )
        return out


@dataclass
class ReferenceCrosscheck:
    listings: list

    @property
    def anomalies(self) -> list:
        return [a for entry in self.listings for a in entry.anomalies]

    @property
    def duplicate_kets(self) -> dict:
        return {
            (entry.state, ket): count
            for entry in self.listings
            for ket, count in entry.duplicates.items()
        }


def crosscheck_reference_codewords(
    code: StabilizerCode, listings: Optional[Sequence[dict]] = None
) -> ReferenceCrosscheck:
    """Diagnostic comparison of transcribed listings with the derived code.

    Each listing is normalized by 1/9 and probed for: duplicated kets,
    distance from the projector range, stabilizer expectation values, and
    overlap magnitudes with the three canonical codewords.  Reports only;
    never raises on anomalies.
    """
    if listings is None:
        listings = load_reference_listings()["listings"]
    proj = code.projector
    words = code.codewords
    reports = []
    for entry in listings:
        terms = entry["terms"]
        counts: dict = {}
        for term in terms:
            counts[term["ket"]] = counts.get(term["ket"], 0) + 1
        duplicates = {k: v for k, v in counts.items() if v > 1}
        vec = _listing_vector(terms, code.n).scale(Fraction(1, 9))
        norm2 = vec.norm2()
        projected = proj.matvec(vec)
        residual2 = (vec - projected).norm2()
        residual = math.sqrt(float(residual2))
        expectations = []
        for g in code.generators:
            ip = vec.inner(g.apply(vec))
            expectations.append(ip.embed() / float(norm2))
        overlaps = tuple(
            math.sqrt(float(w.inner(vec).norm2()) / float(norm2)) for w in words
        )
        reports.append(
            ListingReport(
                state=entry["state"],
                raw_terms=len(terms),
                distinct_kets=len(counts),
                duplicates=duplicates,
                projector_residual=residual,
                stabilizer_expectations=tuple(expectations),
                overlaps=overlaps,
            )
        )
    return ReferenceCrosscheck(listings=reports)
