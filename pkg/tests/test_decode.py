"""Syndrome lookup decoding, dense extraction, branch-by-branch correction."""

import numpy as np
import pytest

from qutritqec.cyclo import StateVector
from qutritqec.decode import (
    ERROR_TYPE_ORDER,
    NotAnEigenstateError,
    Syndrome,
    UncorrectableError,
    apply_single_site_unitary,
    build_syndrome_table,
    correct,
    extract_syndrome,
    format_table_csv,
    measure_and_correct_branches,
    single_error_set,
    syndrome_of,
)
from qutritqec.errormodel import random_unitary
from qutritqec.pauli import pauli_from_string

FIRST_SITE_SYNDROMES = {
    # eigenvalue tuples for single errors on the first site
    "X": ("1", "1", "w", "w"),
    "X2": ("1", "1", "w2", "w2"),
    "Z": ("1", "w2", "1", "1"),
    "Z2": ("1", "w", "1", "1"),
}


def random_logical_state(code, rng):
    """Unnormalized exact codespace vector with small integer coefficients."""
    while True:
        coeffs = [int(c) for c in rng.integers(-2, 3, size=3)]
        if any(coeffs):
            break
    out = StateVector.zeros(3**5, exact=True)
    for c, w in zip(coeffs, code.codewords):
        out = out + w.scale(c)
    return out


def test_single_error_set_size_and_distinctness(errors41):
    assert len(errors41) == 41
    assert errors41[0].is_identity()
    assert len({(e.x, e.z) for e in errors41}) == 41
    for e in errors41[1:]:
        assert e.weight() == 1


def test_syndrome_dataclass():
    s = Syndrome((0, 4, -1, 1))
    assert s.exponents == (0, 1, 2, 1)
    assert not s.trivial
    assert s.eigenvalue_strings() == ("1", "w", "w2", "w")
    assert str(s) == "(1, w, w2, w)"
    assert abs(s.eigenvalues()[2] - complex(-0.5, -np.sqrt(3) / 2)) < 1e-15
    assert Syndrome((0, 0, 0, 0)).trivial


def test_first_site_syndromes(code):
    for label, expected in FIRST_SITE_SYNDROMES.items():
        err = pauli_from_string(f"{label} I I I I")
        assert syndrome_of(code, err).eigenvalue_strings() == expected
    identity = pauli_from_string("I I I I I")
    assert syndrome_of(code, identity).trivial


def test_syndrome_of_rejects_size_mismatch(code):
    with pytest.raises(ValueError):
        syndrome_of(code, pauli_from_string("X I I"))


def test_table_is_complete_and_collision_free(code, table):
    assert len(table.rows) == 41
    assert len(table) == 41              # all 41 syndromes distinct
    assert not table.is_degenerate
    assert table.degenerate_pairs == ()
    trivial = Syndrome((0, 0, 0, 0))
    assert trivial in table
    assert table.diagnosed_error(trivial).is_identity()


def test_table_row_labels(table):
    assert [r.error_type for r in table.rows[:9]] == ["I"] + list(ERROR_TYPE_ORDER)
    assert [r.site for r in table.rows[:9]] == [0] + [1] * 8
    assert table.rows[-1].site == 5


def test_table_lookup_inverts_errors(code, table):
    for row in table.rows:
        diagnosed = table.diagnosed_error(row.syndrome)
        assert syndrome_of(code, diagnosed).exponents == row.syndrome.exponents
        correction = table.correction_for(row.syndrome)
        assert (correction * diagnosed).is_identity(up_to_phase=True)


def test_csv_golden_block(table, golden_dir):
    golden = (golden_dir / "syndrome_first_site.csv").read_text()
    assert format_table_csv(table, table.rows[:5]) == golden


def test_csv_full_table_shape(table):
    text = format_table_csv(table)
    lines = text.splitlines()
    assert len(lines) == 42
    assert lines[0] == "error_site,error_type,s1,s2,s3,s4"
    assert lines[1] == "0,I,1,1,1,1"


def test_extract_syndrome_trivial_on_codewords(code):
    for w in code.codewords:
        assert extract_syndrome(code, w).trivial


def test_extract_matches_symplectic_for_all_rows(code, table):
    rng = np.random.default_rng(101)
    psi = random_logical_state(code, rng)
    for row in table.rows:
        corrupted = row.error.apply(psi)
        assert extract_syndrome(code, corrupted).exponents == row.syndrome.exponents


def test_extract_rejects_mixed_syndrome_superposition(code):
    w0 = code.codewords[0]
    xe = pauli_from_string("X I I I I").apply(w0)
    ze = pauli_from_string("Z I I I I").apply(w0)
    with pytest.raises(NotAnEigenstateError):
        extract_syndrome(code, xe + ze)


def test_correct_restores_every_single_error(code, table):
    rng = np.random.default_rng(7)
    states = [random_logical_state(code, rng) for _ in range(3)]
    for row in table.rows:
        for psi in states:
            corrupted = row.error.apply(psi)
            restored = correct(corrupted, table)
            assert restored.exact
            ip = psi.inner(restored)
            # Cauchy-Schwarz equality: restored is parallel to the input
            assert ip.norm2() == psi.norm2() * restored.norm2()
            assert not ip.is_zero()


def test_two_site_error_defeats_decoder(code, table):
    psi = code.codewords[0]
    double = pauli_from_string("X X I I I")
    corrupted = double.apply(psi)
    syn = syndrome_of(code, double)
    if syn in table:
        restored = correct(corrupted, table)
        ip = psi.inner(restored)
        assert ip.norm2() != psi.norm2() * restored.norm2()
    else:
        with pytest.raises(UncorrectableError):
            correct(corrupted, table)


def test_unknown_syndrome_raises(table):
    known = {row.syndrome.exponents for row in table.rows}
    missing = next(
        (a, b, c, d)
        for a in range(3)
        for b in range(3)
        for c in range(3)
        for d in range(3)
        if (a, b, c, d) not in known
    )
    with pytest.raises(UncorrectableError):
        table.diagnosed_error(Syndrome(missing))
    with pytest.raises(UncorrectableError):
        table.correction_for(Syndrome(missing))


def test_apply_single_site_unitary_matches_pauli(code):
    psi = code.codewords[1].to_float()
    x_dense = np.array(pauli_from_string("X").to_dense().to_float().data)
    for site in range(5):
        label = ["I"] * 5
        label[site] = "X"
        oracle = pauli_from_string(" ".join(label)).apply(code.codewords[1]).to_float()
        got = apply_single_site_unitary(psi, site, x_dense)
        assert np.max(np.abs(got.data - oracle.data)) < 1e-14


def test_apply_single_site_unitary_guards(code):
    with pytest.raises(TypeError):
        apply_single_site_unitary(code.codewords[0], 0, np.eye(3))
    with pytest.raises(ValueError):
        apply_single_site_unitary(code.codewords[0].to_float(), 9, np.eye(3))


def test_branch_correction_recovers_arbitrary_single_site_noise(code, table):
    rng = np.random.default_rng(2718)
    psi = code.codewords[0]
    for _ in range(5):
        u = random_unitary(rng)
        for site in range(5):
            corrupted = apply_single_site_unitary(psi.to_float(), site, u)
            branches = measure_and_correct_branches(
                table, corrupted, reference=psi
            )
            total = sum(b.weight for b in branches)
            assert abs(total - 1.0) < 1e-10
            assert len(branches) <= 9
            for b in branches:
                assert b.corrected is not None
                assert b.fidelity is not None
                assert b.fidelity >= 1.0 - 1e-10


def test_branches_without_reference(code, table):
    psi = code.codewords[2]
    branches = measure_and_correct_branches(table, psi)
    assert len(branches) == 1
    only = branches[0]
    assert only.syndrome.trivial
    assert abs(only.weight - 1.0) < 1e-12
    assert only.fidelity is None
