"""Symplectic generalized-Pauli algebra on qutrit registers."""

import random

import numpy as np
import pytest

from qutritqec.cyclo import OMEGA, StateVector
from qutritqec.pauli import (
    MAX_DENSE_SITES,
    PauliParseError,
    ResourceLimitError,
    TernaryPauli,
    commutation_exponent,
    pauli_from_string,
    pauli_multiply,
    pauli_to_dense,
    pauli_to_string,
)

SYMBOLS = ["I", "X", "X2", "Z", "Z2", "Y11", "Y12", "Y21", "Y22"]


def random_pauli(rng, n):
    return TernaryPauli(
        n,
        tuple(rng.randrange(3) for _ in range(n)),
        tuple(rng.randrange(3) for _ in range(n)),
        rng.randrange(3),
    )


def test_parse_generator_string():
    p = pauli_from_string("I X Z Z X")
    assert p.n == 5
    assert p.x == (0, 1, 0, 0, 1)
    assert p.z == (0, 0, 1, 1, 0)
    assert p.phase == 0


def test_parse_mixed_symbol():
    # Y12 = X Z^2 on the first site, normal-form exponents
    p = pauli_from_string("Y12 I I I I")
    assert p.x == (1, 0, 0, 0, 0)
    assert p.z == (2, 0, 0, 0, 0)


def test_parse_phase_prefix():
    p = pauli_from_string("w^2 * X I")
    assert p.phase == 2
    assert pauli_from_string("w * Z").phase == 1


def test_string_roundtrip_all_symbols():
    text = " ".join(SYMBOLS)
    assert pauli_to_string(pauli_from_string(text)) == text


def test_string_roundtrip_random():
    rng = random.Random(17)
    for _ in range(50):
        p = random_pauli(rng, 4)
        assert pauli_from_string(pauli_to_string(p)) == p


@pytest.mark.parametrize("bad", ["", "Q", "X Y", "w^2 X", "Y13 I"])
def test_parse_errors(bad):
    with pytest.raises(PauliParseError):
        pauli_from_string(bad)


def test_z_past_x_phase():
    # Z X = w X Z is the whole non-commutativity of the single-qutrit algebra
    Z = pauli_from_string("Z")
    X = pauli_from_string("X")
    zx = Z * X
    assert (zx.x, zx.z, zx.phase) == ((1,), (1,), 1)
    xz = X * Z
    assert (xz.x, xz.z, xz.phase) == ((1,), (1,), 0)


def test_multiply_matches_dense():
    rng = random.Random(23)
    for _ in range(40):
        p, q = random_pauli(rng, 2), random_pauli(rng, 2)
        lhs = (p * q).to_dense()
        rhs = p.to_dense() @ q.to_dense()
        assert lhs == rhs


def test_module_level_multiply():
    p = pauli_from_string("X Z")
    q = pauli_from_string("Z X")
    assert pauli_multiply(p, q) == p * q


def test_adjoint_is_inverse():
    rng = random.Random(31)
    for _ in range(40):
        p = random_pauli(rng, 3)
        assert (p * p.adjoint()).is_identity()
        assert (p.adjoint() * p).is_identity()


def test_adjoint_matches_dense():
    rng = random.Random(37)
    for _ in range(20):
        p = random_pauli(rng, 2)
        assert p.adjoint().to_dense() == p.to_dense().adjoint()


def test_cube_is_identity():
    rng = random.Random(41)
    for _ in range(20):
        p = random_pauli(rng, 2)
        cube = p * p * p
        assert cube.x == (0, 0) and cube.z == (0, 0)


def test_single_site_dense_matrices():
    X = pauli_from_string("X").to_dense()
    Z = pauli_from_string("Z").to_dense()
    # X|k> = |k+1 mod 3>, columns are shifted basis vectors
    x_oracle = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
    z_oracle = np.diag([OMEGA.embed() ** k for k in range(3)])
    assert np.allclose(np.array(X.to_float().data), x_oracle)
    assert np.allclose(np.array(Z.to_float().data), z_oracle, atol=1e-15)


def test_dense_unitary():
    rng = random.Random(43)
    for _ in range(10):
        assert random_pauli(rng, 2).to_dense().is_unitary()


def test_apply_matches_dense_matvec():
    rng = random.Random(47)
    for _ in range(20):
        p = random_pauli(rng, 3)
        ket = "".join(str(rng.randrange(3)) for _ in range(3))
        v = StateVector.basis_state(3, ket)
        assert p.apply(v) == p.to_dense().matvec(v)


def test_resource_limit():
    big = TernaryPauli.identity(MAX_DENSE_SITES + 1)
    with pytest.raises(ResourceLimitError):
        big.to_dense()


def test_commutation_exponent_zx():
    Z = pauli_from_string("Z")
    X = pauli_from_string("X")
    s = commutation_exponent(Z, X)
    # dense check: Z X = w^s X Z
    lhs = (Z * X).to_dense()
    rhs = (X * Z).to_dense().scale(OMEGA**s)
    assert lhs == rhs
    assert s == 1


def test_commutation_antisymmetry():
    rng = random.Random(53)
    for _ in range(60):
        p, q = random_pauli(rng, 3), random_pauli(rng, 3)
        assert commutation_exponent(p, q) == (-commutation_exponent(q, p)) % 3


def test_commutation_bilinearity():
    rng = random.Random(59)
    for _ in range(60):
        p, q, r = (random_pauli(rng, 3) for _ in range(3))
        lhs = commutation_exponent(p * q, r)
        rhs = (commutation_exponent(p, r) + commutation_exponent(q, r)) % 3
        assert lhs == rhs


def test_commutation_ignores_phases():
    p = pauli_from_string("w^2 * X I")
    q = pauli_from_string("Z I")
    assert commutation_exponent(p, q) == commutation_exponent(
        pauli_from_string("X I"), q
    )


def test_weight_and_identity():
    assert pauli_from_string("I X Z Z X").weight() == 4
    assert TernaryPauli.identity(5).is_identity()
    phased = TernaryPauli(1, (0,), (0,), 2)
    assert not phased.is_identity()
    assert phased.is_identity(up_to_phase=True)


def test_symplectic_vector():
    p = pauli_from_string("I X Z Z X")
    assert list(p.symplectic()) == [0, 1, 0, 0, 1, 0, 0, 1, 1, 0]


def test_permutation_and_phases_global_phase():
    p = TernaryPauli(1, (0,), (0,), 1)  # w * I
    perm, phases = p.permutation_and_phases()
    assert list(perm) == [0, 1, 2]
    assert all(ph == 1 for ph in phases)
