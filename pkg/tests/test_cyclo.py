"""Exact cyclotomic scalars, dense matrices, and state vectors."""

import json
import random
from fractions import Fraction

import numpy as np
import pytest

from qutritqec.cyclo import (
    OMEGA,
    OMEGA2,
    ONE,
    ZERO,
    CycloNumber,
    DenseMatrix,
    DimensionMismatchError,
    StateVector,
    exact_rank,
    index_to_ket,
    ket_to_index,
    rational_sqrt,
)

EMBED_TOL = 1e-14


def random_cyclo(rng, span=20):
    return CycloNumber(
        Fraction(rng.randint(-span, span), rng.randint(1, 7)),
        Fraction(rng.randint(-span, span), rng.randint(1, 7)),
    )


def test_omega_square():
    # the defining cubic-root relation: w*w = -1 - w
    assert OMEGA * OMEGA == CycloNumber(-1, -1)
    assert OMEGA * OMEGA == OMEGA2


def test_omega_cube_and_sum():
    assert OMEGA * OMEGA * OMEGA == ONE
    assert ONE + OMEGA + OMEGA2 == ZERO


def test_omega_constructor_mod3():
    assert CycloNumber.omega(0) == ONE
    assert CycloNumber.omega(4) == OMEGA
    assert CycloNumber.omega(-1) == OMEGA2


def test_conjugate_and_norm():
    x = CycloNumber(Fraction(3, 2), Fraction(-5, 4))
    assert x.conjugate() == CycloNumber(Fraction(3, 2) + Fraction(5, 4), Fraction(5, 4))
    assert x * x.conjugate() == CycloNumber(x.norm2(), 0)
    assert x.norm2() == Fraction(3, 2) ** 2 + Fraction(3, 2) * Fraction(5, 4) + Fraction(5, 4) ** 2


def test_ring_axioms_randomized():
    rng = random.Random(1234)
    for _ in range(200):
        x, y, z = (random_cyclo(rng) for _ in range(3))
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x - x == ZERO
        assert x * ONE == x
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()


def test_embed_is_a_homomorphism():
    rng = random.Random(99)
    for _ in range(100):
        x, y = random_cyclo(rng), random_cyclo(rng)
        scale = max(1.0, abs(x.embed()) * abs(y.embed()))
        assert abs((x + y).embed() - (x.embed() + y.embed())) < EMBED_TOL * scale
        assert abs((x * y).embed() - x.embed() * y.embed()) < EMBED_TOL * scale
        assert abs(x.conjugate().embed() - x.embed().conjugate()) < EMBED_TOL * scale


def test_inverse():
    rng = random.Random(7)
    for _ in range(50):
        x = random_cyclo(rng)
        if x.is_zero():
            continue
        assert x * x.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_division():
    assert (OMEGA / OMEGA) == ONE
    x = CycloNumber(2, 3)
    assert (x / x) == ONE
    assert x / 2 == CycloNumber(1, Fraction(3, 2))


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(1, 81)) == Fraction(1, 9)
    assert rational_sqrt(Fraction(0)) == 0
    with pytest.raises(ValueError):
        rational_sqrt(Fraction(2))
    with pytest.raises(ValueError):
        rational_sqrt(Fraction(-1))


def test_cyclo_json_roundtrip():
    x = CycloNumber(Fraction(-7, 3), Fraction(11, 5))
    blob = json.dumps(x.to_json())
    assert CycloNumber.from_json(json.loads(blob)) == x


def test_matmul_against_complex_oracle():
    rng = random.Random(5)
    a = [[random_cyclo(rng, 4) for _ in range(3)] for _ in range(3)]
    b = [[random_cyclo(rng, 4) for _ in range(3)] for _ in range(3)]
    ma, mb = DenseMatrix.from_entries(a), DenseMatrix.from_entries(b)
    product = ma @ mb
    oracle = np.array([[c.embed() for c in row] for row in a]) @ np.array(
        [[c.embed() for c in row] for row in b]
    )
    got = np.array([[product.entry(i, j).embed() for j in range(3)] for i in range(3)])
    assert np.max(np.abs(got - oracle)) < 1e-12


def test_matmul_exactness():
    third = CycloNumber(Fraction(1, 3))
    m = DenseMatrix.from_entries([[third, OMEGA], [OMEGA2, third]])
    p = m @ m
    # (1/3)^2 + w*w^2 survives exactly, no rounding
    assert p.entry(0, 0) == CycloNumber(Fraction(1, 9)) + ONE


def test_tensor_identities():
    i3 = DenseMatrix.identity(3)
    i9 = i3.tensor(i3)
    assert i9.shape == (9, 9)
    assert i9 == DenseMatrix.identity(9)


def test_tensor_against_numpy_kron():
    rng = random.Random(11)
    a = [[random_cyclo(rng, 3) for _ in range(2)] for _ in range(2)]
    b = [[random_cyclo(rng, 3) for _ in range(3)] for _ in range(3)]
    ma, mb = DenseMatrix.from_entries(a), DenseMatrix.from_entries(b)
    t = ma.tensor(mb)
    oracle = np.kron(
        np.array([[c.embed() for c in row] for row in a]),
        np.array([[c.embed() for c in row] for row in b]),
    )
    got = np.array([[t.entry(i, j).embed() for j in range(6)] for i in range(6)])
    assert np.max(np.abs(got - oracle)) < 1e-12


def test_adjoint_and_trace():
    m = DenseMatrix.from_entries([[ONE, OMEGA], [ZERO, OMEGA2]])
    adj = m.adjoint()
    assert adj.entry(0, 1) == ZERO
    assert adj.entry(1, 0) == OMEGA2  # conj(w) = w^2
    assert m.trace() == ONE + OMEGA2


def test_is_unitary_and_hermitian():
    from qutritqec.errormodel import build_sigma

    assert build_sigma(5).is_unitary()
    assert DenseMatrix.identity(3).is_hermitian()
    not_unitary = DenseMatrix.from_entries([[ONE, ONE], [ZERO, ONE]])
    assert not not_unitary.is_unitary()


def test_scale_and_float_path():
    m = DenseMatrix.identity(3).to_float()
    assert not m.exact
    scaled = m.scale(0.5 + 0.0j)
    assert abs(scaled.entry(1, 1) - 0.5) < 1e-15
    assert m.is_unitary()


def test_mixing_paths_raises():
    with pytest.raises(TypeError):
        DenseMatrix.identity(3) @ DenseMatrix.identity(3).to_float()


def test_shape_mismatch_raises():
    with pytest.raises(DimensionMismatchError):
        DenseMatrix.identity(3) @ DenseMatrix.identity(4)
    with pytest.raises(DimensionMismatchError):
        DenseMatrix.identity(3) + DenseMatrix.identity(4)


def test_matrix_json_roundtrip_exact(tmp_path):
    m = DenseMatrix.from_entries(
        [[CycloNumber(Fraction(1, 3), Fraction(-2, 7)), OMEGA], [ZERO, ONE]]
    )
    path = tmp_path / "m.json"
    m.dump(path)
    again = DenseMatrix.load(path)
    assert again.exact
    assert again == m
    # string-encoded fractions must survive bit-exactly
    assert again.entry(0, 0).a == Fraction(1, 3)


def test_matrix_json_roundtrip_float(tmp_path):
    m = DenseMatrix.from_complex(np.array([[0.25 + 1j, 0.0], [0.5, -1.0]]))
    path = tmp_path / "m.json"
    m.dump(path)
    again = DenseMatrix.load(path)
    assert not again.exact
    assert abs(again.entry(0, 0) - (0.25 + 1j)) == 0.0


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_exact_rank_matches_numpy(seed):
    rng = np.random.default_rng(seed)
    ints = rng.integers(-3, 4, size=(5, 5))
    m = DenseMatrix.from_entries([[CycloNumber(int(v)) for v in row] for row in ints])
    assert exact_rank(m) == np.linalg.matrix_rank(ints.astype(float))


def test_exact_rank_projector_like():
    # rank-1 outer product has exact rank 1 even with omega entries
    row = [ONE, OMEGA, OMEGA2]
    m = DenseMatrix.from_entries([[r * c.conjugate() for c in row] for r in row])
    assert exact_rank(m) == 1


def test_ket_index_roundtrip():
    assert ket_to_index("00000") == 0
    assert ket_to_index("00001") == 1
    assert ket_to_index("10000") == 81
    for idx in (0, 1, 80, 121, 242):
        assert ket_to_index(index_to_ket(idx, 5)) == idx
    with pytest.raises(ValueError):
        ket_to_index("0003")


def test_basis_state_and_inner():
    v = StateVector.basis_state(2, "12")
    assert v.dim == 9
    assert v.nonzero_indices() == [ket_to_index("12")]
    assert v.inner(v) == ONE
    w = StateVector.basis_state(2, "21")
    assert v.inner(w) == ZERO


def test_inner_conjugate_linearity():
    v = StateVector.from_amplitudes([OMEGA] + [ZERO] * 8)
    w = StateVector.from_amplitudes([ONE] + [ZERO] * 8)
    # <v|w> conjugates the left argument
    assert v.inner(w) == OMEGA2
    assert w.inner(v) == OMEGA


def test_norm2_is_exact():
    amps = [CycloNumber(Fraction(1, 3)), OMEGA * CycloNumber(Fraction(2, 3)), ZERO]
    v = StateVector.from_amplitudes(amps)
    assert v.norm2() == Fraction(1, 9) + Fraction(4, 9)


def test_matvec_matches_dense():
    from qutritqec.errormodel import build_sigma

    s = build_sigma(2)
    v = StateVector.basis_state(1, "1")
    out = s.matvec(v)
    col = [s.entry(i, 1) for i in range(3)]
    for i, amp in enumerate(out.data):
        assert amp == col[i]


def test_statevector_to_float():
    v = StateVector.basis_state(1, "2").to_float()
    assert not v.exact
    assert abs(v.data[2] - 1.0) == 0.0
